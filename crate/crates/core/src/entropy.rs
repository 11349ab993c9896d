//! Base-2 Shannon entropy of finite distributions and the two entropy
//! inequalities the bounds rest on: subadditivity over coordinates and the
//! concavity estimate for partial sums of `p log(1/p)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Absolute tolerance for every inequality check.
pub const INEQUALITY_TOLERANCE: f64 = 1e-9;

/// A finite probability mass function keyed by outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution<T: Ord> {
    probabilities: BTreeMap<T, f64>,
}

impl<T: Ord> Distribution<T> {
    /// Builds a distribution from `(outcome, probability)` pairs. Repeated
    /// outcomes are merged. Probabilities must lie in `[0, 1]` and sum to 1
    /// within [`INEQUALITY_TOLERANCE`].
    pub fn new(entries: impl IntoIterator<Item = (T, f64)>) -> Result<Self> {
        let mut probabilities = BTreeMap::new();
        for (outcome, p) in entries {
            if !p.is_finite() || !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidDistribution(format!("probability {p} outside [0, 1]")));
            }
            *probabilities.entry(outcome).or_insert(0.0) += p;
        }
        let total = compensated_sum(probabilities.values().copied());
        if (total - 1.0).abs() > INEQUALITY_TOLERANCE {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {total}")));
        }
        Ok(Distribution { probabilities })
    }

    /// Empirical distribution of integer counts.
    pub fn from_counts(counts: impl IntoIterator<Item = (T, usize)>) -> Result<Self> {
        let mut merged: BTreeMap<T, usize> = BTreeMap::new();
        for (outcome, c) in counts {
            *merged.entry(outcome).or_insert(0) += c;
        }
        let total: usize = merged.values().sum();
        if total == 0 {
            return Err(Error::InvalidDistribution("no observations".into()));
        }
        let total = total as f64;
        Ok(Distribution {
            probabilities: merged.into_iter().map(|(o, c)| (o, c as f64 / total)).collect(),
        })
    }

    pub fn uniform(outcomes: impl IntoIterator<Item = T>) -> Result<Self> {
        Self::from_counts(outcomes.into_iter().map(|o| (o, 1)))
    }

    pub fn probabilities(&self) -> &BTreeMap<T, f64> {
        &self.probabilities
    }

    pub fn get(&self, outcome: &T) -> f64 {
        self.probabilities.get(outcome).copied().unwrap_or(0.0)
    }

    /// Number of outcomes with an entry (zero-probability entries included).
    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn entropy(&self) -> f64 {
        entropy(self)
    }
}

/// `H(X) = Σ p log2(1/p)`, with `0 log(1/0) = 0`.
pub fn entropy<T: Ord>(d: &Distribution<T>) -> f64 {
    plogp_sum(d.probabilities.values().copied())
}

/// `h(x) = x log2(1/x) + (1 - x) log2(1/(1 - x))`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfUnitInterval(x));
    }
    Ok(plogp(x) + plogp(1.0 - x))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SubadditivityCheck {
    pub joint_entropy: f64,
    pub marginal_sum: f64,
    pub holds: bool,
}

/// Compares the entropy of a joint distribution over equal-length tuples with
/// the sum of its coordinate marginal entropies.
pub fn subadditivity_check<V: Ord + Clone>(joint: &Distribution<Vec<V>>) -> Result<SubadditivityCheck> {
    let width = joint.probabilities.keys().next().map_or(0, Vec::len);
    if joint.probabilities.keys().any(|t| t.len() != width) {
        return Err(Error::RaggedTuples);
    }
    let mut marginals: Vec<BTreeMap<&V, f64>> = vec![BTreeMap::new(); width];
    for (tuple, &p) in &joint.probabilities {
        for (marginal, value) in marginals.iter_mut().zip(tuple) {
            *marginal.entry(value).or_insert(0.0) += p;
        }
    }
    let joint_entropy = entropy(joint);
    let marginal_sum = compensated_sum(marginals.iter().map(|m| plogp_sum(m.values().copied())));
    Ok(SubadditivityCheck {
        joint_entropy,
        marginal_sum,
        holds: joint_entropy <= marginal_sum + INEQUALITY_TOLERANCE,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConcavityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// For `p_1..p_s` in `[0, 1]`: `Σ p_j log2(1/p_j) <= s·(Σp/s)·log2(s/Σp)`.
pub fn concavity_bound_check(p: &[f64]) -> Result<ConcavityCheck> {
    if let Some(&bad) = p.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        return Err(Error::OutOfUnitInterval(bad));
    }
    let s = p.len() as f64;
    let total = compensated_sum(p.iter().copied());
    let lhs = plogp_sum(p.iter().copied());
    let rhs = if total > 0.0 {
        s * (total / s) * (s / total).log2()
    } else {
        0.0
    };
    Ok(ConcavityCheck {
        lhs,
        rhs,
        holds: lhs <= rhs + INEQUALITY_TOLERANCE,
    })
}

fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

fn plogp_sum(ps: impl Iterator<Item = f64>) -> f64 {
    compensated_sum(ps.map(plogp))
}

/// Neumaier summation.
pub(crate) fn compensated_sum(xs: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_examples() {
        let uniform8 = Distribution::uniform(0..8).unwrap();
        assert_eq!(uniform8.entropy(), 3.0);
        let dyadic = Distribution::new([("a", 0.5), ("b", 0.25), ("c", 0.25)]).unwrap();
        assert_eq!(dyadic.entropy(), 1.5);
        let point = Distribution::new([(1, 1.0)]).unwrap();
        assert_eq!(point.entropy(), 0.0);
        let with_zero = Distribution::new([(1, 1.0), (2, 0.0)]).unwrap();
        assert_eq!(with_zero.entropy(), 0.0);
    }

    #[test]
    fn invalid_distributions() {
        assert!(Distribution::new([(1, 0.5), (2, 0.4)]).is_err());
        assert!(Distribution::new([(1, 1.5), (2, -0.5)]).is_err());
        assert!(Distribution::new([(1, f64::NAN)]).is_err());
        assert!(Distribution::<u8>::new([]).is_err());
        assert!(Distribution::<u8>::from_counts([]).is_err());
    }

    #[test]
    fn duplicate_outcomes_merge() {
        let d = Distribution::new([(1, 0.25), (1, 0.25), (2, 0.5)]).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.get(&1), 0.5);
        assert_eq!(d.entropy(), 1.0);
    }

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!((binary_entropy(25.0 / 121.0).unwrap() - 0.7349558).abs() < 1e-6);
        assert!((binary_entropy(36.0 / 121.0).unwrap() - 0.8782390).abs() < 1e-6);
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
    }

    #[test]
    fn subadditivity_examples() {
        let independent = Distribution::uniform([vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]).unwrap();
        let c = subadditivity_check(&independent).unwrap();
        assert_eq!((c.joint_entropy, c.marginal_sum, c.holds), (2.0, 2.0, true));

        let correlated = Distribution::uniform([vec![0, 0], vec![1, 1]]).unwrap();
        let c = subadditivity_check(&correlated).unwrap();
        assert_eq!((c.joint_entropy, c.marginal_sum, c.holds), (1.0, 2.0, true));

        let ragged = Distribution::uniform([vec![0], vec![1, 1]]).unwrap();
        assert!(matches!(subadditivity_check(&ragged), Err(Error::RaggedTuples)));
    }

    #[test]
    fn concavity_examples() {
        let c = concavity_bound_check(&[0.2; 5]).unwrap();
        assert!((c.lhs - c.rhs).abs() < 1e-12);
        assert!(c.holds);

        // lhs = 0.5 + 0.375, rhs = 0.625 log2(3.2)
        let c = concavity_bound_check(&[0.5, 0.125]).unwrap();
        assert!((c.lhs - 0.875).abs() < 1e-15);
        assert!((c.rhs - 0.625 * 3.2f64.log2()).abs() < 1e-15);
        assert!(c.holds);

        let zeros = concavity_bound_check(&[0.0, 0.0]).unwrap();
        assert_eq!((zeros.lhs, zeros.rhs), (0.0, 0.0));
        assert!(concavity_bound_check(&[0.5, 1.5]).is_err());
    }

    #[test]
    fn compensated_sum_of_repeated_terms() {
        let m = 100_003usize;
        let s = compensated_sum(std::iter::repeat_n(1.0 / m as f64, m));
        assert!((s - 1.0).abs() < 1e-15);
    }
}
