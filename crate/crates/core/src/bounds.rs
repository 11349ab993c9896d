//! Closed-form size bounds, the numeric constants behind the recovering-set
//! bound on `B_n`, and empirical entropy checks on concrete sets.

use serde::Serialize;

use crate::entropy::{binary_entropy, subadditivity_check, Distribution, INEQUALITY_TOLERANCE};
use crate::error::{Error, Result};
use crate::lattice::{ChainProduct, LatticeOp, PointSet};
use crate::verifier::{self, Property};

/// Exponent used in the recovering-set bound `√3 · 2^{0.4392 n}`.
pub const RECOVERING_EXPONENT: f64 = 0.4392;

/// Case bound for `x ≤ 5/11` or `x ≥ 6/11`, as printed (7 significant digits).
pub const CASE_ONE_BOUND: f64 = 1.7349558;
/// Case bound for `5/11 ≤ x ≤ 6/11`, as printed.
pub const CASE_TWO_BOUND: f64 = 1.7564781;

/// Earlier bounds on `|A||B|` for general recovering pairs on `B_n`, kept for
/// reference in reports: `3^n` and `2.3264^n`.
pub const GENERAL_PAIR_BASES: [f64; 2] = [3.0, 2.3264];

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CaseConstants {
    /// `1 + h(25/121)`.
    pub case1: f64,
    /// `2 h(36/121)`.
    pub case2: f64,
    /// `max(case1, case2) / 4`.
    pub exponent: f64,
}

pub fn case_constants() -> CaseConstants {
    let h = |x: f64| binary_entropy(x).expect("argument in [0, 1]");
    let case1 = 1.0 + h(25.0 / 121.0);
    let case2 = 2.0 * h(36.0 / 121.0);
    CaseConstants {
        case1,
        case2,
        exponent: case1.max(case2) / 4.0,
    }
}

/// `g(x) = h(x²) + h((1 - x)²)` on `[0, 1]`.
pub fn g(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfUnitInterval(x));
    }
    Ok(binary_entropy(x * x)? + binary_entropy((1.0 - x) * (1.0 - x))?)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Maximum {
    pub argmax: f64,
    pub maximum: f64,
}

/// Global maximum of [`g`]: a grid scan with step `1e-4` followed by
/// golden-section refinement of the best cell down to width `1e-10`.
pub fn numeric_max_g() -> Maximum {
    const STEPS: u32 = 10_000;
    let eval = |x: f64| g(x.clamp(0.0, 1.0)).expect("clamped");
    let step = 1.0 / f64::from(STEPS);
    let best = (0..=STEPS)
        .map(|i| f64::from(i) * step)
        .max_by(|a, b| eval(*a).total_cmp(&eval(*b)))
        .expect("non-empty grid");

    let (mut lo, mut hi) = ((best - step).max(0.0), (best + step).min(1.0));
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - ratio * (hi - lo);
    let mut d = lo + ratio * (hi - lo);
    let (mut fc, mut fd) = (eval(c), eval(d));
    while hi - lo > 1e-10 {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = eval(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = eval(d);
        }
    }
    let refined = (lo + hi) / 2.0;
    let (argmax, maximum) = [(refined, eval(refined)), (best, eval(best))]
        .into_iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("two candidates");
    Maximum { argmax, maximum }
}

/// `√3 · 2^{0.4392 n}`, the bound on recovering sets of `B_n`.
pub fn bound_recovering_bn(n: usize) -> f64 {
    3f64.sqrt() * (RECOVERING_EXPONENT * n as f64).exp2()
}

/// `2^{⌊n/2⌋}`, the tight bound on strongly cancellative sets of `B_n`.
///
/// Only defined for `n >= 2`: at `n = 1` the formula gives 1 while both
/// points of `B_1` form a (vacuously) strongly cancellative set.
pub fn bound_sc_bn(n: usize) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("bound needs n >= 2, got {n}")));
    }
    if n / 2 >= 64 {
        return Err(Error::InvalidParameter(format!("2^{} does not fit in 64 bits", n / 2)));
    }
    Ok(1u64 << (n / 2))
}

/// `min(l1, l2)`, the tight bound on strongly cancellative sets of `D_{l1,l2}`.
///
/// Valid when `min(l1, l2) >= 2`; with a chain of length one the lattice is
/// itself a chain and any two of its points form a strongly cancellative set.
pub fn bound_d2(l1: u32, l2: u32) -> u32 {
    l1.min(l2)
}

/// `(2l)^{k/2} + k(l - 1)/2 + 1`, the bound on strongly cancellative sets of
/// `D_l^k`.
pub fn bound_dlk(l: u32, k: usize) -> f64 {
    let (l, k) = (f64::from(l), k as f64);
    (2.0 * l).powf(k / 2.0) + k * (l - 1.0) / 2.0 + 1.0
}

/// `l^{⌊k/2⌋}`, the size of the power construction.
pub fn power_construction_size(l: u32, k: usize) -> Option<u64> {
    u64::from(l).checked_pow(u32::try_from(k / 2).ok()?)
}

/// The exact maximum where a matching construction and bound are known.
pub fn known_maximum(lattice: &ChainProduct, property: Property) -> Option<u64> {
    if property != Property::StronglyCancellative {
        return None;
    }
    if lattice.is_boolean() && lattice.dim() >= 2 {
        return bound_sc_bn(lattice.dim()).ok();
    }
    match lattice.lengths() {
        &[l1, l2] if l1.min(l2) >= 2 => Some(u64::from(bound_d2(l1, l2))),
        _ => None,
    }
}

/// Construction size against upper bound for one lattice and property.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundReport {
    pub lattice: String,
    pub property: Property,
    pub construction: Option<String>,
    pub construction_size: Option<u64>,
    #[serde(serialize_with = "crate::io::serialize_sig9_opt")]
    pub upper_bound: Option<f64>,
    pub bound_name: Option<String>,
    pub tight: bool,
}

impl BoundReport {
    /// `constructionSize ≤ upperBound` when both are present.
    pub fn is_consistent(&self) -> bool {
        match (self.construction_size, self.upper_bound) {
            (Some(c), Some(b)) => c as f64 <= b + INEQUALITY_TOLERANCE,
            _ => true,
        }
    }
}

pub fn bound_report(lattice: &ChainProduct, property: Property) -> BoundReport {
    let mut construction: Option<(&str, u64)> = None;
    let mut bounds: Vec<(String, f64)> = Vec::new();
    let k = lattice.dim();

    match property {
        Property::StronglyCancellative => {
            if lattice.is_boolean() && k >= 2 {
                if let Ok(b) = bound_sc_bn(k) {
                    construction = Some(("block-bn", b));
                    bounds.push(("2^floor(n/2)".into(), b as f64));
                }
            }
            if let &[l1, l2] = lattice.lengths() {
                construction.get_or_insert(("diagonal", u64::from(l1.min(l2))));
                if l1.min(l2) >= 2 {
                    bounds.push(("min(l1,l2)".into(), f64::from(bound_d2(l1, l2))));
                }
            }
            if let Some(l) = lattice.uniform_length() {
                if k >= 2 {
                    if let Some(size) = power_construction_size(l, k) {
                        construction.get_or_insert(("power", size));
                    }
                }
                bounds.push(("(2l)^(k/2)+k(l-1)/2+1".into(), bound_dlk(l, k)));
            }
        }
        Property::Recovering => {
            if lattice.is_boolean() {
                bounds.push(("sqrt(3)*2^(0.4392n)".into(), bound_recovering_bn(k)));
            }
        }
        Property::Cancellative => {}
    }

    let best = bounds.into_iter().min_by(|a, b| a.1.total_cmp(&b.1));
    let construction_size = construction.map(|c| c.1);
    let tight = matches!((construction_size, &best), (Some(c), Some((_, b))) if c as f64 == *b);
    BoundReport {
        lattice: lattice.to_string(),
        property,
        construction: construction.map(|c| c.0.to_string()),
        construction_size,
        upper_bound: best.as_ref().map(|b| b.1),
        bound_name: best.map(|b| b.0),
        tight,
    }
}

/// Entropies of the pair meet and join distributions of a recovering set on
/// `B_n`, with the lower bound `log2(|S|²/3)` and the per-coordinate
/// marginal sums that bound them from above.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RecoveringEntropy {
    pub h_meet: f64,
    pub h_join: f64,
    pub lower_bound: f64,
    pub marginal_sum_meet: f64,
    pub marginal_sum_join: f64,
}

impl RecoveringEntropy {
    /// `lowerBound ≤ H ≤ marginal sum` for both operations.
    pub fn sandwich_holds(&self) -> bool {
        let tol = INEQUALITY_TOLERANCE;
        self.lower_bound <= self.h_meet + tol
            && self.h_meet <= self.marginal_sum_meet + tol
            && self.lower_bound <= self.h_join + tol
            && self.h_join <= self.marginal_sum_join + tol
    }
}

pub fn empirical_recovering_entropy(s: &PointSet) -> Result<RecoveringEntropy> {
    if !s.lattice().is_boolean() {
        return Err(Error::NotBoolean);
    }
    if s.len() < 2 {
        return Err(Error::SetTooSmall {
            needed: 2,
            found: s.len(),
        });
    }
    if !verifier::is_recovering(s) {
        return Err(Error::NotRecovering);
    }
    let side = |op: LatticeOp| -> Result<(f64, f64)> {
        let stats = verifier::pair_statistics(s, op)?;
        let joint = Distribution::from_counts(
            stats
                .multiplicity
                .iter()
                .map(|(value, &c)| (value.coords().to_vec(), c)),
        )?;
        let check = subadditivity_check(&joint)?;
        Ok((check.joint_entropy, check.marginal_sum))
    };
    let (h_meet, marginal_sum_meet) = side(LatticeOp::Meet)?;
    let (h_join, marginal_sum_join) = side(LatticeOp::Join)?;
    let size = s.len() as f64;
    Ok(RecoveringEntropy {
        h_meet,
        h_join,
        lower_bound: (size * size / 3.0).log2(),
        marginal_sum_meet,
        marginal_sum_join,
    })
}
