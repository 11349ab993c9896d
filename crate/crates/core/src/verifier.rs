//! Decides whether a point set is cancellative, strongly cancellative or
//! recovering, and produces canonical violation witnesses.
//!
//! Triple conditions (`a1∧a2 ≠ a1∧a3`) are checked per anchor with a hash map
//! from value to partner. The quad conditions of a recovering set are checked
//! as injectivity of the unordered-pair maps `{a, b} ↦ a∧b` and `{a, b} ↦ a∨b`:
//! two distinct unordered pairs either share one element (a triple condition)
//! or are disjoint (a quad condition). Both run in `O(|S|²)`.
//!
//! Sets with at most two points satisfy every property vacuously.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::entropy::Distribution;
use crate::error::{Error, Result};
use crate::lattice::{LatticeOp, Point, PointSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Cancellative,
    StronglyCancellative,
    Recovering,
}

impl Property {
    pub const ALL: [Property; 3] = [
        Property::Cancellative,
        Property::StronglyCancellative,
        Property::Recovering,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Cancellative => "cancellative",
            Property::StronglyCancellative => "strongly-cancellative",
            Property::Recovering => "recovering",
        }
    }

    /// The operations whose anchored maps must be injective.
    pub(crate) fn ops(self) -> &'static [LatticeOp] {
        match self {
            Property::Cancellative => &[LatticeOp::Meet],
            _ => &LatticeOp::BOTH,
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('_', "-").as_str() {
            "cancellative" => Ok(Property::Cancellative),
            "strongly-cancellative" | "sc" => Ok(Property::StronglyCancellative),
            "recovering" => Ok(Property::Recovering),
            _ => Err(Error::InvalidParameter(format!("unknown property {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ViolationKind {
    /// `a1∧a2 = a1∧a3` for distinct `a1, a2, a3`.
    MeetTriple,
    /// `a1∨a2 = a1∨a3` for distinct `a1, a2, a3`.
    JoinTriple,
    /// `a1∧a2 = a3∧a4` for four distinct points.
    MeetQuad,
    /// `a1∨a2 = a3∨a4` for four distinct points.
    JoinQuad,
}

impl ViolationKind {
    fn new(op: LatticeOp, quad: bool) -> Self {
        match (op, quad) {
            (LatticeOp::Meet, false) => ViolationKind::MeetTriple,
            (LatticeOp::Join, false) => ViolationKind::JoinTriple,
            (LatticeOp::Meet, true) => ViolationKind::MeetQuad,
            (LatticeOp::Join, true) => ViolationKind::JoinQuad,
        }
    }

    pub fn op(self) -> LatticeOp {
        match self {
            ViolationKind::MeetTriple | ViolationKind::MeetQuad => LatticeOp::Meet,
            ViolationKind::JoinTriple | ViolationKind::JoinQuad => LatticeOp::Join,
        }
    }
}

/// A witness that a definition fails.
///
/// For triples the witnesses are `(anchor, b, c)` with `b < c`; for quads
/// they are `(a, b, c, d)` with `a < b`, `c < d` and `(a, b) < (c, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witnesses: Vec<Point>,
    pub value: Point,
}

impl Violation {
    /// Re-checks the witness against its own invariants.
    pub fn is_consistent(&self) -> bool {
        let op = self.kind.op();
        let w = &self.witnesses;
        let distinct = w.iter().collect::<HashSet<_>>().len() == w.len();
        let eval = |a: &Point, b: &Point| op.apply(a, b).ok();
        let value = Some(self.value.clone());
        match self.kind {
            ViolationKind::MeetTriple | ViolationKind::JoinTriple => {
                w.len() == 3 && distinct && eval(&w[0], &w[1]) == value && eval(&w[0], &w[2]) == value
            }
            ViolationKind::MeetQuad | ViolationKind::JoinQuad => {
                w.len() == 4 && distinct && eval(&w[0], &w[1]) == value && eval(&w[2], &w[3]) == value
            }
        }
    }
}

pub fn is_cancellative(s: &PointSet) -> bool {
    anchored_injective(s.points(), LatticeOp::Meet)
}

pub fn is_strongly_cancellative(s: &PointSet) -> bool {
    LatticeOp::BOTH.iter().all(|&op| anchored_injective(s.points(), op))
}

pub fn is_recovering(s: &PointSet) -> bool {
    LatticeOp::BOTH.iter().all(|&op| pairs_injective(s.points(), op))
}

pub fn satisfies(s: &PointSet, property: Property) -> bool {
    match property {
        Property::Cancellative => is_cancellative(s),
        Property::StronglyCancellative => is_strongly_cancellative(s),
        Property::Recovering => is_recovering(s),
    }
}

fn op_value(op: LatticeOp, a: &Point, b: &Point) -> Point {
    op.apply(a, b).expect("points of one set share a dimension")
}

fn anchored_injective(points: &[Point], op: LatticeOp) -> bool {
    if points.len() < 3 {
        return true;
    }
    let mut seen = HashSet::with_capacity(points.len());
    points.iter().all(|a| {
        seen.clear();
        points.iter().filter(|b| *b != a).all(|b| seen.insert(op_value(op, a, b)))
    })
}

fn pairs_injective(points: &[Point], op: LatticeOp) -> bool {
    if points.len() < 3 {
        return true;
    }
    let mut seen = HashSet::with_capacity(points.len() * points.len() / 2);
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            if !seen.insert(op_value(op, a, b)) {
                return false;
            }
        }
    }
    true
}

/// Canonical witness: among all violations of `property`, the one whose
/// witness tuple is smallest in canonical point order (ties broken by kind,
/// meet before join, triple before quad). `None` iff the property holds.
pub fn find_violation(s: &PointSet, property: Property) -> Option<Violation> {
    let points = s.points();
    let mut best: Option<(Vec<usize>, ViolationKind, Point)> = None;
    let mut consider = |candidate: Option<(Vec<usize>, ViolationKind, Point)>| {
        if let Some(c) = candidate {
            let better = match &best {
                None => true,
                Some(b) => (&c.0, c.1) < (&b.0, b.1),
            };
            if better {
                best = Some(c);
            }
        }
    };
    for &op in property.ops() {
        consider(first_triple(points, op));
        if property == Property::Recovering {
            consider(first_quad(points, op));
        }
    }
    best.map(|(idx, kind, value)| Violation {
        kind,
        witnesses: idx.into_iter().map(|i| points[i].clone()).collect(),
        value,
    })
}

fn first_triple(points: &[Point], op: LatticeOp) -> Option<(Vec<usize>, ViolationKind, Point)> {
    for (a, anchor) in points.iter().enumerate() {
        let mut groups: HashMap<Point, Vec<usize>> = HashMap::new();
        for (b, other) in points.iter().enumerate() {
            if a != b {
                groups.entry(op_value(op, anchor, other)).or_default().push(b);
            }
        }
        let found = groups
            .into_iter()
            .filter(|(_, g)| g.len() >= 2)
            .map(|(value, g)| (vec![a, g[0], g[1]], value))
            .min();
        if let Some((idx, value)) = found {
            return Some((idx, ViolationKind::new(op, false), value));
        }
    }
    None
}

fn first_quad(points: &[Point], op: LatticeOp) -> Option<(Vec<usize>, ViolationKind, Point)> {
    let mut groups: HashMap<Point, Vec<(usize, usize)>> = HashMap::new();
    for (i, a) in points.iter().enumerate() {
        for (j, b) in points.iter().enumerate().skip(i + 1) {
            groups.entry(op_value(op, a, b)).or_default().push((i, j));
        }
    }
    groups
        .into_iter()
        .filter_map(|(value, pairs)| {
            // pairs are already in lexicographic order
            for (x, &(a, b)) in pairs.iter().enumerate() {
                if let Some(&(c, d)) = pairs[x + 1..].iter().find(|&&(c, d)| c != a && c != b && d != a && d != b) {
                    return Some((vec![a, b, c, d], value));
                }
            }
            None
        })
        .min()
        .map(|(idx, value)| (idx, ViolationKind::new(op, true), value))
}

/// Distribution of `a_i ⊛ a_j` over independent uniform `a_i, a_j ∈ S`.
#[derive(Clone, Debug)]
pub struct PairStatistics {
    pub operation: LatticeOp,
    /// Ordered pairs `(a_i, a_j)`, repeats allowed, per value.
    pub multiplicity: BTreeMap<Point, usize>,
    pub max_multiplicity: usize,
    pub distribution: Distribution<Point>,
}

pub fn pair_statistics(s: &PointSet, operation: LatticeOp) -> Result<PairStatistics> {
    if s.is_empty() {
        return Err(Error::SetTooSmall { needed: 1, found: 0 });
    }
    let mut multiplicity: BTreeMap<Point, usize> = BTreeMap::new();
    for a in s {
        for b in s {
            *multiplicity.entry(op_value(operation, a, b)).or_insert(0) += 1;
        }
    }
    let max_multiplicity = multiplicity.values().copied().max().unwrap_or(0);
    let distribution = Distribution::from_counts(multiplicity.iter().map(|(v, &c)| (v.clone(), c)))?;
    Ok(PairStatistics {
        operation,
        multiplicity,
        max_multiplicity,
        distribution,
    })
}

/// Entropy of `v ⊛ w` for `w` uniform on `S \ {v}`.
pub fn anchored_entropy(s: &PointSet, v: &Point, operation: LatticeOp) -> Result<f64> {
    if !s.contains(v) {
        return Err(Error::PointNotInSet(v.clone()));
    }
    if s.len() < 2 {
        return Err(Error::SetTooSmall {
            needed: 2,
            found: s.len(),
        });
    }
    let mut counts: HashMap<Point, usize> = HashMap::new();
    for w in s.iter().filter(|w| *w != v) {
        match counts.entry(op_value(operation, v, w)) {
            Entry::Occupied(mut e) => *e.get_mut() += 1,
            Entry::Vacant(e) => {
                e.insert(1);
            }
        }
    }
    Ok(Distribution::from_counts(counts)?.entropy())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ChainProduct;
    use proptest::prelude::*;

    fn subsets(n: usize, sets: &[&[usize]]) -> PointSet {
        let lattice = ChainProduct::boolean(n).unwrap();
        PointSet::from_subsets(lattice, &sets.iter().map(|s| s.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn diagonal33() -> PointSet {
        let d = ChainProduct::new(vec![3, 3]).unwrap();
        let pts = [[0, 2], [1, 1], [2, 0]].iter().map(|c| Point::new(c.to_vec())).collect();
        PointSet::new(d, pts).unwrap()
    }

    fn block4() -> PointSet {
        subsets(4, &[&[1, 3], &[1, 4], &[2, 3], &[2, 4]])
    }

    #[test]
    fn cancellative_examples() {
        assert!(is_cancellative(&subsets(2, &[&[], &[1]])));
        assert!(!is_cancellative(&subsets(2, &[&[], &[1], &[2]])));
        assert!(is_cancellative(&block4()));
    }

    #[test]
    fn strongly_cancellative_examples() {
        assert!(!is_strongly_cancellative(&subsets(2, &[&[1], &[2], &[1, 2]])));
        assert!(is_strongly_cancellative(&diagonal33()));
        assert!(is_strongly_cancellative(&block4()));
    }

    #[test]
    fn recovering_examples() {
        assert!(is_recovering(&subsets(3, &[&[1], &[1, 2]])));
        assert!(is_recovering(&subsets(3, &[&[1]])));
        assert!(!is_recovering(&block4()));
        assert!(is_recovering(&diagonal33()));
    }

    #[test]
    fn witness_for_meet_with_bottom() {
        let s = subsets(2, &[&[], &[1], &[2]]);
        let v = find_violation(&s, Property::StronglyCancellative).unwrap();
        assert_eq!(v.kind, ViolationKind::MeetTriple);
        let b2 = s.lattice();
        assert_eq!(v.value, b2.bottom());
        assert_eq!(v.witnesses[0], b2.bottom());
        let mut partners = v.witnesses[1..].to_vec();
        partners.sort();
        assert_eq!(partners, vec![b2.subset_encode(&[2]).unwrap(), b2.subset_encode(&[1]).unwrap()]);
        assert!(v.is_consistent());
    }

    #[test]
    fn witness_for_block4_recovering() {
        let s = block4();
        let v = find_violation(&s, Property::Recovering).unwrap();
        assert_eq!(v.kind, ViolationKind::MeetQuad);
        assert_eq!(v.value, s.lattice().bottom());
        let b4 = s.lattice();
        let w: Vec<Vec<usize>> = v.witnesses.iter().map(|p| b4.subset_decode(p).unwrap()).collect();
        assert_eq!(w, vec![vec![2, 4], vec![1, 3], vec![2, 3], vec![1, 4]]);
        assert!(v.is_consistent());
        assert!(find_violation(&s, Property::StronglyCancellative).is_none());
    }

    #[test]
    fn no_witness_for_diagonal() {
        for property in Property::ALL {
            assert!(find_violation(&diagonal33(), property).is_none());
        }
    }

    #[test]
    fn pair_statistics_two_singletons() {
        let s = subsets(2, &[&[1], &[2]]);
        let stats = pair_statistics(&s, LatticeOp::Meet).unwrap();
        let b2 = s.lattice();
        let expected: BTreeMap<Point, usize> = [
            (b2.bottom(), 2),
            (b2.subset_encode(&[1]).unwrap(), 1),
            (b2.subset_encode(&[2]).unwrap(), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(stats.multiplicity, expected);
        assert_eq!(stats.max_multiplicity, 2);
        assert_eq!(stats.distribution.entropy(), 1.5);

        let single = subsets(2, &[&[1]]);
        assert_eq!(pair_statistics(&single, LatticeOp::Meet).unwrap().max_multiplicity, 1);
        assert!(pair_statistics(&PointSet::empty(ChainProduct::boolean(2).unwrap()), LatticeOp::Join).is_err());
    }

    #[test]
    fn anchored_entropy_examples() {
        let s = block4();
        let v = s.lattice().subset_encode(&[1, 3]).unwrap();
        let h = anchored_entropy(&s, &v, LatticeOp::Meet).unwrap();
        assert!((h - 3f64.log2()).abs() < 1e-12);

        let pair = subsets(2, &[&[1], &[2]]);
        let v = pair.points()[0].clone();
        assert_eq!(anchored_entropy(&pair, &v, LatticeOp::Join).unwrap(), 0.0);

        let single = subsets(2, &[&[1]]);
        assert!(matches!(
            anchored_entropy(&single, &single.points()[0].clone(), LatticeOp::Meet),
            Err(Error::SetTooSmall { .. })
        ));
        let outsider = s.lattice().bottom();
        assert!(matches!(anchored_entropy(&s, &outsider, LatticeOp::Meet), Err(Error::PointNotInSet(_))));
    }

    // Definitions applied literally over all ordered triples and quadruples.
    fn naive(s: &PointSet, property: Property) -> bool {
        let p = s.points();
        let n = p.len();
        for &op in property.ops() {
            let f = |i: usize, j: usize| op_value(op, &p[i], &p[j]);
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if a != b && a != c && b != c && f(a, b) == f(a, c) {
                            return false;
                        }
                        if property != Property::Recovering {
                            continue;
                        }
                        for d in 0..n {
                            let distinct = [a, b, c, d].iter().collect::<HashSet<_>>().len() == 4;
                            if distinct && f(a, b) == f(c, d) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn random_set() -> impl Strategy<Value = PointSet> {
        prop::collection::vec(1u32..4, 1..4).prop_flat_map(|lengths| {
            let coord = lengths.iter().map(|&l| 0..l).collect::<Vec<_>>();
            prop::collection::btree_set(coord, 0..8).prop_map(move |pts| {
                let lattice = ChainProduct::new(lengths.clone()).unwrap();
                PointSet::new(lattice, pts.into_iter().map(Point::new).collect()).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn verifiers_match_definitions(s in random_set()) {
            for property in Property::ALL {
                let fast = satisfies(&s, property);
                prop_assert_eq!(fast, naive(&s, property));
                let violation = find_violation(&s, property);
                prop_assert_eq!(violation.is_none(), fast);
                if let Some(v) = violation {
                    prop_assert!(v.is_consistent());
                }
            }
        }

        #[test]
        fn properties_are_nested(s in random_set()) {
            if is_recovering(&s) {
                prop_assert!(is_strongly_cancellative(&s));
            }
            if is_strongly_cancellative(&s) {
                prop_assert!(is_cancellative(&s));
            }
        }

        #[test]
        fn pair_counts_sum_to_square(s in random_set()) {
            prop_assume!(!s.is_empty());
            for op in LatticeOp::BOTH {
                let stats = pair_statistics(&s, op)?;
                prop_assert_eq!(stats.multiplicity.values().sum::<usize>(), s.len() * s.len());
            }
        }
    }
}
