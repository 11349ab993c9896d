//! Products of chains `D_{l1,...,lk}` and their points.
//!
//! A point is a coordinate vector `(v_1, ..., v_k)` with `0 <= v_i < l_i`.
//! Meet and join are the componentwise minimum and maximum, and the order is
//! the componentwise order. The Boolean lattice `B_n` is the product of `n`
//! chains of length two; on it a point is the indicator vector of a subset of
//! `{1, ..., n}`.
//!
//! Lexicographic coordinate order is the canonical point order used for
//! enumeration, witness selection and file output.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper limit on the number of points [`ChainProduct::enumerate`]
/// will materialize.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

/// A lattice point, stored as its coordinate vector.
///
/// The derived `Ord` is lexicographic on coordinates, which is the canonical
/// order for points of one lattice.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<u32>);

impl Point {
    pub fn new(coords: Vec<u32>) -> Self {
        Point(coords)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    fn check_dim(&self, other: &Point) -> Result<()> {
        if self.0.len() != other.0.len() {
            return Err(Error::DimensionMismatch {
                expected: self.0.len(),
                found: other.0.len(),
            });
        }
        Ok(())
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Point) -> Result<Point> {
        self.check_dim(other)?;
        Ok(Point(self.0.iter().zip(&other.0).map(|(&a, &b)| a.min(b)).collect()))
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Point) -> Result<Point> {
        self.check_dim(other)?;
        Ok(Point(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect()))
    }

    /// `self ⪯ other` in the product order.
    pub fn leq(&self, other: &Point) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a <= b))
    }

    pub fn comparable(&self, other: &Point) -> Result<bool> {
        Ok(self.leq(other)? || other.leq(self)?)
    }

    /// Sum of coordinates; the subset size on `B_n`.
    pub fn rank(&self) -> u64 {
        self.0.iter().map(|&v| u64::from(v)).sum()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// Meet or join, the two binary lattice operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeOp {
    Meet,
    Join,
}

impl LatticeOp {
    pub const BOTH: [LatticeOp; 2] = [LatticeOp::Meet, LatticeOp::Join];

    pub fn apply(self, a: &Point, b: &Point) -> Result<Point> {
        match self {
            LatticeOp::Meet => a.meet(b),
            LatticeOp::Join => a.join(b),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LatticeOp::Meet => "meet",
            LatticeOp::Join => "join",
        }
    }
}

impl fmt::Display for LatticeOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LatticeOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "meet" => Ok(LatticeOp::Meet),
            "join" => Ok(LatticeOp::Join),
            _ => Err(Error::InvalidParameter(format!("unknown operation {s:?}"))),
        }
    }
}

/// The product of chains `D_{l1,...,lk}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainProduct {
    lengths: Vec<u32>,
}

impl ChainProduct {
    pub fn new(lengths: Vec<u32>) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::InvalidLattice("at least one chain is required".into()));
        }
        if let Some(i) = lengths.iter().position(|&l| l == 0) {
            return Err(Error::InvalidLattice(format!("chain {} has length 0", i + 1)));
        }
        Ok(ChainProduct { lengths })
    }

    /// `B_n = D_2^n`.
    pub fn boolean(n: usize) -> Result<Self> {
        Self::new(vec![2; n])
    }

    /// `D_l^k`.
    pub fn power(l: u32, k: usize) -> Result<Self> {
        Self::new(vec![l; k])
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    /// Number of chains `k`.
    pub fn dim(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_boolean(&self) -> bool {
        self.lengths.iter().all(|&l| l == 2)
    }

    /// The common chain length if every chain has the same length.
    pub fn uniform_length(&self) -> Option<u32> {
        let first = self.lengths[0];
        self.lengths.iter().all(|&l| l == first).then_some(first)
    }

    /// Product of the chain lengths, saturating at `u128::MAX`.
    pub fn point_count(&self) -> u128 {
        self.lengths
            .iter()
            .try_fold(1u128, |acc, &l| acc.checked_mul(u128::from(l)))
            .unwrap_or(u128::MAX)
    }

    /// Checks that `p` is a point of this lattice.
    pub fn check(&self, p: &Point) -> Result<()> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: p.dim(),
            });
        }
        for (index, (&value, &length)) in p.coords().iter().zip(&self.lengths).enumerate() {
            if value >= length {
                return Err(Error::CoordinateOutOfRange { index, value, length });
            }
        }
        Ok(())
    }

    pub fn point(&self, coords: Vec<u32>) -> Result<Point> {
        let p = Point(coords);
        self.check(&p)?;
        Ok(p)
    }

    pub fn bottom(&self) -> Point {
        Point(vec![0; self.dim()])
    }

    pub fn top(&self) -> Point {
        Point(self.lengths.iter().map(|&l| l - 1).collect())
    }

    pub fn meet(&self, a: &Point, b: &Point) -> Result<Point> {
        self.check(a)?;
        self.check(b)?;
        a.meet(b)
    }

    pub fn join(&self, a: &Point, b: &Point) -> Result<Point> {
        self.check(a)?;
        self.check(b)?;
        a.join(b)
    }

    pub fn leq(&self, a: &Point, b: &Point) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        a.leq(b)
    }

    /// All points in lexicographic order, refusing lattices above
    /// [`DEFAULT_ENUMERATION_CAP`].
    pub fn enumerate(&self) -> Result<Vec<Point>> {
        self.enumerate_with_cap(DEFAULT_ENUMERATION_CAP)
    }

    pub fn enumerate_with_cap(&self, cap: u64) -> Result<Vec<Point>> {
        let count = self.point_count();
        if count > u128::from(cap) {
            return Err(Error::LatticeTooLarge { points: count, cap });
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut current = vec![0u32; self.dim()];
        loop {
            out.push(Point(current.clone()));
            // odometer increment, last coordinate fastest
            let mut i = self.dim();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                current[i] += 1;
                if current[i] < self.lengths[i] {
                    break;
                }
                current[i] = 0;
            }
        }
    }

    /// Mixed-radix index arithmetic for this lattice.
    pub fn indexer(&self) -> Result<Indexer> {
        Indexer::new(self)
    }

    /// Encodes a subset of `{1, ..., n}` as its indicator vector on `B_n`.
    pub fn subset_encode(&self, subset: &[usize]) -> Result<Point> {
        if !self.is_boolean() {
            return Err(Error::NotBoolean);
        }
        let n = self.dim();
        let mut coords = vec![0u32; n];
        for &element in subset {
            if element == 0 || element > n {
                return Err(Error::SubsetElementOutOfRange { element, n });
            }
            coords[element - 1] = 1;
        }
        Ok(Point(coords))
    }

    /// Inverse of [`subset_encode`](Self::subset_encode); the subset is sorted.
    pub fn subset_decode(&self, p: &Point) -> Result<Vec<usize>> {
        if !self.is_boolean() {
            return Err(Error::NotBoolean);
        }
        self.check(p)?;
        Ok(p.coords()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == 1)
            .map(|(i, _)| i + 1)
            .collect())
    }
}

/// Lattice spec strings: `b:<n>`, `d:<l1>,<l2>,...` and `d:<l>^<k>`.
impl FromStr for ChainProduct {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let fail = |reason: &str| Error::ParseLattice {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let parse_num = |s: &str| -> Result<u32> {
            s.trim().parse::<u32>().map_err(|_| fail(&format!("{s:?} is not a non-negative integer")))
        };
        let (kind, body) = spec.split_once(':').ok_or_else(|| fail("missing ':'"))?;
        let lattice = match kind.trim() {
            "b" => ChainProduct::boolean(parse_num(body)? as usize),
            "d" => {
                if let Some((l, k)) = body.split_once('^') {
                    ChainProduct::power(parse_num(l)?, parse_num(k)? as usize)
                } else {
                    let lengths = body.split(',').map(parse_num).collect::<Result<Vec<_>>>()?;
                    ChainProduct::new(lengths)
                }
            }
            _ => return Err(fail("expected 'b' or 'd' before ':'")),
        };
        lattice.map_err(|e| fail(&e.to_string()))
    }
}

impl fmt::Display for ChainProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_boolean() {
            return write!(f, "b:{}", self.dim());
        }
        match self.uniform_length() {
            Some(l) if self.dim() > 1 => write!(f, "d:{}^{}", l, self.dim()),
            _ => {
                f.write_str("d:")?;
                for (i, l) in self.lengths.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{l}")?;
                }
                Ok(())
            }
        }
    }
}

/// Maps points to their rank in lexicographic order and back.
///
/// On `B_n` the index of a point is its indicator vector read as a binary
/// number with coordinate 1 as the most significant bit, so meet and join of
/// indices are bitwise AND and OR. Other lattices use digitwise min/max in
/// mixed radix.
#[derive(Clone, Debug)]
pub struct Indexer {
    lengths: Vec<u32>,
    strides: Vec<u64>,
    count: u64,
    boolean: bool,
}

impl Indexer {
    fn new(lattice: &ChainProduct) -> Result<Self> {
        let count = lattice.point_count();
        if count > u128::from(u64::MAX) {
            return Err(Error::LatticeTooLarge {
                points: count,
                cap: u64::MAX,
            });
        }
        let mut strides = vec![1u64; lattice.dim()];
        for i in (0..lattice.dim().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * u64::from(lattice.lengths[i + 1]);
        }
        Ok(Indexer {
            lengths: lattice.lengths.clone(),
            strides,
            count: count as u64,
            boolean: lattice.is_boolean() && lattice.dim() <= 64,
        })
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn index_of(&self, p: &Point) -> u64 {
        p.coords()
            .iter()
            .zip(&self.strides)
            .map(|(&v, &s)| u64::from(v) * s)
            .sum()
    }

    pub fn point_at(&self, index: u64) -> Point {
        Point(
            self.strides
                .iter()
                .zip(&self.lengths)
                .map(|(&s, &l)| ((index / s) % u64::from(l)) as u32)
                .collect(),
        )
    }

    pub fn meet(&self, a: u64, b: u64) -> u64 {
        if self.boolean {
            return a & b;
        }
        self.digitwise(a, b, u64::min)
    }

    pub fn join(&self, a: u64, b: u64) -> u64 {
        if self.boolean {
            return a | b;
        }
        self.digitwise(a, b, u64::max)
    }

    pub fn apply(&self, op: LatticeOp, a: u64, b: u64) -> u64 {
        match op {
            LatticeOp::Meet => self.meet(a, b),
            LatticeOp::Join => self.join(a, b),
        }
    }

    fn digitwise(&self, a: u64, b: u64, pick: fn(u64, u64) -> u64) -> u64 {
        self.strides
            .iter()
            .zip(&self.lengths)
            .map(|(&s, &l)| {
                let l = u64::from(l);
                pick((a / s) % l, (b / s) % l) * s
            })
            .sum()
    }
}

/// A family of distinct points of one lattice, kept in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    lattice: ChainProduct,
    points: Vec<Point>,
}

impl PointSet {
    /// Validates every point and sorts into canonical order. Duplicates are
    /// rejected.
    pub fn new(lattice: ChainProduct, mut points: Vec<Point>) -> Result<Self> {
        for p in &points {
            lattice.check(p)?;
        }
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0].clone()));
        }
        Ok(PointSet { lattice, points })
    }

    pub fn from_subsets(lattice: ChainProduct, subsets: &[Vec<usize>]) -> Result<Self> {
        let points = subsets
            .iter()
            .map(|s| lattice.subset_encode(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(lattice, points)
    }

    pub fn empty(lattice: ChainProduct) -> Self {
        PointSet {
            lattice,
            points: Vec::new(),
        }
    }

    pub fn lattice(&self) -> &ChainProduct {
        &self.lattice
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    /// Subsets of `{1, ..., n}`, one per point; `B_n` only.
    pub fn subsets(&self) -> Result<Vec<Vec<usize>>> {
        if !self.lattice.is_boolean() {
            return Err(Error::NotBoolean);
        }
        self.points.iter().map(|p| self.lattice.subset_decode(p)).collect()
    }

    /// First pair of comparable points, if any.
    pub fn comparable_pair(&self) -> Option<(&Point, &Point)> {
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                if a.leq(b).unwrap_or(false) || b.leq(a).unwrap_or(false) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_antichain(&self) -> bool {
        self.comparable_pair().is_none()
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}
