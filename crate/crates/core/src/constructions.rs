//! Explicit strongly cancellative sets.
//!
//! * [`block_construction`]: on `B_n`, one element from each block
//!   `{2i-1, 2i}`; size `2^{⌊n/2⌋}`.
//! * [`diagonal_construction`]: on `D_{l1,l2}`, the antichain
//!   `x + y = min(l1, l2) - 1`; size `min(l1, l2)`.
//! * [`product_composition`]: concatenates `⌊k/k1⌋` copies of an antichain on
//!   `D_l^{k1}` and pads with zeros; size `|base|^{⌊k/k1⌋}`.
//! * [`power_construction`]: the composition of the square diagonal; size
//!   `l^{⌊k/2⌋}`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::{ChainProduct, Point, PointSet};
use crate::verifier;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    BlockBn,
    Diagonal,
    Compose,
    Power,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::BlockBn => "block-bn",
            Family::Diagonal => "diagonal",
            Family::Compose => "compose",
            Family::Power => "power",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "block-bn" => Ok(Family::BlockBn),
            "diagonal" => Ok(Family::Diagonal),
            "compose" => Ok(Family::Compose),
            "power" => Ok(Family::Power),
            _ => Err(Error::InvalidParameter(format!("unknown construction family {s:?}"))),
        }
    }
}

/// All subsets of `{1, ..., n}` picking exactly one element of each block
/// `{2i-1, 2i}`, `i = 1..⌊n/2⌋`. For odd `n` element `n` is never used.
pub fn block_construction(n: usize) -> Result<PointSet> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("block construction needs n >= 2, got {n}")));
    }
    let lattice = ChainProduct::boolean(n)?;
    let blocks = n / 2;
    if blocks >= usize::BITS as usize {
        return Err(Error::InvalidParameter(format!("n = {n} is too large")));
    }
    let points = (0..1usize << blocks)
        .map(|choice| {
            let mut coords = vec![0u32; n];
            for block in 0..blocks {
                let second = (choice >> (blocks - 1 - block)) & 1;
                coords[2 * block + second] = 1;
            }
            Point::new(coords)
        })
        .collect();
    PointSet::new(lattice, points)
}

/// `{(x, y) : x + y = min(l1, l2) - 1}` on `D_{l1,l2}`.
pub fn diagonal_construction(l1: u32, l2: u32) -> Result<PointSet> {
    let lattice = ChainProduct::new(vec![l1, l2])?;
    let m = l1.min(l2);
    let points = (0..m).map(|x| Point::new(vec![x, m - 1 - x])).collect();
    PointSet::new(lattice, points)
}

/// Builds the set on `D_l^k` whose first `s = ⌊k/k1⌋` blocks of `k1`
/// coordinates each lie in `base` and whose remaining coordinates are zero.
///
/// `base` must live on some `D_l^{k1}` with `k1 <= k`, be strongly
/// cancellative and be an antichain; all three are checked.
pub fn product_composition(base: &PointSet, k: usize) -> Result<PointSet> {
    let base_lattice = base.lattice();
    let l = base_lattice.uniform_length().ok_or_else(|| {
        Error::InvalidParameter(format!("base lattice {base_lattice} is not a power of one chain"))
    })?;
    let k1 = base_lattice.dim();
    if k < k1 {
        return Err(Error::InvalidParameter(format!(
            "target dimension {k} is below the base dimension {k1}"
        )));
    }
    if let Some((a, b)) = base.comparable_pair() {
        return Err(Error::NotAntichain(a.clone(), b.clone()));
    }
    if !verifier::is_strongly_cancellative(base) {
        return Err(Error::NotStronglyCancellative);
    }
    let lattice = ChainProduct::power(l, k)?;
    let blocks = k / k1;
    let size = (base.len() as u128).checked_pow(blocks as u32);
    if size.is_none_or(|s| s > u128::from(crate::lattice::DEFAULT_ENUMERATION_CAP)) {
        return Err(Error::InvalidParameter(format!(
            "composition would have {}^{} points",
            base.len(),
            blocks
        )));
    }

    let mut points = vec![Vec::with_capacity(k)];
    for _ in 0..blocks {
        points = points
            .into_iter()
            .flat_map(|prefix| {
                base.iter().map(move |b| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(b.coords());
                    v
                })
            })
            .collect();
    }
    let points = points
        .into_iter()
        .map(|mut v| {
            v.resize(k, 0);
            Point::new(v)
        })
        .collect();
    PointSet::new(lattice, points)
}

/// `product_composition(diagonal_construction(l, l), k)` on `D_l^k`.
pub fn power_construction(l: u32, k: usize) -> Result<PointSet> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("power construction needs k >= 2, got {k}")));
    }
    product_composition(&diagonal_construction(l, l)?, k)
}
