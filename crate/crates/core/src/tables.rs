//! Reproduction tables: construction sizes against upper bounds over a
//! parameter range.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use crate::bounds;
use crate::constructions::{block_construction, power_construction};
use crate::error::{Error, Result};
use crate::io::{Cell, Table};
use crate::verifier::is_strongly_cancellative;

/// Constructions up to this size are built and re-verified for the table.
const VERIFY_LIMIT: u64 = 1 << 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFamily {
    /// Strongly cancellative sets of `B_n`.
    ScBn,
    /// Strongly cancellative sets of `D_{l1,l2}`.
    D2,
    /// Strongly cancellative sets of `D_l^k`.
    Dlk,
    /// Recovering sets of `B_n`.
    RecBn,
}

impl FromStr for TableFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sc-bn" => Ok(TableFamily::ScBn),
            "d2" => Ok(TableFamily::D2),
            "dlk" => Ok(TableFamily::Dlk),
            "rec-bn" => Ok(TableFamily::RecBn),
            _ => Err(Error::InvalidParameter(format!("unknown table family {s:?}"))),
        }
    }
}

/// An inclusive integer range written `a..b` or `a`. `a > b` is empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamRange {
    pub start: u32,
    pub end: u32,
}

impl ParamRange {
    pub fn single(v: u32) -> Self {
        ParamRange { start: v, end: v }
    }

    pub fn iter(&self) -> RangeInclusive<u32> {
        self.start..=self.end
    }
}

impl FromStr for ParamRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidParameter(format!("bad range {s:?}")))
        };
        match s.split_once("..") {
            Some((a, b)) => Ok(ParamRange {
                start: num(a)?,
                end: num(b.trim_start_matches('='))?,
            }),
            None => Ok(ParamRange::single(num(s)?)),
        }
    }
}

impl fmt::Display for ParamRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

fn opt_int(v: Option<u64>) -> Cell {
    v.map_or(Cell::Empty, Cell::Int)
}

fn verified(size: Option<u64>, build: impl FnOnce() -> Result<bool>) -> Cell {
    match size {
        Some(s) if s <= VERIFY_LIMIT => build().map_or(Cell::Empty, Cell::Bool),
        _ => Cell::Empty,
    }
}

/// Rows `n, construction, bound, tight, verified`.
pub fn sc_bn(n: ParamRange) -> Table {
    let mut t = Table::new(&["n", "construction", "bound", "tight", "verified"]);
    for n in n.iter() {
        let n = n as usize;
        let size = bounds::bound_sc_bn(n).ok();
        let check = verified(size, || {
            let s = block_construction(n)?;
            Ok(s.len() as u64 == size.unwrap_or(0) && is_strongly_cancellative(&s))
        });
        t.push(vec![
            Cell::Int(n as u64),
            opt_int(size),
            opt_int(size),
            size.map_or(Cell::Empty, |_| Cell::Bool(true)),
            check,
        ]);
    }
    t
}

/// Rows `l1, l2, construction, bound, tight`.
pub fn d2(l1: ParamRange, l2: ParamRange) -> Table {
    let mut t = Table::new(&["l1", "l2", "construction", "bound", "tight"]);
    for a in l1.iter() {
        for b in l2.iter() {
            if a == 0 || b == 0 {
                continue;
            }
            let size = u64::from(a.min(b));
            let bound = (a.min(b) >= 2).then(|| u64::from(bounds::bound_d2(a, b)));
            t.push(vec![
                Cell::Int(a.into()),
                Cell::Int(b.into()),
                Cell::Int(size),
                opt_int(bound),
                bound.map_or(Cell::Empty, |bd| Cell::Bool(bd == size)),
            ]);
        }
    }
    t
}

/// Rows `l, k, construction, bound, verified`.
pub fn dlk(l: ParamRange, k: ParamRange) -> Table {
    let mut t = Table::new(&["l", "k", "construction", "bound", "verified"]);
    for l in l.iter().filter(|&l| l > 0) {
        for k in k.iter().filter(|&k| k > 0) {
            let k = k as usize;
            let size = if k >= 2 {
                bounds::power_construction_size(l, k)
            } else {
                None
            };
            let check = verified(size, || {
                let s = power_construction(l, k)?;
                Ok(Some(s.len() as u64) == size && is_strongly_cancellative(&s))
            });
            t.push(vec![
                Cell::Int(l.into()),
                Cell::Int(k as u64),
                opt_int(size),
                Cell::Float(bounds::bound_dlk(l, k)),
                check,
            ]);
        }
    }
    t
}

/// Rows `n, bound, pair_bound` with `pair_bound = bound²`.
pub fn rec_bn(n: ParamRange) -> Table {
    let mut t = Table::new(&["n", "bound", "pair_bound"]);
    for n in n.iter() {
        let b = bounds::bound_recovering_bn(n as usize);
        t.push(vec![Cell::Int(n.into()), Cell::Float(b), Cell::Float(b * b)]);
    }
    t
}
