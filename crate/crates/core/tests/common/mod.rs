//! Test-only oracles, written straight from the definitions and kept
//! independent of the library's hash-map verifier and branch-and-bound.

#![allow(dead_code)]

use cancellative::{ChainProduct, Point, PointSet, Property};

fn meet(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.min(y)).collect()
}

fn join(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Whether the triple `(a1, a2, a3)` of distinct points obeys the anchored
/// conditions of `property`.
fn triple_ok(p: Property, a1: &[u32], a2: &[u32], a3: &[u32]) -> bool {
    let meets = meet(a1, a2) != meet(a1, a3);
    match p {
        Property::Cancellative => meets,
        _ => meets && join(a1, a2) != join(a1, a3),
    }
}

fn quad_ok(a1: &[u32], a2: &[u32], a3: &[u32], a4: &[u32]) -> bool {
    meet(a1, a2) != meet(a3, a4) && join(a1, a2) != join(a3, a4)
}

/// Checks every ordered triple (and quadruple for recovering) of distinct
/// points in which `points[new]` takes part.
fn new_point_ok(p: Property, points: &[&[u32]], new: usize) -> bool {
    let m = points.len();
    let distinct = |t: &[usize]| (0..t.len()).all(|x| (x + 1..t.len()).all(|y| t[x] != t[y]));
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let t = [i, j, k];
                if distinct(&t) && t.contains(&new) && !triple_ok(p, points[i], points[j], points[k]) {
                    return false;
                }
                if p != Property::Recovering {
                    continue;
                }
                for l in 0..m {
                    let q = [i, j, k, l];
                    if distinct(&q) && q.contains(&new) && !quad_ok(points[i], points[j], points[k], points[l]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Literal definition check over all tuples of distinct points.
pub fn naive_satisfies(set: &PointSet, p: Property) -> bool {
    let pts: Vec<&[u32]> = set.iter().map(Point::coords).collect();
    (0..pts.len()).all(|new| new_point_ok(p, &pts[..=new], new))
}

/// Exhaustive maximum over all `2^|L|` subsets (|L| ≤ 20). A subset is
/// tested only if the subset without its last point passed, since all three
/// properties are inherited by subsets.
pub fn exhaustive_max(lattice: &ChainProduct, p: Property) -> usize {
    exhaustive_max_by(lattice, |pts: &[&[u32]]| new_point_ok(p, pts, pts.len() - 1))
}

/// As [`exhaustive_max`], testing each candidate subset with the library
/// verifier instead of the literal definition.
pub fn exhaustive_max_verifier(lattice: &ChainProduct, p: Property) -> usize {
    exhaustive_max_by(lattice, |pts: &[&[u32]]| {
        let points = pts.iter().map(|c| Point::new(c.to_vec())).collect();
        cancellative::verifier::satisfies(&PointSet::new(lattice.clone(), points).unwrap(), p)
    })
}

fn exhaustive_max_by(lattice: &ChainProduct, accept: impl Fn(&[&[u32]]) -> bool) -> usize {
    let all = lattice.enumerate().unwrap();
    let m = all.len();
    assert!(m <= 20, "oracle lattice too large");
    let mut good = vec![false; 1 << m];
    good[0] = true;
    let mut best = 0;
    for mask in 1usize..1 << m {
        let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
        if !good[mask & !(1 << top)] {
            continue;
        }
        let pts: Vec<&[u32]> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| all[i].coords()).collect();
        if accept(&pts) {
            good[mask] = true;
            best = best.max(pts.len());
        }
    }
    best
}

/// Sorted length vectors (each ≥ 2) whose product is at most `cap`.
pub fn small_lattices(cap: u32) -> Vec<ChainProduct> {
    fn grow(prefix: &mut Vec<u32>, product: u32, cap: u32, out: &mut Vec<ChainProduct>) {
        let start = prefix.last().copied().unwrap_or(2);
        for l in start..=cap / product {
            prefix.push(l);
            out.push(ChainProduct::new(prefix.clone()).unwrap());
            grow(prefix, product * l, cap, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), 1, cap, &mut out);
    out
}
