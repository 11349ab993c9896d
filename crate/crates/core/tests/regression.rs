//! Frozen maxima from an exhaustive brute force, and ordering invariants
//! between the three properties and the two search modes.

mod common;

use cancellative::search::{exact_max, SearchConfig, SearchMode};
use cancellative::{ChainProduct, Property};

const FROZEN: &[(&str, Property, usize)] = &[
    ("b:2", Property::Cancellative, 3),
    ("b:2", Property::StronglyCancellative, 2),
    ("b:2", Property::Recovering, 2),
    ("b:3", Property::Cancellative, 4),
    ("b:3", Property::StronglyCancellative, 2),
    ("b:3", Property::Recovering, 2),
    ("b:4", Property::Cancellative, 5),
    ("b:4", Property::StronglyCancellative, 4),
    ("b:4", Property::Recovering, 3),
    ("b:5", Property::StronglyCancellative, 4),
    ("b:5", Property::Recovering, 4),
    ("d:3^3", Property::Cancellative, 6),
    ("d:3^3", Property::StronglyCancellative, 4),
    ("d:3^3", Property::Recovering, 4),
];

fn exact(lattice: &ChainProduct, p: Property) -> usize {
    let r = exact_max(&SearchConfig::new(lattice.clone(), p)).unwrap();
    assert!(r.proven_optimal);
    r.best_size
}

#[test]
fn frozen_maxima() {
    for &(spec, p, want) in FROZEN {
        let lattice: ChainProduct = spec.parse().unwrap();
        assert_eq!(exact(&lattice, p), want, "{spec} {p}");
        if lattice.point_count() <= 16 {
            assert_eq!(common::exhaustive_max(&lattice, p), want, "oracle {spec} {p}");
        }
    }
}

#[test]
fn properties_nest() {
    for n in 2..=4 {
        let lattice = ChainProduct::boolean(n).unwrap();
        let [c, sc, rec] = Property::ALL.map(|p| exact(&lattice, p));
        assert!(rec <= sc && sc <= c, "B_{n}: {rec} {sc} {c}");
    }
}

#[test]
fn greedy_never_beats_exact() {
    for lattice in common::small_lattices(16) {
        for p in Property::ALL {
            let g = cancellative::search::run(&SearchConfig::new(lattice.clone(), p).mode(SearchMode::Greedy)).unwrap();
            assert!(g.best_size <= exact(&lattice, p), "{lattice} {p}");
            assert!(cancellative::verifier::satisfies(&g.best_set, p));
        }
    }
}

#[test]
fn oracle_agrees_with_verifier_on_all_subsets_of_b3() {
    let lattice = ChainProduct::boolean(3).unwrap();
    let all = lattice.enumerate().unwrap();
    for mask in 0u32..1 << all.len() {
        let pts = (0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i].clone()).collect();
        let s = cancellative::PointSet::new(lattice.clone(), pts).unwrap();
        for p in Property::ALL {
            assert_eq!(common::naive_satisfies(&s, p), cancellative::verifier::satisfies(&s, p), "{mask:08b} {p}");
        }
    }
}
