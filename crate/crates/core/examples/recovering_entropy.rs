// Pair statistics and the entropy sandwich on recovering sets found by
// exact search.

use cancellative::bounds::empirical_recovering_entropy;
use cancellative::search::{exact_max, SearchConfig};
use cancellative::verifier::pair_statistics;
use cancellative::{ChainProduct, LatticeOp, Property};

pub fn run() -> cancellative::Result<()> {
    for n in 2..=5 {
        let r = exact_max(&SearchConfig::new(ChainProduct::boolean(n)?, Property::Recovering))?;
        let s = r.best_set;
        let meet = pair_statistics(&s, LatticeOp::Meet)?;
        let join = pair_statistics(&s, LatticeOp::Join)?;
        let e = empirical_recovering_entropy(&s)?;
        println!(
            "B_{n}: |S| = {}  max pairs per value {}/{}  {:.4} <= H_meet {:.4} <= {:.4}  sandwich {}",
            s.len(),
            meet.max_multiplicity,
            join.max_multiplicity,
            e.lower_bound,
            e.h_meet,
            e.marginal_sum_meet,
            e.sandwich_holds()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> cancellative::Result<()> {
    run()
}
