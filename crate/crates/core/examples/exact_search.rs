// Exact maxima on small lattices, single- and multi-threaded.

use cancellative::search::{exact_max, SearchConfig};
use cancellative::{ChainProduct, Property};

pub fn run() -> cancellative::Result<()> {
    for spec in ["b:3", "b:4", "b:5", "d:3,4", "d:3^3"] {
        let lattice: ChainProduct = spec.parse()?;
        for p in Property::ALL {
            let r = exact_max(&SearchConfig::new(lattice.clone(), p).threads(4))?;
            println!(
                "{spec:<6} {:<22} max {}  proven {}  nodes {}",
                p.name(),
                r.best_size,
                r.proven_optimal,
                r.nodes_explored
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> cancellative::Result<()> {
    run()
}
