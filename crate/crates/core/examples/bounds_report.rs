// Best construction against upper bound, and the recovering-set constants.

use cancellative::bounds::{bound_report, case_constants, numeric_max_g};
use cancellative::{ChainProduct, Property};

pub fn run() -> cancellative::Result<()> {
    for spec in ["b:7", "b:10", "d:3,5", "d:3^4", "d:5^6"] {
        let lattice: ChainProduct = spec.parse()?;
        for p in [Property::StronglyCancellative, Property::Recovering] {
            println!("{}", serde_json::to_string(&bound_report(&lattice, p))?);
        }
    }
    let c = case_constants();
    let m = numeric_max_g();
    println!("case 1 {:.7}  case 2 {:.7}  exponent {:.7}", c.case1, c.case2, c.exponent);
    println!("max g = {:.7} at x = {:.4}", m.maximum, m.argmax);
    Ok(())
}

#[allow(dead_code)]
fn main() -> cancellative::Result<()> {
    run()
}
