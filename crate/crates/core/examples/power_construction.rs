// Power and product constructions on D_l^k, with anchored entropies.

use cancellative::bounds::bound_dlk;
use cancellative::constructions::{diagonal_construction, power_construction, product_composition};
use cancellative::verifier::{anchored_entropy, is_strongly_cancellative};
use cancellative::LatticeOp;

pub fn run() -> cancellative::Result<()> {
    for l in 2..=5 {
        for k in 2..=6 {
            let s = power_construction(l, k)?;
            println!(
                "D_{l}^{k}: size {:>3}  bound {:>9.3}  strongly cancellative: {}",
                s.len(),
                bound_dlk(l, k),
                is_strongly_cancellative(&s)
            );
        }
    }
    let composed = product_composition(&diagonal_construction(3, 3)?, 5)?;
    let anchor = &composed.points()[0];
    println!(
        "diagonal of D_3,3 composed to k = 5: size {}, anchored meet entropy at {anchor} = {:.6} (log2 {} = {:.6})",
        composed.len(),
        anchored_entropy(&composed, anchor, LatticeOp::Meet)?,
        composed.len() - 1,
        ((composed.len() - 1) as f64).log2()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> cancellative::Result<()> {
    run()
}
