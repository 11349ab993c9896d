// Builds the block construction on B_n and checks it against the bound.

use cancellative::bounds::bound_sc_bn;
use cancellative::constructions::block_construction;
use cancellative::verifier::is_strongly_cancellative;

pub fn run() -> cancellative::Result<()> {
    for n in 2..=10 {
        let s = block_construction(n)?;
        println!(
            "B_{n:<2} size {:>2}  bound {:>2}  strongly cancellative: {}",
            s.len(),
            bound_sc_bn(n)?,
            is_strongly_cancellative(&s)
        );
    }
    let s = block_construction(4)?;
    println!("B_4 as subsets: {:?}", s.subsets()?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> cancellative::Result<()> {
    run()
}
