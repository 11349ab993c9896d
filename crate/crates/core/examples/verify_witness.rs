// Checks a set against all three properties and prints the canonical
// violation witness when one fails.

use cancellative::constructions::block_construction;
use cancellative::verifier::find_violation;
use cancellative::Property;

pub fn run() -> cancellative::Result<()> {
    let s = block_construction(4)?;
    for p in Property::ALL {
        match find_violation(&s, p) {
            None => println!("{p}: holds"),
            Some(v) => {
                let subsets: Vec<_> = v.witnesses.iter().map(|w| s.lattice().subset_decode(w)).collect::<Result<_, _>>()?;
                println!("{p}: {:?} on subsets {subsets:?} with common value {}", v.kind, v.value);
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> cancellative::Result<()> {
    run()
}
