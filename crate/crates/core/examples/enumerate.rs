//! Counts of (-1)-classes, fibers and the other families by degree.
//!
//! `cargo run --example enumerate -- 7 6`

use blowup_cones::enumeration::enumerate_orbits;
use blowup_cones::ClassKind;

fn main() -> blowup_cones::Result<()> {
    let mut args = std::env::args().skip(1);
    let r: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(7);
    let dmax: u32 = args.next().and_then(|a| a.parse().ok()).unwrap_or(6);
    for kind in ClassKind::ALL {
        let orbits = enumerate_orbits(r, dmax, kind)?;
        println!(
            "{kind:>14}: {} classes in {} permutation orbits",
            orbits.total(),
            orbits.orbits().len()
        );
        for (rep, size) in orbits.orbits().iter().take(6) {
            println!("{:>16}{rep}  x{size}", "");
        }
    }
    Ok(())
}
