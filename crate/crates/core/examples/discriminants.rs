//! The two anticanonical discriminants, exactly in Q(sqrt(r - 1)).

use blowup_cones::cone::{delta_0, delta_s, shift, shifted_canonical_square};
use blowup_cones::enumeration::enumerate_orbits;
use blowup_cones::ClassKind;

fn main() -> blowup_cones::Result<()> {
    for r in [10, 11, 17] {
        println!(
            "r = {r}: s = {}, (K - sL)^2 = {}",
            shift(r)?,
            shifted_canonical_square(r)?
        );
        let orbits = enumerate_orbits(r, 4, ClassKind::MinusOne)?;
        for c in orbits.representatives() {
            let ds = delta_s(c)?;
            println!(
                "  {c}: Delta_0 = {}, Delta_s/4 = {ds} ~ {:.6}",
                delta_0(c),
                ds.to_f64()
            );
        }
    }
    Ok(())
}
