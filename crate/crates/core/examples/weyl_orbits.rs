//! The (-1)-classes as the orbit of the exceptional classes under quadratic
//! transforms, compared with the Diophantine search.

use blowup_cones::enumeration::{
    enumerate_kind, enumerate_numerical_orbits, is_minus_one_class, weyl_orbit_enumerate,
};
use blowup_cones::ClassKind;

fn main() -> blowup_cones::Result<()> {
    for (r, dmax) in [(6, 6), (8, 6), (9, 4), (10, 5)] {
        let orbit = weyl_orbit_enumerate(r, dmax)?;
        let search = enumerate_kind(r, dmax, ClassKind::MinusOne)?;
        println!(
            "r = {r:>2}, d <= {dmax}: {} from the orbit, {} from the search, equal: {}",
            orbit.len(),
            search.len(),
            orbit == search
        );
    }
    // numerical solutions that never reduce to an exceptional class
    let numerical = enumerate_numerical_orbits(10, 6, ClassKind::MinusOne)?;
    for rep in numerical
        .representatives()
        .filter(|c| !is_minus_one_class(c))
    {
        println!("not in the orbit: {rep}");
    }
    Ok(())
}
