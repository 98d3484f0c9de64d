//! At nine points the (-1)-rays accumulate on R(-K): few of them stay away
//! from Q, and the angle to R(-K) shrinks with the degree.
//!
//! `cargo run --release --example clustering -- 30`

use blowup_cones::cone::{count_outside_q_eps_orbits, degree_profile};
use blowup_cones::enumeration::enumerate_orbits;
use blowup_cones::ClassKind;

fn main() -> blowup_cones::Result<()> {
    let dmax: u32 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(20);
    let orbits = enumerate_orbits(9, dmax, ClassKind::MinusOne)?;
    println!("{} classes of degree <= {dmax}", orbits.total());
    for eps in [0.2, 0.1, 0.05, 0.02] {
        println!(
            "  farther than {eps} from Q: {}",
            count_outside_q_eps_orbits(&orbits, eps)
        );
    }
    println!(
        "{:>4} {:>9} {:>14} {:>14}",
        "d", "classes", "max d(R, Q)", "max d(R, -K)"
    );
    for p in degree_profile(&orbits) {
        println!(
            "{:>4} {:>9} {:>14.8} {:>14.8}",
            p.d, p.classes, p.max_distance_to_q, p.max_angle_to_minus_k
        );
    }
    Ok(())
}
