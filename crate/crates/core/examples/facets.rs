//! Reductions to the plane and conic-bundle facets for small `r`.
//!
//! Run with `cargo run --example facets -- [max_r] [max_degree]`.

use blowup_cones::facets::facet_report;

fn main() -> blowup_cones::Result<()> {
    let mut args = std::env::args().skip(1);
    let max_r: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(7);
    let dmax: u32 = args.next().and_then(|a| a.parse().ok()).unwrap_or(6);
    println!(
        "{:>3} {:>10} {:>12} {:>9}",
        "r", "reductions", "conic facets", "complete"
    );
    for r in 2..=max_r {
        let rep = facet_report(r, dmax)?;
        println!(
            "{:>3} {:>10} {:>12} {:>9}",
            r,
            rep.reductions.len(),
            rep.conic_facets.len(),
            rep.complete_conic_facets()
        );
    }
    Ok(())
}
