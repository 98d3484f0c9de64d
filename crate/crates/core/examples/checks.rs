//! Nagata and `deg^2 >= sum mult^2` verdicts, discriminant sweeps, and the
//! genus-one alignment.

use blowup_cones::checks::{
    alignment_sweep, delta0_sweep, nagata_check, prop34_sweep, shgh_dagger_check, violation_scan,
};
use blowup_cones::DivisorClass;

fn main() -> blowup_cones::Result<()> {
    for text in [
        "3;1,1,1,1,1,1,1,1,1,1",
        "38;12,12,12,12,12,12,12,12,12,12",
        "6;2,2,2,2,2,2,2,2,2,2",
    ] {
        let c: DivisorClass = text.parse()?;
        println!(
            "{c}\n  nagata: {}\n  dagger: {}",
            nagata_check(&c)?,
            shgh_dagger_check(&c)?
        );
    }
    for r in [9, 10, 13] {
        let rep = delta0_sweep(r, 8)?;
        println!(
            "Delta_0 at r = {r}: {} classes, {} violations",
            rep.classes,
            rep.violations.len()
        );
    }
    let rep = prop34_sweep(11, 8)?;
    println!(
        "r = 11: {} classes, {} outside the shade, {} violations",
        rep.classes,
        rep.outside,
        rep.violations.len()
    );
    let align = alignment_sweep(10, 9)?;
    println!(
        "genus-one classes at r = 10, d <= 9: {} (-K: {}, aligned: {}, unaligned orbits: {})",
        align.classes,
        align.anticanonical,
        align.aligned,
        align.unaligned.len()
    );
    let scan = violation_scan(10, 7)?;
    println!(
        "scan r = 10, d <= 7: {} rational, {} open",
        scan.rational.len(),
        scan.open.len()
    );
    for c in scan.open.iter().take(5) {
        println!("  open: {c}");
    }
    Ok(())
}
