//! Position of (-1)-rays against the shade of Q seen from -K.

use blowup_cones::cone::{anticanonical_shade, shade_discriminant, shade_position, shade_witness};
use blowup_cones::DivisorClass;

fn main() -> blowup_cones::Result<()> {
    for r in [8, 9, 10, 11, 12] {
        let e1 = DivisorClass::exceptional(r, 1)?;
        println!("r = {r:>2}: R(E_1) is {}", anticanonical_shade(&e1)?);
    }
    let k = DivisorClass::canonical(11);
    let beta: DivisorClass = "1;1,1,0,0,0,0,0,0,0,0,0".parse()?;
    println!(
        "r = 11, beta = {beta}: discriminant {}, witness {}, position {}",
        shade_discriminant(&beta, &k)?,
        shade_witness(&beta, &k)?.expect("a witness exists"),
        shade_position(&beta, &k)?
    );
    Ok(())
}
