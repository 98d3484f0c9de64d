//! Projection of (-1)-classes to the orthogonal complement of K.

use blowup_cones::cone::project_k_perp;
use blowup_cones::DivisorClass;

fn main() -> blowup_cones::Result<()> {
    for r in [8, 10, 11, 13] {
        let e1 = DivisorClass::exceptional(r, 1)?;
        let p = project_k_perp(&e1)?;
        println!("r = {r:>2}: pi(E_1) = ({p}), pi(E_1)^2 = {}", p.square());
    }
    match project_k_perp(&DivisorClass::exceptional(9, 1)?) {
        Ok(_) => unreachable!(),
        Err(e) => println!("r =  9: {e}"),
    }
    Ok(())
}
