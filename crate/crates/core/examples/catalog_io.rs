//! Saving a catalog and loading it back with validation.

use blowup_cones::enumeration::{enumerate_kind, load_catalog, save_catalog};
use blowup_cones::ClassKind;

fn main() -> blowup_cones::Result<()> {
    let catalog = enumerate_kind(7, 6, ClassKind::MinusOne)?;
    let path = std::env::temp_dir().join("blowup-cones-r7.catalog");
    save_catalog(&catalog, &path)?;
    let back = load_catalog(&path)?;
    println!(
        "{} classes written to {}, reloaded equal: {}",
        catalog.len(),
        path.display(),
        back == catalog
    );

    let text =
        std::fs::read_to_string(&path)?.replacen("\"1;1,1,0,0,0,0,0\"", "\"1;1,1,1,0,0,0,0\"", 1);
    std::fs::write(&path, text)?;
    match load_catalog(&path) {
        Ok(_) => println!("tampered file accepted"),
        Err(e) => println!("tampered file rejected: {e}"),
    }
    Ok(())
}
