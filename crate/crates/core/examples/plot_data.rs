//! Writes plot data for the shade pictures at 9, 10 and 12 points.

use blowup_cones::report::emit_plot_data;

fn main() -> blowup_cones::Result<()> {
    let dir = std::env::temp_dir();
    for r in [9, 10, 12] {
        let path = dir.join(format!("blowup-cones-r{r}.csv"));
        let rows = emit_plot_data(r, 4, &path)?;
        println!("{rows} rows -> {}", path.display());
    }
    Ok(())
}
