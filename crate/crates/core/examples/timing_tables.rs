//! Runs the three timing experiments with small settings and writes CSV and
//! SVG next to the current directory.

use p3dk::bench::{self, BenchReport};
use p3dk::MasterKey;

fn show(r: &BenchReport) -> p3dk::Result<()> {
    println!("{} ({}):", r.experiment, r.x_label);
    for row in &r.rows {
        println!("  {:>6}  {:.6} {}", row.label, row.value, r.unit);
    }
    r.emit_csv(format!("{}.csv", r.experiment).as_ref())?;
    r.emit_svg(format!("{}.svg", r.experiment).as_ref())
}

fn main() -> p3dk::Result<()> {
    let key = MasterKey::from_bytes_masked([0x2A; 31]);
    show(&bench::bench_filesize(&[20, 35, 155], &key, 3)?)?;

    let rot = bench::bench_rotations(bench::MAX_ROTATIONS, 15)?;
    show(&rot)?;
    println!("  slope {} ms/rotation, R^2 {}", rot.get_meta("slope_ms_per_rotation").unwrap(), rot.get_meta("r_squared").unwrap());

    show(&bench::bench_sboxgen(&bench::DEFAULT_BIT_LENGTHS, 5)?)?;
    Ok(())
}
