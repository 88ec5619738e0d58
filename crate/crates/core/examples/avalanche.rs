//! Single-bit diffusion over random keys and plaintexts.

fn main() -> p3dk::Result<()> {
    let keys = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let report = p3dk::bench::avalanche(keys, 1)?;
    for row in &report.rows {
        println!("{:>5} {:.4}", row.label, row.value);
    }
    Ok(())
}
