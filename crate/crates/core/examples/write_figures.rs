// Writes all five preset scenarios as CSV into a directory (default
// `figures/`).

use std::path::PathBuf;

use thermal_bell::csv_out::emit_csv;
use thermal_bell::figures::{preset, run_figure};

pub fn write_all(dir: &std::path::Path) -> thermal_bell::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| thermal_bell::Error::Io {
        path: dir.display().to_string(),
        message: e.to_string(),
    })?;
    let mut written = Vec::new();
    for id in 1..=5 {
        let p = preset(id)?;
        let path = dir.join(format!("fig{id}.csv"));
        emit_csv(&run_figure(&p)?, &path)?;
        println!("{}: {} ({} curves)", path.display(), p.title, p.curves.len());
        written.push(path);
    }
    Ok(written)
}

#[allow(dead_code)]
fn main() -> thermal_bell::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "figures".into());
    write_all(dir.as_ref()).map(|_| ())
}
