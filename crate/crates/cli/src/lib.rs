//! Config-driven experiment runner around `qent-core`: block scaling of
//! entanglement entropy and temperature, composite regions, distance scans of
//! information measures, and wavepacket demos in a local-temperature profile.

pub mod config;
pub mod error;
pub mod pipelines;
pub mod plot;
pub mod table;

use std::path::{Path, PathBuf};

pub use config::ExperimentConfig;
pub use error::{CliError, CliResult};
pub use pipelines::run_experiment;
pub use table::ResultTable;

/// Writes every table as `<name>.csv` (and `<name>.svg` when `plots` is set)
/// into `dir`, returning the paths written.
pub fn write_tables(tables: &[ResultTable], dir: &Path, plots: bool) -> CliResult<Vec<PathBuf>> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CliError::Io { path, source }
    };
    std::fs::create_dir_all(dir).map_err(io(dir))?;
    let mut written = Vec::new();
    for table in tables {
        let path = dir.join(format!("{}.csv", table.name));
        std::fs::write(&path, table.to_csv()).map_err(io(&path))?;
        written.push(path);
        if !plots {
            continue;
        }
        if let Some((x, ys)) = plot::plot_columns(table) {
            if let Some(doc) = plot::svg(table, x, &ys) {
                let path = dir.join(format!("{}.svg", table.name));
                std::fs::write(&path, doc).map_err(io(&path))?;
                written.push(path);
            }
        }
    }
    Ok(written)
}
