//! Report files written by `verify`.

use std::fs;
use std::path::PathBuf;

use grandlp::ergodic::{ConvergenceRow, TheoremReport};

use crate::config::OutputConfig;
use crate::svg::render_convergence_svg;
use crate::CliError;

pub const CSV_HEADER: &str = "n,diff_grand_norm,argmax_eps";

/// One line per row; floats use 17 significant digits so they round-trip exactly.
pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!("{},{:.16e},{:.16e}\n", r.n, r.diff_grand_norm.value(), r.argmax_eps));
    }
    out
}

fn io_error(path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError::field("io", "output", format!("{}: {e}", path.display()))
}

/// Writes `report.json`, `convergence.csv` and, if enabled and possible, `convergence.svg`.
/// Returns the paths written, in order.
pub fn write_report(output: &OutputConfig, report: &TheoremReport) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(&output.dir).map_err(|e| io_error(&output.dir, e))?;
    let mut written = Vec::new();
    let mut write = |name: &str, contents: String| -> Result<(), CliError> {
        let path = output.dir.join(name);
        fs::write(&path, contents).map_err(|e| io_error(&path, e))?;
        written.push(path);
        Ok(())
    };
    let mut json = serde_json::to_string_pretty(report).expect("report serializes");
    json.push('\n');
    write("report.json", json)?;
    write("convergence.csv", convergence_csv(&report.part_iii.rows))?;
    if output.svg && report.part_iii.rows.len() >= 2 {
        let rows: Vec<(u64, f64)> = report.part_iii.rows.iter().map(|r| (r.n, r.diff_grand_norm.value())).collect();
        let svg = render_convergence_svg(&rows).map_err(|e| CliError::new("svg", e.to_string()))?;
        write("convergence.svg", svg)?;
    }
    Ok(written)
}
