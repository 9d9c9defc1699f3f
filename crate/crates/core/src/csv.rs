//! Plain-text CSV emission of matrices and spectra.

use std::fmt::Write;

use nalgebra::DMatrix;

/// Formats a float with 17 significant digits.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Row-major CSV, one matrix row per line, 17 significant digits.
pub fn matrix_csv(m: &DMatrix<f64>) -> String {
    let mut out = String::with_capacity(m.nrows() * m.ncols() * 24);
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&format_f64(m[(i, j)]));
        }
        out.push('\n');
    }
    out
}

/// Single-column listing with a header line.
pub fn column_csv(header: &str, values: &[f64]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{header}");
    for v in values {
        let _ = writeln!(out, "{}", format_f64(*v));
    }
    out
}
