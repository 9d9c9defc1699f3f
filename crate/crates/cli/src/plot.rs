//! Minimal SVG line plots: one stacked panel per plotted column.

use std::fmt::Write;

use crate::table::ResultTable;

const WIDTH: f64 = 480.0;
const PANEL: f64 = 180.0;
const MARGIN: f64 = 50.0;

/// The x column and plotted y columns for a table, or `None` for tables that
/// are not curves (matrices).
pub fn plot_columns(table: &ResultTable) -> Option<(&'static str, Vec<&'static str>)> {
    Some(match table.name.as_str() {
        "block_scaling" => ("L", vec!["S", "beta"]),
        "composite_region_bonds" => ("left_site", vec!["magnitude"]),
        "distance_scan" => ("R", vec!["I", "J", "beta_AB", "Theta_bar"]),
        "wavepacket_trajectory" => ("t", vec!["x", "v"]),
        "wavepacket_redshift" => ("x", vec!["Theta", "redshift_ratio"]),
        _ => return None,
    })
}

fn span(values: &[f64]) -> (f64, f64) {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, lo + 0.5)
    }
}

pub fn svg(table: &ResultTable, x_name: &str, y_names: &[&str]) -> Option<String> {
    let xs = table.column(x_name)?;
    let (x_lo, x_hi) = span(&xs);
    let height = MARGIN + y_names.len() as f64 * (PANEL + MARGIN);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{height}" font-family="sans-serif" font-size="12">"#,
        w = WIDTH + 2.0 * MARGIN
    );
    for (k, name) in y_names.iter().enumerate() {
        let ys = table.column(name)?;
        let (y_lo, y_hi) = span(&ys);
        let top = MARGIN + k as f64 * (PANEL + MARGIN);
        let px = |x: f64| MARGIN + (x - x_lo) / (x_hi - x_lo) * WIDTH;
        let py = |y: f64| top + PANEL - (y - y_lo) / (y_hi - y_lo) * PANEL;
        let _ = writeln!(
            out,
            r#"<rect x="{MARGIN}" y="{top}" width="{WIDTH}" height="{PANEL}" fill="none" stroke="gray"/>"#
        );
        let _ = writeln!(out, r#"<text x="{MARGIN}" y="{:.1}">{name} vs {x_name}</text>"#, top - 8.0);
        let _ = writeln!(out, r#"<text x="4" y="{:.1}">{y_hi:.4e}</text>"#, top + 12.0);
        let _ = writeln!(out, r#"<text x="4" y="{:.1}">{y_lo:.4e}</text>"#, top + PANEL);
        let points: Vec<String> = xs.iter().zip(&ys).map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        );
    }
    out.push_str("</svg>\n");
    Some(out)
}
