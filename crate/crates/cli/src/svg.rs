//! Log-log convergence plot.

use std::fmt::Write;

/// Values below this are drawn at this height.
pub const PLOT_FLOOR: f64 = 1e-16;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 60.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SvgError {
    #[error("at least 2 rows are needed, got {0}")]
    TooFewRows(usize),
    #[error("row n must be positive")]
    NonPositiveN,
}

/// Renders `(n, value)` rows as an SVG 1.1 document with a `C/n` guide through the first row.
///
/// Infinite values are left out of the polyline.
pub fn render_convergence_svg(rows: &[(u64, f64)]) -> Result<String, SvgError> {
    if rows.len() < 2 {
        return Err(SvgError::TooFewRows(rows.len()));
    }
    if rows.iter().any(|&(n, _)| n == 0) {
        return Err(SvgError::NonPositiveN);
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|(_, v)| v.is_finite())
        .map(|&(n, v)| ((n as f64).log10(), v.abs().max(PLOT_FLOOR).log10()))
        .collect();
    let (n0, v0) = (rows[0].0 as f64, rows[0].1.abs().max(PLOT_FLOOR));
    let n1 = rows[rows.len() - 1].0 as f64;
    let guide = [(n0.log10(), v0.log10()), (n1.log10(), (v0 * n0 / n1).max(PLOT_FLOOR).log10())];

    let x_lo = (n0.log10()).floor();
    let x_hi = (n1.log10()).ceil().max(x_lo + 1.0);
    let ys = pts.iter().chain(&guide).map(|p| p.1);
    let y_lo = ys.clone().fold(f64::INFINITY, f64::min).floor();
    let y_hi = ys.fold(f64::NEG_INFINITY, f64::max).ceil().max(y_lo + 1.0);

    let sx = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * (WIDTH - LEFT - RIGHT);
    let sy = |y: f64| TOP + (y_hi - y) / (y_hi - y_lo) * (HEIGHT - TOP - BOTTOM);
    let path = |p: &[(f64, f64)]| p.iter().map(|&(x, y)| format!("{:.3},{:.3}", sx(x), sy(y))).collect::<Vec<_>>().join(" ");

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (x0, x1, y0, y1) = (sx(x_lo), sx(x_hi), sy(y_lo), sy(y_hi));
    let _ = writeln!(s, r#"<g stroke="black" stroke-width="1" fill="none">"#);
    let _ = writeln!(s, r#"<line x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y0:.3}"/>"#);
    let _ = writeln!(s, r#"<line x1="{x0:.3}" y1="{y0:.3}" x2="{x0:.3}" y2="{y1:.3}"/>"#);
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g font-family="sans-serif" font-size="11" fill="black">"#);
    let x_step = decade_step(x_hi - x_lo);
    let mut k = x_lo;
    while k <= x_hi {
        let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">1e{}</text>"#, sx(k), y0 + 16.0, k as i64);
        k += x_step;
    }
    let y_step = decade_step(y_hi - y_lo);
    let mut k = y_lo;
    while k <= y_hi {
        let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}" text-anchor="end">1e{}</text>"#, x0 - 6.0, sy(k) + 4.0, k as i64);
        k += y_step;
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.3}" y="{:.3}" text-anchor="middle" font-size="13">n</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 16.0
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.3}" text-anchor="middle" font-size="13" transform="rotate(-90 18 {:.3})">grand norm of f_av - A_n f</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<polyline fill="none" stroke="gray" stroke-width="1" stroke-dasharray="4 3" points="{}"/>"#,
        path(&guide)
    );
    let _ = writeln!(s, r#"<polyline fill="none" stroke="steelblue" stroke-width="2" points="{}"/>"#, path(&pts));
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

fn decade_step(span: f64) -> f64 {
    (span / 8.0).ceil().max(1.0)
}
