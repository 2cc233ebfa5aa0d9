//! Minimal log-log line chart written as a standalone SVG document.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 64.0;

pub struct Series {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub points: Vec<(f64, f64)>,
}

fn decades(lo: f64, hi: f64) -> (f64, f64) {
    let (a, b) = (lo.log10().floor(), hi.log10().ceil());
    if a == b {
        (a - 0.5, b + 0.5)
    } else {
        (a, b)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders the series. Every coordinate must be positive and finite.
pub fn render(series: &Series) -> Result<String, String> {
    if series.points.is_empty() {
        return Err("no data points".into());
    }
    if let Some((x, y)) = series.points.iter().find(|(x, y)| !(x.is_finite() && y.is_finite() && *x > 0.0 && *y > 0.0)) {
        return Err(format!("point ({x}, {y}) cannot be drawn on logarithmic axes"));
    }
    let fold = |f: fn(&(f64, f64)) -> f64| {
        let v: Vec<f64> = series.points.iter().map(f).collect();
        (v.iter().copied().fold(f64::INFINITY, f64::min), v.iter().copied().fold(f64::NEG_INFINITY, f64::max))
    };
    let (x0, x1) = {
        let (lo, hi) = fold(|p| p.0);
        decades(lo, hi)
    };
    let (y0, y1) = {
        let (lo, hi) = fold(|p| p.1);
        decades(lo, hi)
    };
    let plot_w = WIDTH - 2.0 * MARGIN;
    let plot_h = HEIGHT - 2.0 * MARGIN;
    let sx = |x: f64| MARGIN + (x.log10() - x0) / (x1 - x0) * plot_w;
    let sy = |y: f64| HEIGHT - MARGIN - (y.log10() - y0) / (y1 - y0) * plot_h;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="15">{}</text>"#,
        WIDTH / 2.0,
        MARGIN / 2.0,
        escape(&series.title)
    );
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        out,
        r#"<path d="M{left} {top} L{left} {bottom} L{right} {bottom}" fill="none" stroke="black"/>"#
    );
    for e in (x0 as i64)..=(x1 as i64) {
        let x = MARGIN + (e as f64 - x0) / (x1 - x0) * plot_w;
        if x < left - 0.5 || x > right + 0.5 {
            continue;
        }
        let _ = writeln!(out, r#"<line x1="{x:.2}" y1="{bottom}" x2="{x:.2}" y2="{}" stroke="black"/>"#, bottom + 5.0);
        let _ = writeln!(
            out,
            r#"<text x="{x:.2}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="11">1e{e}</text>"#,
            bottom + 18.0
        );
    }
    for e in (y0 as i64)..=(y1 as i64) {
        let y = HEIGHT - MARGIN - (e as f64 - y0) / (y1 - y0) * plot_h;
        if y < top - 0.5 || y > bottom + 0.5 {
            continue;
        }
        let _ = writeln!(out, r#"<line x1="{}" y1="{y:.2}" x2="{left}" y2="{y:.2}" stroke="black"/>"#, left - 5.0);
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="11">1e{e}</text>"#,
            left - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 16.0,
        escape(&series.x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="16" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12" transform="rotate(-90 16 {})">{}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(&series.y_label)
    );
    let coords: Vec<String> = series.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
    let _ = writeln!(out, r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="2"/>"#, coords.join(" "));
    for &(x, y) in &series.points {
        let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="steelblue"/>"#, sx(x), sy(y));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(points: Vec<(f64, f64)>) -> Series {
        Series {
            title: "t".into(),
            x_label: "n".into(),
            y_label: "error".into(),
            points,
        }
    }

    #[test]
    fn one_marker_per_point() {
        let svg = render(&series(vec![(16.0, 1e-2), (64.0, 3e-3), (256.0, 8e-4)])).unwrap();
        assert_eq!(svg.matches("<circle").count(), 3);
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(render(&series(vec![(1.0, 0.0)])).is_err());
        assert!(render(&series(vec![])).is_err());
    }

    #[test]
    fn single_decade_is_widened() {
        let svg = render(&series(vec![(10.0, 0.1)])).unwrap();
        assert!(svg.contains("cx=\"320.00\""));
    }
}
