//! Tabular and graphical renderings of a sweep: CSV rows, a serializable
//! document for JSON, and an SVG plot of deficit and concurrence against `p`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dynamics::SweepRecord;
use crate::xstate::XStateParams;

/// A sweep together with the state it was computed for.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepDocument {
    pub params: XStateParams,
    pub records: Vec<SweepRecord>,
}

/// Formats `x` with 12 significant digits: plain decimal for moderate
/// magnitudes, scientific otherwise.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
    if (-5..=11).contains(&exp) {
        let decimals = (11 - exp) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

/// CSV with header `p,deficit_bits,concurrence[,oracle_deficit_bits]`.
/// The oracle column is present iff any record carries an oracle value.
pub fn sweep_csv(records: &[SweepRecord]) -> String {
    let with_oracle = records.iter().any(|r| r.oracle_deficit.is_some());
    let mut out = String::from("p,deficit_bits,concurrence");
    if with_oracle {
        out.push_str(",oracle_deficit_bits");
    }
    out.push('\n');
    for r in records {
        let _ = write!(out, "{},{},{}", format_sig12(r.p), format_sig12(r.deficit), format_sig12(r.concurrence));
        if with_oracle {
            out.push(',');
            if let Some(o) = r.oracle_deficit {
                out.push_str(&format_sig12(o));
            }
        }
        out.push('\n');
    }
    out
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;

fn nice_ceiling(v: f64) -> f64 {
    let v = v.max(0.1);
    (v * 10.0).ceil() / 10.0
}

fn polyline(points: impl Iterator<Item = (f64, f64)>, to_px: impl Fn(f64, f64) -> (f64, f64)) -> String {
    points
        .map(|(x, y)| {
            let (px, py) = to_px(x, y);
            format!("{px:.2},{py:.2}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// SVG plot: deficit as a solid line, concurrence dashed, the oracle deficit
/// (if present) dotted, and a vertical marker at the sudden-death point.
pub fn sweep_svg(records: &[SweepRecord], sudden_death: Option<f64>) -> String {
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let y_max = nice_ceiling(
        records
            .iter()
            .flat_map(|r| [r.deficit, r.concurrence, r.oracle_deficit.unwrap_or(0.0)])
            .filter(|v| v.is_finite())
            .fold(0.0, f64::max),
    );
    let to_px = |x: f64, y: f64| (LEFT + x * plot_w, TOP + plot_h * (1.0 - y.clamp(0.0, y_max) / y_max));

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    // axes
    let (x0, y0) = to_px(0.0, 0.0);
    let (x1, y1) = to_px(1.0, y_max);
    let _ = writeln!(s, r#"<g id="axes" stroke="black" stroke-width="1">"#);
    let _ = writeln!(s, r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y0:.2}"/>"#);
    let _ = writeln!(s, r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{y1:.2}"/>"#);
    for i in 0..=5 {
        let p = i as f64 / 5.0;
        let (px, _) = to_px(p, 0.0);
        let _ = writeln!(s, r#"<line x1="{px:.2}" y1="{y0:.2}" x2="{px:.2}" y2="{:.2}"/>"#, y0 + 5.0);
        let _ = writeln!(s, r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle" stroke="none">{p:.1}</text>"#, y0 + 20.0);
    }
    for i in 0..=4 {
        let v = y_max * i as f64 / 4.0;
        let (_, py) = to_px(0.0, v);
        let _ = writeln!(s, r#"<line x1="{:.2}" y1="{py:.2}" x2="{x0:.2}" y2="{py:.2}"/>"#, x0 - 5.0);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end" stroke="none">{v:.2}</text>"#, x0 - 8.0, py + 4.0);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">decoherence strength p</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">bits / concurrence</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    let deficit = polyline(records.iter().map(|r| (r.p, r.deficit)), to_px);
    let concurrence = polyline(records.iter().map(|r| (r.p, r.concurrence)), to_px);
    let _ = writeln!(
        s,
        r##"<polyline id="deficit" fill="none" stroke="#d62728" stroke-width="2" points="{deficit}"/>"##
    );
    let _ = writeln!(
        s,
        r##"<polyline id="concurrence" fill="none" stroke="#1f77b4" stroke-width="2" stroke-dasharray="8 5" points="{concurrence}"/>"##
    );
    if records.iter().any(|r| r.oracle_deficit.is_some()) {
        let oracle = polyline(records.iter().filter_map(|r| r.oracle_deficit.map(|o| (r.p, o))), to_px);
        let _ = writeln!(
            s,
            r##"<polyline id="oracle-deficit" fill="none" stroke="#2ca02c" stroke-width="1.5" stroke-dasharray="2 3" points="{oracle}"/>"##
        );
    }
    if let Some(ps) = sudden_death {
        let (px, _) = to_px(ps, 0.0);
        let _ = writeln!(
            s,
            r##"<line id="sudden-death" x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="#555555" stroke-width="1.5"/>"##,
            y0 + 8.0,
            y0 - 12.0
        );
        let _ = writeln!(
            s,
            r##"<text x="{px:.2}" y="{:.2}" text-anchor="start" fill="#555555">p* = {ps:.6}</text>"##,
            y0 - 16.0
        );
    }
    let lx = LEFT + plot_w - 170.0;
    let _ = writeln!(
        s,
        r##"<g id="legend"><line x1="{lx:.2}" y1="{t:.2}" x2="{:.2}" y2="{t:.2}" stroke="#d62728" stroke-width="2"/><text x="{:.2}" y="{:.2}">one-way deficit</text><line x1="{lx:.2}" y1="{u:.2}" x2="{:.2}" y2="{u:.2}" stroke="#1f77b4" stroke-width="2" stroke-dasharray="8 5"/><text x="{:.2}" y="{:.2}">concurrence</text></g>"##,
        lx + 30.0,
        lx + 36.0,
        TOP + 14.0,
        lx + 30.0,
        lx + 36.0,
        TOP + 32.0,
        t = TOP + 10.0,
        u = TOP + 28.0,
    );
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(p: f64, d: f64, c: f64, o: Option<f64>) -> SweepRecord {
        SweepRecord { p, deficit: d, concurrence: c, oracle_deficit: o }
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_sig12(0.0), "0");
        assert_eq!(format_sig12(-0.0), "0");
        assert_eq!(format_sig12(1.0), "1.00000000000");
        assert_eq!(format_sig12(0.13061383202860122), "0.130613832029");
        assert_eq!(format_sig12(0.01), "0.0100000000000");
        assert_eq!(format_sig12(1.5e-9), "1.50000000000e-9");
    }

    #[test]
    fn csv_layout() {
        let csv = sweep_csv(&[rec(0.0, 0.5, 0.25, None), rec(1.0, 0.125, 0.0, None)]);
        assert_eq!(csv, "p,deficit_bits,concurrence\n0,0.500000000000,0.250000000000\n1.00000000000,0.125000000000,0\n");
        let csv = sweep_csv(&[rec(0.0, 0.5, 0.25, Some(0.5))]);
        assert!(csv.starts_with("p,deficit_bits,concurrence,oracle_deficit_bits\n"));
        assert!(csv.ends_with(",0.500000000000\n"));
    }

    #[test]
    fn svg_has_both_curves_and_marker() {
        let svg = sweep_svg(&[rec(0.0, 0.13, 0.2, None), rec(0.5, 0.1, 0.0, None), rec(1.0, 0.08, 0.0, None)], Some(0.2176));
        assert!(svg.contains(r#"id="deficit""#));
        assert!(svg.contains(r#"id="concurrence""#));
        assert!(svg.contains(r#"id="sudden-death""#));
        assert!(!svg.contains("oracle-deficit"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}
