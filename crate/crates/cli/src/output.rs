//! CSV tables, SVG log-log plots and the terminal summary.

use std::fmt::Write as _;
use std::io;
use std::path::{Path, PathBuf};

use sampsmooth_core::analysis::RateTable;

use crate::suites::{Outcome, Table};

/// Twelve significant digits in scientific notation; `nan`/`inf` spelled out.
pub fn fmt_value(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:.11e}")
    }
}

/// Header, rows, footer and the provenance record.
pub fn csv_bytes(table: &Table, provenance: &[String]) -> io::Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row)?;
    }
    for row in &table.footer {
        w.write_record(row)?;
    }
    w.write_record(provenance)?;
    w.into_inner().map_err(|e| e.into_error())
}

pub fn provenance(config_hash: &str) -> Vec<String> {
    vec![
        "#provenance".into(),
        format!("config_sha256={config_hash}"),
        format!("sampsmooth={}", env!("CARGO_PKG_VERSION")),
    ]
}

const W: f64 = 480.0;
const H: f64 = 360.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

/// A self-contained log-log plot of the measured values and the fitted line.
pub fn svg_plot(title: &str, table: &RateTable) -> String {
    let lx: Vec<f64> = table.sigmas.iter().map(|s| s.log10()).collect();
    let ly: Vec<f64> = table.values.iter().map(|v| v.log10()).collect();
    let fit: Vec<f64> = table.sigmas.iter().map(|s| table.fitted(*s).log10()).collect();
    let (x0, x1) = bounds(&lx, &[]);
    let (y0, y1) = bounds(&ly, &fit);
    let px = |x: f64| LEFT + (x - x0) / (x1 - x0) * (W - LEFT - RIGHT);
    let py = |y: f64| H - BOTTOM - (y - y0) / (y1 - y0) * (H - TOP - BOTTOM);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="13">{}</text>"#,
        W / 2.0,
        escape(title)
    );
    let (bx0, by0, bx1, by1) = (LEFT, TOP, W - RIGHT, H - BOTTOM);
    let _ = writeln!(
        s,
        r#"<rect x="{bx0}" y="{by0}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        bx1 - bx0,
        by1 - by0
    );
    // σ ticks at the ladder rungs, value ticks at powers of ten
    for (x, sigma) in lx.iter().zip(&table.sigmas) {
        let tx = px(*x);
        let _ = writeln!(
            s,
            r#"<line x1="{tx:.2}" y1="{by1}" x2="{tx:.2}" y2="{}" stroke="black"/>"#,
            by1 + 4.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{tx:.2}" y="{}" text-anchor="middle">{sigma}</text>"#,
            by1 + 16.0
        );
    }
    let mut e = y0.ceil() as i32;
    while (e as f64) <= y1 {
        let ty = py(e as f64);
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{ty:.2}" x2="{bx0}" y2="{ty:.2}" stroke="black"/>"#,
            bx0 - 4.0
        );
        let _ = writeln!(
            s,
            r##"<line x1="{bx0}" y1="{ty:.2}" x2="{bx1}" y2="{ty:.2}" stroke="#dddddd"/>"##
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{:.2}" text-anchor="end">1e{e}</text>"#,
            bx0 - 6.0,
            ty + 4.0
        );
        e += 1;
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">sigma</text>"#,
        (bx0 + bx1) / 2.0,
        H - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#,
        (by0 + by1) / 2.0,
        (by0 + by1) / 2.0,
        escape(&table.name)
    );
    let line: Vec<String> = lx
        .iter()
        .zip(&fit)
        .map(|(x, y)| format!("{:.2},{:.2}", px(*x), py(*y)))
        .collect();
    let _ = writeln!(
        s,
        r##"<polyline points="{}" fill="none" stroke="#c0392b" stroke-dasharray="5,3"/>"##,
        line.join(" ")
    );
    for (x, y) in lx.iter().zip(&ly) {
        let _ = writeln!(
            s,
            r##"<circle cx="{:.2}" cy="{:.2}" r="3" fill="#2c3e50"/>"##,
            px(*x),
            py(*y)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="end">fitted alpha = {:.4}</text>"#,
        bx1 - 6.0,
        by0 + 16.0,
        table.fitted_alpha
    );
    s.push_str("</svg>\n");
    s
}

/// Padded range of finite values; a unit window around a constant.
fn bounds(a: &[f64], b: &[f64]) -> (f64, f64) {
    let finite = a.iter().chain(b).copied().filter(|v| v.is_finite());
    let (lo, hi) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| (l.min(v), h.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    let pad = ((hi - lo) * 0.08).max(0.05);
    (lo - pad, hi + pad)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Writes every table and plot of `outcome` under `dir`; returns the paths
/// in the order written.
pub fn write_all(dir: &Path, outcome: &Outcome, config_hash: &str) -> io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let prov = provenance(config_hash);
    let mut written = Vec::new();
    for table in &outcome.tables {
        let path = dir.join(format!("{}.csv", table.name));
        std::fs::write(&path, csv_bytes(table, &prov)?)?;
        written.push(path);
    }
    for (stem, rate) in &outcome.rates {
        let path = dir.join(format!("{stem}.svg"));
        std::fs::write(&path, svg_plot(stem, rate))?;
        written.push(path);
    }
    Ok(written)
}

/// Human-readable summary table.
pub fn summary_text(outcome: &Outcome) -> String {
    let width = outcome
        .summary
        .iter()
        .map(|l| l.function.len())
        .max()
        .unwrap_or(8)
        .max(8);
    let mut s = format!("{}\n", outcome.title);
    for line in &outcome.summary {
        let _ = writeln!(
            s,
            "  {:<width$}  {}  {}",
            line.function,
            if line.passed { "PASS" } else { "FAIL" },
            line.detail
        );
    }
    let passed = outcome.summary.iter().filter(|l| l.passed).count();
    let _ = writeln!(s, "{passed}/{} passed", outcome.summary.len());
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use sampsmooth_core::analysis::rate_fit;

    #[test]
    fn values_carry_twelve_significant_digits() {
        assert_eq!(fmt_value(0.5), "5.00000000000e-1");
        assert_eq!(fmt_value(1.0 / 3.0), "3.33333333333e-1");
        assert_eq!(fmt_value(256.0), "2.56000000000e2");
        assert_eq!(fmt_value(f64::NAN), "nan");
        assert_eq!(fmt_value(f64::INFINITY), "inf");
    }

    #[test]
    fn csv_has_header_rows_footer_and_provenance() {
        let table = Table {
            name: "t".into(),
            header: vec!["a".into(), "b".into()],
            rows: vec![vec!["1".into(), "2".into()]],
            footer: vec![vec!["#fitted_alpha".into(), "x".into(), "y".into()]],
        };
        let text = String::from_utf8(csv_bytes(&table, &provenance("abc")).unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "a,b");
        assert_eq!(lines[1], "1,2");
        assert_eq!(lines[2], "#fitted_alpha,x,y");
        assert!(lines[3].starts_with("#provenance,config_sha256=abc,sampsmooth="));
    }

    #[test]
    fn svg_is_well_formed_and_deterministic() {
        let sig = [8.0, 16.0, 32.0, 64.0];
        let t = rate_fit("err", &sig, &[1.0, 0.5, 0.25, 0.125]).unwrap();
        let a = svg_plot("x<y", &t);
        assert_eq!(a, svg_plot("x<y", &t));
        assert!(a.starts_with("<svg") && a.trim_end().ends_with("</svg>"));
        assert!(a.contains("x&lt;y"));
        assert_eq!(a.matches("<circle").count(), 4);
        assert!(a.contains("fitted alpha = 1.0000"));
    }
}
