use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub label: String,
    pub value: f64,
}

/// Result of one experiment: labelled values in a single unit plus
/// free-form metadata (timestamp, trial counts, fits, reference values).
#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub experiment: String,
    pub x_label: String,
    pub unit: String,
    pub rows: Vec<BenchRow>,
    pub metadata: Vec<(String, String)>,
}

impl BenchReport {
    pub fn new(experiment: &str, x_label: &str, unit: &str) -> Self {
        BenchReport {
            experiment: experiment.to_string(),
            x_label: x_label.to_string(),
            unit: unit.to_string(),
            rows: Vec::new(),
            metadata: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl ToString, value: f64) {
        self.rows.push(BenchRow { label: label.to_string(), value });
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.push((key.to_string(), value.to_string()));
    }

    pub fn get_meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn values(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.value).collect()
    }

    /// `# key: value` comment lines, then `label,value,unit` records.
    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::new();
        let _ = writeln!(out, "# experiment: {}", self.experiment);
        let _ = writeln!(out, "# x_label: {}", self.x_label);
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k}: {}", v.replace('\n', " "));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["label", "value", "unit"]).map_err(csv_err)?;
        for row in &self.rows {
            w.write_record([row.label.as_str(), &row.value.to_string(), &self.unit])
                .map_err(csv_err)?;
        }
        let body = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        out.push_str(&String::from_utf8(body).expect("csv output is utf-8"));
        Ok(out)
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut report = BenchReport::new("", "", "");
        for line in text.lines() {
            let Some(comment) = line.strip_prefix('#') else { continue };
            let Some((k, v)) = comment.trim_start().split_once(": ") else { continue };
            match k {
                "experiment" => report.experiment = v.to_string(),
                "x_label" => report.x_label = v.to_string(),
                _ => report.meta(k, v),
            }
        }
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .has_headers(true)
            .from_reader(text.as_bytes());
        for rec in rdr.records() {
            let rec = rec.map_err(csv_err)?;
            if rec.len() != 3 {
                return Err(Error::Format(format!("expected 3 CSV fields, got {}", rec.len())));
            }
            let value: f64 = rec[1]
                .parse()
                .map_err(|_| Error::Format(format!("bad value {:?}", &rec[1])))?;
            report.unit = rec[2].to_string();
            report.push(&rec[0], value);
        }
        Ok(report)
    }

    pub fn emit_csv(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_csv()?)?;
        Ok(())
    }

    /// Single-polyline line chart. Numeric labels are placed on a linear x
    /// axis; otherwise rows are spaced evenly in order.
    pub fn to_svg(&self) -> String {
        const W: f64 = 640.0;
        const H: f64 = 400.0;
        const L: f64 = 70.0;
        const R: f64 = 20.0;
        const T: f64 = 40.0;
        const B: f64 = 60.0;

        let numeric: Option<Vec<f64>> = self.rows.iter().map(|r| r.label.parse().ok()).collect();
        let xs = numeric.unwrap_or_else(|| (0..self.rows.len()).map(|i| i as f64).collect());
        let ys = self.values();
        let span = |v: &[f64]| {
            let lo = v.iter().copied().fold(f64::INFINITY, f64::min).min(0.0);
            let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if hi > lo { (lo, hi) } else { (lo, lo + 1.0) }
        };
        let (x0, x1) = if xs.is_empty() { (0.0, 1.0) } else { span(&xs) };
        let (y0, y1) = if ys.is_empty() { (0.0, 1.0) } else { span(&ys) };
        let px = |x: f64| L + (x - x0) / (x1 - x0) * (W - L - R);
        let py = |y: f64| H - B - (y - y0) / (y1 - y0) * (H - T - B);

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
            W / 2.0,
            xml_escape(&self.experiment)
        );
        let _ = writeln!(
            s,
            r#"<line x1="{L}" y1="{0}" x2="{1}" y2="{0}" stroke="black"/>"#,
            H - B,
            W - R
        );
        let _ = writeln!(s, r#"<line x1="{L}" y1="{T}" x2="{L}" y2="{}" stroke="black"/>"#, H - B);
        for (i, (x, row)) in xs.iter().zip(&self.rows).enumerate() {
            if xs.len() > 12 && i % 2 == 1 {
                continue;
            }
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="11">{}</text>"#,
                px(*x),
                H - B + 16.0,
                xml_escape(&row.label)
            );
        }
        for k in 0..=4 {
            let y = y0 + (y1 - y0) * k as f64 / 4.0;
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{:.1}" text-anchor="end" font-family="sans-serif" font-size="11">{}</text>"#,
                L - 6.0,
                py(y) + 4.0,
                format_tick(y)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="13">{}</text>"#,
            (L + W - R) / 2.0,
            H - 18.0,
            xml_escape(&self.x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="18" y="{0}" text-anchor="middle" font-family="sans-serif" font-size="13" transform="rotate(-90 18 {0})">{1}</text>"#,
            (T + H - B) / 2.0,
            xml_escape(&format!("{} ({})", self.experiment, self.unit))
        );
        let points: Vec<String> =
            xs.iter().zip(&ys).map(|(x, y)| format!("{:.2},{:.2}", px(*x), py(*y))).collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="steelblue" stroke-width="2" points="{}"/>"#,
            points.join(" ")
        );
        for p in &points {
            let (cx, cy) = p.split_once(',').expect("formatted above");
            let _ = writeln!(s, r#"<circle cx="{cx}" cy="{cy}" r="3" fill="steelblue"/>"#);
        }
        s.push_str("</svg>\n");
        s
    }

    pub fn emit_svg(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_svg())?;
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Format(format!("{other:?}")),
    }
}

fn format_tick(v: f64) -> String {
    if v == 0.0 || (1e-3..1e4).contains(&v.abs()) {
        format!("{}", (v * 1000.0).round() / 1000.0)
    } else {
        format!("{v:.2e}")
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
