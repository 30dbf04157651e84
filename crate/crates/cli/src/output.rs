use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde_json::json;

use crate::args::Format;
use crate::CliError;

/// Rows of numbers plus enough context to write CSV, JSON or SVG.
#[derive(Debug, Clone)]
pub struct Table {
    pub subcommand: String,
    pub params: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// number of points per axis when the rows form a 2-D surface
    pub surface: Option<usize>,
}

/// Shortest round-trip form; exponent notation outside [1e-4, 1e15).
pub fn num(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut s = format!("# summa v1, {}, {}\n{}\n", self.subcommand, self.params, self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| num(*v)).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        let v = json!({
            "format": "summa v1",
            "subcommand": self.subcommand,
            "params": self.params,
            "columns": self.columns,
            "rows": self.rows,
        });
        let mut s = serde_json::to_string_pretty(&v).unwrap_or_default();
        s.push('\n');
        s
    }

    pub fn to_svg(&self) -> Result<String, CliError> {
        let value = self.columns.len() - 1;
        match self.surface {
            Some(m) if self.columns.len() >= 3 => Ok(heat_map(self, m, value)),
            None if self.columns.len() >= 2 => Ok(line_plot(self, value)),
            _ => Err(CliError::usage("--format", "svg needs a curve or a 2-D surface")),
        }
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Csv => Ok(self.to_csv()),
            Format::Json => Ok(self.to_json()),
            Format::Svg => self.to_svg(),
        }
    }
}

const W: f64 = 640.0;
const H: f64 = 480.0;
const PAD: f64 = 56.0;

fn range(v: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = v
        .filter(|x| x.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo < 1e-300 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn header(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"{:.1}\" y=\"24\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">{}</text>\n",
        W / 2.0,
        escape(title)
    )
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn label(s: &mut String, x: f64, y: f64, anchor: &str, text: &str) {
    let _ = writeln!(
        s,
        "<text x=\"{x:.1}\" y=\"{y:.1}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"{anchor}\">{}</text>",
        escape(text)
    );
}

fn line_plot(t: &Table, value: usize) -> String {
    let (x0, x1) = range(t.rows.iter().map(|r| r[0]));
    let (y0, y1) = range(t.rows.iter().map(|r| r[value]));
    let px = |x: f64| PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD);
    let py = |y: f64| H - PAD - (y - y0) / (y1 - y0) * (H - 2.0 * PAD);
    let mut s = header(&format!("{}: {}", t.subcommand, t.params));
    let _ = writeln!(
        s,
        "<rect x=\"{PAD}\" y=\"{PAD}\" width=\"{:.1}\" height=\"{:.1}\" fill=\"none\" stroke=\"black\"/>",
        W - 2.0 * PAD,
        H - 2.0 * PAD
    );
    if y0 < 0.0 && y1 > 0.0 {
        let _ = writeln!(
            s,
            "<line x1=\"{PAD}\" y1=\"{0:.2}\" x2=\"{1:.2}\" y2=\"{0:.2}\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>",
            py(0.0),
            W - PAD
        );
    }
    let pts: Vec<String> = t
        .rows
        .iter()
        .filter(|r| r[value].is_finite())
        .map(|r| format!("{:.2},{:.2}", px(r[0]), py(r[value])))
        .collect();
    let _ = writeln!(s, "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"{}\"/>", pts.join(" "));
    label(&mut s, PAD, H - PAD + 16.0, "start", &num(x0));
    label(&mut s, W - PAD, H - PAD + 16.0, "end", &num(x1));
    label(&mut s, PAD - 6.0, H - PAD, "end", &num(y0));
    label(&mut s, PAD - 6.0, PAD + 10.0, "end", &num(y1));
    label(&mut s, W / 2.0, H - 16.0, "middle", &t.columns[0]);
    s.push_str("</svg>\n");
    s
}

const STOPS: [(f64, f64, f64); 5] = [
    (68.0, 1.0, 84.0),
    (59.0, 82.0, 139.0),
    (33.0, 145.0, 140.0),
    (94.0, 201.0, 98.0),
    (253.0, 231.0, 37.0),
];

fn color(u: f64) -> String {
    let u = u.clamp(0.0, 1.0) * (STOPS.len() - 1) as f64;
    let i = (u.floor() as usize).min(STOPS.len() - 2);
    let f = u - i as f64;
    let (a, b) = (STOPS[i], STOPS[i + 1]);
    let mix = |p: f64, q: f64| (p + (q - p) * f).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

fn heat_map(t: &Table, m: usize, value: usize) -> String {
    let (x0, x1) = range(t.rows.iter().map(|r| r[0]));
    let (y0, y1) = range(t.rows.iter().map(|r| r[1]));
    let (v0, v1) = range(t.rows.iter().map(|r| r[value]));
    let side = (H - 2.0 * PAD).min(W - 2.0 * PAD - 60.0);
    let cell = side / m as f64;
    let mut s = header(&format!("{}: {}", t.subcommand, t.params));
    // rows are x-major: row = i*m + j with x = x_i, y = y_j
    for (r, row) in t.rows.iter().enumerate() {
        let (i, j) = (r / m, r % m);
        let _ = writeln!(
            s,
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{}\"/>",
            PAD + i as f64 * cell,
            PAD + (m - 1 - j) as f64 * cell,
            cell + 0.05,
            cell + 0.05,
            color((row[value] - v0) / (v1 - v0))
        );
    }
    let bar_x = PAD + side + 20.0;
    for k in 0..64 {
        let _ = writeln!(
            s,
            "<rect x=\"{bar_x:.1}\" y=\"{:.2}\" width=\"16\" height=\"{:.2}\" fill=\"{}\"/>",
            PAD + side * (63 - k) as f64 / 64.0,
            side / 64.0 + 0.05,
            color(k as f64 / 63.0)
        );
    }
    label(&mut s, bar_x + 20.0, PAD + 10.0, "start", &num(v1));
    label(&mut s, bar_x + 20.0, PAD + side, "start", &num(v0));
    label(&mut s, PAD, PAD + side + 16.0, "start", &num(x0));
    label(&mut s, PAD + side, PAD + side + 16.0, "end", &num(x1));
    label(&mut s, PAD - 6.0, PAD + side, "end", &num(y0));
    label(&mut s, PAD - 6.0, PAD + 10.0, "end", &num(y1));
    s.push_str("</svg>\n");
    s
}

/// Write to the file, or to stdout when no path is given.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io(e.to_string())),
                _ => Ok(()),
            }
        }
    }
}
