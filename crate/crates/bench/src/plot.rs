//! Static SVG line plots, one file per measure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{io_err, BenchError, Result};
use crate::sweep::{Row, SweepResult};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 24.0;
const BOTTOM: f64 = 48.0;
const PALETTE: [&str; 8] = ["#1f5fbf", "#c0392b", "#27ae60", "#222222", "#8e44ad", "#999999", "#d35400", "#16a085"];
const DASHES: [&str; 4] = ["", "6 3", "2 3", "8 3 2 3"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Overlap,
    Concurrence,
}

impl Measure {
    pub fn suffix(self) -> &'static str {
        match self {
            Measure::Overlap => "overlap",
            Measure::Concurrence => "concurrence",
        }
    }

    fn label(self) -> &'static str {
        match self {
            Measure::Overlap => "codeword overlap F_CW",
            Measure::Concurrence => "concurrence",
        }
    }

    fn value(self, r: &Row) -> f64 {
        match self {
            Measure::Overlap => r.f_cw,
            Measure::Concurrence => r.concurrence,
        }
    }
}

/// `<stem>_<measure>.svg`.
pub fn plot_path(stem: &Path, measure: Measure) -> PathBuf {
    let mut s = stem.as_os_str().to_owned();
    s.push(format!("_{}.svg", measure.suffix()));
    PathBuf::from(s)
}

/// Renders one measure; codes with no finite points are dropped and an
/// error is returned if nothing remains.
pub fn render_svg(result: &SweepResult, measure: Measure) -> Result<String> {
    let series: Vec<(&str, Vec<(f64, f64)>)> = result
        .codes()
        .into_iter()
        .map(|code| {
            let pts: Vec<(f64, f64)> = result
                .series(code)
                .map(|r| (r.parameter, measure.value(r)))
                .filter(|(x, y)| x.is_finite() && y.is_finite())
                .collect();
            (code, pts)
        })
        .filter(|(_, pts)| !pts.is_empty())
        .collect();
    if series.is_empty() {
        return Err(BenchError::Plot("no finite data to plot".into()));
    }
    let xs = series.iter().flat_map(|(_, p)| p.iter().map(|q| q.0));
    let (mut x0, mut x1) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    if x1 - x0 < 1e-12 {
        x0 -= 0.5;
        x1 += 0.5;
    }
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + (1.0 - y.clamp(0.0, 1.0)) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#);
    for i in 0..=5 {
        let t = i as f64 / 5.0;
        let (gx, gy) = (sx(x0 + t * (x1 - x0)), sy(t));
        let _ = writeln!(s, r##"<line x1="{gx:.2}" y1="{:.2}" x2="{gx:.2}" y2="{:.2}" stroke="#ddd"/>"##, TOP, TOP + ph);
        let _ = writeln!(s, r##"<line x1="{LEFT}" y1="{gy:.2}" x2="{:.2}" y2="{gy:.2}" stroke="#ddd"/>"##, LEFT + pw);
        let _ = writeln!(
            s,
            r#"<text x="{gx:.2}" y="{:.2}" text-anchor="middle">{:.3}</text>"#,
            TOP + ph + 16.0,
            x0 + t * (x1 - x0)
        );
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{t:.1}</text>"#, LEFT - 6.0, gy + 4.0);
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 10.0,
        result.experiment.parameter_name()
    );
    let _ = writeln!(
        s,
        r#"<text transform="translate(16 {:.2}) rotate(-90)" text-anchor="middle">{}</text>"#,
        TOP + ph / 2.0,
        measure.label()
    );
    for (k, (code, pts)) in series.iter().enumerate() {
        let colour = PALETTE[k % PALETTE.len()];
        let dash = DASHES[k % DASHES.len()];
        let dash_attr = if dash.is_empty() { String::new() } else { format!(r#" stroke-dasharray="{dash}""#) };
        let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="1.6"{dash_attr} points="{}"/>"#,
            path.join(" ")
        );
        let ly = TOP + 14.0 + 18.0 * k as f64;
        let lx = LEFT + pw + 12.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{colour}" stroke-width="1.6"{dash_attr}/>"#,
            lx + 24.0
        );
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">{code}</text>"#, lx + 30.0, ly + 4.0);
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// Writes `<stem>_overlap.svg` and `<stem>_concurrence.svg`.
pub fn emit_plot(result: &SweepResult, stem: &Path) -> Result<Vec<PathBuf>> {
    if result.rows.is_empty() {
        return Err(BenchError::Plot("empty result".into()));
    }
    if let Some(dir) = stem.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    let mut written = Vec::new();
    for m in [Measure::Overlap, Measure::Concurrence] {
        let svg = render_svg(result, m)?;
        let path = plot_path(stem, m);
        std::fs::write(&path, svg).map_err(io_err(&path))?;
        written.push(path);
    }
    Ok(written)
}
