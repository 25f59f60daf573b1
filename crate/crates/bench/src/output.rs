//! CSV tables, metadata sidecars and no-go reports.

use std::io::Write;
use std::path::{Path, PathBuf};

use cwoverlap::gaussian::NogoReport;

use crate::config::Experiment;
use crate::error::{io_err, BenchError, Result};
use crate::sweep::{Row, SweepResult};

pub const CSV_HEADER: [&str; 4] = ["parameter", "code", "f_cw", "concurrence"];

/// Twelve significant digits.
pub fn format_value(x: f64) -> String {
    format!("{x:.11e}")
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> BenchError + '_ {
    move |source| BenchError::Csv { path: path.to_path_buf(), source }
}

/// Writes the table to any sink.
pub fn write_csv_to<W: Write>(result: &SweepResult, sink: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(CSV_HEADER)?;
    for r in &result.rows {
        w.write_record([format_value(r.parameter), r.code.clone(), format_value(r.f_cw), format_value(r.concurrence)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(result: &SweepResult) -> String {
    let mut buf = Vec::new();
    write_csv_to(result, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

/// Sidecar path holding the metadata of `csv_path`.
pub fn meta_path(csv_path: &Path) -> PathBuf {
    let mut s = csv_path.as_os_str().to_owned();
    s.push(".meta");
    PathBuf::from(s)
}

pub fn metadata_string(result: &SweepResult) -> String {
    result.metadata.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
}

/// Writes `path` and its `.meta` sidecar.
pub fn write_csv(result: &SweepResult, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    let file = std::fs::File::create(path).map_err(io_err(path))?;
    write_csv_to(result, std::io::BufWriter::new(file)).map_err(csv_err(path))?;
    let meta = meta_path(path);
    std::fs::write(&meta, metadata_string(result)).map_err(io_err(meta))
}

/// Reads a table written by [`write_csv`]; the sidecar, when present,
/// supplies the experiment kind.
pub fn read_csv(path: &Path) -> Result<SweepResult> {
    let mut r = csv::Reader::from_path(path).map_err(csv_err(path))?;
    let header = r.headers().map_err(csv_err(path))?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(crate::error::config_err(format!("{}: header is not {}", path.display(), CSV_HEADER.join(","))));
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err(path))?;
        let num = |i: usize| {
            rec[i].parse::<f64>().map_err(|e| crate::error::config_err(format!("{}: `{}`: {e}", path.display(), &rec[i])))
        };
        rows.push(Row { parameter: num(0)?, code: rec[1].to_string(), f_cw: num(2)?, concurrence: num(3)? });
    }
    let mut metadata = Vec::new();
    let mut experiment = Experiment::Fig1Gamma;
    if let Ok(text) = std::fs::read_to_string(meta_path(path)) {
        for line in text.lines() {
            if let Some((k, v)) = line.split_once('=') {
                let (k, v) = (k.trim(), v.trim());
                if k == "experiment" {
                    experiment = v.parse()?;
                }
                metadata.push((k.to_string(), v.to_string()));
            }
        }
    }
    Ok(SweepResult { experiment, rows, metadata })
}

pub fn write_report(report: &NogoReport, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    std::fs::write(path, report.to_string()).map_err(io_err(path))
}
