use crate::config::Format;
use serde::Serialize;
use serde_json::{Map, Value};
use std::fs;
use std::path::{Path, PathBuf};

/// One run directory. Data files are written in full as soon as they are
/// ready, so a run that fails later still leaves what it computed.
pub struct RunDir {
    dir: PathBuf,
    format: Format,
    files: Vec<String>,
}

impl RunDir {
    pub fn create(dir: &Path, format: Format) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self { dir: dir.to_path_buf(), format, files: Vec::new() })
    }

    pub fn files(&self) -> &[String] {
        &self.files
    }

    /// `<stem>.csv` (header row, LF, shortest round-trip floats) or
    /// `<stem>.json` (array of objects).
    pub fn write_rows<T: Serialize>(&mut self, stem: &str, rows: &[T]) -> Result<(), String> {
        let name = match self.format {
            Format::Csv => format!("{stem}.csv"),
            Format::Json => format!("{stem}.json"),
        };
        let path = self.dir.join(&name);
        let err = |e: &dyn std::fmt::Display| format!("{}: {e}", path.display());
        match self.format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_path(&path)
                    .map_err(|e| err(&e))?;
                for row in rows {
                    w.serialize(row).map_err(|e| err(&e))?;
                }
                w.flush().map_err(|e| err(&e))?;
            }
            Format::Json => {
                let mut text = serde_json::to_string_pretty(rows).map_err(|e| err(&e))?;
                text.push('\n');
                fs::write(&path, text).map_err(|e| err(&e))?;
            }
        }
        self.files.push(name);
        Ok(())
    }

    pub fn write_metadata(&self, meta: &Map<String, Value>) -> Result<(), String> {
        let path = self.dir.join("metadata.json");
        let mut text = serde_json::to_string_pretty(meta).map_err(|e| e.to_string())?;
        text.push('\n');
        fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

/// Least-squares slope of `ln|y|` against `ln x`, skipping zeros.
pub fn loglog_exponent(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| **x > 0.0 && y.abs() > 0.0 && y.is_finite())
        .map(|(x, y)| (x.ln(), y.abs().ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx)
}
