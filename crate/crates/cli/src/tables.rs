//! CSV table emission. Values are written with full 17-digit precision so
//! emitted files re-parse to the exact in-memory numbers; ranks are written
//! as plain decimals (ties produce halves).

use std::fs;
use std::path::{Path, PathBuf};

use supraclust_core::text::full_precision;
use supraclust_core::Result;

pub fn write_csv<R>(dir: &Path, name: &str, header: &[String], rows: R) -> Result<PathBuf>
where
    R: IntoIterator<Item = Vec<String>>,
{
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let mut writer = csv::Writer::from_path(&path)?;
    writer.write_record(header)?;
    for row in rows {
        writer.write_record(&row)?;
    }
    writer.flush()?;
    Ok(path)
}

pub fn header(fields: &[&str]) -> Vec<String> {
    fields.iter().map(|s| s.to_string()).collect()
}

pub fn value(v: f64) -> String {
    full_precision(v)
}

pub fn rank_text(r: f64) -> String {
    format!("{r}")
}

pub fn flag(flagged: bool) -> String {
    flagged.to_string()
}

/// Absent ratios become empty fields, never infinities.
pub fn optional(v: Option<f64>) -> String {
    v.map(full_precision).unwrap_or_default()
}
