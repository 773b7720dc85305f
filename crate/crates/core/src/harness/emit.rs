use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;

use super::fit::FitResult;
use super::run::EpochRecord;
use crate::error::{Error, Result};

/// One row of the fit summary file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitRow {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "R2")]
    pub r2: f64,
    pub off_linear_pct: f64,
    pub k_p_measured: f64,
    pub k_p_predicted: f64,
    pub l_max_measured: Option<f64>,
    pub l_max_predicted: Option<f64>,
}

/// Header is written even when `records` is empty.
pub fn write_epochs_csv(records: &[EpochRecord], path: &Path) -> Result<()> {
    write_epochs(records, path).map_err(|e| e.at(path))
}

fn write_epochs(records: &[EpochRecord], path: &Path) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_path(path)?;
    w.write_record(["trial", "epoch", "steps", "capped", "wall_ms"])?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_epochs_csv(path: &Path) -> Result<Vec<EpochRecord>> {
    read_epochs(path).map_err(|e| e.at(path))
}

fn read_epochs(path: &Path) -> Result<Vec<EpochRecord>> {
    let mut r = csv::Reader::from_path(path)?;
    let mut out = Vec::new();
    for row in r.deserialize() {
        out.push(row?);
    }
    Ok(out)
}

/// Per-epoch mean steps next to the fitted curve.
pub fn write_series_csv(curve: &[f64], fit: &FitResult, path: &Path) -> Result<()> {
    write_series(curve, fit, path).map_err(|e| e.at(path))
}

fn write_series(curve: &[f64], fit: &FitResult, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["epoch", "mean_steps", "fit_steps"])?;
    for (i, y) in curve.iter().enumerate() {
        let k = (i + 1) as f64;
        w.write_record([(i + 1).to_string(), y.to_string(), fit.at(k).to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Write the epoch table, the fit summary and the plotted series into `dir`.
pub fn emit_results(records: &[EpochRecord], curve: &[f64], fit: &FitResult, row: &FitRow, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::from(e).at(dir))?;
    write_epochs_csv(records, &dir.join("epochs.csv"))?;
    write_series_csv(curve, fit, &dir.join("series.csv"))?;
    let path = dir.join("fit.csv");
    let write = || -> Result<()> {
        let mut w = csv::Writer::from_path(&path)?;
        w.serialize(row)?;
        w.flush()?;
        Ok(())
    };
    write().map_err(|e| e.at(&path))
}
