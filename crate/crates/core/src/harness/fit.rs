use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Least-squares fit of `steps = A / k + B`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub a: f64,
    pub b: f64,
    pub r2: f64,
    pub off_linear_pct: f64,
    pub se_a: f64,
    pub se_b: f64,
    pub points: usize,
}

impl FitResult {
    pub fn at(&self, k: f64) -> f64 {
        self.a / k + self.b
    }
}

/// Regress steps on `1/k`. Needs at least three points and more than one
/// distinct `k`.
pub fn fit_reciprocal(points: &[(f64, f64)]) -> Result<FitResult> {
    if points.len() < 3 {
        return Err(Error::Degenerate(format!("{} points, need at least 3", points.len())));
    }
    if points.iter().any(|&(k, y)| !(k > 0.0) || !y.is_finite()) {
        return Err(Error::InvalidArgument("epochs must be positive and steps finite".into()));
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| 1.0 / p.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx <= 0.0 {
        return Err(Error::Degenerate("all points share one epoch".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let a = sxy / sxx;
    let b = my - a * mx;
    let ss_res: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - (a * x + b)).powi(2)).sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let r2 = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    let sigma2 = if points.len() > 2 { ss_res / (n - 2.0) } else { 0.0 };
    let se_a = (sigma2 / sxx).sqrt();
    let se_b = (sigma2 * (1.0 / n + mx * mx / sxx)).sqrt();
    let mut fit = FitResult { a, b, r2, off_linear_pct: 0.0, se_a, se_b, points: points.len() };
    fit.off_linear_pct = off_linear_pct(points, &fit)?;
    Ok(fit)
}

/// Mean relative deviation of the data from the fitted curve, in percent.
pub fn off_linear_pct(points: &[(f64, f64)], fit: &FitResult) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::Degenerate("no points".into()));
    }
    let total: f64 = points.iter().map(|&(k, y)| ((y - fit.at(k)) / y).abs()).sum();
    Ok(100.0 * total / points.len() as f64)
}
