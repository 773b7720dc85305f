use serde::{Deserialize, Serialize};

use super::fit::fit_reciprocal;
use super::run::{mean_curve, EpochRecord};
use crate::error::{Error, Result};
use crate::markov::{build_transition_matrix, l_max};
use crate::model::{GoalSpec, Model, ProbabilityModel};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KpEstimate {
    /// Mean steps over the final 20% of epochs.
    pub measured: f64,
    /// Asymptote `B` of the reciprocal fit.
    pub predicted: f64,
    pub percent_error: f64,
}

/// Converged steps per epoch, measured from the tail of the mean curve and
/// predicted by the fitted asymptote.
pub fn estimate_k_p(records: &[EpochRecord]) -> Result<KpEstimate> {
    let curve = mean_curve(records);
    if curve.len() < 3 {
        return Err(Error::Degenerate("need at least 3 epochs".into()));
    }
    let tail = (curve.len() as f64 * 0.2).ceil().max(1.0) as usize;
    let measured = curve[curve.len() - tail..].iter().sum::<f64>() / tail as f64;
    let points: Vec<_> = curve.iter().enumerate().map(|(i, &y)| ((i + 1) as f64, y)).collect();
    let predicted = fit_reciprocal(&points)?.b;
    Ok(KpEstimate { measured, predicted, percent_error: 100.0 * (measured - predicted).abs() / measured })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LMaxEstimate {
    pub measured: f64,
    pub predicted: f64,
}

/// Intercept of converged steps regressed on `ln(1 - threshold)`. Needs
/// at least three distinct thresholds.
pub fn regress_l_max(points: &[(f64, f64)]) -> Result<f64> {
    let mut levels: Vec<f64> = points.iter().map(|p| p.0).collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    if levels.len() < 3 {
        return Err(Error::Degenerate(format!("{} error levels, need at least 3", levels.len())));
    }
    if points.iter().any(|p| !(0.0..1.0).contains(&p.0)) {
        return Err(Error::InvalidArgument("thresholds must lie in [0, 1)".into()));
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| (1.0 - p.0).ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(points).map(|(x, p)| (x - mx) * (p.1 - my)).sum();
    Ok(my - sxy / sxx * mx)
}

/// Measured longest path from the regression of `(threshold, k_p)` points
/// against the predicted one read off the model's policy matrix.
pub fn estimate_l_max(
    model: &Model,
    goal: &GoalSpec,
    pm: ProbabilityModel,
    points: &[(f64, f64)],
) -> Result<LMaxEstimate> {
    let measured = regress_l_max(points)?;
    let predicted = l_max(&build_transition_matrix(model, goal, pm)?)? as f64;
    Ok(LMaxEstimate { measured, predicted })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    /// `(threshold, norm product)` for each informative level.
    pub per_level: Vec<(f64, f64)>,
    pub mean: f64,
    pub std_dev: f64,
    pub cv: f64,
}

/// Invert the abstracted bound at each level:
/// `norm = exp(ln(1 - p) / (k_p_alpha - l_max))`. Levels with `p = 0` or
/// `k_p_alpha <= l_max` carry no information and are skipped.
pub fn estimate_abstraction_norms(points: &[(f64, f64)], l_max: f64) -> Result<NormEstimate> {
    let per_level: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(p, k)| p > 0.0 && p < 1.0 && k > l_max)
        .map(|&(p, k)| (p, ((1.0 - p).ln() / (k - l_max)).exp()))
        .collect();
    if per_level.is_empty() {
        return Err(Error::Degenerate("no informative error levels".into()));
    }
    let n = per_level.len() as f64;
    let mean = per_level.iter().map(|e| e.1).sum::<f64>() / n;
    let var = per_level.iter().map(|e| (e.1 - mean).powi(2)).sum::<f64>() / n;
    let std_dev = var.sqrt();
    Ok(NormEstimate { per_level, mean, std_dev, cv: std_dev / mean })
}
