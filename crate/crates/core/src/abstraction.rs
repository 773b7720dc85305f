//! Linear abstractions of the true state space and the bounds they induce
//! on convergence time.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::markov::bound_from_norm;

const STOCHASTIC_TOL: f64 = 1e-9;
const MAX_CONDITION: f64 = 1e8;
const IDENTITY_TOL: f64 = 1e-6;

/// Column-stochastic map from true states (columns) to abstract states
/// (rows), with its Moore-Penrose pseudoinverse.
#[derive(Clone, Debug, PartialEq)]
pub struct AbstractionTransform {
    matrix: DMatrix<f64>,
    pinv: DMatrix<f64>,
    goal_true: usize,
    goal_abstract: usize,
}

impl AbstractionTransform {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn pinv(&self) -> &DMatrix<f64> {
        &self.pinv
    }

    pub fn goal_true(&self) -> usize {
        self.goal_true
    }

    /// Abstract state receiving most of the true goal's mass.
    pub fn goal_abstract(&self) -> usize {
        self.goal_abstract
    }

    /// `alpha` without the abstract goal row and the true goal column.
    pub fn alpha_ts(&self) -> DMatrix<f64> {
        self.matrix.clone().remove_row(self.goal_abstract).remove_column(self.goal_true)
    }

    /// `alpha+` without the true goal row and the abstract goal column.
    pub fn pinv_ts(&self) -> DMatrix<f64> {
        self.pinv.clone().remove_row(self.goal_true).remove_column(self.goal_abstract)
    }

    /// The abstract goal column of `alpha+` over non-goal true states.
    pub fn pinv_tg(&self) -> Vec<f64> {
        (0..self.pinv.nrows())
            .filter(|&j| j != self.goal_true)
            .map(|j| self.pinv[(j, self.goal_abstract)])
            .collect()
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(f, "{},{},{},{}", self.matrix.nrows(), self.matrix.ncols(), self.goal_true, self.goal_abstract)?;
        for j in 0..self.matrix.nrows() {
            let row: Vec<String> = (0..self.matrix.ncols()).map(|i| format!("{}", self.matrix[(j, i)])).collect();
            writeln!(f, "{}", row.join(","))?;
        }
        Ok(())
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_path(path)?;
        let mut records = reader.records();
        let header = records.next().ok_or_else(|| Error::Parse("empty transform file".into()))??;
        let h: Vec<usize> = header
            .iter()
            .map(|v| v.trim().parse().map_err(|_| Error::Parse(format!("bad header field {v:?}"))))
            .collect::<Result<_>>()?;
        if h.len() != 4 {
            return Err(Error::Parse("header must be `rows,cols,goal_true,goal_abstract`".into()));
        }
        let mut m = DMatrix::zeros(h[0], h[1]);
        for j in 0..h[0] {
            let rec = records.next().ok_or_else(|| Error::Parse(format!("missing row {j}")))??;
            if rec.len() != h[1] {
                return Err(Error::Parse(format!("row {j} has {} entries", rec.len())));
            }
            for (i, v) in rec.iter().enumerate() {
                m[(j, i)] = v.trim().parse().map_err(|_| Error::Parse(format!("bad number {v:?}")))?;
            }
        }
        let t = make_transform(m, h[2])?;
        if t.goal_abstract != h[3] {
            return Err(Error::Parse("abstract goal index does not match the matrix".into()));
        }
        Ok(t)
    }
}

/// Validate `alpha` and compute its pseudoinverse.
pub fn make_transform(matrix: DMatrix<f64>, goal_true: usize) -> Result<AbstractionTransform> {
    if goal_true >= matrix.ncols() {
        return Err(Error::InvalidArgument(format!("goal {goal_true} outside {} true states", matrix.ncols())));
    }
    for i in 0..matrix.ncols() {
        let col = matrix.column(i);
        if col.iter().any(|&v| !(v >= 0.0)) {
            return Err(Error::InvalidArgument(format!("column {i} has a negative entry")));
        }
        let sum = col.sum();
        if (sum - 1.0).abs() > STOCHASTIC_TOL {
            return Err(Error::NotStochastic { column: i, sum });
        }
    }
    let pinv = pseudoinverse(&matrix)?;
    let col = matrix.column(goal_true);
    let mut goal_abstract = 0;
    for j in 1..col.len() {
        if col[j] > col[goal_abstract] {
            goal_abstract = j;
        }
    }
    Ok(AbstractionTransform { matrix, pinv, goal_true, goal_abstract })
}

/// Deterministic merge: true state `i` maps to abstract state `groups[i]`.
pub fn merge_transform(groups: &[usize], goal_true: usize) -> Result<AbstractionTransform> {
    let rows = groups.iter().max().map_or(0, |&g| g + 1);
    let mut m = DMatrix::zeros(rows, groups.len());
    for (i, &g) in groups.iter().enumerate() {
        m[(g, i)] = 1.0;
    }
    make_transform(m, goal_true)
}

/// Moore-Penrose pseudoinverse through the normal equations on whichever
/// side has full rank.
pub fn pseudoinverse(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let tall = a.nrows() >= a.ncols();
    let gram = if tall { a.transpose() * a } else { a * a.transpose() };
    let eig = SymmetricEigen::new(gram.clone());
    let hi = eig.eigenvalues.iter().cloned().fold(0.0, f64::max);
    let lo = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    let cond = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    if !(cond <= MAX_CONDITION) {
        return Err(Error::RankDeficient(cond));
    }
    let inv = gram.try_inverse().ok_or(Error::RankDeficient(cond))?;
    let pinv = if tall { &inv * a.transpose() } else { a.transpose() * &inv };
    let (check, n) = if tall { (&pinv * a, a.ncols()) } else { (a * &pinv, a.nrows()) };
    if (check - DMatrix::<f64>::identity(n, n)).abs().max() > IDENTITY_TOL {
        return Err(Error::RankDeficient(cond));
    }
    Ok(pinv)
}

/// Push a distribution over true states through `alpha`.
pub fn abstract_distribution(t: &AbstractionTransform, dist: &[f64]) -> Result<Vec<f64>> {
    if dist.len() != t.matrix.ncols() {
        return Err(Error::InvalidArgument(format!(
            "distribution has {} entries, transform expects {}",
            dist.len(),
            t.matrix.ncols()
        )));
    }
    let x = &t.matrix * DVector::from_column_slice(dist);
    Ok(x.iter().copied().collect())
}

/// Largest absolute column sum.
pub fn l1_norm(m: &DMatrix<f64>) -> f64 {
    (0..m.ncols()).map(|i| m.column(i).iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max)
}

/// `||alpha_Ts||_1 * ||alpha+_Ts||_1`.
pub fn norm_product(t: &AbstractionTransform) -> f64 {
    l1_norm(&t.alpha_ts()) * l1_norm(&t.pinv_ts())
}

/// Reciprocal of the norm product; 1 for the identity.
pub fn quality(t: &AbstractionTransform) -> f64 {
    1.0 / norm_product(t)
}

/// L1 norm of the abstract-goal column of `alpha+` over non-goal true
/// states. Zero when no non-goal state is merged into the goal.
pub fn convergence_condition(t: &AbstractionTransform) -> f64 {
    t.pinv_tg().iter().map(|v| v.abs()).sum()
}

/// Bound on steps to reach the goal with probability `threshold` under an
/// abstraction whose norm product is given.
pub fn abstracted_k_p_bound(threshold: f64, l_max: f64, norm_product: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&threshold) {
        return Err(Error::InvalidArgument(format!("threshold {threshold} outside [0, 1)")));
    }
    if !(norm_product >= 0.0) {
        return Err(Error::InvalidArgument(format!("norm product {norm_product} is negative")));
    }
    Ok(bound_from_norm(threshold, l_max, norm_product))
}

/// Quality recovered from measured convergence times with and without the
/// abstraction at threshold `t`.
pub fn empirical_quality(k_p: f64, k_p_alpha: f64, l_max: f64, t: f64) -> Result<f64> {
    if !(k_p > l_max) {
        return Err(Error::InvalidArgument(format!("k_p {k_p} must exceed l_max {l_max}")));
    }
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidArgument(format!("threshold {t} outside (0, 1)")));
    }
    Ok(t.powf((k_p - k_p_alpha) / (k_p - l_max)))
}

/// Expected steps per epoch as a function of epoch count.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LearningCurvePrediction {
    pub l_max: f64,
    pub k_p: f64,
}

impl LearningCurvePrediction {
    pub fn at(&self, epoch: f64) -> f64 {
        2.0 * (self.l_max - self.k_p) / epoch + self.k_p
    }
}

pub fn predicted_curve(l_max: f64, k_p: f64) -> LearningCurvePrediction {
    LearningCurvePrediction { l_max, k_p }
}
