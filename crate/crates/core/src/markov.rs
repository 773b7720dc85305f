//! Absorbing Markov chain view of a learned policy: goal reachability,
//! traps, path-length bounds and convergence-time estimates.

use nalgebra::DMatrix;
use std::collections::{HashMap, VecDeque};
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{GoalSpec, Model, ProbabilityModel, StateId};
use crate::planner::infer_sequence;

const STOCHASTIC_TOL: f64 = 1e-9;

/// Column-stochastic matrix with one absorbing goal column. Entry `(j, i)`
/// is the probability of moving from state `i` to state `j`. Columns are
/// stored sparsely.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionMatrix {
    goal: usize,
    columns: Vec<Vec<(usize, f64)>>,
    /// Model state for each matrix index. The goal index maps to the first
    /// goal member.
    pub states: Vec<StateId>,
}

impl TransitionMatrix {
    pub fn from_columns(goal: usize, columns: Vec<Vec<(usize, f64)>>) -> Result<Self> {
        let n = columns.len();
        if goal >= n {
            return Err(Error::InvalidArgument(format!("goal index {goal} outside {n} states")));
        }
        let mut cleaned = Vec::with_capacity(n);
        for (i, col) in columns.into_iter().enumerate() {
            let mut merged: Vec<(usize, f64)> = Vec::with_capacity(col.len());
            let mut sorted = col;
            sorted.sort_by_key(|&(j, _)| j);
            for (j, p) in sorted {
                if j >= n || !(p >= 0.0) {
                    return Err(Error::InvalidArgument(format!("bad entry ({j}, {i}) = {p}")));
                }
                if p == 0.0 {
                    continue;
                }
                match merged.last_mut() {
                    Some(last) if last.0 == j => last.1 += p,
                    _ => merged.push((j, p)),
                }
            }
            let sum: f64 = merged.iter().map(|e| e.1).sum();
            if (sum - 1.0).abs() > STOCHASTIC_TOL {
                return Err(Error::NotStochastic { column: i, sum });
            }
            if i == goal && merged != [(goal, 1.0)] {
                return Err(Error::InvalidArgument("goal column must be absorbing".into()));
            }
            cleaned.push(merged);
        }
        let states = (0..n as u32).map(StateId).collect();
        Ok(TransitionMatrix { goal, columns: cleaned, states })
    }

    pub fn from_dense(matrix: &DMatrix<f64>, goal: usize) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::InvalidArgument("matrix must be square".into()));
        }
        let columns = (0..matrix.ncols())
            .map(|i| (0..matrix.nrows()).filter(|&j| matrix[(j, i)] != 0.0).map(|j| (j, matrix[(j, i)])).collect())
            .collect();
        Self::from_columns(goal, columns)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.size();
        let mut m = DMatrix::zeros(n, n);
        for (i, col) in self.columns.iter().enumerate() {
            for &(j, p) in col {
                m[(j, i)] = p;
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.columns.len()
    }

    pub fn goal_index(&self) -> usize {
        self.goal
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.columns[col].iter().find(|e| e.0 == row).map_or(0.0, |e| e.1)
    }

    pub fn column(&self, col: usize) -> &[(usize, f64)] {
        &self.columns[col]
    }

    /// Matrix indices other than the goal, ascending.
    pub fn non_goal(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.size()).filter(move |&i| i != self.goal)
    }

    /// `x -> P x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.size()];
        for (i, col) in self.columns.iter().enumerate() {
            let xi = x[i];
            if xi != 0.0 {
                for &(j, p) in col {
                    y[j] += p * xi;
                }
            }
        }
        y
    }

    /// `r -> r T_s` for a row vector over all indices; the goal entry of the
    /// input is ignored and the goal entry of the output is zero.
    fn row_times_ts(&self, r: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.size()];
        for (i, col) in self.columns.iter().enumerate() {
            if i == self.goal {
                continue;
            }
            out[i] = col.iter().filter(|e| e.0 != self.goal).map(|&(j, p)| r[j] * p).sum();
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(f, "{},{}", self.size(), self.goal)?;
        let dense = self.to_dense();
        for j in 0..self.size() {
            let row: Vec<String> = (0..self.size()).map(|i| format!("{}", dense[(j, i)])).collect();
            writeln!(f, "{}", row.join(","))?;
        }
        Ok(())
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_path(path)?;
        let mut records = reader.records();
        let header = records.next().ok_or_else(|| Error::Parse("empty matrix file".into()))??;
        let field = |i: usize| -> Result<usize> {
            header
                .get(i)
                .and_then(|v| v.trim().parse().ok())
                .ok_or_else(|| Error::Parse("header must be `size,goal_index`".into()))
        };
        let (n, goal) = (field(0)?, field(1)?);
        let mut dense = DMatrix::zeros(n, n);
        for j in 0..n {
            let rec = records.next().ok_or_else(|| Error::Parse(format!("missing row {j}")))??;
            if rec.len() != n {
                return Err(Error::Parse(format!("row {j} has {} entries, expected {n}", rec.len())));
            }
            for (i, v) in rec.iter().enumerate() {
                dense[(j, i)] = v.trim().parse().map_err(|_| Error::Parse(format!("bad number {v:?}")))?;
            }
        }
        Self::from_dense(&dense, goal)
    }
}

/// Policy matrix of the learned model: each non-goal column is the outcome
/// distribution of the action the planner would take there. Goal states are
/// merged into one absorbing index. States without observations self-loop;
/// observed states with no plan mix the outcomes of their observed actions
/// uniformly, as random exploration would.
pub fn build_transition_matrix(model: &Model, goal: &GoalSpec, pm: ProbabilityModel) -> Result<TransitionMatrix> {
    let n = model.state_count();
    let members = goal.members(&model.registry);
    if members.is_empty() {
        return Err(Error::Unreachable);
    }
    let mut index_of = vec![0usize; n];
    let mut states = Vec::new();
    let mut goal_index = None;
    for s in 0..n {
        let id = StateId(s as u32);
        if goal.is_goal(id, &model.registry) {
            index_of[s] = *goal_index.get_or_insert_with(|| {
                states.push(id);
                states.len() - 1
            });
        } else {
            index_of[s] = states.len();
            states.push(id);
        }
    }
    let goal_index = goal_index.expect("members is non-empty");
    let mut columns = vec![Vec::new(); states.len()];
    for (i, &s) in states.iter().enumerate() {
        if i == goal_index {
            columns[i] = vec![(goal_index, 1.0)];
            continue;
        }
        let planned = match infer_sequence(model, s, goal, pm) {
            Ok(seq) if !seq.is_empty() => Some(seq.actions[0]),
            _ => None,
        };
        let actions: Vec<_> = match planned {
            Some(a) => vec![a],
            None => model.graph.observed_actions(s).collect(),
        };
        if actions.is_empty() {
            columns[i] = vec![(i, 1.0)];
            continue;
        }
        let weight = 1.0 / actions.len() as f64;
        let mut col: HashMap<usize, f64> = HashMap::new();
        for a in actions {
            for (r, p) in model.graph.outcome_distribution(s, a) {
                *col.entry(index_of[r.index()]).or_default() += weight * p;
            }
        }
        columns[i] = col.into_iter().collect();
    }
    let mut m = TransitionMatrix::from_columns(goal_index, columns)?;
    m.states = states;
    Ok(m)
}

/// `P^k x`.
pub fn propagate(p: &TransitionMatrix, dist: &[f64], k: usize) -> Vec<f64> {
    let mut x = dist.to_vec();
    for _ in 0..k {
        x = p.apply(&x);
    }
    x
}

/// Probability of having reached the goal within `k` steps from each state,
/// `t_g (I + T_s + ... + T_s^(k-1))`. Indexed like the matrix; the goal
/// entry is 1.
pub fn goal_probability_vector(p: &TransitionMatrix, k: usize) -> Vec<f64> {
    goal_reach(p, k, false)
}

fn goal_reach(p: &TransitionMatrix, k: usize, stop_when_support_stable: bool) -> Vec<f64> {
    let n = p.size();
    let g = p.goal_index();
    let mut term: Vec<f64> = (0..n).map(|i| if i == g { 0.0 } else { p.get(g, i) }).collect();
    let mut sum = if k == 0 { vec![0.0; n] } else { term.clone() };
    let mut support = sum.iter().filter(|&&v| v > 0.0).count();
    for _ in 1..k {
        term = p.row_times_ts(&term);
        for (s, t) in sum.iter_mut().zip(&term) {
            *s += t;
        }
        if stop_when_support_stable {
            let now = sum.iter().filter(|&&v| v > 0.0).count();
            if now == support {
                break;
            }
            support = now;
        }
    }
    sum[g] = 1.0;
    sum
}

/// Probability of being at the goal after `steps` more steps from `dist`.
/// Mass already at the goal counts as reached.
pub fn goal_probability_at(p: &TransitionMatrix, dist: &[f64], steps: usize) -> f64 {
    let g = p.goal_index();
    let reach = goal_probability_vector(p, steps);
    dist[g] + p.non_goal().map(|i| dist[i] * reach[i]).sum::<f64>()
}

/// States from which the goal is never reached.
pub fn detect_traps(p: &TransitionMatrix) -> Vec<usize> {
    // Support of the reach vector only grows, and once a step adds nothing
    // it never will, so stopping there matches k = |S|.
    let reach = goal_reach(p, p.size(), true);
    p.non_goal().filter(|&i| reach[i] <= 0.0).collect()
}

/// Probability mass in trap states after `k` steps from `start`.
pub fn trap_probability(p: &TransitionMatrix, start: &[f64], k: usize) -> f64 {
    let x = propagate(p, start, k);
    detect_traps(p).into_iter().map(|i| x[i]).sum()
}

/// Shortest support-path length to the goal for every state; `None` for
/// states that cannot reach it.
pub fn goal_distances(p: &TransitionMatrix) -> Vec<Option<usize>> {
    let n = p.size();
    let mut preds = vec![Vec::new(); n];
    for (i, col) in p.columns.iter().enumerate() {
        for &(j, _) in col {
            if i != j {
                preds[j].push(i);
            }
        }
    }
    let mut dist = vec![None; n];
    dist[p.goal_index()] = Some(0);
    let mut queue = VecDeque::from([p.goal_index()]);
    while let Some(j) = queue.pop_front() {
        let d = dist[j].expect("queued states have distances");
        for &i in &preds[j] {
            if dist[i].is_none() {
                dist[i] = Some(d + 1);
                queue.push_back(i);
            }
        }
    }
    dist
}

/// Longest shortest path to the goal over states that can reach it.
pub fn l_max(p: &TransitionMatrix) -> Result<usize> {
    let dist = goal_distances(p);
    p.non_goal().filter_map(|i| dist[i]).max().ok_or(Error::Unreachable)
}

/// Induced L1 norm (largest absolute column sum) of `T_s^k`.
pub fn ts_power_norm(p: &TransitionMatrix, k: usize) -> f64 {
    let g = p.goal_index();
    let mut r: Vec<f64> = (0..p.size()).map(|i| if i == g { 0.0 } else { 1.0 }).collect();
    for _ in 0..k {
        r = p.row_times_ts(&r);
    }
    p.non_goal().map(|i| r[i]).fold(0.0, f64::max)
}

/// Steps needed to reach the goal with probability at least `threshold`
/// from any non-trap state. Infinite when `T_s^L` does not contract.
pub fn k_p_bound(p: &TransitionMatrix, threshold: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&threshold) {
        return Err(Error::InvalidArgument(format!("threshold {threshold} outside [0, 1)")));
    }
    let l = l_max(p)? as f64;
    if threshold == 0.0 {
        return Ok(l);
    }
    let norm = ts_power_norm(p, l as usize);
    Ok(bound_from_norm(threshold, l, norm))
}

pub(crate) fn bound_from_norm(threshold: f64, l: f64, norm: f64) -> f64 {
    if threshold == 0.0 || norm <= 0.0 {
        l
    } else if norm >= 1.0 {
        f64::INFINITY
    } else {
        (1.0 - threshold).ln() / norm.ln() + l
    }
}
