use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use super::Sequence;
use crate::error::{Error, Result};
use crate::model::{ActionId, GoalSpec, Model, ProbabilityModel, StateId};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// States popped and expanded.
    pub expansions: usize,
}

#[derive(Clone, Copy, Debug)]
struct Entry {
    score: f64,
    log_p: f64,
    hops: u32,
    state: u32,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Max-heap order: higher score, then fewer hops, then lower state id.
impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.score
            .total_cmp(&other.score)
            .then_with(|| other.hops.cmp(&self.hops))
            .then_with(|| other.state.cmp(&self.state))
    }
}

#[derive(Clone, Copy)]
struct Parent {
    state: u32,
    action: ActionId,
    p: f64,
}

/// Outgoing planning edges of `s`: one per observed result (a posteriori)
/// or one per observed action (a priori). Self-loops and zero-probability
/// edges are dropped.
pub(crate) fn edges(model: &Model, s: StateId, pm: ProbabilityModel, out: &mut Vec<(StateId, ActionId, f64)>) {
    out.clear();
    let g = &model.graph;
    match pm {
        ProbabilityModel::APosteriori => {
            out.extend(g.transitions_from(s).filter(|&(r, _, p)| r != s && p > 0.0));
        }
        ProbabilityModel::APriori => {
            for a in g.observed_actions(s) {
                let (r, p) = g.max_result_unchecked(s, a);
                if r != s && p > 0.0 {
                    out.push((r, a, p));
                }
            }
        }
    }
}

fn search(
    model: &Model,
    source: StateId,
    is_goal: impl Fn(StateId) -> bool,
    pm: ProbabilityModel,
    log_h: impl Fn(StateId) -> f64,
) -> Result<(Sequence, SearchStats)> {
    let n = model.state_count();
    if source.index() >= n {
        return Err(Error::UnknownState(source.0));
    }
    let mut stats = SearchStats::default();
    if is_goal(source) {
        let seq = Sequence {
            states: vec![source],
            actions: Vec::new(),
            step_probabilities: Vec::new(),
            joint_probability: 1.0,
        };
        return Ok((seq, stats));
    }
    let mut best = vec![(f64::NEG_INFINITY, u32::MAX); n];
    let mut parent: Vec<Option<Parent>> = vec![None; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    let mut out = Vec::new();
    best[source.index()] = (0.0, 0);
    heap.push(Entry { score: log_h(source), log_p: 0.0, hops: 0, state: source.0 });
    while let Some(e) = heap.pop() {
        let s = StateId(e.state);
        if settled[s.index()] || (e.log_p, e.hops) != best[s.index()] {
            continue;
        }
        settled[s.index()] = true;
        if is_goal(s) {
            return Ok((trace(source, s, &parent), stats));
        }
        stats.expansions += 1;
        edges(model, s, pm, &mut out);
        for &(r, a, p) in &out {
            if settled[r.index()] {
                continue;
            }
            let lp = e.log_p + p.ln();
            let hops = e.hops + 1;
            let (blp, bh) = best[r.index()];
            if lp > blp || (lp == blp && hops < bh) {
                best[r.index()] = (lp, hops);
                parent[r.index()] = Some(Parent { state: s.0, action: a, p });
                heap.push(Entry { score: lp + log_h(r), log_p: lp, hops, state: r.0 });
            }
        }
    }
    Err(Error::NoPath)
}

fn trace(source: StateId, goal: StateId, parent: &[Option<Parent>]) -> Sequence {
    let mut states = vec![goal];
    let mut actions = Vec::new();
    let mut probs = Vec::new();
    let mut s = goal;
    while s != source {
        let p = parent[s.index()].expect("settled states have parents");
        actions.push(p.action);
        probs.push(p.p);
        s = StateId(p.state);
        states.push(s);
    }
    states.reverse();
    actions.reverse();
    probs.reverse();
    let joint = probs.iter().product();
    Sequence { states, actions, step_probabilities: probs, joint_probability: joint }
}

/// The maximum joint-probability plan from `source` to the first settled
/// goal state.
pub fn infer_sequence(model: &Model, source: StateId, goal: &GoalSpec, pm: ProbabilityModel) -> Result<Sequence> {
    infer_sequence_with_stats(model, source, goal, pm).map(|(s, _)| s)
}

pub fn infer_sequence_with_stats(
    model: &Model,
    source: StateId,
    goal: &GoalSpec,
    pm: ProbabilityModel,
) -> Result<(Sequence, SearchStats)> {
    if let GoalSpec::State(g) = goal {
        if g.index() >= model.state_count() {
            return Err(Error::NoPath);
        }
    }
    search(model, source, |s| goal.is_goal(s, &model.registry), pm, |_| 0.0)
}

/// Best-first search ordered by `heuristic(s) * prefix probability`. With a
/// constant heuristic this is exactly `infer_sequence`.
pub fn astar_infer(
    model: &Model,
    source: StateId,
    goal: StateId,
    pm: ProbabilityModel,
    heuristic: impl Fn(StateId) -> f64,
) -> Result<(Sequence, SearchStats)> {
    if goal.index() >= model.state_count() {
        return Err(Error::NoPath);
    }
    search(model, source, |s| s == goal, pm, |s| heuristic(s).ln())
}

/// Gaussian estimate of the probability of reaching `goal` from `s`, banded
/// around the diagonal of the state index.
pub fn diagonal_heuristic(v1: f64, state_count: usize, goal: StateId) -> impl Fn(StateId) -> f64 {
    let n = state_count as f64;
    let sf = goal.0 as f64;
    move |s: StateId| {
        let si = s.0 as f64;
        let d = 2.0 * n - (sf + si);
        let z = n * (sf - si) / d;
        1.0 / (v1 * (2.0 * PI).sqrt()) * (2.0 * n / d) * (-(1.0 / v1) * z * z).exp()
    }
}
