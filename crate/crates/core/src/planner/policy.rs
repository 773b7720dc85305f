use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use super::search::infer_sequence;
use super::Sequence;
use crate::model::{ActionId, GoalSpec, Model, ProbabilityModel, StateId};

/// What to do when no plan to the goal exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exploration {
    /// Uniform random action.
    #[default]
    Random,
    /// Uniform among the actions taken least often in the current state.
    LeastChosen,
}

impl std::str::FromStr for Exploration {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "random" => Ok(Exploration::Random),
            "least-chosen" => Ok(Exploration::LeastChosen),
            other => Err(crate::Error::InvalidArgument(format!("unknown exploration {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolicyConfig {
    pub model: ProbabilityModel,
    pub exploration: Exploration,
    /// Sample among actions leading to the plan's next state instead of
    /// taking the planned action.
    pub stochastic_choice: bool,
    pub rng_seed: u64,
    /// Upper end of the uniform prior drawn once per state. When positive,
    /// the agent also explores if the plan's a priori reliability falls
    /// below that state's prior. Zero explores only without a plan.
    #[serde(default)]
    pub prior: f64,
}

impl Default for PolicyConfig {
    fn default() -> Self {
        PolicyConfig {
            model: ProbabilityModel::APosteriori,
            exploration: Exploration::Random,
            stochastic_choice: false,
            rng_seed: 0,
            prior: 0.0,
        }
    }
}

/// Replans on every call and falls back to exploration without a plan.
#[derive(Clone, Debug)]
pub struct Policy {
    pub config: PolicyConfig,
    rng: ChaCha8Rng,
    priors: HashMap<StateId, f64>,
}

impl Policy {
    pub fn new(config: PolicyConfig) -> Self {
        Self::with_rng(config, ChaCha8Rng::seed_from_u64(config.rng_seed))
    }

    pub fn with_rng(config: PolicyConfig, rng: ChaCha8Rng) -> Self {
        Policy { config, rng, priors: HashMap::new() }
    }

    pub fn choose_action(&mut self, model: &Model, current: StateId, goal: &GoalSpec) -> ActionId {
        if !goal.is_empty(&model.registry) {
            if let Ok(seq) = infer_sequence(model, current, goal, self.config.model) {
                if !seq.is_empty() {
                    if self.config.prior > 0.0 && reliability(model, &seq) < self.prior(current) {
                        return self.explore(model, current);
                    }
                    if self.config.stochastic_choice {
                        let weights = stochastic_weights(model, current, seq.states[1]);
                        if let Some(a) = self.sample(&weights) {
                            return a;
                        }
                    }
                    return seq.actions[0];
                }
            }
        }
        self.explore(model, current)
    }

    pub fn explore(&mut self, model: &Model, current: StateId) -> ActionId {
        let n = model.action_count();
        match self.config.exploration {
            Exploration::Random => ActionId(self.rng.gen_range(0..n) as u32),
            Exploration::LeastChosen => {
                let totals: Vec<u64> =
                    (0..n).map(|a| model.graph.source_action_total(current, ActionId(a as u32))).collect();
                let least = *totals.iter().min().expect("at least one action");
                let ties: Vec<usize> = (0..n).filter(|&a| totals[a] == least).collect();
                ActionId(ties[self.rng.gen_range(0..ties.len())] as u32)
            }
        }
    }

    fn prior(&mut self, s: StateId) -> f64 {
        let scale = self.config.prior;
        let rng = &mut self.rng;
        *self.priors.entry(s).or_insert_with(|| rng.gen::<f64>() * scale)
    }

    fn sample(&mut self, weights: &[f64]) -> Option<ActionId> {
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return None;
        }
        let mut x = self.rng.gen::<f64>() * total;
        for (a, &w) in weights.iter().enumerate() {
            if x < w {
                return Some(ActionId(a as u32));
            }
            x -= w;
        }
        weights.iter().rposition(|&w| w > 0.0).map(|a| ActionId(a as u32))
    }
}

/// Chance that executing the plan's actions reproduces its states, from
/// the a priori probabilities.
pub fn reliability(model: &Model, seq: &Sequence) -> f64 {
    seq.actions
        .iter()
        .enumerate()
        .map(|(i, &a)| model.graph.apriori_prob(seq.states[i], a, seq.states[i + 1]).unwrap_or(0.0))
        .product()
}

/// Normalised chance of each action producing `source -> target`, from the
/// a priori probabilities.
pub fn stochastic_weights(model: &Model, source: StateId, target: StateId) -> Vec<f64> {
    let n = model.action_count();
    let raw: Vec<f64> = (0..n)
        .map(|a| model.graph.apriori_prob(source, ActionId(a as u32), target).unwrap_or(0.0))
        .collect();
    let total: f64 = raw.iter().sum();
    if total > 0.0 {
        raw.iter().map(|w| w / total).collect()
    } else {
        raw
    }
}
