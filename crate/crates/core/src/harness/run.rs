use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::time::Instant;

use super::config::ExperimentConfig;
use crate::env::{Environment, ErrorInjector};
use crate::error::{Error, Result};
use crate::model::{GoalSpec, Model, StateId};
use crate::planner::Policy;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpochRecord {
    pub trial: usize,
    pub epoch: usize,
    pub steps: usize,
    pub capped: bool,
    pub wall_ms: f64,
}

#[derive(Clone, Debug)]
pub struct TrialResult {
    pub trial: usize,
    pub epochs: Vec<EpochRecord>,
    /// Observation at the start of each epoch.
    pub starts: Vec<String>,
    pub model: Option<Model>,
}

#[derive(Clone, Debug)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub trials: Vec<TrialResult>,
}

impl ExperimentResult {
    pub fn records(&self) -> Vec<EpochRecord> {
        self.trials.iter().flat_map(|t| t.epochs.iter().cloned()).collect()
    }

    pub fn mean_curve(&self) -> Vec<f64> {
        mean_curve(&self.records())
    }
}

/// Generator for one of a trial's independent streams.
pub fn trial_rng(seed: u64, trial: usize, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial as u64));
    rng.set_stream(stream);
    rng
}

const WORLD_STREAM: u64 = 0;
const ERROR_STREAM: u64 = 1;
const POLICY_STREAM: u64 = 2;

/// Run every trial; trials are independent and run in parallel, results
/// are returned in trial order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    if config.epochs == 0 || config.trials == 0 {
        return Err(Error::InvalidArgument("epochs and trials must be positive".into()));
    }
    if !(0.0..=1.0).contains(&config.error_rate) {
        return Err(Error::InvalidArgument(format!("error rate {} is not a probability", config.error_rate)));
    }
    let trials = (0..config.trials).into_par_iter().map(|t| run_trial(config, t)).collect::<Result<Vec<_>>>()?;
    Ok(ExperimentResult { config: config.clone(), trials })
}

/// One agent learning across `config.epochs` episodes with a persistent
/// model.
pub fn run_trial(config: &ExperimentConfig, trial: usize) -> Result<TrialResult> {
    let mut env = config.domain.build();
    let mut world = trial_rng(config.seed, trial, WORLD_STREAM);
    let mut injector = ErrorInjector::new(config.error_rate, trial_rng(config.seed, trial, ERROR_STREAM));
    let mut policy = Policy::with_rng(config.policy, trial_rng(config.seed, trial, POLICY_STREAM));
    let cap = config.step_cap.unwrap_or(50 * env.state_space_hint()).max(1);
    let n_actions = env.action_count();
    let mut agent = Agent::new(env.as_ref());
    let mut epochs = Vec::with_capacity(config.epochs);
    let mut starts = Vec::with_capacity(config.epochs);
    for epoch in 1..=config.epochs {
        let clock = Instant::now();
        let obs = env.reset(&mut world);
        starts.push(obs.clone());
        let mut s = agent.observe(&obs);
        let mut steps = 0;
        let mut capped = false;
        while !env.at_goal() {
            if steps >= cap {
                capped = true;
                break;
            }
            let a = policy.choose_action(&agent.model, s, &agent.goal);
            let executed = injector.inject(a, n_actions);
            let obs = env.step(executed);
            let next = agent.observe(&obs);
            agent.model.record(s, a, next)?;
            s = next;
            steps += 1;
        }
        let wall_ms = if config.record_timing { clock.elapsed().as_secs_f64() * 1e3 } else { 0.0 };
        epochs.push(EpochRecord { trial, epoch, steps, capped, wall_ms });
    }
    let model = config.keep_models.then_some(agent.model);
    Ok(TrialResult { trial, epochs, starts, model })
}

/// The learning model plus the set of registered states that satisfy the
/// environment's goal test.
struct Agent {
    model: Model,
    goal: GoalSpec,
    test: GoalSpec,
}

impl Agent {
    fn new(env: &dyn Environment) -> Self {
        Agent { model: Model::new(env.action_count()), goal: GoalSpec::Set(HashSet::new()), test: env.goal() }
    }

    fn observe(&mut self, obs: &str) -> StateId {
        let before = self.model.state_count();
        let id = self.model.observe(obs);
        if self.model.state_count() > before && self.test.is_goal(id, &self.model.registry) {
            if let GoalSpec::Set(set) = &mut self.goal {
                set.insert(id);
            }
        }
        id
    }
}

/// Mean steps per epoch over all trials, epoch 1 first.
pub fn mean_curve(records: &[EpochRecord]) -> Vec<f64> {
    let epochs = records.iter().map(|r| r.epoch).max().unwrap_or(0);
    let mut sum = vec![0.0; epochs];
    let mut n = vec![0usize; epochs];
    for r in records {
        sum[r.epoch - 1] += r.steps as f64;
        n[r.epoch - 1] += 1;
    }
    sum.iter().zip(&n).map(|(s, &c)| if c > 0 { s / c as f64 } else { f64::NAN }).collect()
}
