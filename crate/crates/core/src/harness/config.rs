use serde::{Deserialize, Serialize};

use crate::env::{
    BinaryAddition, Blocksworld, Environment, HanoiAbstraction, LocationAbstraction, MazeTaxi, Neighborhood,
    SimpleTaxi, StripsWorld, TowerOfHanoi,
};
use crate::planner::PolicyConfig;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "domain", rename_all = "kebab-case")]
pub enum Domain {
    Strips,
    TaxiSimple { abstraction: LocationAbstraction },
    TaxiMaze { neighborhood: Neighborhood, with_action: bool },
    Toh { pegs: usize, disks: usize, abstraction: HanoiAbstraction },
    Blocks { blocks: usize },
    Binadd { digits: usize },
}

impl Domain {
    pub fn build(&self) -> Box<dyn Environment> {
        match *self {
            Domain::Strips => Box::new(StripsWorld::new()),
            Domain::TaxiSimple { abstraction } => Box::new(SimpleTaxi::new(abstraction)),
            Domain::TaxiMaze { neighborhood, with_action } => Box::new(MazeTaxi::new(neighborhood, with_action)),
            Domain::Toh { pegs, disks, abstraction } => Box::new(TowerOfHanoi::new(pegs, disks, abstraction)),
            Domain::Blocks { blocks } => Box::new(Blocksworld::new(blocks)),
            Domain::Binadd { digits } => Box::new(BinaryAddition::new(digits)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub domain: Domain,
    pub error_rate: f64,
    pub epochs: usize,
    pub trials: usize,
    pub seed: u64,
    pub policy: PolicyConfig,
    /// Steps after which an epoch is abandoned; defaults to 50 times the
    /// environment's state-space hint.
    pub step_cap: Option<usize>,
    /// Record wall-clock time per epoch. Off keeps output byte-identical
    /// across runs.
    pub record_timing: bool,
    /// Keep each trial's final model in the result.
    pub keep_models: bool,
}

impl ExperimentConfig {
    pub fn new(domain: Domain) -> Self {
        ExperimentConfig {
            domain,
            error_rate: 0.0,
            epochs: 20,
            trials: 10,
            seed: 0,
            policy: PolicyConfig::default(),
            step_cap: None,
            record_timing: false,
            keep_models: false,
        }
    }

    pub fn error_rate(mut self, rate: f64) -> Self {
        self.error_rate = rate;
        self
    }

    pub fn epochs(mut self, epochs: usize) -> Self {
        self.epochs = epochs;
        self
    }

    pub fn trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn policy(mut self, policy: PolicyConfig) -> Self {
        self.policy = policy;
        self
    }

    pub fn step_cap(mut self, cap: usize) -> Self {
        self.step_cap = Some(cap);
        self
    }

    pub fn keep_models(mut self, keep: bool) -> Self {
        self.keep_models = keep;
        self
    }
}
