//! Benchmark worlds. Each produces observation strings for the agent and
//! knows its own goal test and optimal solution length.

mod binadd;
mod blocks;
mod grid;
mod hanoi;
mod maze;
mod strips;
mod taxi;

pub use binadd::BinaryAddition;
pub use blocks::{has_sussman_conditions, Blocksworld};
pub use grid::{bfs_distance, Grid};
pub use hanoi::{HanoiAbstraction, TowerOfHanoi};
pub use maze::{generate_maze, MazeTaxi, Neighborhood};
pub use strips::StripsWorld;
pub use taxi::{LocationAbstraction, SimpleTaxi};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::model::{ActionId, GoalSpec};

pub trait Environment: Send {
    fn name(&self) -> String;

    fn action_count(&self) -> usize;

    /// Start a new episode and return the first observation.
    fn reset(&mut self, rng: &mut ChaCha8Rng) -> String;

    /// Apply an action and return the new observation.
    fn step(&mut self, action: ActionId) -> String;

    fn observation(&self) -> String;

    /// Whether the true world state satisfies the goal.
    fn at_goal(&self) -> bool;

    /// Goal test over observation strings, used by the planner.
    fn goal(&self) -> GoalSpec;

    /// Length of the shortest solution from the current state.
    fn optimal_steps(&self) -> Option<usize>;

    /// Rough size of the world's state space, used for the epoch step cap.
    fn state_space_hint(&self) -> usize;
}

/// Replaces the intended action with a uniformly random one at a fixed rate.
#[derive(Clone, Debug)]
pub struct ErrorInjector {
    pub rate: f64,
    rng: ChaCha8Rng,
}

impl ErrorInjector {
    pub fn new(rate: f64, rng: ChaCha8Rng) -> Self {
        assert!((0.0..=1.0).contains(&rate), "error rate must be a probability");
        ErrorInjector { rate, rng }
    }

    pub fn inject(&mut self, action: ActionId, action_count: usize) -> ActionId {
        self.inject_traced(action, action_count).0
    }

    /// The executed action and whether a substitution was drawn.
    pub fn inject_traced(&mut self, action: ActionId, action_count: usize) -> (ActionId, bool) {
        if self.rate > 0.0 && self.rng.gen::<f64>() < self.rate {
            (ActionId(self.rng.gen_range(0..action_count) as u32), true)
        } else {
            (action, false)
        }
    }
}
