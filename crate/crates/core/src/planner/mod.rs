//! Maximum-probability plan inference over the learned hypergraph, and the
//! action-selection policy built on it.

mod policy;
mod search;

pub use policy::{reliability, stochastic_weights, Exploration, Policy, PolicyConfig};
pub use search::{astar_infer, diagonal_heuristic, infer_sequence, infer_sequence_with_stats, SearchStats};

use serde::{Deserialize, Serialize};

use crate::model::{ActionId, StateId};

/// A plan: `states[i] --actions[i]--> states[i + 1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sequence {
    pub states: Vec<StateId>,
    pub actions: Vec<ActionId>,
    pub step_probabilities: Vec<f64>,
    pub joint_probability: f64,
}

impl Sequence {
    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn source(&self) -> StateId {
        self.states[0]
    }

    pub fn target(&self) -> StateId {
        *self.states.last().expect("a sequence always holds its source")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("sequence serialises")
    }
}
