//! The learned world model: a registry of observed states and the incidence
//! hypergraph of `(source, result, action)` occasion counts.

mod hypergraph;
mod io;
mod registry;

pub use hypergraph::{IncidenceHypergraph, ListView};
pub use io::{load_model, save_model, SavedModel};
pub use registry::StateRegistry;

use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StateId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ActionId(pub u32);

impl StateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl ActionId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

impl fmt::Display for ActionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

/// One observed transition: `source --action--> result`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Occasion {
    pub source: StateId,
    pub result: StateId,
    pub action: ActionId,
}

impl Occasion {
    pub fn new(source: StateId, action: ActionId, result: StateId) -> Self {
        Occasion { source, result, action }
    }
}

/// Which normalisation the planner reads from the counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbabilityModel {
    /// `P(result | source, action)`, normalised over results.
    APriori,
    /// `P(action | source, result)`, normalised over actions.
    #[default]
    APosteriori,
}

impl std::str::FromStr for ProbabilityModel {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "apriori" => Ok(ProbabilityModel::APriori),
            "aposteriori" => Ok(ProbabilityModel::APosteriori),
            other => Err(crate::Error::InvalidArgument(format!("unknown probability model {other:?}"))),
        }
    }
}

pub type GoalPredicate = Arc<dyn Fn(&str) -> bool + Send + Sync>;

/// A goal is a single state, a set of states, or a predicate over
/// observation strings.
#[derive(Clone)]
pub enum GoalSpec {
    State(StateId),
    Set(HashSet<StateId>),
    Predicate(GoalPredicate),
}

impl GoalSpec {
    pub fn predicate(f: impl Fn(&str) -> bool + Send + Sync + 'static) -> Self {
        GoalSpec::Predicate(Arc::new(f))
    }

    pub fn is_goal(&self, state: StateId, registry: &StateRegistry) -> bool {
        match self {
            GoalSpec::State(g) => *g == state,
            GoalSpec::Set(set) => set.contains(&state),
            GoalSpec::Predicate(f) => registry.name(state).is_some_and(|n| f(n)),
        }
    }

    /// True when no registered state can satisfy the goal yet.
    pub fn is_empty(&self, registry: &StateRegistry) -> bool {
        match self {
            GoalSpec::State(g) => g.index() >= registry.len(),
            GoalSpec::Set(set) => set.is_empty(),
            GoalSpec::Predicate(f) => !registry.names().iter().any(|n| f(n)),
        }
    }

    /// Every registered state satisfying the goal, in id order.
    pub fn members(&self, registry: &StateRegistry) -> Vec<StateId> {
        (0..registry.len() as u32)
            .map(StateId)
            .filter(|&s| self.is_goal(s, registry))
            .collect()
    }
}

impl fmt::Debug for GoalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoalSpec::State(s) => write!(f, "GoalSpec::State({s})"),
            GoalSpec::Set(set) => write!(f, "GoalSpec::Set({} states)", set.len()),
            GoalSpec::Predicate(_) => write!(f, "GoalSpec::Predicate(..)"),
        }
    }
}

/// Registry and hypergraph kept in step: registering a new observation
/// grows the hypergraph.
#[derive(Clone, Debug)]
pub struct Model {
    pub registry: StateRegistry,
    pub graph: IncidenceHypergraph,
}

impl Model {
    pub fn new(action_count: usize) -> Self {
        Model { registry: StateRegistry::new(), graph: IncidenceHypergraph::new(action_count) }
    }

    pub fn observe(&mut self, observation: &str) -> StateId {
        let id = self.registry.register(observation);
        self.graph.ensure_states(self.registry.len());
        id
    }

    pub fn record(&mut self, source: StateId, action: ActionId, result: StateId) -> Result<()> {
        self.graph.record(Occasion::new(source, action, result))
    }

    pub fn action_count(&self) -> usize {
        self.graph.action_count()
    }

    pub fn state_count(&self) -> usize {
        self.registry.len()
    }
}
