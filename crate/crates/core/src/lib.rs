//! Goal agnostic planning: an agent records every observed transition in an
//! incidence hypergraph, plans maximum-probability paths to whatever goal it
//! is given, and is analysed as an absorbing Markov chain.
//!
//! ```
//! use gap::model::{ActionId, GoalSpec, Model, ProbabilityModel};
//! use gap::planner::infer_sequence;
//!
//! let mut m = Model::new(2);
//! let a = m.observe("a");
//! let b = m.observe("b");
//! m.record(a, ActionId(1), b).unwrap();
//! let plan = infer_sequence(&m, a, &GoalSpec::State(b), ProbabilityModel::APosteriori).unwrap();
//! assert_eq!(plan.actions, vec![ActionId(1)]);
//! ```

pub mod abstraction;
pub mod env;
mod error;
pub mod harness;
pub mod markov;
pub mod model;
pub mod planner;

pub use error::{Error, Result};
