use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;

use super::{IncidenceHypergraph, Model, StateRegistry};
use crate::error::{Error, Result};

/// On-disk form: header plus nonzero `[source, result, action, count]` rows.
#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct SavedModel {
    pub state_count: usize,
    pub action_count: usize,
    pub states: Vec<String>,
    pub counts: Vec<(u32, u32, u32, u64)>,
}

impl SavedModel {
    pub fn from_model(model: &Model) -> Self {
        SavedModel {
            state_count: model.registry.len(),
            action_count: model.graph.action_count(),
            states: model.registry.names().to_vec(),
            counts: model.graph.occasions(),
        }
    }

    pub fn into_model(self) -> Result<Model> {
        if self.states.len() != self.state_count {
            return Err(Error::Parse(format!(
                "header says {} states but {} names follow",
                self.state_count,
                self.states.len()
            )));
        }
        let mut registry = StateRegistry::new();
        for name in &self.states {
            registry.register(name);
        }
        if registry.len() != self.state_count {
            return Err(Error::Parse("duplicate state names".into()));
        }
        let graph = IncidenceHypergraph::from_counts(self.state_count, self.action_count, &self.counts)?;
        Ok(Model { registry, graph })
    }
}

pub fn save_model(model: &Model, path: &Path) -> Result<()> {
    let text = serde_json::to_string(&SavedModel::from_model(model))?;
    fs::write(path, text)?;
    Ok(())
}

pub fn load_model(path: &Path) -> Result<Model> {
    let text = fs::read_to_string(path)?;
    let saved: SavedModel = serde_json::from_str(&text)?;
    saved.into_model()
}
