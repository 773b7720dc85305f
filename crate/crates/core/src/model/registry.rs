use std::collections::HashMap;

use super::StateId;

/// Bijection between observation strings and dense state ids, assigned in
/// first-seen order.
#[derive(Clone, Debug, Default)]
pub struct StateRegistry {
    ids: HashMap<String, StateId>,
    names: Vec<String>,
}

impl StateRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, observation: &str) -> StateId {
        if let Some(&id) = self.ids.get(observation) {
            return id;
        }
        let id = StateId(self.names.len() as u32);
        self.names.push(observation.to_owned());
        self.ids.insert(observation.to_owned(), id);
        id
    }

    pub fn get(&self, observation: &str) -> Option<StateId> {
        self.ids.get(observation).copied()
    }

    pub fn name(&self, id: StateId) -> Option<&str> {
        self.names.get(id.index()).map(String::as_str)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}
