use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::{HashSet, VecDeque};

use super::grid::bfs_distance;
use super::Environment;
use crate::model::{ActionId, GoalSpec};

/// Blocks on an unbounded table. Action `b * n + c` moves block `b` onto
/// block `c`, or onto the table when `c == b`; illegal moves do nothing.
/// The goal is one tower with the highest-numbered block at the bottom.
///
/// The start is drawn uniformly over all configurations on the first reset
/// and reused by later resets unless resampling is switched on.
#[derive(Clone, Debug)]
pub struct Blocksworld {
    n: usize,
    /// `support[b]` is 0 for the table, otherwise `c + 1` for block `c`.
    support: Vec<u8>,
    starts: Vec<Vec<u8>>,
    start: Option<Vec<u8>>,
    resample: bool,
}

impl Blocksworld {
    pub fn new(n: usize) -> Self {
        assert!((1..=8).contains(&n), "supported block counts are 1..=8");
        let mut w = Blocksworld { n, support: vec![0; n], starts: Vec::new(), start: None, resample: false };
        w.starts = w.all_states();
        w
    }

    /// Draw a fresh start on every reset.
    pub fn resampling(mut self) -> Self {
        self.resample = true;
        self
    }

    pub fn blocks(&self) -> usize {
        self.n
    }

    fn clear(support: &[u8], b: usize) -> bool {
        !support.iter().any(|&s| s as usize == b + 1)
    }

    fn transition(&self, support: &[u8], action: u32) -> Vec<u8> {
        let (b, c) = (action as usize / self.n, action as usize % self.n);
        let mut next = support.to_vec();
        if !Self::clear(support, b) {
            return next;
        }
        if b == c {
            next[b] = 0;
        } else if Self::clear(support, c) {
            next[b] = c as u8 + 1;
        }
        next
    }

    /// Towers listed bottom to top with 1-based block numbers, sorted by
    /// bottom block.
    pub fn stacks_of(support: &[u8]) -> Vec<Vec<usize>> {
        let mut stacks = Vec::new();
        for b in 0..support.len() {
            if support[b] != 0 {
                continue;
            }
            let mut stack = vec![b + 1];
            let mut top = b;
            while let Some(above) = support.iter().position(|&s| s as usize == top + 1) {
                stack.push(above + 1);
                top = above;
            }
            stacks.push(stack);
        }
        stacks
    }

    fn render(support: &[u8]) -> String {
        Self::stacks_of(support)
            .iter()
            .map(|s| format!("[{}]", s.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
            .collect()
    }

    fn goal_support(&self) -> Vec<u8> {
        // block b (0-based) rests on block b + 1; the last is on the table
        (0..self.n).map(|b| if b + 1 == self.n { 0 } else { b as u8 + 2 }).collect()
    }

    /// Every configuration, found by BFS from all blocks on the table.
    pub fn all_states(&self) -> Vec<Vec<u8>> {
        let start = vec![0u8; self.n];
        let mut seen = HashSet::from([start.clone()]);
        let mut order = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            for a in 0..self.action_count() {
                let next = self.transition(&s, a as u32);
                if seen.insert(next.clone()) {
                    order.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        order
    }

    pub fn set_support(&mut self, support: Vec<u8>) {
        assert_eq!(support.len(), self.n);
        self.support = support;
    }

    pub fn stacks(&self) -> Vec<Vec<usize>> {
        Self::stacks_of(&self.support)
    }
}

/// Some block rests above a lower-numbered block, so it has to come off
/// before that block can be placed in the goal tower.
pub fn has_sussman_conditions(stacks: &[Vec<usize>]) -> bool {
    stacks.iter().any(|s| s.windows(2).any(|w| w[1] > w[0]))
}

impl Environment for Blocksworld {
    fn name(&self) -> String {
        format!("blocks({})", self.n)
    }

    fn action_count(&self) -> usize {
        self.n * self.n
    }

    fn reset(&mut self, rng: &mut ChaCha8Rng) -> String {
        if self.resample || self.start.is_none() {
            self.start = Some(self.starts[rng.gen_range(0..self.starts.len())].clone());
        }
        self.support = self.start.clone().expect("start drawn above");
        self.observation()
    }

    fn step(&mut self, action: ActionId) -> String {
        self.support = self.transition(&self.support, action.0);
        self.observation()
    }

    fn observation(&self) -> String {
        Self::render(&self.support)
    }

    fn at_goal(&self) -> bool {
        self.support == self.goal_support()
    }

    fn goal(&self) -> GoalSpec {
        let target = Self::render(&self.goal_support());
        GoalSpec::predicate(move |o| o == target)
    }

    fn optimal_steps(&self) -> Option<usize> {
        let goal = self.goal_support();
        bfs_distance(
            self.support.clone(),
            |s| (0..self.action_count()).map(|a| self.transition(s, a as u32)).collect::<Vec<_>>(),
            |s| *s == goal,
        )
    }

    fn state_space_hint(&self) -> usize {
        self.starts.len()
    }
}
