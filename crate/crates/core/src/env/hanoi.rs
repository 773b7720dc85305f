use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::grid::bfs_distance;
use super::Environment;
use crate::model::{ActionId, GoalSpec};

/// Observation functions over peg contents. Disks are numbered from 1
/// (smallest); each peg is listed top first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum HanoiAbstraction {
    /// Full peg contents.
    #[default]
    Full,
    /// Sum over pegs of the product of the disk numbers on the peg (an
    /// empty peg contributes 0).
    AI,
    /// Per-peg sums of disk numbers.
    AII,
    /// Per-peg `(count, top disk)`, with `(0, 0)` for an empty peg.
    AIII,
    /// Per-peg disk counts.
    AIV,
}

impl std::str::FromStr for HanoiAbstraction {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "full" => Ok(Self::Full),
            "AI" => Ok(Self::AI),
            "AII" => Ok(Self::AII),
            "AIII" => Ok(Self::AIII),
            "AIV" => Ok(Self::AIV),
            other => Err(crate::Error::InvalidArgument(format!("unknown hanoi abstraction {other:?}"))),
        }
    }
}

impl HanoiAbstraction {
    pub fn observe(self, pegs: &[Vec<u8>]) -> String {
        let list = |items: Vec<String>| format!("[{}]", items.join(","));
        match self {
            Self::Full => {
                let inner: Vec<String> = pegs.iter().map(|p| list(p.iter().map(u8::to_string).collect())).collect();
                format!("{{{}}}", inner.join(","))
            }
            Self::AI => {
                let total: u64 = pegs
                    .iter()
                    .filter(|p| !p.is_empty())
                    .map(|p| p.iter().map(|&d| d as u64).product::<u64>())
                    .sum();
                total.to_string()
            }
            Self::AII => list(pegs.iter().map(|p| p.iter().map(|&d| d as u32).sum::<u32>().to_string()).collect()),
            Self::AIII => list(
                pegs.iter()
                    .map(|p| format!("({},{})", p.len(), p.first().copied().unwrap_or(0)))
                    .collect(),
            ),
            Self::AIV => list(pegs.iter().map(|p| p.len().to_string()).collect()),
        }
    }
}

/// Tower of Hanoi with `pegs` pegs and `disks` disks. Actions are ordered
/// peg pairs; illegal moves leave the state unchanged.
#[derive(Clone, Debug)]
pub struct TowerOfHanoi {
    disks: usize,
    moves: Vec<(usize, usize)>,
    abstraction: HanoiAbstraction,
    /// Peg of each disk, index 0 = disk 1.
    state: Vec<u8>,
    pegs: usize,
}

impl TowerOfHanoi {
    pub fn new(pegs: usize, disks: usize, abstraction: HanoiAbstraction) -> Self {
        assert!(pegs >= 3 && disks >= 1, "need at least three pegs and one disk");
        let moves = (0..pegs).flat_map(|i| (0..pegs).filter(move |&j| j != i).map(move |j| (i, j))).collect();
        TowerOfHanoi { disks, moves, abstraction, state: vec![0; disks], pegs }
    }

    pub fn moves(&self) -> &[(usize, usize)] {
        &self.moves
    }

    pub fn pegs(&self) -> Vec<Vec<u8>> {
        Self::pegs_of(&self.state, self.pegs)
    }

    fn pegs_of(state: &[u8], pegs: usize) -> Vec<Vec<u8>> {
        let mut out = vec![Vec::new(); pegs];
        for (d, &p) in state.iter().enumerate() {
            out[p as usize].push(d as u8 + 1);
        }
        out
    }

    /// Disk on top of `peg`, if any.
    fn top(state: &[u8], peg: usize) -> Option<usize> {
        state.iter().position(|&p| p as usize == peg)
    }

    fn transition(&self, state: &[u8], action: u32) -> Vec<u8> {
        let mut next = state.to_vec();
        let (from, to) = self.moves[action as usize];
        if let Some(d) = Self::top(state, from) {
            if Self::top(state, to).map_or(true, |t| t > d) {
                next[d] = to as u8;
            }
        }
        next
    }

    fn solved(&self, state: &[u8]) -> bool {
        state.iter().all(|&p| p as usize == self.pegs - 1)
    }

    pub fn set_state(&mut self, state: Vec<u8>) {
        assert_eq!(state.len(), self.disks);
        self.state = state;
    }

    pub fn state(&self) -> &[u8] {
        &self.state
    }

    /// Every legal configuration reachable from the start, via BFS.
    pub fn reachable_states(&self) -> Vec<Vec<u8>> {
        let mut seen = std::collections::HashSet::from([vec![0u8; self.disks]]);
        let mut queue = std::collections::VecDeque::from([vec![0u8; self.disks]]);
        while let Some(s) = queue.pop_front() {
            for a in 0..self.moves.len() {
                let n = self.transition(&s, a as u32);
                if seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
        let mut v: Vec<_> = seen.into_iter().collect();
        v.sort();
        v
    }
}

impl Environment for TowerOfHanoi {
    fn name(&self) -> String {
        format!("toh({},{})", self.pegs, self.disks)
    }

    fn action_count(&self) -> usize {
        self.moves.len()
    }

    fn reset(&mut self, _rng: &mut ChaCha8Rng) -> String {
        self.state = vec![0; self.disks];
        self.observation()
    }

    fn step(&mut self, action: ActionId) -> String {
        self.state = self.transition(&self.state, action.0);
        self.observation()
    }

    fn observation(&self) -> String {
        self.abstraction.observe(&self.pegs())
    }

    fn at_goal(&self) -> bool {
        self.solved(&self.state)
    }

    fn goal(&self) -> GoalSpec {
        let goal = vec![(self.pegs - 1) as u8; self.disks];
        let target = self.abstraction.observe(&Self::pegs_of(&goal, self.pegs));
        GoalSpec::predicate(move |o| o == target)
    }

    fn optimal_steps(&self) -> Option<usize> {
        bfs_distance(
            self.state.clone(),
            |s| (0..self.moves.len()).map(|a| self.transition(s, a as u32)).collect::<Vec<_>>(),
            |s| self.solved(s),
        )
    }

    fn state_space_hint(&self) -> usize {
        self.pegs.pow(self.disks as u32)
    }
}
