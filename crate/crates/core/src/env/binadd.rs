use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::grid::bfs_distance;
use super::Environment;
use crate::model::{ActionId, GoalSpec};

const TOGGLE_RESULT: u32 = 0;
const TOGGLE_CARRY: u32 = 1;
const NEXT: u32 = 2;
const PREV: u32 = 3;

/// Write the sum of two random `digits`-bit numbers into a result register
/// one bit at a time. The agent sees the operand and result bits under a
/// cursor, its own carry bit, and how many result bits are right; it never
/// sees the cursor position.
#[derive(Clone, Debug)]
pub struct BinaryAddition {
    digits: usize,
    a: Vec<u8>,
    b: Vec<u8>,
    sum: Vec<u8>,
    result: Vec<u8>,
    carry: u8,
    index: usize,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Snapshot {
    result: Vec<u8>,
    carry: u8,
    index: usize,
}

impl BinaryAddition {
    pub fn new(digits: usize) -> Self {
        assert!((1..=16).contains(&digits), "supported digit counts are 1..=16");
        BinaryAddition {
            digits,
            a: vec![0; digits],
            b: vec![0; digits],
            sum: vec![0; digits + 1],
            result: vec![0; digits + 1],
            carry: 0,
            index: 0,
        }
    }

    /// Set the operands directly, least significant bit first.
    pub fn set_operands(&mut self, a: Vec<u8>, b: Vec<u8>) {
        assert!(a.len() == self.digits && b.len() == self.digits);
        self.a = a;
        self.b = b;
        self.sum = vec![0; self.digits + 1];
        let mut c = 0;
        for i in 0..self.digits {
            let t = self.a[i] + self.b[i] + c;
            self.sum[i] = t & 1;
            c = t >> 1;
        }
        self.sum[self.digits] = c;
        self.result = vec![0; self.digits + 1];
        self.carry = 0;
        self.index = 0;
    }

    fn digit(v: &[u8], i: usize) -> u8 {
        v.get(i).copied().unwrap_or(0)
    }

    fn correct(&self, result: &[u8]) -> usize {
        result.iter().zip(&self.sum).filter(|(r, s)| r == s).count()
    }

    fn snapshot(&self) -> Snapshot {
        Snapshot { result: self.result.clone(), carry: self.carry, index: self.index }
    }

    fn transition(&self, s: &Snapshot, action: u32) -> Snapshot {
        let mut n = s.clone();
        match action {
            TOGGLE_RESULT => n.result[s.index] ^= 1,
            TOGGLE_CARRY => n.carry ^= 1,
            NEXT => n.index = (s.index + 1).min(self.digits),
            PREV => n.index = s.index.saturating_sub(1),
            _ => {}
        }
        n
    }
}

impl Environment for BinaryAddition {
    fn name(&self) -> String {
        format!("binadd({})", self.digits)
    }

    fn action_count(&self) -> usize {
        4
    }

    fn reset(&mut self, rng: &mut ChaCha8Rng) -> String {
        let a = (0..self.digits).map(|_| rng.gen_range(0..2)).collect();
        let b = (0..self.digits).map(|_| rng.gen_range(0..2)).collect();
        self.set_operands(a, b);
        self.observation()
    }

    fn step(&mut self, action: ActionId) -> String {
        let n = self.transition(&self.snapshot(), action.0);
        self.result = n.result;
        self.carry = n.carry;
        self.index = n.index;
        self.observation()
    }

    fn observation(&self) -> String {
        let i = self.index;
        format!(
            "{}{}{}|{}|{}",
            Self::digit(&self.a, i),
            Self::digit(&self.b, i),
            self.result[i],
            self.carry,
            self.correct(&self.result)
        )
    }

    fn at_goal(&self) -> bool {
        self.result == self.sum
    }

    fn goal(&self) -> GoalSpec {
        let target = (self.digits + 1).to_string();
        GoalSpec::predicate(move |o| o.rsplit('|').next() == Some(target.as_str()))
    }

    fn optimal_steps(&self) -> Option<usize> {
        bfs_distance(
            self.snapshot(),
            |s| (0..4).map(|a| self.transition(s, a)).collect::<Vec<_>>(),
            |s| s.result == self.sum,
        )
    }

    fn state_space_hint(&self) -> usize {
        (1 << (self.digits + 1)) * 2 * (self.digits + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_operands_start_solved() {
        let mut env = BinaryAddition::new(3);
        env.set_operands(vec![0, 0, 0], vec![0, 0, 0]);
        assert!(env.at_goal());
        assert_eq!(env.optimal_steps(), Some(0));
    }

    #[test]
    fn writing_the_sum_reaches_the_goal() {
        let mut env = BinaryAddition::new(2);
        // 3 + 1 = 4 -> bits 0,0,1
        env.set_operands(vec![1, 1], vec![1, 0]);
        for a in [NEXT, NEXT, TOGGLE_RESULT] {
            env.step(ActionId(a));
        }
        assert!(env.at_goal());
        assert_eq!(env.observation(), "001|0|3");
    }
}
