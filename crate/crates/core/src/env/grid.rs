use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

/// Open/blocked cells of a rectangular map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub width: usize,
    pub height: usize,
    open: Vec<bool>,
}

/// North, east, south, west.
pub const MOVES: [(i64, i64); 4] = [(0, -1), (1, 0), (0, 1), (-1, 0)];

impl Grid {
    pub fn new(width: usize, height: usize, open: bool) -> Self {
        Grid { width, height, open: vec![open; width * height] }
    }

    pub fn is_open(&self, x: i64, y: i64) -> bool {
        x >= 0 && y >= 0 && (x as usize) < self.width && (y as usize) < self.height && self.open[y as usize * self.width + x as usize]
    }

    pub fn set(&mut self, x: usize, y: usize, open: bool) {
        self.open[y * self.width + x] = open;
    }

    pub fn open_cells(&self) -> Vec<(usize, usize)> {
        (0..self.height)
            .flat_map(|y| (0..self.width).map(move |x| (x, y)))
            .filter(|&(x, y)| self.open[y * self.width + x])
            .collect()
    }

    /// Target of moving `dir` from `(x, y)`; blocked moves stay put.
    pub fn step(&self, (x, y): (usize, usize), dir: usize) -> (usize, usize) {
        let (dx, dy) = MOVES[dir];
        let (nx, ny) = (x as i64 + dx, y as i64 + dy);
        if self.is_open(nx, ny) {
            (nx as usize, ny as usize)
        } else {
            (x, y)
        }
    }

    /// Whether every open cell is reachable from every other.
    pub fn is_connected(&self) -> bool {
        let cells = self.open_cells();
        let Some(&start) = cells.first() else { return true };
        let mut seen = vec![false; self.width * self.height];
        seen[start.1 * self.width + start.0] = true;
        let mut queue = VecDeque::from([start]);
        let mut reached = 1;
        while let Some(c) = queue.pop_front() {
            for dir in 0..4 {
                let n = self.step(c, dir);
                let i = n.1 * self.width + n.0;
                if !seen[i] {
                    seen[i] = true;
                    reached += 1;
                    queue.push_back(n);
                }
            }
        }
        reached == cells.len()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for y in 0..self.height {
            for x in 0..self.width {
                s.push(if self.open[y * self.width + x] { '.' } else { '#' });
            }
            s.push('\n');
        }
        s
    }
}

/// Breadth-first distance from `start` to the nearest state satisfying
/// `goal`.
pub fn bfs_distance<S, I>(start: S, successors: impl Fn(&S) -> I, goal: impl Fn(&S) -> bool) -> Option<usize>
where
    S: Clone + Eq + Hash,
    I: IntoIterator<Item = S>,
{
    if goal(&start) {
        return Some(0);
    }
    let mut dist = HashMap::from([(start.clone(), 0usize)]);
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        let d = dist[&s];
        for n in successors(&s) {
            if dist.contains_key(&n) {
                continue;
            }
            if goal(&n) {
                return Some(d + 1);
            }
            dist.insert(n.clone(), d + 1);
            queue.push_back(n);
        }
    }
    None
}
