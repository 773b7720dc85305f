use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::grid::{bfs_distance, Grid};
use super::Environment;
use crate::model::{ActionId, GoalSpec};

const PICKUP: u32 = 4;
const DROPOFF: u32 = 5;

/// Which neighbouring cells' passability is observed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Neighborhood {
    /// All eight surrounding cells.
    Eight,
    /// The four orthogonal cells.
    Four,
}

const EIGHT: [(i64, i64); 8] = [(0, -1), (1, -1), (1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1)];
const FOUR: [(i64, i64); 4] = [(0, -1), (1, 0), (0, 1), (-1, 0)];

/// Depth-first carved maze of `cells_w x cells_h` cells on a
/// `(2w + 1) x (2h + 1)` grid, with `rooms` random rectangles cleared.
pub fn generate_maze(cells_w: usize, cells_h: usize, rooms: usize, rng: &mut ChaCha8Rng) -> Grid {
    let (w, h) = (2 * cells_w + 1, 2 * cells_h + 1);
    let mut grid = Grid::new(w, h, false);
    let mut visited = vec![false; cells_w * cells_h];
    let mut stack = vec![(0usize, 0usize)];
    visited[0] = true;
    grid.set(1, 1, true);
    while let Some(&(cx, cy)) = stack.last() {
        let mut options: Vec<(usize, usize)> = FOUR
            .iter()
            .map(|&(dx, dy)| (cx as i64 + dx, cy as i64 + dy))
            .filter(|&(x, y)| x >= 0 && y >= 0 && (x as usize) < cells_w && (y as usize) < cells_h)
            .map(|(x, y)| (x as usize, y as usize))
            .filter(|&(x, y)| !visited[y * cells_w + x])
            .collect();
        if options.is_empty() {
            stack.pop();
            continue;
        }
        options.shuffle(rng);
        let (nx, ny) = options[0];
        visited[ny * cells_w + nx] = true;
        grid.set(cx + nx + 1, cy + ny + 1, true);
        grid.set(2 * nx + 1, 2 * ny + 1, true);
        stack.push((nx, ny));
    }
    for _ in 0..rooms {
        let rw = rng.gen_range(2..=4.min(w - 2));
        let rh = rng.gen_range(2..=4.min(h - 2));
        let x0 = rng.gen_range(1..=w - 1 - rw);
        let y0 = rng.gen_range(1..=h - 1 - rh);
        for y in y0..y0 + rh {
            for x in x0..x0 + rw {
                grid.set(x, y, true);
            }
        }
    }
    grid
}

/// Maze ferrying task observed relative to the taxi: local passability,
/// the offset to the current objective, and optionally the last action.
#[derive(Clone, Debug)]
pub struct MazeTaxi {
    cells_w: usize,
    cells_h: usize,
    rooms: usize,
    passengers: usize,
    neighborhood: Neighborhood,
    with_action: bool,
    grid: Grid,
    trips: Vec<((usize, usize), (usize, usize))>,
    pos: (usize, usize),
    served: usize,
    carrying: bool,
    last_action: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Snapshot {
    pos: (usize, usize),
    served: usize,
    carrying: bool,
}

impl MazeTaxi {
    /// 4x4-cell maze with two rooms and one passenger.
    pub fn new(neighborhood: Neighborhood, with_action: bool) -> Self {
        Self::with_params(4, 4, 2, 1, neighborhood, with_action)
    }

    pub fn with_params(
        cells_w: usize,
        cells_h: usize,
        rooms: usize,
        passengers: usize,
        neighborhood: Neighborhood,
        with_action: bool,
    ) -> Self {
        MazeTaxi {
            cells_w,
            cells_h,
            rooms,
            passengers,
            neighborhood,
            with_action,
            grid: Grid::new(2 * cells_w + 1, 2 * cells_h + 1, false),
            trips: Vec::new(),
            pos: (1, 1),
            served: 0,
            carrying: false,
            last_action: None,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    fn transition(&self, s: Snapshot, action: u32) -> Snapshot {
        let mut n = s;
        match action {
            0..=3 => n.pos = self.grid.step(s.pos, action as usize),
            PICKUP => {
                if !s.carrying && self.trips.get(s.served).is_some_and(|t| t.0 == s.pos) {
                    n.carrying = true;
                }
            }
            DROPOFF => {
                if s.carrying && self.trips.get(s.served).is_some_and(|t| t.1 == s.pos) {
                    n.carrying = false;
                    n.served += 1;
                }
            }
            _ => {}
        }
        n
    }

    fn snapshot(&self) -> Snapshot {
        Snapshot { pos: self.pos, served: self.served, carrying: self.carrying }
    }
}

impl Environment for MazeTaxi {
    fn name(&self) -> String {
        let hood = match self.neighborhood {
            Neighborhood::Eight => "AI",
            Neighborhood::Four => "AII",
        };
        format!("taxi-maze {hood} {}", if self.with_action { "wA" } else { "w/oA" })
    }

    fn action_count(&self) -> usize {
        6
    }

    fn reset(&mut self, rng: &mut ChaCha8Rng) -> String {
        self.grid = generate_maze(self.cells_w, self.cells_h, self.rooms, rng);
        let mut cells = self.grid.open_cells();
        cells.shuffle(rng);
        self.trips = (0..self.passengers).map(|i| (cells[2 * i], cells[2 * i + 1])).collect();
        self.pos = cells[2 * self.passengers];
        self.served = 0;
        self.carrying = false;
        self.last_action = None;
        self.observation()
    }

    fn step(&mut self, action: ActionId) -> String {
        let n = self.transition(self.snapshot(), action.0);
        self.pos = n.pos;
        self.served = n.served;
        self.carrying = n.carrying;
        self.last_action = Some(action.0);
        self.observation()
    }

    fn observation(&self) -> String {
        let offsets: &[(i64, i64)] = match self.neighborhood {
            Neighborhood::Eight => &EIGHT,
            Neighborhood::Four => &FOUR,
        };
        let (x, y) = (self.pos.0 as i64, self.pos.1 as i64);
        let bits: String =
            offsets.iter().map(|&(dx, dy)| if self.grid.is_open(x + dx, y + dy) { '1' } else { '0' }).collect();
        let dir = match self.trips.get(self.served) {
            Some(&(p, d)) => {
                let t = if self.carrying { d } else { p };
                format!("{},{}", t.0 as i64 - x, t.1 as i64 - y)
            }
            None => "*".into(),
        };
        let mut obs = format!("{bits}|{dir}|{}", self.carrying as u8);
        if self.with_action {
            match self.last_action {
                Some(a) => obs.push_str(&format!("|a{a}")),
                None => obs.push_str("|a-"),
            }
        }
        obs.push_str(&format!("|{}", self.passengers - self.served));
        obs
    }

    fn at_goal(&self) -> bool {
        self.served == self.passengers
    }

    fn goal(&self) -> GoalSpec {
        GoalSpec::predicate(|o| o.rsplit('|').next() == Some("0"))
    }

    fn optimal_steps(&self) -> Option<usize> {
        bfs_distance(
            self.snapshot(),
            |s| (0..6).map(|a| self.transition(*s, a)).collect::<Vec<_>>(),
            |s| s.served == self.passengers,
        )
    }

    fn state_space_hint(&self) -> usize {
        // the maze is regenerated on reset, so size by the whole grid
        (2 * self.cells_w + 1) * (2 * self.cells_h + 1) * 2 * (self.passengers + 1)
    }
}
