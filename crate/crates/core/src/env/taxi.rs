use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::grid::{bfs_distance, Grid};
use super::Environment;
use crate::model::{ActionId, GoalSpec};

const PICKUP: u32 = 4;
const DROPOFF: u32 = 5;

/// How the absolute taxi location is coarsened in the observation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocationAbstraction {
    #[default]
    Exact,
    /// `(x / 2, y / 2)`.
    Half,
    /// `x / 3` only.
    ColumnThird,
    /// `(floor(x / 1.5), floor(y / 1.5))`.
    TwoThirds,
}

impl std::str::FromStr for LocationAbstraction {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "exact" | "loc" => Ok(Self::Exact),
            "loc/2" => Ok(Self::Half),
            "loc[0]/3" => Ok(Self::ColumnThird),
            "loc/1.5" => Ok(Self::TwoThirds),
            other => Err(crate::Error::InvalidArgument(format!("unknown taxi abstraction {other:?}"))),
        }
    }
}

impl LocationAbstraction {
    pub fn apply(self, (x, y): (usize, usize)) -> String {
        match self {
            Self::Exact => format!("{x},{y}"),
            Self::Half => format!("{},{}", x / 2, y / 2),
            Self::ColumnThird => format!("{}", x / 3),
            Self::TwoThirds => format!("{},{}", (x as f64 / 1.5).floor(), (y as f64 / 1.5).floor()),
        }
    }
}

/// Open grid with scattered obstacles and a queue of passengers to ferry.
/// A new layout is drawn on every reset.
#[derive(Clone, Debug)]
pub struct SimpleTaxi {
    size: usize,
    obstacle_rate: f64,
    passengers: usize,
    abstraction: LocationAbstraction,
    grid: Grid,
    trips: Vec<((usize, usize), (usize, usize))>,
    pos: (usize, usize),
    served: usize,
    carrying: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Snapshot {
    pos: (usize, usize),
    served: usize,
    carrying: bool,
}

impl SimpleTaxi {
    /// 15x15 grid, about 10% obstacles, three passengers.
    pub fn new(abstraction: LocationAbstraction) -> Self {
        Self::with_params(15, 0.1, 3, abstraction)
    }

    pub fn with_params(size: usize, obstacle_rate: f64, passengers: usize, abstraction: LocationAbstraction) -> Self {
        SimpleTaxi {
            size,
            obstacle_rate,
            passengers,
            abstraction,
            grid: Grid::new(size, size, true),
            trips: Vec::new(),
            pos: (0, 0),
            served: 0,
            carrying: false,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    fn random_grid(&self, rng: &mut ChaCha8Rng) -> Grid {
        let mut grid = Grid::new(self.size, self.size, true);
        let target = (self.obstacle_rate * (self.size * self.size) as f64).round() as usize;
        let mut cells: Vec<(usize, usize)> = grid.open_cells();
        cells.shuffle(rng);
        let mut placed = 0;
        for (x, y) in cells {
            if placed == target {
                break;
            }
            grid.set(x, y, false);
            if grid.is_connected() {
                placed += 1;
            } else {
                grid.set(x, y, true);
            }
        }
        grid
    }

    fn flag(&self, s: Snapshot) -> char {
        match self.trips.get(s.served) {
            Some(&(p, _)) if !s.carrying && s.pos == p => 'P',
            Some(&(_, d)) if s.carrying && s.pos == d => 'D',
            _ => '-',
        }
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

impl Environment for SimpleTaxi {
    fn name(&self) -> String {
        "taxi-simple".into()
    }

    fn action_count(&self) -> usize {
        6
    }

    fn reset(&mut self, rng: &mut ChaCha8Rng) -> String {
        self.grid = self.random_grid(rng);
        let mut cells = self.grid.open_cells();
        cells.shuffle(rng);
        self.trips = (0..self.passengers).map(|i| (cells[2 * i], cells[2 * i + 1])).collect();
        self.pos = cells[rng.gen_range(0..cells.len())];
        self.served = 0;
        self.carrying = false;
        self.observation()
    }

    fn step(&mut self, action: ActionId) -> String {
        let n = self.transition(self.snapshot(), action.0);
        self.pos = n.pos;
        self.served = n.served;
        self.carrying = n.carrying;
        self.observation()
    }

    fn observation(&self) -> String {
        let s = self.snapshot();
        format!(
            "{}|{}|{}|{}",
            self.abstraction.apply(self.pos),
            self.carrying as u8,
            self.flag(s),
            self.passengers - self.served
        )
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
        self.size * self.size * 2 * (self.passengers + 1)
    }
}
