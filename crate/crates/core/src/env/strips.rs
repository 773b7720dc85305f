use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::grid::{bfs_distance, Grid};
use super::Environment;
use crate::model::{ActionId, GoalSpec};

const MAP: &str = include_str!("../../data/strips.map");

const FETCH: u32 = 4;
const OPEN: u32 = 5;

/// Fetch the item at `V`, get through the door `D` and stand on `G` holding
/// it. The door starts closed and its state is not observed. Opening needs
/// the item: either the open action next to the door, or walking into it
/// (which opens it and leaves the agent in place).
#[derive(Clone, Debug)]
pub struct StripsWorld {
    grid: Grid,
    item: (usize, usize),
    door: (usize, usize),
    goal: (usize, usize),
    start: (usize, usize),
    random_starts: Vec<(usize, usize)>,
    use_random_starts: bool,
    pos: (usize, usize),
    holding: bool,
    door_open: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Snapshot {
    pos: (usize, usize),
    holding: bool,
    door_open: bool,
}

impl StripsWorld {
    /// The bundled map, with random starts in its right half.
    pub fn new() -> Self {
        Self::from_map(MAP).expect("bundled map is valid")
    }

    /// Parse a map of `#` walls, `.` floor, `V` item, `D` door, `G` goal and
    /// `S` canonical start.
    pub fn from_map(text: &str) -> Result<Self, String> {
        let rows: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        let height = rows.len();
        let width = rows.iter().map(|r| r.len()).max().ok_or("empty map")?;
        let mut grid = Grid::new(width, height, false);
        let (mut item, mut door, mut goal, mut start) = (None, None, None, None);
        for (y, row) in rows.iter().enumerate() {
            for (x, c) in row.chars().enumerate() {
                if c != '#' {
                    grid.set(x, y, true);
                }
                match c {
                    'V' => item = Some((x, y)),
                    'D' => door = Some((x, y)),
                    'G' => goal = Some((x, y)),
                    'S' => start = Some((x, y)),
                    '#' | '.' => {}
                    other => return Err(format!("unknown map symbol {other:?}")),
                }
            }
        }
        let mut world = StripsWorld {
            grid,
            item: item.ok_or("map has no item")?,
            door: door.ok_or("map has no door")?,
            goal: goal.ok_or("map has no goal")?,
            start: start.ok_or("map has no start")?,
            random_starts: Vec::new(),
            use_random_starts: true,
            pos: (0, 0),
            holding: false,
            door_open: false,
        };
        world.pos = world.start;
        let special = [world.item, world.door, world.goal];
        let candidates: Vec<_> = world
            .grid
            .open_cells()
            .into_iter()
            .filter(|&(x, _)| x >= width / 2)
            .filter(|c| !special.contains(c))
            .collect();
        for c in candidates {
            let s = Snapshot { pos: c, holding: false, door_open: false };
            if world.solve_from(s).is_some() {
                world.random_starts.push(c);
            }
        }
        if world.solve_from(Snapshot { pos: world.start, holding: false, door_open: false }).is_none() {
            return Err("canonical start cannot reach the goal".into());
        }
        Ok(world)
    }

    /// Always start from the canonical start.
    pub fn with_fixed_start(mut self) -> Self {
        self.use_random_starts = false;
        self
    }

    pub fn canonical_start(&self) -> (usize, usize) {
        self.start
    }

    pub fn random_starts(&self) -> &[(usize, usize)] {
        &self.random_starts
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Place the agent at `pos` without the item and with the door closed.
    pub fn place(&mut self, pos: (usize, usize)) -> String {
        self.pos = pos;
        self.holding = false;
        self.door_open = false;
        self.observation()
    }

    fn snapshot(&self) -> Snapshot {
        Snapshot { pos: self.pos, holding: self.holding, door_open: self.door_open }
    }

    fn transition(&self, s: Snapshot, action: u32) -> Snapshot {
        let mut n = s;
        match action {
            0..=3 => {
                let target = self.grid.step(s.pos, action as usize);
                if target == self.door && !s.door_open {
                    if s.holding {
                        n.door_open = true;
                    }
                } else {
                    n.pos = target;
                }
            }
            FETCH => {
                if s.pos == self.item {
                    n.holding = true;
                }
            }
            OPEN => {
                let adjacent = (0..4).any(|d| self.grid.step(s.pos, d) == self.door);
                if adjacent && s.holding {
                    n.door_open = true;
                }
            }
            _ => {}
        }
        n
    }

    fn solve_from(&self, s: Snapshot) -> Option<usize> {
        bfs_distance(
            s,
            |s| (0..6).map(|a| self.transition(*s, a)).collect::<Vec<_>>(),
            |s| s.pos == self.goal && s.holding,
        )
    }

    fn obs_of(pos: (usize, usize), holding: bool) -> String {
        format!("{},{},{}", pos.0, pos.1, holding as u8)
    }
}

impl Default for StripsWorld {
    fn default() -> Self {
        Self::new()
    }
}

impl Environment for StripsWorld {
    fn name(&self) -> String {
        "strips".into()
    }

    fn action_count(&self) -> usize {
        6
    }

    fn reset(&mut self, rng: &mut ChaCha8Rng) -> String {
        let pos = if self.use_random_starts && !self.random_starts.is_empty() {
            self.random_starts[rng.gen_range(0..self.random_starts.len())]
        } else {
            self.start
        };
        self.place(pos)
    }

    fn step(&mut self, action: ActionId) -> String {
        let n = self.transition(self.snapshot(), action.0);
        self.pos = n.pos;
        self.holding = n.holding;
        self.door_open = n.door_open;
        self.observation()
    }

    fn observation(&self) -> String {
        Self::obs_of(self.pos, self.holding)
    }

    fn at_goal(&self) -> bool {
        self.pos == self.goal && self.holding
    }

    fn goal(&self) -> GoalSpec {
        let target = Self::obs_of(self.goal, true);
        GoalSpec::predicate(move |o| o == target)
    }

    fn optimal_steps(&self) -> Option<usize> {
        self.solve_from(self.snapshot())
    }

    fn state_space_hint(&self) -> usize {
        self.grid.open_cells().len() * 2
    }
}
