//! Dijkstra against A* with the diagonal heuristic on a banded model whose
//! states are numbered along the route to the goal.
//!
//! ```text
//! cargo run --example astar_planning -- 400
//! ```

use gap::model::{ActionId, GoalSpec, Model, ProbabilityModel, StateId};
use gap::planner::{astar_infer, diagonal_heuristic, infer_sequence_with_stats};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> gap::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|v| v.parse().ok()).unwrap_or(200);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut m = Model::new(4);
    for i in 0..n {
        m.observe(&format!("s{i}"));
    }
    for i in 0..n {
        for a in 0..4 {
            let hop = rng.gen_range(-2i64..=4);
            let j = (i as i64 + hop).clamp(0, n as i64 - 1) as u32;
            m.record(StateId(i as u32), ActionId(a), StateId(j))?;
        }
    }
    let goal = StateId(n as u32 - 1);
    let pm = ProbabilityModel::APosteriori;
    let (d, ds) = infer_sequence_with_stats(&m, StateId(0), &GoalSpec::State(goal), pm)?;
    let (a, as_) = astar_infer(&m, StateId(0), goal, pm, diagonal_heuristic(2.0, n, goal))?;
    println!("dijkstra: {} steps, p {:.3e}, {} expansions", d.len(), d.joint_probability, ds.expansions);
    println!("a*:       {} steps, p {:.3e}, {} expansions", a.len(), a.joint_probability, as_.expansions);
    Ok(())
}
