//! Blocksworld from uniformly drawn starts, including how many of them
//! need a block moved off a smaller one first.
//!
//! ```text
//! cargo run --release --example blocksworld -- 4 0.1
//! ```

use gap::env::{has_sussman_conditions, Blocksworld};
use gap::harness::{estimate_k_p, run_experiment, Domain, ExperimentConfig};
use gap::planner::{Exploration, PolicyConfig};

fn main() -> gap::Result<()> {
    let mut args = std::env::args().skip(1);
    let blocks: usize = args.next().and_then(|v| v.parse().ok()).unwrap_or(4);
    let error: f64 = args.next().and_then(|v| v.parse().ok()).unwrap_or(0.0);

    let world = Blocksworld::new(blocks);
    let states = world.all_states();
    let tangled = states.iter().filter(|s| has_sussman_conditions(&Blocksworld::stacks_of(s))).count();
    println!("{blocks} blocks: {} configurations, {tangled} with a block above a smaller one", states.len());

    let policy = PolicyConfig { exploration: Exploration::LeastChosen, ..PolicyConfig::default() };
    let cfg = ExperimentConfig::new(Domain::Blocks { blocks }).policy(policy).error_rate(error).epochs(8).trials(40);
    let res = run_experiment(&cfg)?;
    for (k, y) in res.mean_curve().iter().enumerate() {
        println!("epoch {}: {y:.1}", k + 1);
    }
    println!("k_p {:.2}", estimate_k_p(&res.records())?.measured);
    Ok(())
}
