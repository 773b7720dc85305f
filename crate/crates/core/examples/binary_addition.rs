//! Step a binary addition world by hand, then train on it.
//!
//! ```text
//! cargo run --release --example binary_addition -- 3
//! ```

use gap::env::{BinaryAddition, Environment};
use gap::harness::{estimate_k_p, run_experiment, Domain, ExperimentConfig};
use gap::model::{ActionId, ProbabilityModel};
use gap::planner::PolicyConfig;

fn main() -> gap::Result<()> {
    let digits: usize = std::env::args().nth(1).and_then(|v| v.parse().ok()).unwrap_or(3);

    // 3 + 1: write 0,0,1 by moving right twice and toggling
    let mut env = BinaryAddition::new(2);
    env.set_operands(vec![1, 1], vec![1, 0]);
    println!("start {}", env.observation());
    for (a, name) in [(2, "next"), (2, "next"), (0, "toggle")] {
        println!("{name:>6} -> {}", env.step(ActionId(a)));
    }
    println!("solved: {}", env.at_goal());

    for model in [ProbabilityModel::APriori, ProbabilityModel::APosteriori] {
        let policy = PolicyConfig { model, ..PolicyConfig::default() };
        let cfg = ExperimentConfig::new(Domain::Binadd { digits }).policy(policy).epochs(20).trials(20).step_cap(5000);
        let recs = run_experiment(&cfg)?.records();
        let capped = recs.iter().filter(|r| r.capped).count();
        println!("{model:?}: k_p {:.1}, capped {capped}/{}", estimate_k_p(&recs)?.measured, recs.len());
    }
    Ok(())
}
