//! Learn Tower of Hanoi from scratch, then print the plan the agent would
//! follow from the start position.
//!
//! ```text
//! cargo run --release --example hanoi_planning -- 4
//! ```

use gap::env::HanoiAbstraction;
use gap::harness::{run_trial, Domain, ExperimentConfig};
use gap::model::ProbabilityModel;
use gap::planner::{infer_sequence, Exploration, PolicyConfig};

fn main() -> gap::Result<()> {
    let disks: usize = std::env::args().nth(1).and_then(|v| v.parse().ok()).unwrap_or(3);
    let domain = Domain::Toh { pegs: 3, disks, abstraction: HanoiAbstraction::Full };
    let policy = PolicyConfig { exploration: Exploration::LeastChosen, ..PolicyConfig::default() };
    let cfg = ExperimentConfig::new(domain.clone()).policy(policy).epochs(6).keep_models(true);
    let trial = run_trial(&cfg, 0)?;
    for r in &trial.epochs {
        println!("epoch {}: {} steps", r.epoch, r.steps);
    }

    let model = trial.model.expect("kept");
    let env = domain.build();
    let start = model.registry.get(&trial.starts[0]).expect("start was observed");
    let plan = infer_sequence(&model, start, &env.goal(), ProbabilityModel::APosteriori)?;
    println!("plan of {} moves (optimum {}):", plan.len(), (1usize << disks) - 1);
    for s in &plan.states {
        println!("  {}", model.registry.name(*s).unwrap());
    }
    Ok(())
}
