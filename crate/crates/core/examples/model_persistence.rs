//! Save a trained model, load it back and plan with the copy.
//!
//! ```text
//! cargo run --release --example model_persistence
//! ```

use gap::env::HanoiAbstraction;
use gap::harness::{run_trial, Domain, ExperimentConfig};
use gap::model::{load_model, save_model, ProbabilityModel};
use gap::planner::{infer_sequence, Exploration, PolicyConfig};

fn main() -> gap::Result<()> {
    let domain = Domain::Toh { pegs: 3, disks: 3, abstraction: HanoiAbstraction::AII };
    let policy = PolicyConfig { exploration: Exploration::LeastChosen, ..PolicyConfig::default() };
    let trial = run_trial(&ExperimentConfig::new(domain.clone()).policy(policy).epochs(5).keep_models(true), 0)?;
    let model = trial.model.expect("kept");

    let path = std::env::temp_dir().join("gap-hanoi-model.json");
    save_model(&model, &path)?;
    let back = load_model(&path)?;
    println!("saved {} states, {} occasion cells to {}", back.state_count(), back.graph.occasions().len(), path.display());

    let start = back.registry.get(&trial.starts[0]).expect("observed");
    let plan = infer_sequence(&back, start, &domain.build().goal(), ProbabilityModel::APosteriori)?;
    let names: Vec<&str> = plan.states.iter().map(|s| back.registry.name(*s).unwrap()).collect();
    println!("plan: {}", names.join(" -> "));
    Ok(())
}
