//! Compare the four relative-observation variants of the maze ferrying
//! task under both probability models.
//!
//! ```text
//! cargo run --release --example maze_abstractions -- 10 10
//! ```

use gap::env::Neighborhood;
use gap::harness::{estimate_k_p, run_experiment, Domain, ExperimentConfig};
use gap::model::ProbabilityModel;
use gap::planner::PolicyConfig;

fn main() -> gap::Result<()> {
    let mut args = std::env::args().skip(1).map(|v| v.parse::<usize>().expect("a count"));
    let epochs = args.next().unwrap_or(10);
    let trials = args.next().unwrap_or(10);
    for (hood, with_action) in [
        (Neighborhood::Eight, false),
        (Neighborhood::Eight, true),
        (Neighborhood::Four, false),
        (Neighborhood::Four, true),
    ] {
        let domain = Domain::TaxiMaze { neighborhood: hood, with_action };
        let name = domain.build().name();
        for model in [ProbabilityModel::APosteriori, ProbabilityModel::APriori] {
            let policy = PolicyConfig { model, ..PolicyConfig::default() };
            let cfg =
                ExperimentConfig::new(domain.clone()).policy(policy).epochs(epochs).trials(trials).step_cap(3000);
            let recs = run_experiment(&cfg)?.records();
            let capped = recs.iter().filter(|r| r.capped).count();
            println!(
                "{name:<18} {model:?}: k_p {:>8.1}, capped {capped}/{}",
                estimate_k_p(&recs)?.measured,
                recs.len()
            );
        }
    }
    Ok(())
}
