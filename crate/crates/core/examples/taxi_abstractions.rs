//! Simple TAXI under the location coarsenings, with the a priori model.
//!
//! ```text
//! cargo run --release --example taxi_abstractions -- 8 5
//! ```

use gap::env::LocationAbstraction;
use gap::harness::{estimate_k_p, run_experiment, Domain, ExperimentConfig};
use gap::model::ProbabilityModel;
use gap::planner::PolicyConfig;

fn main() -> gap::Result<()> {
    let mut args = std::env::args().skip(1).map(|v| v.parse::<usize>().expect("a count"));
    let epochs = args.next().unwrap_or(8);
    let trials = args.next().unwrap_or(5);
    let policy = PolicyConfig { model: ProbabilityModel::APriori, ..PolicyConfig::default() };
    for (name, abstraction) in [
        ("loc", LocationAbstraction::Exact),
        ("loc/2", LocationAbstraction::Half),
        ("loc/1.5", LocationAbstraction::TwoThirds),
        ("loc[0]/3", LocationAbstraction::ColumnThird),
    ] {
        let cfg = ExperimentConfig::new(Domain::TaxiSimple { abstraction })
            .policy(policy)
            .epochs(epochs)
            .trials(trials)
            .step_cap(40_000);
        let res = run_experiment(&cfg)?;
        let curve = res.mean_curve();
        println!(
            "{name:<9} first epoch {:>8.0}, k_p {:>8.1}",
            curve[0],
            estimate_k_p(&res.records())?.measured
        );
    }
    Ok(())
}
