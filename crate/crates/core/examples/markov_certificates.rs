//! Train on STRIPS, then read convergence certificates off the learned
//! policy matrix: traps, longest shortest path and the step bound.
//!
//! ```text
//! cargo run --release --example markov_certificates
//! ```

use gap::harness::{run_trial, Domain, ExperimentConfig};
use gap::markov::{build_transition_matrix, detect_traps, goal_probability_vector, k_p_bound, l_max, ts_power_norm};
use gap::model::ProbabilityModel;

fn main() -> gap::Result<()> {
    let cfg = ExperimentConfig::new(Domain::Strips).error_rate(0.1).epochs(30).keep_models(true).seed(3);
    let trial = run_trial(&cfg, 0)?;
    let model = trial.model.expect("kept");
    let goal = Domain::Strips.build().goal();

    for pm in [ProbabilityModel::APosteriori, ProbabilityModel::APriori] {
        let p = build_transition_matrix(&model, &goal, pm)?;
        let l = l_max(&p)?;
        println!("{pm:?}: {} states, {} traps, L_max {l}", p.size(), detect_traps(&p).len());
        println!("  ||T_s^L|| = {:.4}", ts_power_norm(&p, l));
        for t in [0.5, 0.9, 0.99] {
            println!("  reach {t} within {:.1} steps", k_p_bound(&p, t)?);
        }
        let reach = goal_probability_vector(&p, l);
        let worst = p.non_goal().map(|i| reach[i]).fold(1.0, f64::min);
        println!("  least goal probability after L_max steps {worst:.3}");
    }
    Ok(())
}
