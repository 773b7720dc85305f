//! Run seeded trials on one domain and print the mean learning curve with
//! its reciprocal fit.
//!
//! ```text
//! cargo run --release --example learning_curve -- strips 0.05 20 50
//! cargo run --release --example learning_curve -- toh 0 10 20 apriori least-chosen
//! ```

use gap::harness::{estimate_k_p, fit_reciprocal, run_experiment, Domain, ExperimentConfig};
use gap::env::{HanoiAbstraction, LocationAbstraction, Neighborhood};
use gap::planner::PolicyConfig;

fn domain(name: &str) -> Domain {
    match name {
        "strips" => Domain::Strips,
        "taxi-simple" => Domain::TaxiSimple { abstraction: LocationAbstraction::Exact },
        "taxi-maze" => Domain::TaxiMaze { neighborhood: Neighborhood::Eight, with_action: true },
        "taxi-maze-4" => Domain::TaxiMaze { neighborhood: Neighborhood::Four, with_action: true },
        "taxi-maze-noa" => Domain::TaxiMaze { neighborhood: Neighborhood::Eight, with_action: false },
        "taxi-maze-4-noa" => Domain::TaxiMaze { neighborhood: Neighborhood::Four, with_action: false },
        "toh" => Domain::Toh { pegs: 3, disks: 3, abstraction: HanoiAbstraction::Full },
        "toh5" => Domain::Toh { pegs: 3, disks: 5, abstraction: HanoiAbstraction::Full },
        "blocks" => Domain::Blocks { blocks: 4 },
        "blocks3" => Domain::Blocks { blocks: 3 },
        "blocks5" => Domain::Blocks { blocks: 5 },
        "blocks6" => Domain::Blocks { blocks: 6 },
        "binadd3" => Domain::Binadd { digits: 3 },
        "binadd4" => Domain::Binadd { digits: 4 },
        "binadd5" => Domain::Binadd { digits: 5 },
        other => panic!("unknown domain {other}"),
    }
}

fn main() -> gap::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let name = args.first().map(String::as_str).unwrap_or("strips");
    let error: f64 = args.get(1).and_then(|v| v.parse().ok()).unwrap_or(0.0);
    let epochs: usize = args.get(2).and_then(|v| v.parse().ok()).unwrap_or(20);
    let trials: usize = args.get(3).and_then(|v| v.parse().ok()).unwrap_or(50);

    let mut policy = PolicyConfig::default();
    if let Some(m) = args.get(4) {
        policy.model = m.parse()?;
    }
    if let Some(x) = args.get(5) {
        policy.exploration = x.parse()?;
    }
    if let Some(p) = args.get(6) {
        policy.prior = p.parse().expect("prior is a number");
    }
    let config =
        ExperimentConfig::new(domain(name)).error_rate(error).epochs(epochs).trials(trials).seed(7).policy(policy);
    let result = run_experiment(&config)?;
    let curve = result.mean_curve();
    let capped = result.records().iter().filter(|r| r.capped).count();
    for (k, y) in curve.iter().enumerate() {
        println!("epoch {:>3}  mean steps {:>10.2}", k + 1, y);
    }
    let points: Vec<_> = curve.iter().enumerate().map(|(i, &y)| ((i + 1) as f64, y)).collect();
    let fit = fit_reciprocal(&points)?;
    let kp = estimate_k_p(&result.records())?;
    println!(
        "A = {:.2}  B = {:.2}  R2 = {:.3}  off-linear = {:.1}%  k_p measured {:.2}  capped epochs {}",
        fit.a, fit.b, fit.r2, fit.off_linear_pct, kp.measured, capped
    );
    Ok(())
}
