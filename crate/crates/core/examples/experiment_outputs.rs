//! Run a small STRIPS experiment and write the epoch table, the fitted
//! series and the fit summary to a directory.
//!
//! ```text
//! cargo run --release --example experiment_outputs -- /tmp/strips-run
//! ```

use std::path::PathBuf;

use gap::harness::{emit_results, estimate_k_p, fit_reciprocal, run_experiment, Domain, ExperimentConfig, FitRow};

fn main() -> gap::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("gap-strips"));
    let cfg = ExperimentConfig::new(Domain::Strips).error_rate(0.05).epochs(15).trials(40).seed(11);
    let res = run_experiment(&cfg)?;
    let records = res.records();
    let curve = res.mean_curve();
    let pts: Vec<_> = curve.iter().enumerate().map(|(i, &y)| ((i + 1) as f64, y)).collect();
    let fit = fit_reciprocal(&pts)?;
    let k_p = estimate_k_p(&records)?;
    let row = FitRow {
        a: fit.a,
        b: fit.b,
        r2: fit.r2,
        off_linear_pct: fit.off_linear_pct,
        k_p_measured: k_p.measured,
        k_p_predicted: k_p.predicted,
        l_max_measured: None,
        l_max_predicted: None,
    };
    emit_results(&records, &curve, &fit, &row, &dir)?;
    println!("wrote epochs.csv, series.csv and fit.csv to {}", dir.display());
    println!("steps = {:.1}/k + {:.1}, R2 {:.3}", fit.a, fit.b, fit.r2);
    Ok(())
}
