//! Experiment runner: seeded trials of epochs, learning-curve fits and the
//! convergence estimates derived from them.

mod config;
mod emit;
mod estimate;
mod fit;
mod run;

pub use config::{Domain, ExperimentConfig};
pub use emit::{emit_results, read_epochs_csv, write_epochs_csv, write_series_csv, FitRow};
pub use estimate::{
    estimate_abstraction_norms, estimate_k_p, estimate_l_max, regress_l_max, KpEstimate, LMaxEstimate, NormEstimate,
};
pub use fit::{fit_reciprocal, off_linear_pct, FitResult};
pub use run::{mean_curve, run_experiment, run_trial, trial_rng, EpochRecord, ExperimentResult, TrialResult};
