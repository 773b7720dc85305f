use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs;
use std::path::{Path, PathBuf};

use gap::env::{HanoiAbstraction, LocationAbstraction, Neighborhood};
use gap::harness::{
    emit_results, estimate_k_p, fit_reciprocal, read_epochs_csv, regress_l_max, run_experiment, Domain,
    ExperimentConfig, FitRow,
};
use gap::markov::{build_transition_matrix, detect_traps, goal_probability_vector, k_p_bound, l_max, ts_power_norm};
use gap::model::{load_model, save_model, GoalSpec, ProbabilityModel};
use gap::planner::{Exploration, PolicyConfig};

#[derive(Parser)]
#[command(name = "gap", version, about = "Goal agnostic planning experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train agents on a domain and write epoch, series and fit files.
    Run(RunArgs),
    /// Markov certificates for a saved model.
    Analyze(AnalyzeArgs),
    /// Reciprocal fit of an epochs file.
    Fit(FitArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum DomainName {
    Strips,
    TaxiSimple,
    TaxiMaze,
    Toh,
    Blocks,
    Binadd,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum)]
    domain: DomainName,
    #[arg(long, default_value_t = 3)]
    pegs: usize,
    #[arg(long, default_value_t = 3)]
    disks: usize,
    #[arg(long, default_value_t = 4)]
    blocks: usize,
    #[arg(long, default_value_t = 3)]
    digits: usize,
    /// Injected error rate; repeat for several levels.
    #[arg(long = "error", default_values_t = [0.0])]
    errors: Vec<f64>,
    #[arg(long, default_value_t = 20)]
    epochs: usize,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Observation abstraction; repeat to run several. taxi-simple takes
    /// loc, loc/2, loc[0]/3, loc/1.5; taxi-maze takes AI-wA, AII-wA,
    /// AI-w/oA, AII-w/oA; toh takes full, AI, AII, AIII, AIV.
    #[arg(long = "abstraction")]
    abstractions: Vec<String>,
    #[arg(long, default_value = "aposteriori")]
    model: ProbabilityModel,
    #[arg(long, default_value = "random")]
    explore: Exploration,
    #[arg(long)]
    step_cap: Option<usize>,
    /// Record per-epoch wall time (makes output run-dependent).
    #[arg(long)]
    timing: bool,
    /// Save trial 0's model from each run as model.json.
    #[arg(long)]
    save_model: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    model_file: PathBuf,
    /// Observation string of the goal state.
    #[arg(long)]
    goal: String,
    #[arg(long, default_value = "aposteriori")]
    model: ProbabilityModel,
    /// Thresholds for the step bound.
    #[arg(long = "threshold", default_values_t = [0.5, 0.9, 0.99])]
    thresholds: Vec<f64>,
}

#[derive(Args)]
struct FitArgs {
    #[arg(long)]
    csv: PathBuf,
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Analyze(args) => analyze(args),
        Command::Fit(args) => fit(args),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

fn domain(args: &RunArgs, abstraction: Option<&str>) -> gap::Result<Domain> {
    let bad = |name: &str| gap::Error::InvalidArgument(format!("abstraction {name:?} does not apply here"));
    Ok(match args.domain {
        DomainName::Strips | DomainName::Blocks | DomainName::Binadd if abstraction.is_some() => {
            return Err(bad(abstraction.unwrap_or_default()))
        }
        DomainName::Strips => Domain::Strips,
        DomainName::Blocks => Domain::Blocks { blocks: args.blocks },
        DomainName::Binadd => Domain::Binadd { digits: args.digits },
        DomainName::TaxiSimple => Domain::TaxiSimple {
            abstraction: abstraction.map(str::parse::<LocationAbstraction>).transpose()?.unwrap_or(LocationAbstraction::Exact),
        },
        DomainName::Toh => Domain::Toh {
            pegs: args.pegs,
            disks: args.disks,
            abstraction: abstraction.map(str::parse::<HanoiAbstraction>).transpose()?.unwrap_or(HanoiAbstraction::Full),
        },
        DomainName::TaxiMaze => {
            let (neighborhood, with_action) = match abstraction.unwrap_or("AI-wA") {
                "AI-wA" => (Neighborhood::Eight, true),
                "AII-wA" => (Neighborhood::Four, true),
                "AI-w/oA" => (Neighborhood::Eight, false),
                "AII-w/oA" => (Neighborhood::Four, false),
                other => return Err(bad(other)),
            };
            Domain::TaxiMaze { neighborhood, with_action }
        }
    })
}

fn label(abstraction: Option<&str>, error: f64) -> String {
    let name = abstraction.unwrap_or("default").replace('/', "_");
    format!("{name}-e{error}")
}

fn run(args: RunArgs) -> gap::Result<()> {
    let policy = PolicyConfig { model: args.model, exploration: args.explore, ..PolicyConfig::default() };
    let abstractions: Vec<Option<&str>> = if args.abstractions.is_empty() {
        vec![None]
    } else {
        args.abstractions.iter().map(|a| Some(a.as_str())).collect()
    };
    let many = abstractions.len() * args.errors.len() > 1;
    let mut summary = Vec::new();
    for &abstraction in &abstractions {
        let dom = domain(&args, abstraction)?;
        let mut rows = Vec::new();
        for &error in &args.errors {
            let mut config = ExperimentConfig::new(dom.clone())
                .error_rate(error)
                .epochs(args.epochs)
                .trials(args.trials)
                .seed(args.seed)
                .policy(policy)
                .keep_models(args.save_model || args.errors.len() >= 3);
            config.step_cap = args.step_cap;
            config.record_timing = args.timing;
            let result = run_experiment(&config)?;
            let records = result.records();
            let curve = result.mean_curve();
            let points: Vec<_> = curve.iter().enumerate().map(|(i, &y)| ((i + 1) as f64, y)).collect();
            let fit = fit_reciprocal(&points)?;
            let kp = estimate_k_p(&records)?;
            let row = FitRow {
                a: fit.a,
                b: fit.b,
                r2: fit.r2,
                off_linear_pct: fit.off_linear_pct,
                k_p_measured: kp.measured,
                k_p_predicted: kp.predicted,
                l_max_measured: None,
                l_max_predicted: None,
            };
            let dir = if many { args.out.join(label(abstraction, error)) } else { args.out.clone() };
            fs::create_dir_all(&dir)?;
            fs::write(dir.join("config.json"), serde_json::to_string_pretty(&config)?)?;
            if args.save_model {
                if let Some(model) = result.trials[0].model.as_ref() {
                    save_model(model, &dir.join("model.json"))?;
                }
            }
            println!(
                "{:<24} A={:.3} B={:.3} R2={:.3} off-linear={:.1}% k_p={:.2}",
                label(abstraction, error),
                fit.a,
                fit.b,
                fit.r2,
                fit.off_linear_pct,
                kp.measured
            );
            rows.push((error, dir, records, curve, fit, row, result));
        }
        if rows.len() >= 3 {
            let points: Vec<_> = rows.iter().map(|r| (r.0, r.5.k_p_measured)).collect();
            let measured = regress_l_max(&points)?;
            // predicted from the lowest error level's first trial model
            let lowest = rows.iter().min_by(|a, b| a.0.total_cmp(&b.0)).expect("rows is non-empty");
            let env = lowest.6.config.domain.build();
            let predicted = lowest.6.trials[0]
                .model
                .as_ref()
                .and_then(|m| {
                    let goal = GoalSpec::Set(env.goal().members(&m.registry).into_iter().collect());
                    build_transition_matrix(m, &goal, args.model).and_then(|p| l_max(&p)).ok()
                })
                .map(|l| l as f64);
            println!("l_max measured {measured:.2} predicted {}", predicted.map_or("n/a".into(), |p| format!("{p}")));
            for r in &mut rows {
                r.5.l_max_measured = Some(measured);
                r.5.l_max_predicted = predicted;
            }
        }
        for (error, dir, records, curve, fit, row, _) in &rows {
            emit_results(records, curve, fit, row, dir)?;
            summary.push((label(abstraction, *error), row.clone()));
        }
    }
    if many {
        write_summary(&summary, &args.out.join("summary.csv"))?;
    }
    Ok(())
}

fn write_summary(rows: &[(String, FitRow)], path: &Path) -> gap::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["run", "A", "B", "R2", "off_linear_pct", "k_p_measured", "k_p_predicted", "l_max_measured", "l_max_predicted"])?;
    let opt = |v: Option<f64>| v.map_or(String::new(), |v| v.to_string());
    for (name, r) in rows {
        w.write_record([
            name.clone(),
            r.a.to_string(),
            r.b.to_string(),
            r.r2.to_string(),
            r.off_linear_pct.to_string(),
            r.k_p_measured.to_string(),
            r.k_p_predicted.to_string(),
            opt(r.l_max_measured),
            opt(r.l_max_predicted),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn analyze(args: AnalyzeArgs) -> gap::Result<()> {
    let model = load_model(&args.model_file)?;
    let goal = model
        .registry
        .get(&args.goal)
        .ok_or_else(|| gap::Error::InvalidArgument(format!("goal {:?} is not a state of the model", args.goal)))?;
    let p = build_transition_matrix(&model, &GoalSpec::State(goal), args.model)?;
    println!("states {}  actions {}  goal index {}", model.state_count(), model.action_count(), p.goal_index());
    let traps = detect_traps(&p);
    println!("trap states {}", traps.len());
    for &t in &traps {
        println!("  trap {}", model.registry.name(p.states[t]).unwrap_or("?"));
    }
    match l_max(&p) {
        Ok(l) => {
            println!("l_max {l}");
            println!("|T_s^l_max|_1 {:.6}", ts_power_norm(&p, l).abs());
            let reach = goal_probability_vector(&p, l);
            let worst = p.non_goal().filter(|i| !traps.contains(i)).map(|i| reach[i]).fold(1.0, f64::min);
            println!("min goal probability within l_max over non-trap states {worst:.6}");
            for &t in &args.thresholds {
                println!("k_p bound at threshold {t}: {}", k_p_bound(&p, t)?);
            }
        }
        Err(_) => println!("goal unreachable from every other state"),
    }
    Ok(())
}

fn fit(args: FitArgs) -> gap::Result<()> {
    let records = read_epochs_csv(&args.csv)?;
    let curve = gap::harness::mean_curve(&records);
    let points: Vec<_> = curve.iter().enumerate().map(|(i, &y)| ((i + 1) as f64, y)).collect();
    let fit = fit_reciprocal(&points)?;
    let kp = estimate_k_p(&records)?;
    println!("A {:.6}", fit.a);
    println!("B {:.6}", fit.b);
    println!("R2 {:.6}", fit.r2);
    println!("off_linear_pct {:.4}", fit.off_linear_pct);
    println!("k_p measured {:.4} predicted {:.4} ({:.2}% apart)", kp.measured, kp.predicted, kp.percent_error);
    Ok(())
}
