//! `pascomb`: analyze instances, simulate runs, reproduce the preset
//! experiments and evaluate the regret bounds.
//!
//! Exit codes: 0 on success, 2 for configuration errors, 3 for runtime failures.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pascomb::config::{load_config, InstanceConfig};
use pascomb::engine::{Algorithm, TraceMode};
use pascomb::hardness::hardness_report;
use pascomb::io;
use pascomb::lab::{collect_traces, run_experiment, Aggregate, ExperimentOptions, RegretKind};
use pascomb::model::compute_gaps;
use pascomb::{Error, Result};

const DEFAULT_HORIZON: u64 = 100_000;

#[derive(Parser)]
#[command(
    name = "pascomb",
    version,
    about = "Variance-constrained combinatorial semi-bandits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every solution and write the gap tables.
    Analyze {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run seeded replications and write trace, aggregate and summary files.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        #[arg(long = "T")]
        horizon: Option<u64>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        algorithm: Option<String>,
        #[arg(long = "sigma-bar-sq")]
        sigma_bar_sq: Option<f64>,
    },
    /// Reproduce one of the preset experiments.
    Experiment {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
        id: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        #[arg(long = "T")]
        horizon: Option<u64>,
        #[arg(long)]
        reps: Option<usize>,
    },
    /// Evaluate the hardness parameter and regret bounds.
    Bounds {
        #[arg(long)]
        config: PathBuf,
        #[arg(long = "T")]
        horizon: u64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config_error() { 2 } else { 3 })
        }
    }
}

fn dispatch(cmd: Command) -> Result<()> {
    match cmd {
        Command::Analyze { config, out } => analyze(&config, &out),
        Command::Simulate {
            config,
            out,
            seed,
            parallel,
            horizon,
            delta,
            algorithm,
            sigma_bar_sq,
        } => {
            let ov = Overrides {
                horizon,
                delta,
                algorithm,
                sigma_bar_sq,
            };
            simulate(&config, &out, seed, parallel, ov)
        }
        Command::Experiment {
            id,
            out,
            seed,
            parallel,
            horizon,
            reps,
        } => experiment(id, &out, seed, parallel, horizon, reps),
        Command::Bounds {
            config,
            horizon,
            delta,
            out,
        } => bounds(&config, horizon, delta, &out),
    }
}

fn out_dir(out: &Path) -> Result<()> {
    std::fs::create_dir_all(out).map_err(|e| Error::Config {
        path: out.display().to_string(),
        message: format!("cannot create output directory: {e}"),
    })
}

fn analyze(config: &Path, out: &Path) -> Result<()> {
    let cfg = load_config(config)?;
    let inst = cfg.to_instance()?;
    let horizon = cfg.horizon.unwrap_or(DEFAULT_HORIZON);
    let delta = cfg.delta.unwrap_or(pascomb::lab::REFERENCE_DELTA);
    let (part, gaps) = compute_gaps(&inst, horizon, delta)?;
    out_dir(out)?;

    let fam = inst.family();
    let list = |ks: &[usize]| {
        ks.iter()
            .map(|&k| fam.get(k).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut text = String::new();
    writeln!(text, "optimal {}", part.optimal_solution).unwrap();
    writeln!(text, "mu_star {}", part.mu_star).unwrap();
    writeln!(text, "safe_suboptimal {}", list(&part.safe_suboptimal)).unwrap();
    writeln!(text, "risky {}", list(&part.risky)).unwrap();
    writeln!(text, "unsafe_suboptimal {}", list(&part.unsafe_suboptimal)).unwrap();
    std::fs::write(out.join("partition.txt"), text)?;

    io::write_solution_gaps_csv(io::create(&out.join("solutions.csv"))?, &inst, &part, &gaps)?;
    io::write_item_gaps_csv(io::create(&out.join("items.csv"))?, &gaps)?;
    let mut warnings = inst.warnings().to_vec();
    warnings.extend(part.warnings.iter().cloned());
    write_lines(&out.join("warnings.txt"), &warnings)?;

    println!(
        "optimal {} mean {} ({} safe-suboptimal, {} risky, {} unsafe-suboptimal)",
        part.optimal_solution,
        part.mu_star,
        part.safe_suboptimal.len(),
        part.risky.len(),
        part.unsafe_suboptimal.len()
    );
    Ok(())
}

struct Overrides {
    horizon: Option<u64>,
    delta: Option<f64>,
    algorithm: Option<String>,
    sigma_bar_sq: Option<f64>,
}

fn apply(mut cfg: InstanceConfig, ov: Overrides) -> Result<InstanceConfig> {
    if let Some(t) = ov.horizon {
        cfg.horizon = Some(t);
    }
    if let Some(d) = ov.delta {
        cfg.delta = Some(d);
    }
    if let Some(a) = ov.algorithm {
        let alg = Algorithm::parse(&a).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "unknown algorithm {a:?}; expected pascomb or combucb1"
            ))
        })?;
        cfg.algorithm = Some(alg);
    }
    if let Some(v) = ov.sigma_bar_sq {
        cfg.sigma_bar_sq = v;
    }
    Ok(cfg)
}

fn simulate(config: &Path, out: &Path, seed: u64, parallel: usize, ov: Overrides) -> Result<()> {
    let cfg = apply(load_config(config)?, ov)?;
    let mut run = cfg.run_config(DEFAULT_HORIZON)?;
    run.master_seed = seed;
    run.validate()?;
    out_dir(out)?;

    let traces = collect_traces(&run, parallel, TraceMode::Full)?;
    let agg = Aggregate::from_traces(&run.label, &traces, RegretKind::Pseudo)?;
    let mut w = io::create(&out.join("trace.csv"))?;
    io::write_trace_csv(&mut w, &traces)?;
    w.flush()?;
    let mut w = io::create(&out.join("aggregate.csv"))?;
    io::write_aggregate_csv(&mut w, &agg)?;
    w.flush()?;
    let summary =
        io::SimulationSummary::new(run.echo(), &traces, &agg, run.instance.warnings().to_vec());
    io::write_json(&out.join("summary.json"), &summary)?;

    println!(
        "{} runs of {} over T = {}: final regret {:.2} ± {:.2}, violation rate {:.3}",
        summary.runs,
        run.algorithm,
        run.horizon,
        summary.final_pseudo_regret.mean,
        summary.final_pseudo_regret.se,
        summary.any_violation_rate
    );
    Ok(())
}

fn file_label(label: &str) -> String {
    label
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '.' || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn experiment(
    id: u32,
    out: &Path,
    seed: u64,
    parallel: usize,
    horizon: Option<u64>,
    reps: Option<usize>,
) -> Result<()> {
    out_dir(out)?;
    let opts = ExperimentOptions {
        master_seed: seed,
        parallelism: parallel,
        horizon,
        replications: reps,
    };
    let report = run_experiment(id, &opts)?;
    for agg in &report.aggregates {
        let mut w = io::create(&out.join(format!("aggregate_{}.csv", file_label(&agg.label))))?;
        io::write_aggregate_csv(&mut w, agg)?;
        w.flush()?;
    }
    for add in &report.additional {
        let mut text = String::from("t,mean_additional_regret,se_additional_regret\n");
        for p in &add.series {
            writeln!(text, "{},{},{}", p.t, p.mean, p.se).unwrap();
        }
        std::fs::write(
            out.join(format!("additional_{}.csv", file_label(&add.label))),
            text,
        )?;
    }
    io::write_json(&out.join("summary.json"), &report)?;

    for r in &report.runs {
        println!(
            "{:<24} regret {:>10.2} ± {:<8.2} violation rate {:.3}",
            r.config.label, r.final_mean_regret, r.final_se_regret, r.any_violation_rate
        );
    }
    if let Some(fit) = &report.fit {
        println!(
            "fit: slope {:.4} intercept {:.4} R² {:.4}",
            fit.slope, fit.intercept, fit.r_squared
        );
    }
    Ok(())
}

fn bounds(config: &Path, horizon: u64, delta: f64, out: &Path) -> Result<()> {
    let cfg = load_config(config)?;
    let inst = cfg.to_instance()?;
    let eps = cfg.epsilon.unwrap_or(pascomb::confidence::DEFAULT_EPSILON);
    let report = hardness_report(&inst, horizon, delta, eps, cfg.omegas()?)?;
    out_dir(out)?;
    io::write_json(&out.join("report.json"), &report)?;
    let mut w = io::create(&out.join("hardness.csv"))?;
    io::write_hardness_csv(&mut w, &report)?;
    w.flush()?;
    let b = &report.bounds;
    println!(
        "H(1) = {:.6e}, Reg1 = {:.6e}, Reg2 = {:.6e}, Reg3 = {:.6e}, total = {:.6e}",
        report.h1(),
        b.reg1,
        b.reg2,
        b.reg3,
        b.total
    );
    Ok(())
}

fn write_lines(path: &Path, lines: &[String]) -> Result<()> {
    let mut text = String::new();
    for l in lines {
        text.push_str(l);
        text.push('\n');
    }
    std::fs::write(path, text)?;
    Ok(())
}
