//! Command-line front end.
//!
//! Thin, sequential plumbing from flags to library calls (parallelism
//! lives inside the sweep harness). Exit codes: 0 on success, 1 on usage
//! or input errors, 2 on numerical failures such as norm drift or a step
//! underflow. Every run-shaped output echoes the seed and the full
//! parameter set needed to reproduce it.

pub mod plot;

use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, StandardNormal};
use serde_json::json;

use crate::analytic::{degenerate_prediction, geometric_mean_n};
use crate::dynamics::grover::evolve_grover;
use crate::dynamics::sector::evolve_sector;
use crate::dynamics::{evolve, EvolveOptions};
use crate::error::{Error, Result};
use crate::experiments::fit::fit_alpha;
use crate::experiments::sa::{classical_sa, CoolingSchedule};
use crate::experiments::{
    default_rel_tol, read_csv, sweep_with_jobs, write_csv, AggregateRow, RelaxationPoint, RunRow,
    SweepSpec,
};
use crate::ising::{IsingInstance, RandomMode};
use crate::schedule::{Protocol, Schedule};

/// Parses `argv` and runs one subcommand, translating errors to the
/// process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{err}");
                    0
                }
                _ => {
                    eprint!("{err}");
                    1
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

#[derive(Parser)]
#[command(name = "qanneal", version, about = "Nonadiabatic quantum annealing simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a random Ising instance and store it as JSON.
    Generate {
        /// full-random | full-random-diagonal | range-k
        #[arg(long)]
        mode: String,
        /// Number of qubits.
        #[arg(long)]
        n: usize,
        /// Interaction range, range-k mode only.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instance JSON path to write.
        #[arg(long)]
        out: PathBuf,
    },
    /// Integrate one anneal on a stored instance; writes a one-row CSV.
    Run {
        /// Instance JSON path.
        #[arg(long)]
        instance: PathBuf,
        /// p1 | p2 | p3 | power:a[:mixer] | const:v[:mixer] | exp:r[:mixer]
        #[arg(long)]
        protocol: Protocol,
        /// Dimensionless coupling strength.
        #[arg(long)]
        g: f64,
        /// Horizon over annealing time, T / tau_a.
        #[arg(long = "ratio-T", default_value_t = 100.0)]
        ratio_t: f64,
        /// Start-time divisor, t0 = tau_a / t0_factor.
        #[arg(long, default_value_t = 100.0)]
        t0_factor: f64,
        /// Integrator tolerance; defaults per mixer (1e-8 projector,
        /// 1e-10 transverse).
        #[arg(long)]
        rel_tol: Option<f64>,
        /// Also write the excitation trace to this CSV path.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Result CSV path (run-row schema).
        #[arg(long)]
        out: PathBuf,
        /// Also write the full excitation distribution to this JSON path.
        #[arg(long)]
        dist: Option<PathBuf>,
    },
    /// Run a full sweep from a JSON config; writes runs.csv,
    /// aggregates.csv, and a spec.json copy into the output directory.
    Sweep {
        /// Sweep config JSON path.
        #[arg(long)]
        config: PathBuf,
        /// Output directory (falls back to the config's out_dir, then ".").
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Worker threads (default: RAYON_NUM_THREADS or all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print the closed-form final distribution for a uniform spectrum.
    Analytic {
        #[arg(long)]
        g: f64,
        #[arg(long)]
        n_qubits: usize,
        /// Ground-level degeneracy for the summed ground probability.
        #[arg(long)]
        degeneracy: Option<usize>,
        /// How many leading probabilities to list (default 16).
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Amplify a marked state with the constant-coupling schedule and
    /// print the two-level result.
    Grover {
        #[arg(long)]
        n_qubits: usize,
        /// Energy offset of the marked state.
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
    },
    /// Anneal the zero-magnetization sector of N spins with random or
    /// supplied fields.
    Sector {
        /// Number of spins (even, at most 16).
        #[arg(long)]
        n: usize,
        #[arg(long)]
        g: f64,
        /// JSON array with one field per spin; conflicts with --seed.
        #[arg(long, conflicts_with = "seed")]
        eps_file: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Simulated-annealing baseline on a stored instance.
    Classical {
        /// Instance JSON path.
        #[arg(long)]
        instance: PathBuf,
        /// Number of full Metropolis sweeps.
        #[arg(long)]
        sweeps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// geometric | linear
        #[arg(long, default_value = "geometric")]
        schedule: String,
        /// Write the best-so-far residual trace to this CSV path.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Fit the power-law exponent per (protocol, N) group of an
    /// aggregate CSV.
    Fit {
        /// Aggregate CSV path.
        #[arg(long = "in")]
        input: PathBuf,
        /// Lower fit-window edge (requires --gmax).
        #[arg(long)]
        gmin: Option<f64>,
        /// Upper fit-window edge (requires --gmin).
        #[arg(long)]
        gmax: Option<f64>,
    },
    /// Render a CSV to a standalone SVG chart.
    Plot {
        /// Input CSV path (schema depends on --kind).
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: PlotKind,
        /// SVG path to write.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PlotKind {
    /// Aggregate CSV: mean excitation fraction vs g, log-log.
    #[value(name = "n-vs-g")]
    NVsG,
    /// Aggregate CSV: mean excitation fraction vs N, semi-log.
    #[value(name = "n-vs-N", alias = "n-vs-n")]
    NVsN,
    /// Trace CSV from `run --trace`: log time axis.
    Trace,
    /// Relaxation CSV (budget, eps_res): log-log.
    Relaxation,
}

fn parse_mode(mode: &str, k: Option<usize>) -> Result<RandomMode> {
    let no_k = |m: RandomMode| {
        if k.is_some() {
            Err(Error::InvalidParameter("--k only applies to --mode range-k".into()))
        } else {
            Ok(m)
        }
    };
    match mode {
        "full-random" | "full-random-couplings" => no_k(RandomMode::FullRandomCouplings),
        "full-random-diagonal" => no_k(RandomMode::FullRandomDiagonal),
        "range-k" => k
            .map(|k| RandomMode::RangeK { k })
            .ok_or_else(|| Error::InvalidParameter("--mode range-k requires --k".into())),
        other => Err(Error::InvalidParameter(format!(
            "unknown mode '{other}' (expected full-random, full-random-diagonal, or range-k)"
        ))),
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Generate { mode, n, k, seed, out } => {
            let instance = IsingInstance::random(parse_mode(&mode, k)?, n, seed)?;
            instance.to_file(&out)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "mode": mode,
                    "n_qubits": n,
                    "k": k,
                    "seed": seed,
                    "out": out,
                    "dim": instance.dim(),
                    "ground_energy": instance.stats().ground_energy,
                    "bandwidth": instance.stats().bandwidth,
                    "ground_degeneracy": instance.stats().ground_degeneracy,
                }))?
            );
            Ok(())
        }
        Command::Run {
            instance,
            protocol,
            g,
            ratio_t,
            t0_factor,
            rel_tol,
            trace,
            seed,
            out,
            dist,
        } => {
            let inst = IsingInstance::from_file(&instance)?;
            let schedule = Schedule::new(protocol, g, &inst, ratio_t, t0_factor)?;
            let rel = rel_tol.unwrap_or_else(|| default_rel_tol(schedule.mixer()));
            let opts = EvolveOptions {
                rel_tol: rel,
                abs_tol: rel * 1e-2,
                record_trace: trace.is_some(),
                ..EvolveOptions::default()
            };
            let started = Instant::now();
            let result = evolve(&inst, &schedule, &opts)?;
            let row = RunRow {
                run_id: "run".into(),
                protocol: protocol.to_string(),
                n: inst.n_qubits(),
                g,
                tau_a: schedule.tau_a(),
                t_end: schedule.t_end(),
                t0: schedule.t0(),
                seed,
                p0: result.p0,
                mean_n: result.mean_n,
                n_bar: result.n_bar,
                eps_res: result.eps_res,
                norm_error: result.norm_error,
                steps: result.stats.steps,
                wall_time_s: started.elapsed().as_secs_f64(),
                status: "ok".into(),
            };
            write_csv(&out, std::slice::from_ref(&row))?;
            if let Some(path) = &trace {
                write_csv(path, result.trace.as_deref().unwrap_or_default())?;
            }
            if let Some(path) = &dist {
                let payload = json!({
                    "protocol": protocol.to_string(),
                    "g": g,
                    "ratio_T": ratio_t,
                    "t0_factor": t0_factor,
                    "rel_tol": rel,
                    "seed": seed,
                    "tau_a": schedule.tau_a(),
                    "T": schedule.t_end(),
                    "t0": schedule.t0(),
                    "p0": result.p0,
                    "mean_n": result.mean_n,
                    "n_bar": result.n_bar,
                    "eps_res": result.eps_res,
                    "norm_error": result.norm_error,
                    "steps": result.stats.steps,
                    "probabilities": result.probabilities,
                });
                fs::write(path, serde_json::to_string_pretty(&payload)? + "\n")?;
            }
            println!(
                "p0 {:.6} mean_n {:.4} eps_res {:.6e} norm_error {:.2e} steps {} -> {}",
                row.p0,
                row.mean_n,
                row.eps_res,
                row.norm_error,
                row.steps,
                out.display()
            );
            Ok(())
        }
        Command::Sweep { config, out_dir, jobs } => {
            let spec = SweepSpec::from_file(&config)?;
            let dir = out_dir
                .or_else(|| spec.out_dir.clone())
                .unwrap_or_else(|| PathBuf::from("."));
            let outcome = sweep_with_jobs(&spec, jobs)?;
            fs::create_dir_all(&dir)?;
            write_csv(dir.join("runs.csv"), &outcome.rows)?;
            write_csv(dir.join("aggregates.csv"), &outcome.aggregates)?;
            fs::write(dir.join("spec.json"), serde_json::to_string_pretty(&spec)? + "\n")?;
            let ok = outcome.rows.iter().filter(|r| r.is_ok()).count();
            println!(
                "{} runs ({} ok), {} aggregates -> {}",
                outcome.rows.len(),
                ok,
                outcome.aggregates.len(),
                dir.display()
            );
            Ok(())
        }
        Command::Analytic { g, n_qubits, degeneracy, max_n } => {
            if !(1..=60).contains(&n_qubits) {
                return Err(Error::InvalidParameter(format!(
                    "--n-qubits must be in 1..=60, got {n_qubits}"
                )));
            }
            if !(g.is_finite() && g >= 0.0) {
                return Err(Error::InvalidParameter(format!("--g must be finite and >= 0, got {g}")));
            }
            let dim = 1usize << n_qubits;
            let dimf = dim as f64;
            let y = 2.0 * PI * g;
            let x = y / dimf;
            let prob = |n: usize| -> f64 {
                if y == 0.0 {
                    1.0 / dimf
                } else {
                    (-(x * n as f64)).exp() * (-(-x).exp_m1()) / (-(-y).exp_m1())
                }
            };
            let mean = geometric_mean_n(g, dim)?;
            let listed = max_n.unwrap_or(16).min(dim);
            let mut payload = json!({
                "g": g,
                "n_qubits": n_qubits,
                "dim": dim as u64,
                "p": (-x).exp(),
                "p0": prob(0),
                "mean_n": mean,
                "n_bar": mean / ((dimf - 1.0) / 2.0),
                "probabilities": (0..listed).map(prob).collect::<Vec<f64>>(),
            });
            if let Some(m) = degeneracy {
                payload["ground_degeneracy"] = json!(m);
                payload["p_ground_level"] = json!(degenerate_prediction(g, dim, m)?);
            }
            println!("{}", serde_json::to_string_pretty(&payload)?);
            Ok(())
        }
        Command::Grover { n_qubits, eps } => {
            let res = evolve_grover(n_qubits, eps, &EvolveOptions::default())?;
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "n_qubits": n_qubits,
                    "dim": 1u64 << n_qubits,
                    "eps": eps,
                    "g_const": res.params.g_const,
                    "duration": res.params.duration,
                    "p0": res.p0,
                    "norm_error": res.norm_error,
                    "steps": res.stats.steps,
                }))?
            );
            Ok(())
        }
        Command::Sector { n, g, eps_file, seed } => {
            let fields: Vec<f64> = match &eps_file {
                Some(path) => serde_json::from_str(&fs::read_to_string(path)?)?,
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    (0..n).map(|_| StandardNormal.sample(&mut rng)).collect()
                }
            };
            if fields.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "--n is {n} but {} fields were supplied",
                    fields.len()
                )));
            }
            let opts = EvolveOptions { rel_tol: 1e-10, abs_tol: 1e-12, ..EvolveOptions::default() };
            let res = evolve_sector(&fields, g, 100.0, 100.0, &opts)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "n_spins": n,
                    "g": g,
                    "seed": eps_file.is_none().then_some(seed),
                    "eps_file": eps_file,
                    "fields": fields,
                    "sector_dim": res.probabilities.len(),
                    "p0": res.p0,
                    "n_bar": res.n_bar,
                    "eps_res": res.eps_res,
                    "wrong_spin_fraction": res.wrong_spin_fraction,
                    "norm_error": res.norm_error,
                    "steps": res.stats.steps,
                }))?
            );
            Ok(())
        }
        Command::Classical { instance, sweeps, seed, schedule, trace } => {
            let inst = IsingInstance::from_file(&instance)?;
            let cooling = match schedule.as_str() {
                "geometric" => CoolingSchedule::Geometric,
                "linear" => CoolingSchedule::Linear,
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown schedule '{other}' (expected geometric or linear)"
                    )))
                }
            };
            let res = classical_sa(&inst, sweeps, cooling, seed)?;
            if let Some(path) = &trace {
                let rows: Vec<RelaxationPoint> = res
                    .trace
                    .iter()
                    .map(|&(sweep, eps_res)| RelaxationPoint { budget: sweep as f64, eps_res })
                    .collect();
                write_csv(path, &rows)?;
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "instance": instance,
                    "sweeps": sweeps,
                    "schedule": schedule,
                    "seed": seed,
                    "best_energy": res.best_energy,
                    "eps_res": res.eps_res,
                    "best_excitation": res.best_excitation,
                    "best_state": res.best_state,
                }))?
            );
            Ok(())
        }
        Command::Fit { input, gmin, gmax } => {
            let rows: Vec<AggregateRow> = read_csv(&input)?;
            if rows.is_empty() {
                return Err(Error::Format("empty input: no aggregate rows".into()));
            }
            let window = match (gmin, gmax) {
                (None, None) => None,
                (Some(a), Some(b)) => Some((a, b)),
                _ => {
                    return Err(Error::InvalidParameter(
                        "--gmin and --gmax must be given together".into(),
                    ))
                }
            };
            let mut groups: std::collections::BTreeMap<(String, usize), Vec<(f64, f64)>> =
                std::collections::BTreeMap::new();
            for row in &rows {
                if row.n_realizations > 0 && row.mean_n_bar.is_finite() {
                    groups
                        .entry((row.protocol.clone(), row.n))
                        .or_default()
                        .push((row.g, row.mean_n_bar));
                }
            }
            let mut fits = Vec::new();
            let mut last_err = None;
            for ((protocol, n), points) in groups {
                match fit_alpha(&points, window) {
                    Ok(fit) => fits.push(json!({
                        "protocol": protocol,
                        "N": n,
                        "alpha": fit.alpha,
                        "intercept": fit.intercept,
                        "fit_window": [fit.fit_window.0, fit.fit_window.1],
                        "r_squared": fit.r_squared,
                        "stderr_alpha": fit.stderr_alpha,
                        "n_points": fit.n_points,
                    })),
                    Err(err) => {
                        fits.push(json!({
                            "protocol": protocol,
                            "N": n,
                            "error": err.to_string(),
                        }));
                        last_err = Some(err);
                    }
                }
            }
            if fits.iter().all(|f| f.get("error").is_some()) {
                return Err(last_err.expect("at least one group exists"));
            }
            println!("{}", serde_json::to_string_pretty(&serde_json::Value::Array(fits))?);
            Ok(())
        }
        Command::Plot { input, kind, out } => {
            let figure = match kind {
                PlotKind::NVsG => plot::n_vs_g_figure(&read_csv(&input)?)?,
                PlotKind::NVsN => plot::n_vs_size_figure(&read_csv(&input)?)?,
                PlotKind::Trace => plot::trace_figure(&read_csv(&input)?)?,
                PlotKind::Relaxation => plot::relaxation_figure(&read_csv(&input)?)?,
            };
            let svg = figure.to_svg()?;
            fs::write(&out, svg)?;
            println!("wrote {}", out.display());
            Ok(())
        }
    }
}
