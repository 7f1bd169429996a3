//! Batch experiments: protocol sweeps, scaling fits, classical baselines.
//!
//! A sweep is a pure function of its [`SweepSpec`]: per-realization seeds
//! come from a deterministic hash of `(master_seed, N, realization)`, every
//! protocol and coupling strength runs on the same per-realization
//! instance, and aggregation is an index-ordered reduction, so reruns are
//! bit-identical in every physics column regardless of worker scheduling.

pub mod fit;
pub mod sa;

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::analytic;
use crate::dynamics::{evolve, EvolveOptions, RunResult};
use crate::error::{Error, Result};
use crate::ising::{IsingInstance, RandomMode};
use crate::schedule::{Mixer, Protocol, Schedule};

fn mix64(mut x: u64) -> u64 {
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Deterministic per-realization seed: a hash chain over
/// `(master_seed, n_qubits, realization)`.
pub fn realization_seed(master_seed: u64, n_qubits: usize, realization: usize) -> u64 {
    const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut x = mix64(master_seed.wrapping_add(GOLDEN));
    x = mix64(x ^ (n_qubits as u64).wrapping_mul(GOLDEN));
    mix64(x ^ (realization as u64).wrapping_mul(GOLDEN))
}

/// Local-error tolerance that keeps the end-of-run norm drift well inside
/// the default budget over `ratio_t = 100` horizons. Rotating-frame runs
/// take a few hundred steps; direct-picture transverse runs take thousands,
/// and drift grows like `steps * rel_tol`.
pub fn default_rel_tol(mixer: Mixer) -> f64 {
    match mixer {
        Mixer::Projector => 1e-8,
        Mixer::Transverse => 1e-10,
    }
}

/// Everything one run needs besides the instance.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub protocol: Protocol,
    pub g: f64,
    pub ratio_t: f64,
    pub t0_factor: f64,
    /// `None` picks [`default_rel_tol`] for the protocol's mixer.
    pub rel_tol: Option<f64>,
    /// `None` uses `rel_tol / 100`.
    pub abs_tol: Option<f64>,
    pub record_trace: bool,
    pub trace_points: usize,
}

impl RunConfig {
    pub fn new(protocol: Protocol, g: f64) -> Self {
        RunConfig {
            protocol,
            g,
            ratio_t: 100.0,
            t0_factor: 100.0,
            rel_tol: None,
            abs_tol: None,
            record_trace: false,
            trace_points: 200,
        }
    }

    pub fn evolve_options(&self) -> EvolveOptions {
        let rel = self.rel_tol.unwrap_or_else(|| default_rel_tol(self.protocol.mixer()));
        EvolveOptions {
            rel_tol: rel,
            abs_tol: self.abs_tol.unwrap_or(rel * 1e-2),
            record_trace: self.record_trace,
            trace_points: self.trace_points,
            ..Default::default()
        }
    }
}

/// One CSV row per run. Failed runs keep their identity columns, carry NaN
/// metrics, and put the failure in `status`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub run_id: String,
    pub protocol: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub g: f64,
    pub tau_a: f64,
    #[serde(rename = "T")]
    pub t_end: f64,
    pub t0: f64,
    pub seed: u64,
    pub p0: f64,
    pub mean_n: f64,
    pub n_bar: f64,
    pub eps_res: f64,
    pub norm_error: f64,
    pub steps: u64,
    pub wall_time_s: f64,
    pub status: String,
}

impl RunRow {
    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

/// Mean and spread over realizations for one `(protocol, N, g)` cell.
/// Only successful rows enter the statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub protocol: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub g: f64,
    pub mean_n_bar: f64,
    /// Sample standard deviation (n-1); zero for a single realization.
    pub std_n_bar: f64,
    pub mean_p0: f64,
    pub mean_eps_res: f64,
    pub n_realizations: usize,
}

/// Runs one schedule on one instance, timing the propagation. Always
/// returns a row; the `RunResult` is present only on success.
pub fn run_one(
    instance: &IsingInstance,
    config: &RunConfig,
    run_id: String,
    seed: u64,
) -> (RunRow, Option<RunResult>) {
    let mut row = RunRow {
        run_id,
        protocol: config.protocol.to_string(),
        n: instance.n_qubits(),
        g: config.g,
        tau_a: f64::NAN,
        t_end: f64::NAN,
        t0: f64::NAN,
        seed,
        p0: f64::NAN,
        mean_n: f64::NAN,
        n_bar: f64::NAN,
        eps_res: f64::NAN,
        norm_error: f64::NAN,
        steps: 0,
        wall_time_s: f64::NAN,
        status: String::new(),
    };
    let sched =
        match Schedule::new(config.protocol, config.g, instance, config.ratio_t, config.t0_factor)
        {
            Ok(s) => s,
            Err(e) => {
                row.status = e.to_string();
                return (row, None);
            }
        };
    row.tau_a = sched.tau_a();
    row.t_end = sched.t_end();
    row.t0 = sched.t0();
    let start = Instant::now();
    match evolve(instance, &sched, &config.evolve_options()) {
        Ok(res) => {
            row.wall_time_s = start.elapsed().as_secs_f64();
            row.p0 = res.p0;
            row.mean_n = res.mean_n;
            row.n_bar = res.n_bar;
            row.eps_res = res.eps_res;
            row.norm_error = res.norm_error;
            row.steps = res.stats.steps;
            row.status = "ok".into();
            (row, Some(res))
        }
        Err(e) => {
            row.wall_time_s = start.elapsed().as_secs_f64();
            row.status = e.to_string();
            (row, None)
        }
    }
}

fn default_hundred() -> f64 {
    100.0
}

/// A full disorder-averaged experiment, loadable from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    #[serde(flatten)]
    pub mode: RandomMode,
    pub n_list: Vec<usize>,
    pub realizations: usize,
    pub master_seed: u64,
    pub protocols: Vec<Protocol>,
    pub g_list: Vec<f64>,
    #[serde(default = "default_hundred")]
    pub ratio_t: f64,
    #[serde(default = "default_hundred")]
    pub t0_factor: f64,
    #[serde(default)]
    pub rel_tol: Option<f64>,
    #[serde(default)]
    pub abs_tol: Option<f64>,
    /// Default output directory; command-line flags override it.
    #[serde(default)]
    pub out_dir: Option<std::path::PathBuf>,
}

impl SweepSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SweepSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_file<P: AsRef<Path>>(path: P) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_list.is_empty() || self.protocols.is_empty() || self.g_list.is_empty() {
            return Err(Error::InvalidParameter(
                "sweep needs non-empty n_list, protocols, and g_list".into(),
            ));
        }
        if self.realizations == 0 {
            return Err(Error::InvalidParameter("sweep needs realizations >= 1".into()));
        }
        Ok(())
    }
}

/// Rows plus their aggregates.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub rows: Vec<RunRow>,
    pub aggregates: Vec<AggregateRow>,
}

/// Runs the whole sweep on the current worker pool. Row order is fixed by
/// `(N index, realization, protocol index, g index)`; a failed run becomes
/// a flagged row and never aborts the sweep.
pub fn sweep(spec: &SweepSpec) -> Result<SweepOutcome> {
    spec.validate()?;
    let mut work: Vec<(usize, usize)> = Vec::new();
    for &n in &spec.n_list {
        for r in 0..spec.realizations {
            work.push((n, r));
        }
    }
    let groups: Result<Vec<Vec<RunRow>>> = work
        .par_iter()
        .map(|&(n, r)| {
            let seed = realization_seed(spec.master_seed, n, r);
            let instance = IsingInstance::random(spec.mode, n, seed)?;
            let mut rows = Vec::with_capacity(spec.protocols.len() * spec.g_list.len());
            for &protocol in &spec.protocols {
                for &g in &spec.g_list {
                    let config = RunConfig {
                        protocol,
                        g,
                        ratio_t: spec.ratio_t,
                        t0_factor: spec.t0_factor,
                        rel_tol: spec.rel_tol,
                        abs_tol: spec.abs_tol,
                        record_trace: false,
                        trace_points: 0,
                    };
                    let run_id = format!("N{n}-r{r}-{protocol}-g{g}");
                    rows.push(run_one(&instance, &config, run_id, seed).0);
                }
            }
            Ok(rows)
        })
        .collect();
    let rows: Vec<RunRow> = groups?.concat();
    let aggregates = aggregate(&rows);
    Ok(SweepOutcome { rows, aggregates })
}

/// `sweep` on a dedicated pool of `jobs` workers; `None` uses the global
/// pool (sized by the usual worker-count environment variable).
pub fn sweep_with_jobs(spec: &SweepSpec, jobs: Option<usize>) -> Result<SweepOutcome> {
    match jobs {
        None => sweep(spec),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?
            .install(|| sweep(spec)),
    }
}

/// Groups successful rows by `(protocol, N, g)` and reduces each group.
/// Cells whose runs all failed are kept with NaN means and a zero count.
pub fn aggregate(rows: &[RunRow]) -> Vec<AggregateRow> {
    let mut cells: BTreeMap<(String, usize, u64), Vec<&RunRow>> = BTreeMap::new();
    for row in rows {
        cells.entry((row.protocol.clone(), row.n, row.g.to_bits())).or_default().push(row);
    }
    cells
        .into_iter()
        .map(|((protocol, n, g_bits), group)| {
            let ok: Vec<&&RunRow> = group.iter().filter(|r| r.is_ok()).collect();
            let count = ok.len();
            let mean = |f: fn(&RunRow) -> f64| -> f64 {
                if count == 0 {
                    f64::NAN
                } else {
                    ok.iter().map(|r| f(r)).sum::<f64>() / count as f64
                }
            };
            let mean_n_bar = mean(|r| r.n_bar);
            let std_n_bar = if count > 1 {
                (ok.iter().map(|r| (r.n_bar - mean_n_bar).powi(2)).sum::<f64>()
                    / (count - 1) as f64)
                    .sqrt()
            } else if count == 1 {
                0.0
            } else {
                f64::NAN
            };
            AggregateRow {
                protocol,
                n,
                g: f64::from_bits(g_bits),
                mean_n_bar,
                std_n_bar,
                mean_p0: mean(|r| r.p0),
                mean_eps_res: mean(|r| r.eps_res),
                n_realizations: count,
            }
        })
        .collect()
}

pub fn write_csv<T: Serialize, P: AsRef<Path>>(path: P, rows: &[T]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_csv<T: DeserializeOwned, P: AsRef<Path>>(path: P) -> Result<Vec<T>> {
    let mut reader = csv::Reader::from_path(path)?;
    let mut rows = Vec::new();
    for record in reader.deserialize() {
        rows.push(record?);
    }
    Ok(rows)
}

/// How a relaxation curve is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelaxationMode {
    /// Exact final-state law evaluated on the instance spectrum.
    QuantumProtocol1Analytic,
    /// Full propagation of the `g/t` projector schedule.
    QuantumProtocol1Numeric,
    /// Metropolis baseline; the budget is the sweep count.
    ClassicalSa,
}

impl std::fmt::Display for RelaxationMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RelaxationMode::QuantumProtocol1Analytic => "quantum-protocol-1-analytic",
            RelaxationMode::QuantumProtocol1Numeric => "quantum-protocol-1-numeric",
            RelaxationMode::ClassicalSa => "classical-sa",
        })
    }
}

impl std::str::FromStr for RelaxationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quantum-protocol-1-analytic" => Ok(RelaxationMode::QuantumProtocol1Analytic),
            "quantum-protocol-1-numeric" => Ok(RelaxationMode::QuantumProtocol1Numeric),
            "classical-sa" => Ok(RelaxationMode::ClassicalSa),
            other => Err(Error::InvalidParameter(format!("unknown relaxation mode {other:?}"))),
        }
    }
}

/// One point of a relaxation curve: solver effort vs residual energy.
/// `budget` is `tau_a / tau_i` (equal to `g`) for the quantum modes and
/// the sweep count for the classical baseline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelaxationPoint {
    pub budget: f64,
    pub eps_res: f64,
}

/// Residual energy as a function of effort. `seed` feeds only the
/// classical baseline; the quantum modes are deterministic.
pub fn relaxation_curve(
    mode: RelaxationMode,
    instance: &IsingInstance,
    budgets: &[f64],
    seed: u64,
) -> Result<Vec<RelaxationPoint>> {
    if budgets.is_empty() {
        return Err(Error::InvalidParameter("relaxation needs at least one budget".into()));
    }
    if !budgets.iter().all(|b| b.is_finite() && *b > 0.0)
        || !budgets.windows(2).all(|w| w[0] < w[1])
    {
        return Err(Error::InvalidParameter(
            "budgets must be positive, finite, strictly increasing".into(),
        ));
    }
    if !(instance.stats().bandwidth > 0.0) {
        return Err(Error::ZeroBandwidth);
    }
    let perm = &instance.stats().perm;
    let e0 = instance.stats().ground_energy;
    match mode {
        RelaxationMode::QuantumProtocol1Analytic => budgets
            .iter()
            .map(|&g| {
                let pred = analytic::geometric_prediction(g, instance.dim())?;
                let eps_res = pred
                    .probabilities
                    .iter()
                    .enumerate()
                    .map(|(n, p)| p * (instance.energy(perm[n]) - e0))
                    .sum();
                Ok(RelaxationPoint { budget: g, eps_res })
            })
            .collect(),
        RelaxationMode::QuantumProtocol1Numeric => budgets
            .iter()
            .map(|&g| {
                let sched = Schedule::new(Protocol::ProjectorInvT, g, instance, 100.0, 100.0)?;
                // accumulated phase grows with the budget, so the default
                // tolerance would leak norm on the large-budget points
                let opts = EvolveOptions { rel_tol: 1e-9, abs_tol: 1e-11, ..Default::default() };
                let res = evolve(instance, &sched, &opts)?;
                Ok(RelaxationPoint { budget: g, eps_res: res.eps_res })
            })
            .collect(),
        RelaxationMode::ClassicalSa => {
            let checkpoints: Vec<u64> = budgets.iter().map(|&b| b.ceil() as u64).collect();
            let total = *checkpoints.last().unwrap();
            let result = sa::classical_sa_with_checkpoints(
                instance,
                total,
                sa::CoolingSchedule::Geometric,
                seed,
                &checkpoints,
            )?;
            Ok(result
                .trace
                .iter()
                .zip(budgets)
                .map(|(&(_, eps_res), &budget)| RelaxationPoint { budget, eps_res })
                .collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tiny_spec() -> SweepSpec {
        SweepSpec {
            mode: RandomMode::FullRandomCouplings,
            n_list: vec![3],
            realizations: 2,
            master_seed: 9,
            protocols: vec![Protocol::ProjectorInvT],
            g_list: vec![2.0],
            ratio_t: 100.0,
            t0_factor: 100.0,
            rel_tol: None,
            abs_tol: None,
            out_dir: None,
        }
    }

    #[test]
    fn seeds_are_deterministic_and_distinct() {
        assert_eq!(realization_seed(7, 10, 3), realization_seed(7, 10, 3));
        let mut seen = std::collections::HashSet::new();
        for master in [0u64, 7, u64::MAX] {
            for n in [2usize, 8, 12] {
                for r in 0..20 {
                    assert!(seen.insert(realization_seed(master, n, r)));
                }
            }
        }
    }

    #[test]
    fn counting_contract_and_aggregate_consistency() {
        let out = sweep(&tiny_spec()).unwrap();
        assert_eq!(out.rows.len(), 2);
        assert_eq!(out.aggregates.len(), 1);
        let agg = &out.aggregates[0];
        assert_eq!(agg.n_realizations, 2);
        let mean = (out.rows[0].n_bar + out.rows[1].n_bar) / 2.0;
        assert_relative_eq!(agg.mean_n_bar, mean, epsilon = 1e-12);
        let var = out.rows.iter().map(|r| (r.n_bar - mean).powi(2)).sum::<f64>();
        assert_relative_eq!(agg.std_n_bar, var.sqrt(), epsilon = 1e-12);
        // two realizations must be different problems
        assert_ne!(out.rows[0].seed, out.rows[1].seed);
        assert_ne!(out.rows[0].n_bar, out.rows[1].n_bar);
    }

    #[test]
    fn protocols_share_instance_and_annealing_time() {
        let spec = SweepSpec {
            protocols: vec![Protocol::ProjectorInvT, Protocol::TransverseInvT],
            realizations: 1,
            ..tiny_spec()
        };
        let out = sweep(&spec).unwrap();
        assert_eq!(out.rows.len(), 2);
        assert_eq!(out.rows[0].seed, out.rows[1].seed);
        assert_relative_eq!(out.rows[0].tau_a, out.rows[1].tau_a, epsilon = 1e-15);
        assert!(out.rows.iter().all(|r| r.is_ok()));
    }

    #[test]
    fn physics_columns_are_bit_identical_on_rerun() {
        let spec = tiny_spec();
        let a = sweep(&spec).unwrap();
        let b = sweep(&spec).unwrap();
        for (x, y) in a.rows.iter().zip(&b.rows) {
            assert_eq!(x.run_id, y.run_id);
            assert_eq!(x.seed, y.seed);
            assert_eq!(x.p0.to_bits(), y.p0.to_bits());
            assert_eq!(x.n_bar.to_bits(), y.n_bar.to_bits());
            assert_eq!(x.eps_res.to_bits(), y.eps_res.to_bits());
            assert_eq!(x.steps, y.steps);
        }
    }

    #[test]
    fn failed_runs_flag_rows_without_aborting() {
        // a zero constant coupling freezes the initial state: fine. An
        // unsatisfiable schedule parameter must flag, not abort.
        let spec = SweepSpec { ratio_t: 0.5, ..tiny_spec() };
        let out = sweep(&spec).unwrap();
        assert_eq!(out.rows.len(), 2);
        assert!(out.rows.iter().all(|r| !r.is_ok() && !r.status.is_empty()));
        assert!(out.rows.iter().all(|r| r.p0.is_nan()));
        assert_eq!(out.aggregates.len(), 1);
        assert_eq!(out.aggregates[0].n_realizations, 0);
        assert!(out.aggregates[0].mean_n_bar.is_nan());
    }

    #[test]
    fn spec_json_round_trip_and_validation() {
        let text = r#"{
            "mode": "range-k", "k": 2,
            "n_list": [4, 6], "realizations": 3, "master_seed": 42,
            "protocols": ["p1", "p2"], "g_list": [1.0, 2.0]
        }"#;
        let spec = SweepSpec::from_json(text).unwrap();
        assert_eq!(spec.mode, RandomMode::RangeK { k: 2 });
        assert_eq!(spec.ratio_t, 100.0);
        assert_eq!(spec.protocols, vec![Protocol::ProjectorInvT, Protocol::TransverseInvT]);
        let back: SweepSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(spec, back);
        assert!(SweepSpec::from_json(r#"{"mode": "range-k", "k": 1, "n_list": [],
            "realizations": 1, "master_seed": 0, "protocols": ["p1"], "g_list": [1.0]}"#)
            .is_err());
    }

    #[test]
    fn csv_round_trip_preserves_rows() {
        let out = sweep(&tiny_spec()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let runs = dir.path().join("runs.csv");
        let aggs = dir.path().join("aggregates.csv");
        write_csv(&runs, &out.rows).unwrap();
        write_csv(&aggs, &out.aggregates).unwrap();
        let rows_back: Vec<RunRow> = read_csv(&runs).unwrap();
        let aggs_back: Vec<AggregateRow> = read_csv(&aggs).unwrap();
        assert_eq!(out.rows, rows_back);
        assert_eq!(out.aggregates, aggs_back);
        let header = std::fs::read_to_string(&runs).unwrap().lines().next().unwrap().to_string();
        assert_eq!(
            header,
            "run_id,protocol,N,g,tau_a,T,t0,seed,p0,mean_n,n_bar,eps_res,norm_error,steps,wall_time_s,status"
        );
    }

    #[test]
    fn analytic_relaxation_on_linear_spectrum_is_exact() {
        let delta = 0.25;
        let diagonal: Vec<f64> = (0..16).map(|n| n as f64 * delta).collect();
        let inst = IsingInstance::from_diagonal(4, diagonal).unwrap();
        let budgets = [0.5, 1.0, 2.0, 4.0];
        let curve =
            relaxation_curve(RelaxationMode::QuantumProtocol1Analytic, &inst, &budgets, 0)
                .unwrap();
        for point in &curve {
            let mean = analytic::geometric_mean_n(point.budget, 16).unwrap();
            assert_relative_eq!(point.eps_res, delta * mean, epsilon = 1e-12);
        }
    }

    #[test]
    fn analytic_relaxation_decays_like_inverse_budget() {
        // flat-density random spectrum: uniform draws give order
        // statistics that are linear in the rank, so the residual
        // energy follows the mean excitation number and decays like
        // one over the budget across the mid range
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(123);
        let diagonal: Vec<f64> = (0..1 << 12).map(|_| rng.random::<f64>()).collect();
        let inst = IsingInstance::from_diagonal(12, diagonal).unwrap();
        let budgets: Vec<f64> = (0..13).map(|i| 2.0 * 2.0_f64.powf(i as f64 / 3.0)).collect();
        let curve =
            relaxation_curve(RelaxationMode::QuantumProtocol1Analytic, &inst, &budgets, 0)
                .unwrap();
        let pts: Vec<(f64, f64)> = curve.iter().map(|p| (p.budget, p.eps_res)).collect();
        let fit = fit::fit_alpha(&pts, Some((budgets[0], budgets[12]))).unwrap();
        assert!(
            fit.alpha > 0.85 && fit.alpha < 1.15,
            "mid-range relaxation exponent {} out of band",
            fit.alpha
        );
        assert!(fit.r_squared > 0.99);
    }

    #[test]
    fn numeric_relaxation_tracks_the_analytic_curve() {
        let inst = IsingInstance::random(RandomMode::FullRandomDiagonal, 5, 31).unwrap();
        let budgets = [1.0, 4.0];
        let numeric =
            relaxation_curve(RelaxationMode::QuantumProtocol1Numeric, &inst, &budgets, 0).unwrap();
        let exact =
            relaxation_curve(RelaxationMode::QuantumProtocol1Analytic, &inst, &budgets, 0)
                .unwrap();
        let scale = inst.stats().bandwidth;
        for (n, e) in numeric.iter().zip(&exact) {
            assert!(
                (n.eps_res - e.eps_res).abs() < 0.02 * scale,
                "budget {}: numeric {} vs exact {}",
                n.budget,
                n.eps_res,
                e.eps_res
            );
        }
    }

    #[test]
    fn classical_relaxation_is_monotone_and_slower_than_power_law() {
        let inst = IsingInstance::random(RandomMode::FullRandomDiagonal, 14, 5).unwrap();
        let budgets = [8.0, 32.0, 128.0, 512.0];
        // median over seeds to tame single-trajectory noise
        let mut curves = Vec::new();
        for seed in 0..5u64 {
            let c = relaxation_curve(RelaxationMode::ClassicalSa, &inst, &budgets, seed).unwrap();
            curves.push(c);
        }
        let median_at = |i: usize| -> f64 {
            let mut v: Vec<f64> = curves.iter().map(|c| c[i].eps_res).collect();
            v.sort_by(f64::total_cmp);
            v[v.len() / 2]
        };
        let eps: Vec<f64> = (0..budgets.len()).map(median_at).collect();
        assert!(eps.windows(2).all(|w| w[1] <= w[0]), "running best must not increase");
        // log-log slope flattens as the budget grows: slower than any
        // fixed power law
        let early = (eps[1] / eps[0]).ln() / (budgets[1] / budgets[0]).ln();
        let late = (eps[3] / eps[2]).ln() / (budgets[3] / budgets[2]).ln();
        assert!(
            late > early - 0.05,
            "late slope {late} should be flatter than early slope {early}"
        );
    }

    #[test]
    fn relaxation_rejects_bad_budgets() {
        let inst = IsingInstance::random(RandomMode::FullRandomDiagonal, 4, 1).unwrap();
        for budgets in [vec![], vec![2.0, 1.0], vec![0.0, 1.0]] {
            assert!(relaxation_curve(
                RelaxationMode::QuantumProtocol1Analytic,
                &inst,
                &budgets,
                0
            )
            .is_err());
        }
    }
}
