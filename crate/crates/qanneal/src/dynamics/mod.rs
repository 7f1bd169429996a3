//! Time-dependent Schrodinger propagation for annealing schedules.
//!
//! `evolve` integrates `i d psi/dt = (D - coupling(t) M) psi` from `t0` to
//! `T`, starting in the mixer ground state, and reports the final
//! distribution over the excitation index (basis states ranked by energy).
//! The projector mixer runs in a rotating frame by default: with the
//! diagonal phases `e^{-i eps_n t}` absorbed into the state, the remaining
//! derivative is bounded by the decaying coupling instead of the full
//! spectral bandwidth, which is what makes `T = 100 tau_a` horizons cheap.
//! The transverse-field mixer keeps the direct picture, where the bit-flip
//! sum is an O(N 2^N) stencil.

pub mod grover;
pub mod integrator;
pub mod sector;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ising::IsingInstance;
use crate::schedule::{Mixer, Schedule};
use integrator::{integrate, IntegratorOptions, IntegratorStats};

/// A normalized pure state over basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// The uniform superposition, ground state of both mixers as t -> 0.
    pub fn uniform(dim: usize) -> Self {
        let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        StateVector { amplitudes: vec![amp; dim] }
    }

    /// The basis state `|index>`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        StateVector { amplitudes }
    }

    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidParameter("state vector must be non-empty".into()));
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidParameter("state vector has non-finite amplitudes".into()));
        }
        Ok(StateVector { amplitudes })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// `| ||psi||^2 - 1 |`.
    pub fn norm_error(&self) -> f64 {
        (self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() - 1.0).abs()
    }
}

/// Frame the integrator works in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Picture {
    /// Rotating frame for the projector mixer, direct for the transverse.
    #[default]
    Auto,
    Direct,
    /// Diagonal phases absorbed; projector mixer only.
    Interaction,
}

/// Tolerances and outputs for one propagation.
#[derive(Debug, Clone, Copy)]
pub struct EvolveOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub picture: Picture,
    pub record_trace: bool,
    /// Logarithmically spaced sample times when tracing (min 2).
    pub trace_points: usize,
    /// Largest tolerated `| ||psi||^2 - 1 |` at the end of a run.
    pub norm_tol: f64,
    pub max_steps: u64,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        EvolveOptions {
            rel_tol: 1e-8,
            abs_tol: 1e-10,
            picture: Picture::Auto,
            record_trace: false,
            trace_points: 200,
            norm_tol: 1e-6,
            max_steps: IntegratorOptions::default().max_steps,
        }
    }
}

/// One sampled point of an excitation trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub t: f64,
    pub n_bar: f64,
    pub p0: f64,
}

/// Final-state statistics over the excitation index.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Distribution {
    /// `probabilities[n]` = weight on the n-th lowest level (per basis
    /// state, stable order inside exact degeneracy classes).
    pub probabilities: Vec<f64>,
    /// Ground-level probability, summed over the ground degeneracy class.
    pub p0: f64,
    pub mean_n: f64,
    /// `mean_n / ((dim-1)/2)`.
    pub n_bar: f64,
    /// Residual energy `sum_n P[n] (eps_{pi(n)} - eps_0)`.
    pub eps_res: f64,
}

/// Everything a single propagation reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunResult {
    pub probabilities: Vec<f64>,
    pub p0: f64,
    pub mean_n: f64,
    pub n_bar: f64,
    pub eps_res: f64,
    pub norm_error: f64,
    pub stats: IntegratorStats,
    pub trace: Option<Vec<TracePoint>>,
}

/// Ranks `|amplitude|^2` by the instance's energy order.
pub fn excitation_distribution(
    state: &StateVector,
    instance: &IsingInstance,
) -> Result<Distribution> {
    if state.dim() != instance.dim() {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "state has {} amplitudes, instance has {} basis states",
                state.dim(),
                instance.dim()
            ),
        });
    }
    let probs: Vec<f64> = instance
        .stats()
        .perm
        .iter()
        .map(|&z| state.amplitudes[z].norm_sqr())
        .collect();
    distribution_from_sorted(probs, |n| instance.energy(instance.stats().perm[n]), instance.stats().ground_degeneracy)
}

/// Builds the summary statistics from probabilities already in excitation
/// order. Entries within `-1e-12` of zero are clamped; anything lower is an
/// integration failure.
pub(crate) fn distribution_from_sorted(
    mut probs: Vec<f64>,
    energy_of: impl Fn(usize) -> f64,
    ground_degeneracy: usize,
) -> Result<Distribution> {
    for p in probs.iter_mut() {
        if *p < 0.0 {
            if *p < -1e-12 {
                return Err(Error::NegativeProbability { value: *p });
            }
            *p = 0.0;
        }
    }
    let dim = probs.len();
    let e0 = energy_of(0);
    let mut mean_n = 0.0;
    let mut eps_res = 0.0;
    for (n, &p) in probs.iter().enumerate() {
        mean_n += n as f64 * p;
        eps_res += p * (energy_of(n) - e0);
    }
    let p0 = probs[..ground_degeneracy.max(1)].iter().sum();
    Ok(Distribution {
        p0,
        mean_n,
        n_bar: mean_n / ((dim as f64 - 1.0) / 2.0),
        eps_res,
        probabilities: probs,
    })
}

/// Direct-picture derivative with the rank-one mixer `|phi><phi|`:
/// `dy_i = -i d_i y_i + i c phi_i <phi|y>`.
pub(crate) fn rhs_direct_projector(
    diag: &[f64],
    phi: &[Complex64],
    coupling: f64,
    y: &[Complex64],
    dy: &mut [Complex64],
) {
    let mut s = Complex64::new(0.0, 0.0);
    for (p, a) in phi.iter().zip(y) {
        s += p.conj() * a;
    }
    let drive = Complex64::new(0.0, coupling) * s;
    for i in 0..y.len() {
        dy[i] = Complex64::new(0.0, -diag[i]) * y[i] + drive * phi[i];
    }
}

/// Direct-picture derivative with the transverse-field mixer:
/// `dy_i = -i d_i y_i + i c sum_k y_{i XOR 2^k}`.
pub(crate) fn rhs_direct_transverse(
    diag: &[f64],
    n_qubits: usize,
    coupling: f64,
    y: &[Complex64],
    dy: &mut [Complex64],
) {
    let ic = Complex64::new(0.0, coupling);
    for i in 0..y.len() {
        let mut flips = Complex64::new(0.0, 0.0);
        for k in 0..n_qubits {
            flips += y[i ^ (1usize << k)];
        }
        dy[i] = Complex64::new(0.0, -diag[i]) * y[i] + ic * flips;
    }
}

/// Rotating-frame derivative for the rank-one mixer. With
/// `c_n = e^{i d_n t} a_n` the diagonal drops out:
/// `dc_n = i c(t) phi_n e^{i d_n t} sum_k conj(phi_k) e^{-i d_k t} c_k`.
pub(crate) fn rhs_interaction_projector(
    diag: &[f64],
    phi: &[Complex64],
    coupling: f64,
    t: f64,
    phases: &mut [Complex64],
    y: &[Complex64],
    dy: &mut [Complex64],
) {
    let mut w = Complex64::new(0.0, 0.0);
    for k in 0..y.len() {
        let (sin, cos) = (diag[k] * t).sin_cos();
        let ph = Complex64::new(cos, -sin);
        phases[k] = ph;
        w += phi[k].conj() * ph * y[k];
    }
    let drive = Complex64::new(0.0, coupling) * w;
    for i in 0..y.len() {
        dy[i] = drive * phi[i] * phases[i].conj();
    }
}

/// Propagates the standard anneal: initial state and (for the projector)
/// mixer target both the uniform superposition.
pub fn evolve(instance: &IsingInstance, schedule: &Schedule, opts: &EvolveOptions) -> Result<RunResult> {
    evolve_inner(instance, schedule, None, opts)
}

/// Propagates with the rank-one mixer aimed at an arbitrary normalized
/// `target` state, starting there. This is the rotated-problem form: driving
/// `U H_I U^dag` with the uniform-superposition projector is equivalent to
/// driving `H_I` with the projector onto `U^dag |psi_0>`.
pub fn evolve_with_target(
    instance: &IsingInstance,
    schedule: &Schedule,
    target: &StateVector,
    opts: &EvolveOptions,
) -> Result<RunResult> {
    if schedule.mixer() == Mixer::Transverse {
        return Err(Error::InvalidParameter(
            "the transverse-field mixer fixes the initial state to the uniform superposition".into(),
        ));
    }
    if target.norm_error() > 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "mixer target must be normalized; norm error is {:.3e}",
            target.norm_error()
        )));
    }
    evolve_inner(instance, schedule, Some(target), opts)
}

fn evolve_inner(
    instance: &IsingInstance,
    schedule: &Schedule,
    target: Option<&StateVector>,
    opts: &EvolveOptions,
) -> Result<RunResult> {
    let dim = instance.dim();
    if schedule.n_qubits() != instance.n_qubits() {
        return Err(Error::CalibrationMismatch {
            detail: format!(
                "schedule is for {} qubits, instance has {}",
                schedule.n_qubits(),
                instance.n_qubits()
            ),
        });
    }
    let bw = instance.stats().bandwidth;
    if (schedule.bandwidth() - bw).abs() > 1e-9 * bw.abs().max(schedule.bandwidth().abs()) {
        return Err(Error::CalibrationMismatch {
            detail: format!(
                "schedule bandwidth {:.6e} vs instance bandwidth {:.6e}",
                schedule.bandwidth(),
                bw
            ),
        });
    }
    if let Some(tgt) = target {
        if tgt.dim() != dim {
            return Err(Error::DimensionMismatch {
                detail: format!("target has {} amplitudes, instance needs {}", tgt.dim(), dim),
            });
        }
    }

    let phi: Vec<Complex64> = match target {
        Some(t) => t.amplitudes().to_vec(),
        None => StateVector::uniform(dim).amplitudes().to_vec(),
    };
    let picture = match (opts.picture, schedule.mixer()) {
        (Picture::Auto, Mixer::Projector) => Picture::Interaction,
        (Picture::Auto, Mixer::Transverse) => Picture::Direct,
        (Picture::Interaction, Mixer::Transverse) => {
            return Err(Error::InvalidParameter(
                "the rotating frame is only available for the projector mixer".into(),
            ))
        }
        (p, _) => p,
    };

    let t0 = schedule.t0();
    let t_end = schedule.t_end();
    if !(t0 >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "propagation needs t0 >= 0, schedule has t0 = {t0}"
        )));
    }

    // initial state: phi itself; in the rotating frame c_n = e^{i d_n t0} phi_n
    let diag = instance.diagonal();
    let mut y: Vec<Complex64> = match picture {
        Picture::Interaction => phi
            .iter()
            .zip(diag)
            .map(|(a, &d)| {
                let (sin, cos) = (d * t0).sin_cos();
                a * Complex64::new(cos, sin)
            })
            .collect(),
        _ => phi.clone(),
    };

    // trace bookkeeping: |y_n|^2 is the physical probability in both frames
    let perm = &instance.stats().perm;
    let gdeg = instance.stats().ground_degeneracy;
    let half = (dim as f64 - 1.0) / 2.0;
    let sample = |t: f64, y: &[Complex64]| -> TracePoint {
        let mut mean = 0.0;
        let mut p0 = 0.0;
        for (n, &z) in perm.iter().enumerate() {
            let pr = y[z].norm_sqr();
            mean += n as f64 * pr;
            if n < gdeg {
                p0 += pr;
            }
        }
        TracePoint { t, n_bar: mean / half, p0 }
    };

    let mut trace = if opts.record_trace { Some(Vec::new()) } else { None };
    let mut checkpoints: Vec<f64> = Vec::new();
    if let Some(tr) = trace.as_mut() {
        tr.push(sample(t0, &y));
        let m = opts.trace_points.max(2);
        checkpoints = (1..m)
            .map(|j| {
                let f = j as f64 / (m - 1) as f64;
                // log spacing matches the decaying schedules; a span that
                // starts at zero falls back to a linear grid
                if t0 > 0.0 {
                    t0 * (t_end / t0).powf(f)
                } else {
                    t_end * f
                }
            })
            .collect();
        // guard against rounding at the last grid point
        *checkpoints.last_mut().unwrap() = t_end;
    }

    let int_opts = IntegratorOptions {
        rel_tol: opts.rel_tol,
        abs_tol: opts.abs_tol,
        max_steps: opts.max_steps,
    };
    let mut phases = vec![Complex64::new(0.0, 0.0); dim];
    let n_qubits = instance.n_qubits();
    let stats = {
        let trace_ref = &mut trace;
        let on_checkpoint = |t: f64, y: &[Complex64]| {
            if let Some(tr) = trace_ref.as_mut() {
                tr.push(sample(t, y));
            }
        };
        match (picture, schedule.mixer()) {
            (Picture::Interaction, _) => integrate(
                |t, y, dy| {
                    rhs_interaction_projector(
                        diag,
                        &phi,
                        schedule.coupling_at(t),
                        t,
                        &mut phases,
                        y,
                        dy,
                    )
                },
                &mut y,
                t0,
                t_end,
                &checkpoints,
                on_checkpoint,
                &int_opts,
            )?,
            (_, Mixer::Projector) => integrate(
                |t, y, dy| rhs_direct_projector(diag, &phi, schedule.coupling_at(t), y, dy),
                &mut y,
                t0,
                t_end,
                &checkpoints,
                on_checkpoint,
                &int_opts,
            )?,
            (_, Mixer::Transverse) => integrate(
                |t, y, dy| rhs_direct_transverse(diag, n_qubits, schedule.coupling_at(t), y, dy),
                &mut y,
                t0,
                t_end,
                &checkpoints,
                on_checkpoint,
                &int_opts,
            )?,
        }
    };

    let norm_error = (y.iter().map(|a| a.norm_sqr()).sum::<f64>() - 1.0).abs();
    if !norm_error.is_finite() || norm_error > opts.norm_tol {
        return Err(Error::NormDrift { norm_error, tol: opts.norm_tol });
    }

    let probs: Vec<f64> = perm.iter().map(|&z| y[z].norm_sqr()).collect();
    let dist = distribution_from_sorted(probs, |n| instance.energy(perm[n]), gdeg)?;
    Ok(RunResult {
        probabilities: dist.probabilities,
        p0: dist.p0,
        mean_n: dist.mean_n,
        n_bar: dist.n_bar,
        eps_res: dist.eps_res,
        norm_error,
        stats,
        trace,
    })
}
