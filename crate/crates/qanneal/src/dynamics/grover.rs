//! Constant-coupling search resonance.
//!
//! A single marked state of depth `eps` driven by a constant projector
//! coupling `g = eps N / (N - 2)` Rabi-oscillates between the uniform
//! superposition and the marked state. The dynamics never leaves the
//! two-dimensional span of those vectors, so the run reduces to a 2x2
//! problem in the basis `{|marked>, |rest>}` and stays cheap at register
//! sizes far beyond what a state vector could hold.

use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::{grover_params, GroverParams};
use crate::error::{Error, Result};
use crate::ising::IsingInstance;
use crate::schedule::{Mixer, Schedule};

use super::integrator::{integrate, IntegratorOptions, IntegratorStats};
use super::EvolveOptions;

/// Outcome of a two-level search run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroverResult {
    /// Probability on the marked state at the end of the sweep.
    pub p0: f64,
    pub params: GroverParams,
    /// `(t, p0)` samples when tracing is on.
    pub trace: Option<Vec<(f64, f64)>>,
    pub norm_error: f64,
    pub stats: IntegratorStats,
}

/// Integrates the two-level reduction over `[0, pi sqrt(N) / (2 eps)]`.
///
/// `n_qubits` only sets the search-space size `N = 2^n_qubits`; no
/// state vector of that size is ever allocated.
pub fn evolve_grover(n_qubits: usize, eps: f64, opts: &EvolveOptions) -> Result<GroverResult> {
    if n_qubits < 2 || n_qubits > 60 {
        return Err(Error::InvalidParameter(format!(
            "two-level search supports 2..=60 qubits, got {n_qubits}"
        )));
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    let dim = (1u64 << n_qubits) as f64;
    let g = eps * dim / (dim - 2.0);
    let duration = std::f64::consts::PI * dim.sqrt() / (2.0 * eps);
    let params = GroverParams { g_const: g, duration };

    // H in the {|marked>, |rest>} basis, with the mean diagonal removed:
    // a common shift is a global phase, and dropping it keeps the step
    // count governed by the slow Rabi frequency instead of sqrt(N)
    let off = -(dim - 1.0).sqrt() * g / dim;
    let mean = 0.5 * (-(g / dim + eps) - (dim - 1.0) * g / dim);
    let h00 = -(g / dim + eps) - mean;
    let h11 = -(dim - 1.0) * g / dim - mean;
    let rhs = move |_t: f64, y: &[Complex64], dy: &mut [Complex64]| {
        dy[0] = Complex64::new(0.0, -1.0) * (h00 * y[0] + off * y[1]);
        dy[1] = Complex64::new(0.0, -1.0) * (off * y[0] + h11 * y[1]);
    };

    let mut y = vec![
        Complex64::new(1.0 / dim.sqrt(), 0.0),
        Complex64::new((1.0 - 1.0 / dim).sqrt(), 0.0),
    ];

    let mut trace = if opts.record_trace { Some(vec![(0.0, y[0].norm_sqr())]) } else { None };
    let mut checkpoints: Vec<f64> = Vec::new();
    if trace.is_some() {
        let m = opts.trace_points.max(2);
        checkpoints = (1..=m - 1).map(|j| duration * j as f64 / (m - 1) as f64).collect();
        *checkpoints.last_mut().unwrap() = duration;
    }

    let int_opts = IntegratorOptions {
        rel_tol: opts.rel_tol,
        abs_tol: opts.abs_tol,
        max_steps: opts.max_steps,
    };
    let stats = integrate(
        rhs,
        &mut y,
        0.0,
        duration,
        &checkpoints,
        |t, y| {
            if let Some(tr) = trace.as_mut() {
                tr.push((t, y[0].norm_sqr()));
            }
        },
        &int_opts,
    )?;

    let norm_error = (y[0].norm_sqr() + y[1].norm_sqr() - 1.0).abs();
    if !norm_error.is_finite() || norm_error > opts.norm_tol {
        return Err(Error::NormDrift { norm_error, tol: opts.norm_tol });
    }
    Ok(GroverResult { p0: y[0].norm_sqr(), params, trace, norm_error, stats })
}

/// A flat spectrum with one marked state pulled down by `eps`: the search
/// problem as an explicit diagonal, for full-state-vector cross checks.
pub fn grover_instance(n_qubits: usize, marked: usize, eps: f64) -> Result<IsingInstance> {
    let dim = 1usize
        .checked_shl(n_qubits as u32)
        .ok_or_else(|| Error::InvalidParameter("qubit count too large".into()))?;
    if marked >= dim {
        return Err(Error::SiteOutOfRange { index: marked, n_qubits });
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    let mut diagonal = vec![0.0; dim];
    diagonal[marked] = -eps;
    IsingInstance::from_diagonal(n_qubits, diagonal)
}

/// The constant resonant schedule matching `grover_instance`, spanning
/// `[0, pi sqrt(N) / (2 eps)]`.
pub fn grover_schedule(instance: &IsingInstance, eps: f64) -> Result<Schedule> {
    let params = grover_params(instance.dim(), eps)?;
    Schedule::constant_span(
        params.g_const,
        Mixer::Projector,
        params.g_const,
        0.0,
        params.duration,
        instance.n_qubits(),
        instance.stats().bandwidth,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Rotating-wave-free closed form for the two-level run at resonance.
    fn closed_form_p0(n_qubits: usize, eps: f64) -> f64 {
        let nn = (1u64 << n_qubits) as f64;
        let omega = (nn - 1.0).sqrt() * eps / (nn - 2.0);
        let t = std::f64::consts::PI * nn.sqrt() / (2.0 * eps);
        let (s, c) = (omega * t).sin_cos();
        c * c / nn + s * s * (1.0 - 1.0 / nn)
    }

    #[test]
    fn frozen_success_probabilities() {
        for (n, expect) in [(6, 0.98298), (8, 0.99601), (10, 0.99897)] {
            let res = evolve_grover(n, 1.0, &EvolveOptions::default()).unwrap();
            assert!((res.p0 - expect).abs() < 5e-5, "n={n}: {} vs {expect}", res.p0);
            assert!((res.p0 - closed_form_p0(n, 1.0)).abs() < 1e-7);
        }
    }

    #[test]
    fn success_probability_is_eps_independent() {
        // duration rescales with 1/eps, so the endpoint phase is unchanged
        let a = evolve_grover(7, 1.0, &EvolveOptions::default()).unwrap();
        let b = evolve_grover(7, 0.25, &EvolveOptions::default()).unwrap();
        assert_relative_eq!(a.p0, b.p0, epsilon = 1e-7);
        assert_relative_eq!(b.params.duration, 4.0 * a.params.duration, max_relative = 1e-12);
    }

    #[test]
    fn large_register_stays_cheap() {
        let res = evolve_grover(40, 1.0, &EvolveOptions::default()).unwrap();
        assert!(res.p0 > 0.999999);
        assert!(res.stats.steps < 2_000_000);
    }

    #[test]
    fn trace_peaks_at_the_end() {
        let opts = EvolveOptions { record_trace: true, trace_points: 101, ..Default::default() };
        let res = evolve_grover(6, 1.0, &opts).unwrap();
        let tr = res.trace.unwrap();
        assert_eq!(tr.len(), 101);
        assert_eq!(tr[0].1, 1.0 / 64.0);
        let max = tr.iter().map(|&(_, p)| p).fold(0.0f64, f64::max);
        assert!(res.p0 > 0.98 && max <= 1.0 + 1e-9);
    }

    #[test]
    fn rejects_degenerate_sizes() {
        assert!(evolve_grover(1, 1.0, &EvolveOptions::default()).is_err());
        assert!(evolve_grover(61, 1.0, &EvolveOptions::default()).is_err());
        assert!(evolve_grover(6, 0.0, &EvolveOptions::default()).is_err());
    }

    #[test]
    fn instance_and_schedule_are_consistent() {
        let inst = grover_instance(4, 5, 1.0).unwrap();
        assert_eq!(inst.diagonal()[5], -1.0);
        assert_eq!(inst.stats().ground_degeneracy, 1);
        assert_eq!(inst.stats().perm[0], 5);
        let sched = grover_schedule(&inst, 1.0).unwrap();
        assert_eq!(sched.t0(), 0.0);
        assert_relative_eq!(sched.t_end(), std::f64::consts::PI * 2.0, max_relative = 1e-12);
        assert_relative_eq!(sched.coupling_at(1.0), 16.0 / 14.0, max_relative = 1e-12);
        assert!(grover_instance(4, 16, 1.0).is_err());
    }
}
