//! Adaptive Dormand-Prince 5(4) integration of complex state vectors.
//!
//! The Schrodinger right-hand sides in this crate are cheap (O(dim) or
//! O(N dim) per evaluation) while the coupling decays over several decades of
//! time, so an explicit embedded pair with aggressive step adaptation beats
//! anything matrix-exponential based. Error control is per component with
//! mixed weights `abs_tol + rel_tol * |y_i|` and an RMS norm; the pair is the
//! classic 5(4) with first-same-as-last reuse.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

// nodes
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

// stage coefficients
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;

// 5th-order weights (b2 = 0); the 7th stage is the next step's first
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;

// b - b*: weights of the embedded 4th-order error estimate
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const MIN_SHRINK: f64 = 0.1;
const MAX_GROWTH: f64 = 5.0;

/// Local-error tolerances and the step budget.
#[derive(Debug, Clone, Copy)]
pub struct IntegratorOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: u64,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        IntegratorOptions { rel_tol: 1e-8, abs_tol: 1e-10, max_steps: 20_000_000 }
    }
}

/// Work counters for one integration.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct IntegratorStats {
    pub steps: u64,
    pub rejected_steps: u64,
    pub rhs_evals: u64,
}

/// Integrates `dy/dt = rhs(t, y)` from `t0` to `t_end` in place.
///
/// `checkpoints` must be strictly increasing within `(t0, t_end]`; steps are
/// clipped so each checkpoint time is hit exactly, and `on_checkpoint` sees
/// the state there. The final state at `t_end` is left in `y` whether or not
/// `t_end` is a checkpoint.
pub fn integrate<F, C>(
    mut rhs: F,
    y: &mut [Complex64],
    t0: f64,
    t_end: f64,
    checkpoints: &[f64],
    mut on_checkpoint: C,
    opts: &IntegratorOptions,
) -> Result<IntegratorStats>
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]),
    C: FnMut(f64, &[Complex64]),
{
    assert!(t_end > t0, "integration span must be forward");
    assert!(
        checkpoints.windows(2).all(|w| w[0] < w[1])
            && checkpoints.iter().all(|&c| c > t0 && c <= t_end),
        "checkpoints must be strictly increasing within (t0, t_end]"
    );
    let dim = y.len();
    let zero = Complex64::new(0.0, 0.0);
    let mut k: Vec<Vec<Complex64>> = (0..7).map(|_| vec![zero; dim]).collect();
    let mut y_stage = vec![zero; dim];
    let mut y_new = vec![zero; dim];

    let mut stats = IntegratorStats::default();
    let mut t = t0;
    let mut h = (t_end - t0) * 1e-9;
    let mut next_cp = 0usize;
    let mut just_rejected = false;

    // k[0] always holds rhs(t, y): seeded here, then maintained by the
    // first-same-as-last swap on acceptance and left untouched on rejection
    rhs(t, y, &mut k[0]);
    stats.rhs_evals += 1;

    while t < t_end {
        if stats.steps + stats.rejected_steps >= opts.max_steps {
            return Err(Error::StepBudgetExceeded { t, max_steps: opts.max_steps });
        }
        // clip to the next boundary (checkpoint or span end), keeping the
        // unclipped proposal so boundary hits do not destroy the step size
        let boundary = checkpoints.get(next_cp).copied().unwrap_or(t_end).min(t_end);
        let clipped = t + h >= boundary;
        let h_step = if clipped { boundary - t } else { h };
        if t + h_step <= t {
            return Err(Error::StepUnderflow { t });
        }

        for i in 0..dim {
            y_stage[i] = y[i] + h_step * (A21 * k[0][i]);
        }
        rhs(t + C2 * h_step, &y_stage, &mut k[1]);
        for i in 0..dim {
            y_stage[i] = y[i] + h_step * (A31 * k[0][i] + A32 * k[1][i]);
        }
        rhs(t + C3 * h_step, &y_stage, &mut k[2]);
        for i in 0..dim {
            y_stage[i] = y[i] + h_step * (A41 * k[0][i] + A42 * k[1][i] + A43 * k[2][i]);
        }
        rhs(t + C4 * h_step, &y_stage, &mut k[3]);
        for i in 0..dim {
            y_stage[i] =
                y[i] + h_step * (A51 * k[0][i] + A52 * k[1][i] + A53 * k[2][i] + A54 * k[3][i]);
        }
        rhs(t + C5 * h_step, &y_stage, &mut k[4]);
        for i in 0..dim {
            y_stage[i] = y[i]
                + h_step
                    * (A61 * k[0][i] + A62 * k[1][i] + A63 * k[2][i] + A64 * k[3][i]
                        + A65 * k[4][i]);
        }
        rhs(t + h_step, &y_stage, &mut k[5]);
        for i in 0..dim {
            y_new[i] = y[i]
                + h_step
                    * (B1 * k[0][i] + B3 * k[2][i] + B4 * k[3][i] + B5 * k[4][i] + B6 * k[5][i]);
        }
        rhs(t + h_step, &y_new, &mut k[6]);
        stats.rhs_evals += 6;

        // RMS of per-component error over mixed weights
        let mut err_sq = 0.0;
        for i in 0..dim {
            let e = h_step
                * (E1 * k[0][i]
                    + E3 * k[2][i]
                    + E4 * k[3][i]
                    + E5 * k[4][i]
                    + E6 * k[5][i]
                    + E7 * k[6][i]);
            let scale = opts.abs_tol + opts.rel_tol * y[i].norm().max(y_new[i].norm());
            err_sq += e.norm_sqr() / (scale * scale);
        }
        let err = (err_sq / dim as f64).sqrt();

        if err.is_finite() && err <= 1.0 {
            t = if clipped { boundary } else { t + h_step };
            y.copy_from_slice(&y_new);
            // first-same-as-last: stage 7 was evaluated at (t, y)
            k.swap(0, 6);
            stats.steps += 1;
            if clipped && next_cp < checkpoints.len() && boundary == checkpoints[next_cp] {
                on_checkpoint(t, y);
                next_cp += 1;
            }
            let mut factor = if err == 0.0 {
                MAX_GROWTH
            } else {
                (SAFETY * err.powf(-0.2)).clamp(MIN_SHRINK, MAX_GROWTH)
            };
            if just_rejected {
                factor = factor.min(1.0);
            }
            just_rejected = false;
            // grow from the natural proposal unless the clip was binding
            h = if clipped { h.max(h_step * factor) } else { h_step * factor };
        } else {
            stats.rejected_steps += 1;
            just_rejected = true;
            let shrink =
                if err.is_finite() { (SAFETY * err.powf(-0.2)).clamp(MIN_SHRINK, 1.0) } else { MIN_SHRINK };
            h = h_step * shrink;
        }
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn opts(rel: f64) -> IntegratorOptions {
        IntegratorOptions { rel_tol: rel, abs_tol: 1e-12, ..Default::default() }
    }

    #[test]
    fn scalar_phase_rotation_is_exact() {
        let omega = 3.2;
        let mut y = vec![Complex64::new(1.0, 0.0)];
        let stats = integrate(
            |_t, y, dy| dy[0] = Complex64::new(0.0, -omega) * y[0],
            &mut y,
            1.0,
            5.0,
            &[],
            |_, _| {},
            &opts(1e-10),
        )
        .unwrap();
        let exact = Complex64::from_polar(1.0, -omega * 4.0);
        assert!((y[0] - exact).norm() < 1e-8);
        // global error is roughly steps * local tolerance
        assert_relative_eq!(y[0].norm(), 1.0, epsilon = 1e-8);
        assert!(stats.steps > 10 && stats.rejected_steps < stats.steps);
    }

    #[test]
    fn rabi_half_period_fully_transfers() {
        // dy0/dt = -i w y1, dy1/dt = -i w y0; at t = pi/(2w) all population
        // has moved from 0 to 1
        let w = 0.7;
        let mut y = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        integrate(
            |_t, y, dy| {
                dy[0] = Complex64::new(0.0, -w) * y[1];
                dy[1] = Complex64::new(0.0, -w) * y[0];
            },
            &mut y,
            0.0,
            std::f64::consts::FRAC_PI_2 / w,
            &[],
            |_, _| {},
            &opts(1e-10),
        )
        .unwrap();
        assert!(y[0].norm() < 1e-9);
        assert_relative_eq!(y[1].norm_sqr(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn tighter_tolerance_means_more_steps_and_less_error() {
        let run = |rel: f64| {
            let mut y = vec![Complex64::new(1.0, 0.0)];
            let stats = integrate(
                |t, y, dy| dy[0] = Complex64::new(0.0, -t) * y[0],
                &mut y,
                0.0,
                20.0,
                &[],
                |_, _| {},
                &opts(rel),
            )
            .unwrap();
            let exact = Complex64::from_polar(1.0, -200.0);
            ((y[0] - exact).norm(), stats.steps)
        };
        let (err_loose, steps_loose) = run(1e-5);
        let (err_tight, steps_tight) = run(1e-11);
        assert!(steps_tight > steps_loose);
        assert!(err_tight < err_loose);
        assert!(err_tight < 1e-7);
    }

    #[test]
    fn checkpoints_are_hit_exactly() {
        let cps: Vec<f64> = (1..=20).map(|i| 0.1 * (100.0f64).powf(i as f64 / 20.0)).collect();
        let mut seen = Vec::new();
        let mut y = vec![Complex64::new(1.0, 0.0)];
        integrate(
            |t, y, dy| dy[0] = Complex64::new(0.0, -t) * y[0],
            &mut y,
            0.1,
            10.0,
            &cps,
            |t, state| seen.push((t, state[0])),
            &opts(1e-9),
        )
        .unwrap();
        assert_eq!(seen.len(), cps.len());
        for ((t, amp), cp) in seen.iter().zip(&cps) {
            assert_eq!(t, cp, "checkpoint time must be exact");
            // exact solution: phase -(t^2 - t0^2)/2
            let exact = Complex64::from_polar(1.0, -(t * t - 0.01) / 2.0);
            assert!((amp - exact).norm() < 1e-7);
        }
    }

    #[test]
    fn singular_rhs_underflows_the_step() {
        // y = -ln(0.5 - t) blows up at t = 0.5; the controller must shrink
        // into a zero-width step rather than hop the pole
        let mut y = vec![Complex64::new(1.0, 0.0)];
        let res = integrate(
            |t, _y, dy| dy[0] = Complex64::new(1.0 / (0.5 - t), 0.0),
            &mut y,
            0.0,
            1.0,
            &[],
            |_, _| {},
            &opts(1e-8),
        );
        match res {
            Err(Error::StepUnderflow { t }) => assert!((t - 0.5).abs() < 0.01),
            other => panic!("expected step underflow, got {other:?}"),
        }
    }

    #[test]
    fn step_budget_is_enforced() {
        let tight = IntegratorOptions { rel_tol: 1e-12, abs_tol: 1e-14, max_steps: 10 };
        let mut y = vec![Complex64::new(1.0, 0.0)];
        let res = integrate(
            |t, y, dy| dy[0] = Complex64::new(0.0, -t) * y[0],
            &mut y,
            0.0,
            1e6,
            &[],
            |_, _| {},
            &tight,
        );
        assert!(matches!(res, Err(Error::StepBudgetExceeded { .. })));
    }
}
