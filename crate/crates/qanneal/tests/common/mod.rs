//! Shared helpers for the integration suites: an independent fixed-step RK4
//! propagator (direct picture, no adaptive machinery) and small statistics
//! utilities. Deliberately naive so it cannot share bugs with the shipping
//! integrator.
#![allow(dead_code)]

use num_complex::Complex64;
use qanneal::ising::IsingInstance;
use qanneal::schedule::{Mixer, Schedule};

/// Total variation distance between two probability vectors.
pub fn tvd(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

fn apply_hamiltonian(
    diag: &[f64],
    mixer: Mixer,
    n_qubits: usize,
    coupling: f64,
    y: &[Complex64],
    out: &mut [Complex64],
) {
    match mixer {
        Mixer::Projector => {
            let dim = y.len() as f64;
            let mean: Complex64 = y.iter().sum::<Complex64>() / dim;
            for i in 0..y.len() {
                out[i] = diag[i] * y[i] - coupling * mean;
            }
        }
        Mixer::Transverse => {
            for i in 0..y.len() {
                let mut flips = Complex64::new(0.0, 0.0);
                for k in 0..n_qubits {
                    flips += y[i ^ (1usize << k)];
                }
                out[i] = diag[i] * y[i] - coupling * flips;
            }
        }
    }
}

/// Propagates `i dpsi/dt = H(t) psi` from the uniform superposition over
/// `[t0, T]` with `steps` classical RK4 steps and returns the final
/// probabilities in energy rank order (same convention as `evolve`).
pub fn rk4_probabilities(instance: &IsingInstance, schedule: &Schedule, steps: usize) -> Vec<f64> {
    let dim = instance.dim();
    let n = instance.n_qubits();
    let diag = instance.diagonal();
    let mixer = schedule.mixer();
    let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
    let mut y = vec![amp; dim];

    let h = (schedule.t_end() - schedule.t0()) / steps as f64;
    let mut k1 = vec![Complex64::new(0.0, 0.0); dim];
    let mut k2 = k1.clone();
    let mut k3 = k1.clone();
    let mut k4 = k1.clone();
    let mut tmp = k1.clone();
    let mi = Complex64::new(0.0, -1.0);

    for step in 0..steps {
        let t = schedule.t0() + step as f64 * h;

        apply_hamiltonian(diag, mixer, n, schedule.coupling_at(t), &y, &mut k1);
        for i in 0..dim {
            tmp[i] = y[i] + mi * (0.5 * h) * k1[i];
        }
        let c_mid = schedule.coupling_at(t + 0.5 * h);
        apply_hamiltonian(diag, mixer, n, c_mid, &tmp, &mut k2);
        for i in 0..dim {
            tmp[i] = y[i] + mi * (0.5 * h) * k2[i];
        }
        apply_hamiltonian(diag, mixer, n, c_mid, &tmp, &mut k3);
        for i in 0..dim {
            tmp[i] = y[i] + mi * h * k3[i];
        }
        apply_hamiltonian(diag, mixer, n, schedule.coupling_at(t + h), &tmp, &mut k4);
        for i in 0..dim {
            y[i] += mi * (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }

    instance.stats().perm.iter().map(|&b| y[b].norm_sqr()).collect()
}

/// Sample mean and sample standard deviation.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}
