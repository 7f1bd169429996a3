//! Closed-form predictions for the solvable `g/t` projector protocol.
//!
//! An anneal starting in the uniform superposition and driven by the
//! rank-one projector mixer with coupling `g/t` ends, for any nondegenerate
//! diagonal problem, in a geometric distribution over the excitation index:
//! `P_n = p^n (1-p) / (1 - p^dim)` with `p = exp(-2 pi g / dim)`. Everything
//! here follows from that law: ground-state probability, mean excitation
//! number, the effective Gibbs temperature it mimics, the degenerate-ground
//! extension, the per-state product form for non-uniform initial overlaps,
//! the constant-coupling search-protocol parameters, and the decoherence
//! bound on usable qubit counts.
//!
//! All probabilities are evaluated through `exp_m1`/`ln` so they stay
//! accurate from the sudden-quench regime (`p` near 1) to deep quenches
//! where `p^n` underflows.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

use std::f64::consts::TAU;

/// Geometric-law parameter(s) behind a prediction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum PParam {
    /// Single `p = exp(-2 pi g / dim)` (uniform initial overlaps).
    Uniform(f64),
    /// Per-state `p_n = exp(-2 pi g |overlap_n|^2)`.
    PerState(Vec<f64>),
}

/// Exact final-state distribution over the excitation index.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyticPrediction {
    pub dim: usize,
    pub p: PParam,
    /// `probabilities[n]` for n = 0..dim, descending for any positive g.
    pub probabilities: Vec<f64>,
    pub p0: f64,
    pub mean_n: f64,
    /// `mean_n / ((dim-1)/2)`, so 1 means "no better than uniform".
    pub n_bar: f64,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::InvalidParameter(format!("dim must be >= 2, got {dim}")));
    }
    Ok(())
}

fn check_g(g: f64) -> Result<()> {
    if !(g >= 0.0) || !g.is_finite() {
        return Err(Error::InvalidParameter(format!("g must be finite and >= 0, got {g}")));
    }
    Ok(())
}

/// Mean excitation number of the geometric law, without building the vector.
///
/// Closed form `1/(e^x - 1) - dim/(e^{dim x} - 1)` with `x = 2 pi g / dim`;
/// below `2 pi g = 1e-2` the difference cancels catastrophically, so a
/// Bernoulli expansion in powers of `2 pi g` takes over (relative error
/// well under 1e-12 at the crossover).
pub fn geometric_mean_n(g: f64, dim: usize) -> Result<f64> {
    check_dim(dim)?;
    check_g(g)?;
    let nn = dim as f64;
    if g == 0.0 {
        return Ok((nn - 1.0) / 2.0);
    }
    let y = TAU * g; // dim * x
    let x = y / nn;
    if y < 1e-2 {
        let mean = (nn - 1.0) / 2.0 - (nn * nn - 1.0) * x / 12.0
            + (nn.powi(4) - 1.0) * x.powi(3) / 720.0
            - (nn.powi(6) - 1.0) * x.powi(5) / 30240.0;
        return Ok(mean);
    }
    Ok(1.0 / x.exp_m1() - nn / y.exp_m1())
}

/// The geometric final distribution for quench parameter `g` on `dim` levels.
pub fn geometric_prediction(g: f64, dim: usize) -> Result<AnalyticPrediction> {
    check_dim(dim)?;
    check_g(g)?;
    let nn = dim as f64;
    if g == 0.0 {
        // p -> 1 limit: the initial uniform overlaps freeze in place
        return Ok(AnalyticPrediction {
            dim,
            p: PParam::Uniform(1.0),
            probabilities: vec![1.0 / nn; dim],
            p0: 1.0 / nn,
            mean_n: (nn - 1.0) / 2.0,
            n_bar: 1.0,
        });
    }
    let y = TAU * g;
    let x = y / nn;
    let p = (-x).exp();
    // ln(1 - e^{-x}) and ln(1 - e^{-dim x}); dim x = 2 pi g exactly, so the
    // normalization never under- or overflows however large dim gets
    let ln_one_minus_p = (-(-x).exp_m1()).ln();
    let ln_norm = (-(-y).exp_m1()).ln();
    let probabilities: Vec<f64> =
        (0..dim).map(|n| (-(n as f64) * x + ln_one_minus_p - ln_norm).exp()).collect();
    let p0 = (-x).exp_m1() / (-y).exp_m1();
    let mean_n = geometric_mean_n(g, dim)?;
    Ok(AnalyticPrediction {
        dim,
        p: PParam::Uniform(p),
        probabilities,
        p0,
        mean_n,
        n_bar: mean_n / ((nn - 1.0) / 2.0),
    })
}

/// Probability of ending in an `m`-fold degenerate ground level:
/// `(1 - p^m)/(1 - p^dim)`. Excited-level probabilities are unchanged from
/// the nondegenerate law.
pub fn degenerate_prediction(g: f64, dim: usize, m: usize) -> Result<f64> {
    check_dim(dim)?;
    check_g(g)?;
    if m < 1 || m > dim {
        return Err(Error::InvalidParameter(format!(
            "degeneracy must satisfy 1 <= m <= dim, got m = {m}, dim = {dim}"
        )));
    }
    if g == 0.0 {
        return Ok(m as f64 / dim as f64);
    }
    let x = TAU * g / dim as f64;
    Ok((-(m as f64) * x).exp_m1() / (-TAU * g).exp_m1())
}

/// Per-state generalization: the initial state overlaps the energy
/// eigenstates with amplitudes `overlaps[n]` (in excitation order), and each
/// level keeps its own `p_n = exp(-2 pi g |overlaps[n]|^2)`:
///
/// `P_n = (1 - p_n) prod_{k<n} p_k / (1 - prod_k p_k)`.
///
/// With uniform overlaps this reduces exactly to [`geometric_prediction`].
pub fn general_prediction(overlaps: &[Complex64], g: f64) -> Result<AnalyticPrediction> {
    let dim = overlaps.len();
    check_dim(dim)?;
    check_g(g)?;
    let weights: Vec<f64> = overlaps.iter().map(|o| o.norm_sqr()).collect();
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "overlaps must be normalized; sum of squares is {total:.12}"
        )));
    }
    if g == 0.0 {
        let mean_n: f64 = weights.iter().enumerate().map(|(n, w)| n as f64 * w).sum();
        return Ok(AnalyticPrediction {
            dim,
            p: PParam::PerState(vec![1.0; dim]),
            probabilities: weights.clone(),
            p0: weights[0],
            mean_n,
            n_bar: mean_n / ((dim as f64 - 1.0) / 2.0),
        });
    }
    let y = TAU * g;
    let p_list: Vec<f64> = weights.iter().map(|w| (-y * w).exp()).collect();
    // prod_{k<n} p_k = exp(-2 pi g * prefix_n); the full product is
    // exp(-2 pi g) by normalization of the overlaps
    let norm = -(-y).exp_m1();
    let mut prefix = 0.0;
    let mut probabilities = Vec::with_capacity(dim);
    for w in &weights {
        let survive = (-y * prefix).exp();
        probabilities.push(-(-y * w).exp_m1() * survive / norm);
        prefix += w;
    }
    let mean_n: f64 = probabilities.iter().enumerate().map(|(n, pr)| n as f64 * pr).sum();
    Ok(AnalyticPrediction {
        dim,
        p: PParam::PerState(p_list),
        p0: probabilities[0],
        probabilities,
        mean_n,
        n_bar: mean_n / ((dim as f64 - 1.0) / 2.0),
    })
}

/// Temperature of the Gibbs distribution the geometric law mimics on a
/// linear spectrum with level spacing `delta`: `k_B T = dim * delta/(2 pi g)`.
/// The identity `p = exp(-delta / k_B T)` then holds exactly.
pub fn effective_temperature(g: f64, dim: usize, delta: f64) -> Result<f64> {
    check_dim(dim)?;
    if !(g > 0.0) || !g.is_finite() {
        return Err(Error::InvalidParameter(format!("g must be positive, got {g}")));
    }
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidParameter(format!("delta must be positive, got {delta}")));
    }
    Ok(dim as f64 * delta / (TAU * g))
}

/// Constant-coupling parameters for the unstructured-search protocol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroverParams {
    /// Coupling value `eps * dim/(dim - 2)` that puts the driver on
    /// resonance with the marked level.
    pub g_const: f64,
    /// Half Rabi period `pi sqrt(dim)/(2 eps)`.
    pub duration: f64,
}

/// Resonant coupling and evolution time for finding one marked state of
/// depth `eps` among `dim` states.
pub fn grover_params(dim: usize, eps: f64) -> Result<GroverParams> {
    if dim <= 2 {
        return Err(Error::InvalidParameter(format!("search needs dim > 2, got {dim}")));
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    let nn = dim as f64;
    Ok(GroverParams {
        g_const: eps * nn / (nn - 2.0),
        duration: std::f64::consts::PI * nn.sqrt() / (2.0 * eps),
    })
}

/// Decoherence bound on the usable problem size: a register of `n_qubits`
/// must resolve level spacings within the decoherence time `tau_dec`, giving
/// `n_c < log2(2 pi tau_dec eps_max N)` where `eps_max` caps the per-qubit
/// coupling energy. Returned unfloored.
pub fn hardware_estimate(eps_max: f64, tau_dec: f64, n_qubits: usize) -> Result<f64> {
    if !(eps_max > 0.0) || !(tau_dec > 0.0) || n_qubits == 0 {
        return Err(Error::InvalidParameter(
            "hardware_estimate needs positive eps_max, tau_dec, n_qubits".into(),
        ));
    }
    Ok((TAU * tau_dec * eps_max * n_qubits as f64).log2())
}
