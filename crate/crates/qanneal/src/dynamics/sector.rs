//! Annealing inside the zero-magnetization sector.
//!
//! `N` spins under local fields, restricted to states with exactly `N/2`
//! spins up. The mixer is the hopping operator `sum_{i != j} s+_i s-_j`,
//! which exchanges an up spin with a down spin and therefore never leaves
//! the sector. Its top eigenvector in the sector is the uniform
//! superposition over all `C(N, N/2)` configurations (eigenvalue
//! `(N/2)^2`, the common row sum of the hop adjacency), so that state
//! plays the role the uniform superposition plays in the unconstrained
//! problem. The hop operator's spectral width grows like `N`, so the
//! schedule uses the `N * coupling` gap normalization: `coupling(t) = g/t`
//! reaches the sector bandwidth at `tau_ref = N g / bandwidth`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::schedule::{Protocol, Schedule};

use super::integrator::{integrate, IntegratorOptions, IntegratorStats};
use super::{distribution_from_sorted, EvolveOptions};

/// Largest spin count before the sector dimension (and the dense adjacency
/// walk) stops being laptop-friendly.
pub const MAX_SECTOR_SPINS: usize = 16;

/// Outcome of one sector anneal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectorResult {
    /// Weight per sector level, ranked by energy.
    pub probabilities: Vec<f64>,
    pub p0: f64,
    pub mean_n: f64,
    pub n_bar: f64,
    pub eps_res: f64,
    /// Expected fraction of spins set against the ground configuration.
    pub wrong_spin_fraction: f64,
    pub norm_error: f64,
    pub stats: IntegratorStats,
}

/// The sector Hilbert space for `N` spins: bit masks with popcount `N/2`
/// in ascending order, their field energies, and the hop adjacency.
#[derive(Debug, Clone)]
pub struct SectorBasis {
    n_spins: usize,
    states: Vec<u32>,
    diagonal: Vec<f64>,
    /// `neighbors[i * hops .. (i+1) * hops]` lists where state `i` can hop.
    neighbors: Vec<u32>,
    hops: usize,
}

impl SectorBasis {
    /// Builds the sector for local fields `fields[k]`, one per spin. The
    /// energy of a configuration is `sum_k fields[k] * s_k` with `s_k = +1`
    /// when bit `k` is clear.
    pub fn new(fields: &[f64]) -> Result<Self> {
        let n = fields.len();
        if n < 2 || n % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "the zero-magnetization sector needs an even spin count >= 2, got {n}"
            )));
        }
        if n > MAX_SECTOR_SPINS {
            return Err(Error::InvalidParameter(format!(
                "sector model supports up to {MAX_SECTOR_SPINS} spins, got {n}"
            )));
        }
        if fields.iter().any(|f| !f.is_finite()) {
            return Err(Error::InvalidParameter("fields must be finite".into()));
        }
        let half = n / 2;
        let full = 1usize << n;
        let mut states = Vec::new();
        for z in 0..full as u32 {
            if z.count_ones() as usize == half {
                states.push(z);
            }
        }
        let mut rank = vec![u32::MAX; full];
        for (i, &z) in states.iter().enumerate() {
            rank[z as usize] = i as u32;
        }
        let diagonal: Vec<f64> = states
            .iter()
            .map(|&z| {
                fields
                    .iter()
                    .enumerate()
                    .map(|(k, &f)| if z >> k & 1 == 0 { f } else { -f })
                    .sum()
            })
            .collect();
        // hop targets: clear one set bit, set one clear bit
        let hops = half * half;
        let mut neighbors = Vec::with_capacity(states.len() * hops);
        for &z in &states {
            for i in 0..n {
                if z >> i & 1 == 0 {
                    continue;
                }
                for j in 0..n {
                    if z >> j & 1 == 1 {
                        continue;
                    }
                    let target = z & !(1 << i) | (1 << j);
                    neighbors.push(rank[target as usize]);
                }
            }
        }
        Ok(SectorBasis { n_spins: n, states, diagonal, neighbors, hops })
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn states(&self) -> &[u32] {
        &self.states
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    /// `dy += i * c * A y` where `A` is the hop adjacency.
    fn apply_hops(&self, c: f64, y: &[Complex64], dy: &mut [Complex64]) {
        let ic = Complex64::new(0.0, c);
        for (i, chunk) in self.neighbors.chunks_exact(self.hops).enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for &nb in chunk {
                acc += y[nb as usize];
            }
            dy[i] += ic * acc;
        }
    }
}

/// Anneals the sector model with `coupling(t) = g/t` from
/// `tau_ref / t0_factor` to `ratio_t * tau_ref`.
///
/// Runs in the direct picture, so the step count scales with the span
/// times the sector bandwidth and the accumulated norm error is roughly
/// `steps * rel_tol`. For `ratio_t = 100` horizons pass `rel_tol <= 1e-9`
/// to stay inside the default norm budget.
pub fn evolve_sector(
    fields: &[f64],
    g: f64,
    ratio_t: f64,
    t0_factor: f64,
    opts: &EvolveOptions,
) -> Result<SectorResult> {
    let basis = SectorBasis::new(fields)?;
    let dim = basis.dim();
    let spread = basis.diagonal.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - basis.diagonal.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(spread > 0.0) {
        return Err(Error::ZeroBandwidth);
    }
    // transverse-style normalization: gap scale N * coupling, coupling g/t
    let sched = Schedule::from_parts(
        Protocol::TransverseInvT,
        basis.n_spins as f64 * g,
        basis.n_spins,
        spread,
        ratio_t,
        t0_factor,
    )?;

    let mut y = vec![Complex64::new(1.0 / (dim as f64).sqrt(), 0.0); dim];
    let int_opts = IntegratorOptions {
        rel_tol: opts.rel_tol,
        abs_tol: opts.abs_tol,
        max_steps: opts.max_steps,
    };
    let diag = &basis.diagonal;
    let stats = integrate(
        |t, y, dy| {
            let c = sched.coupling_at(t);
            for i in 0..dim {
                dy[i] = Complex64::new(0.0, -diag[i]) * y[i];
            }
            basis.apply_hops(c, y, dy);
        },
        &mut y,
        sched.t0(),
        sched.t_end(),
        &[],
        |_, _| {},
        &int_opts,
    )?;

    let norm_error = (y.iter().map(|a| a.norm_sqr()).sum::<f64>() - 1.0).abs();
    if !norm_error.is_finite() || norm_error > opts.norm_tol {
        return Err(Error::NormDrift { norm_error, tol: opts.norm_tol });
    }

    let mut perm: Vec<usize> = (0..dim).collect();
    perm.sort_by(|&a, &b| diag[a].total_cmp(&diag[b]).then(a.cmp(&b)));
    let tol = 1e-12 * spread;
    let ground_degeneracy =
        perm.iter().take_while(|&&i| diag[i] - diag[perm[0]] <= tol).count();
    let probs: Vec<f64> = perm.iter().map(|&i| y[i].norm_sqr()).collect();
    let dist = distribution_from_sorted(probs, |n| diag[perm[n]], ground_degeneracy)?;

    let ground = basis.states[perm[0]];
    let wrong_spin_fraction = perm
        .iter()
        .enumerate()
        .map(|(n, &i)| {
            dist.probabilities[n] * (basis.states[i] ^ ground).count_ones() as f64
        })
        .sum::<f64>()
        / basis.n_spins as f64;

    Ok(SectorResult {
        probabilities: dist.probabilities,
        p0: dist.p0,
        mean_n: dist.mean_n,
        n_bar: dist.n_bar,
        eps_res: dist.eps_res,
        wrong_spin_fraction,
        norm_error,
        stats,
    })
}
