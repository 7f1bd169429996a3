//! Diagonal k-local Ising Hamiltonians on N qubits.
//!
//! A problem Hamiltonian is a sum of products of Pauli-z operators,
//! `H_I = sum_S a_S prod_{k in S} sigma_z^k`, stored either as its term list
//! or directly as the full 2^N diagonal. Basis states are indexed
//! little-endian: bit k of the index `z` is the spin of qubit k, with bit
//! value 0 meaning `sigma_z = +1`. The diagonal is built from the term list
//! with an in-place Walsh-Hadamard transform in O(N 2^N).

use std::fmt;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Basis-state convention recorded in instance files.
pub const BIT_CONVENTION: &str = "little-endian; bit k of z = 0 means sigma_z(k) = +1";

/// Largest qubit count accepted by default; 2^24 doubles already cost 128 MiB.
pub const DEFAULT_QUBIT_CAP: usize = 24;

const FWHM_GAUSSIAN_FACTOR: f64 = 2.354_820_045_030_949_3; // 2 sqrt(2 ln 2)

/// One multi-spin coupling: `coeff * prod_{k in sites} sigma_z^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsingTerm {
    /// Qubit indices, strictly increasing and non-empty.
    pub sites: Vec<usize>,
    pub coeff: f64,
}

impl IsingTerm {
    pub fn new(sites: Vec<usize>, coeff: f64) -> Self {
        IsingTerm { sites, coeff }
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        if self.sites.is_empty() || !self.sites.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::BadTermSites);
        }
        let last = *self.sites.last().unwrap();
        if last >= n_qubits {
            return Err(Error::SiteOutOfRange { index: last, n_qubits });
        }
        if !self.coeff.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "non-finite coefficient on sites {:?}",
                self.sites
            )));
        }
        Ok(())
    }

    fn mask(&self) -> usize {
        self.sites.iter().fold(0usize, |m, &s| m | (1 << s))
    }
}

/// How the spectral bandwidth `delta_E` is measured from the diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BandwidthMode {
    /// 2 sqrt(2 ln 2) times the sample standard deviation of the levels.
    FwhmGaussian,
    /// Half-maximum width of a Freedman-Diaconis histogram of the levels.
    FwhmHistogram,
    /// max - min of the levels.
    FullRange,
}

impl Default for BandwidthMode {
    fn default() -> Self {
        BandwidthMode::FwhmGaussian
    }
}

impl fmt::Display for BandwidthMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BandwidthMode::FwhmGaussian => "fwhm-gaussian",
            BandwidthMode::FwhmHistogram => "fwhm-histogram",
            BandwidthMode::FullRange => "full-range",
        };
        f.write_str(s)
    }
}

/// Sorted-spectrum summary of a diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumStats {
    /// `perm[n]` is the basis index of the n-th lowest level; ties keep
    /// ascending basis order, so the map is deterministic.
    pub perm: Vec<usize>,
    pub ground_energy: f64,
    /// Bandwidth `delta_E` under `bandwidth_mode`.
    pub bandwidth: f64,
    pub bandwidth_mode: BandwidthMode,
    /// `delta = delta_E / 2^N`, the density-of-states spacing scale.
    pub mean_level_spacing: f64,
    /// Number of levels within `degeneracy_tol` of the ground energy.
    pub ground_degeneracy: usize,
    pub degeneracy_tol: f64,
}

/// Sorts and summarizes a diagonal. `degeneracy_tol` defaults to
/// `1e-12 * bandwidth` when not given.
pub fn spectrum_stats(
    diagonal: &[f64],
    mode: BandwidthMode,
    degeneracy_tol: Option<f64>,
) -> Result<SpectrumStats> {
    let len = diagonal.len();
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::BadDiagonalLength { len });
    }
    if let Some(i) = diagonal.iter().position(|e| !e.is_finite()) {
        return Err(Error::NonFiniteDiagonal { index: i });
    }

    let mut perm: Vec<usize> = (0..len).collect();
    perm.sort_by(|&a, &b| diagonal[a].total_cmp(&diagonal[b]).then(a.cmp(&b)));

    let ground_energy = diagonal[perm[0]];
    let full_range = diagonal[perm[len - 1]] - ground_energy;

    let bandwidth = match mode {
        BandwidthMode::FullRange => full_range,
        BandwidthMode::FwhmGaussian => {
            let n = len as f64;
            let mean = diagonal.iter().sum::<f64>() / n;
            let var = diagonal.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (n - 1.0);
            FWHM_GAUSSIAN_FACTOR * var.sqrt()
        }
        BandwidthMode::FwhmHistogram => fwhm_histogram(diagonal, &perm, full_range),
    };

    let tol = degeneracy_tol.unwrap_or(1e-12 * bandwidth);
    if tol < 0.0 || !tol.is_finite() {
        return Err(Error::InvalidParameter("degeneracy_tol must be finite and >= 0".into()));
    }
    let ground_degeneracy = perm
        .iter()
        .take_while(|&&i| diagonal[i] - ground_energy <= tol)
        .count();

    Ok(SpectrumStats {
        perm,
        ground_energy,
        bandwidth,
        bandwidth_mode: mode,
        mean_level_spacing: bandwidth / len as f64,
        ground_degeneracy,
        degeneracy_tol: tol,
    })
}

/// Half-maximum width of a level histogram with Freedman-Diaconis bins.
/// Falls back to the full range when the bin width degenerates.
fn fwhm_histogram(diagonal: &[f64], perm: &[usize], full_range: f64) -> f64 {
    let len = diagonal.len();
    let q = |f: f64| -> f64 {
        let pos = f * (len - 1) as f64;
        let lo = pos.floor() as usize;
        let hi = pos.ceil() as usize;
        let frac = pos - lo as f64;
        diagonal[perm[lo]] * (1.0 - frac) + diagonal[perm[hi]] * frac
    };
    let iqr = q(0.75) - q(0.25);
    let width = 2.0 * iqr / (len as f64).cbrt();
    if !(width > 0.0) || full_range <= 0.0 {
        return full_range;
    }
    let n_bins = ((full_range / width).ceil() as usize).clamp(1, 4096);
    let bin_w = full_range / n_bins as f64;
    let lo = diagonal[perm[0]];
    let mut counts = vec![0usize; n_bins];
    for &e in diagonal {
        let b = (((e - lo) / bin_w) as usize).min(n_bins - 1);
        counts[b] += 1;
    }
    let peak = *counts.iter().max().unwrap() as f64;
    let half = peak / 2.0;
    let first = counts.iter().position(|&c| c as f64 >= half).unwrap();
    let last = counts.iter().rposition(|&c| c as f64 >= half).unwrap();
    (last - first + 1) as f64 * bin_w
}

/// Expands a term list to the 2^N diagonal via the Walsh-Hadamard transform:
/// coefficients are scattered to their site-mask slots, then the unnormalized
/// transform turns `a_S` into `E(z) = sum_S a_S (-1)^popcount(S & z)`.
pub fn walsh_diagonal(n_qubits: usize, terms: &[IsingTerm]) -> Result<Vec<f64>> {
    check_qubit_count(n_qubits, DEFAULT_QUBIT_CAP)?;
    let dim = 1usize << n_qubits;
    let mut coeffs = vec![0.0f64; dim];
    for t in terms {
        t.validate(n_qubits)?;
        coeffs[t.mask()] += t.coeff;
    }
    walsh_in_place(&mut coeffs);
    Ok(coeffs)
}

/// In-place unnormalized Walsh-Hadamard butterfly, O(N 2^N).
pub fn walsh_in_place(data: &mut [f64]) {
    debug_assert!(data.len().is_power_of_two());
    let mut step = 1;
    while step < data.len() {
        let mut base = 0;
        while base < data.len() {
            for i in base..base + step {
                let a = data[i];
                let b = data[i + step];
                data[i] = a + b;
                data[i + step] = a - b;
            }
            base += 2 * step;
        }
        step *= 2;
    }
}

fn check_qubit_count(n_qubits: usize, cap: usize) -> Result<()> {
    if n_qubits == 0 {
        return Err(Error::InvalidParameter("n_qubits must be >= 1".into()));
    }
    if n_qubits > cap {
        return Err(Error::QubitCapExceeded { n_qubits, cap });
    }
    Ok(())
}

/// Recipe for drawing a random problem instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum RandomMode {
    /// Independent N(0,1) coefficients on every non-empty site subset.
    #[serde(alias = "full-random")]
    FullRandomCouplings,
    /// Independent N(0,1) coefficients on subsets of size <= k only.
    RangeK { k: usize },
    /// Independent N(0,1) energies drawn directly for all 2^N basis states.
    FullRandomDiagonal,
}

/// A problem instance: term list (when known), full diagonal, and spectrum
/// summary. Construction validates everything once so downstream code can
/// trust the fields.
#[derive(Debug, Clone)]
pub struct IsingInstance {
    n_qubits: usize,
    terms: Option<Vec<IsingTerm>>,
    diagonal: Vec<f64>,
    stats: SpectrumStats,
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    n_qubits: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    convention: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    terms: Option<Vec<IsingTerm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    diagonal: Option<Vec<f64>>,
}

impl IsingInstance {
    /// Builds an instance from a term list. Duplicate site sets are merged by
    /// summing their coefficients; the kept list is sorted by (size, sites).
    pub fn new(n_qubits: usize, terms: Vec<IsingTerm>) -> Result<Self> {
        Self::with_cap(n_qubits, terms, DEFAULT_QUBIT_CAP)
    }

    /// `new` with an explicit qubit cap for callers that know their memory.
    pub fn with_cap(n_qubits: usize, terms: Vec<IsingTerm>, cap: usize) -> Result<Self> {
        check_qubit_count(n_qubits, cap)?;
        for t in &terms {
            t.validate(n_qubits)?;
        }
        let mut merged: Vec<IsingTerm> = Vec::with_capacity(terms.len());
        let mut sorted = terms;
        sorted.sort_by(|a, b| (a.sites.len(), &a.sites).cmp(&(b.sites.len(), &b.sites)));
        for t in sorted {
            match merged.last_mut() {
                Some(prev) if prev.sites == t.sites => prev.coeff += t.coeff,
                _ => merged.push(t),
            }
        }
        let diagonal = walsh_diagonal(n_qubits, &merged)?;
        let stats = spectrum_stats(&diagonal, BandwidthMode::default(), None)?;
        Ok(IsingInstance { n_qubits, terms: Some(merged), diagonal, stats })
    }

    /// Builds an instance straight from a diagonal (no term list kept).
    pub fn from_diagonal(n_qubits: usize, diagonal: Vec<f64>) -> Result<Self> {
        check_qubit_count(n_qubits, DEFAULT_QUBIT_CAP)?;
        if diagonal.len() != 1usize << n_qubits {
            return Err(Error::DimensionMismatch {
                detail: format!(
                    "diagonal has {} entries but {} qubits need {}",
                    diagonal.len(),
                    n_qubits,
                    1usize << n_qubits
                ),
            });
        }
        let stats = spectrum_stats(&diagonal, BandwidthMode::default(), None)?;
        Ok(IsingInstance { n_qubits, terms: None, diagonal, stats })
    }

    /// Draws a random instance. The same `(mode, n_qubits, seed)` triple
    /// always produces the same instance, on any platform.
    pub fn random(mode: RandomMode, n_qubits: usize, seed: u64) -> Result<Self> {
        check_qubit_count(n_qubits, DEFAULT_QUBIT_CAP)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let normal = StandardNormal;
        match mode {
            RandomMode::FullRandomCouplings => {
                let dim = 1usize << n_qubits;
                let mut terms = Vec::with_capacity(dim - 1);
                for mask in 1..dim {
                    let sites: Vec<usize> = (0..n_qubits).filter(|k| mask >> k & 1 == 1).collect();
                    terms.push(IsingTerm::new(sites, normal.sample(&mut rng)));
                }
                Self::new(n_qubits, terms)
            }
            RandomMode::RangeK { k } => {
                if k == 0 || k > n_qubits {
                    return Err(Error::InvalidParameter(format!(
                        "range-k needs 1 <= k <= n_qubits, got k = {k}"
                    )));
                }
                let mut terms = Vec::new();
                for size in 1..=k {
                    for sites in combinations(n_qubits, size) {
                        terms.push(IsingTerm::new(sites, normal.sample(&mut rng)));
                    }
                }
                Self::new(n_qubits, terms)
            }
            RandomMode::FullRandomDiagonal => {
                let dim = 1usize << n_qubits;
                let diagonal: Vec<f64> = (0..dim).map(|_| normal.sample(&mut rng)).collect();
                Self::from_diagonal(n_qubits, diagonal)
            }
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// State-space dimension 2^N.
    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    /// Term list, absent when the instance was defined by its diagonal.
    pub fn terms(&self) -> Option<&[IsingTerm]> {
        self.terms.as_deref()
    }

    pub fn stats(&self) -> &SpectrumStats {
        &self.stats
    }

    /// Energy of basis state `z`.
    pub fn energy(&self, z: usize) -> f64 {
        self.diagonal[z]
    }

    /// Recomputes the spectrum summary under a different bandwidth measure.
    pub fn restat(&mut self, mode: BandwidthMode, degeneracy_tol: Option<f64>) -> Result<()> {
        self.stats = spectrum_stats(&self.diagonal, mode, degeneracy_tol)?;
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let file = InstanceFile {
            n_qubits: self.n_qubits,
            convention: Some(BIT_CONVENTION.to_string()),
            terms: self.terms.clone(),
            diagonal: if self.terms.is_some() { None } else { Some(self.diagonal.clone()) },
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)?;
        if let Some(conv) = &file.convention {
            if conv != BIT_CONVENTION {
                return Err(Error::Format(format!(
                    "unknown basis convention {conv:?}; this build uses {BIT_CONVENTION:?}"
                )));
            }
        }
        match (file.terms, file.diagonal) {
            (Some(terms), None) => Self::new(file.n_qubits, terms),
            (None, Some(diag)) => Self::from_diagonal(file.n_qubits, diag),
            _ => Err(Error::Format(
                "instance file must contain exactly one of \"terms\" or \"diagonal\"".into(),
            )),
        }
    }

    pub fn to_file<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn from_file<P: AsRef<Path>>(path: P) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Size-`k` subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance the rightmost index that can still move
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Independent oracle: evaluate each term on each basis state directly.
    fn direct_diagonal(n_qubits: usize, terms: &[IsingTerm]) -> Vec<f64> {
        let dim = 1usize << n_qubits;
        let mut diag = vec![0.0; dim];
        for (z, e) in diag.iter_mut().enumerate() {
            for t in terms {
                let spin_product: f64 = t
                    .sites
                    .iter()
                    .map(|&s| if z >> s & 1 == 0 { 1.0 } else { -1.0 })
                    .product();
                *e += t.coeff * spin_product;
            }
        }
        diag
    }

    #[test]
    fn two_qubit_coupling_diagonal() {
        let d = walsh_diagonal(2, &[IsingTerm::new(vec![0, 1], 1.0)]).unwrap();
        assert_eq!(d, vec![1.0, -1.0, -1.0, 1.0]);
    }

    #[test]
    fn single_field_on_qubit_zero() {
        let d = walsh_diagonal(2, &[IsingTerm::new(vec![0], 1.0)]).unwrap();
        assert_eq!(d, vec![1.0, -1.0, 1.0, -1.0]);
    }

    #[test]
    fn zero_coefficients_give_zero_diagonal() {
        let terms: Vec<IsingTerm> = (1..8usize)
            .map(|m| IsingTerm::new((0..3).filter(|k| m >> k & 1 == 1).collect(), 0.0))
            .collect();
        let d = walsh_diagonal(3, &terms).unwrap();
        assert!(d.iter().all(|&e| e == 0.0));
    }

    #[test]
    fn walsh_matches_direct_evaluation() {
        for n in 1..=6 {
            for seed in 0..4 {
                let inst = IsingInstance::random(RandomMode::FullRandomCouplings, n, seed).unwrap();
                let oracle = direct_diagonal(n, inst.terms().unwrap());
                for (a, b) in inst.diagonal().iter().zip(&oracle) {
                    assert_relative_eq!(a, b, max_relative = 1e-12, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn duplicate_site_sets_merge() {
        let a = IsingInstance::new(
            2,
            vec![IsingTerm::new(vec![0], 1.0), IsingTerm::new(vec![0], 0.5)],
        )
        .unwrap();
        let b = IsingInstance::new(2, vec![IsingTerm::new(vec![0], 1.5)]).unwrap();
        assert_eq!(a.diagonal(), b.diagonal());
        assert_eq!(a.terms().unwrap().len(), 1);
        assert_eq!(a.terms().unwrap()[0].coeff, 1.5);
    }

    #[test]
    fn invalid_terms_are_rejected() {
        assert!(IsingInstance::new(2, vec![IsingTerm::new(vec![], 1.0)]).is_err());
        assert!(IsingInstance::new(2, vec![IsingTerm::new(vec![1, 0], 1.0)]).is_err());
        assert!(IsingInstance::new(2, vec![IsingTerm::new(vec![0, 0], 1.0)]).is_err());
        assert!(IsingInstance::new(2, vec![IsingTerm::new(vec![2], 1.0)]).is_err());
        assert!(IsingInstance::new(2, vec![IsingTerm::new(vec![0], f64::NAN)]).is_err());
        assert!(matches!(
            IsingInstance::new(25, vec![]),
            Err(Error::QubitCapExceeded { .. })
        ));
    }

    #[test]
    fn spectrum_stats_orders_and_counts() {
        let s = spectrum_stats(&[3.0, 1.0, 4.0, 1.0], BandwidthMode::FullRange, None).unwrap();
        assert_eq!(s.perm, vec![1, 3, 0, 2]);
        assert_eq!(s.ground_energy, 1.0);
        assert_eq!(s.bandwidth, 3.0);
        assert_eq!(s.ground_degeneracy, 2);
        assert_relative_eq!(s.mean_level_spacing, 0.75);
    }

    #[test]
    fn fwhm_gaussian_matches_sample_std() {
        let s = spectrum_stats(&[0.0, 0.0, 1.0, 1.0], BandwidthMode::FwhmGaussian, None).unwrap();
        let sample_std = (1.0f64 / 3.0).sqrt();
        assert_relative_eq!(s.bandwidth, 2.354_820_045_030_949_3 * sample_std, epsilon = 1e-14);
    }

    #[test]
    fn fwhm_histogram_is_between_zero_and_range() {
        let inst = IsingInstance::random(RandomMode::FullRandomDiagonal, 8, 11).unwrap();
        let s = spectrum_stats(inst.diagonal(), BandwidthMode::FwhmHistogram, None).unwrap();
        let full = spectrum_stats(inst.diagonal(), BandwidthMode::FullRange, None).unwrap();
        assert!(s.bandwidth > 0.0 && s.bandwidth <= full.bandwidth);
    }

    #[test]
    fn constant_shift_preserves_shape_stats() {
        let inst = IsingInstance::random(RandomMode::FullRandomDiagonal, 5, 3).unwrap();
        let shifted: Vec<f64> = inst.diagonal().iter().map(|e| e + 7.25).collect();
        let a = inst.stats();
        let b = spectrum_stats(&shifted, BandwidthMode::FwhmGaussian, None).unwrap();
        assert_eq!(a.perm, b.perm);
        assert_relative_eq!(a.bandwidth, b.bandwidth, max_relative = 1e-12);
        assert_relative_eq!(b.ground_energy, a.ground_energy + 7.25, max_relative = 1e-12);
        assert_eq!(a.ground_degeneracy, b.ground_degeneracy);
    }

    #[test]
    fn spin_flip_relabels_basis_states() {
        // negating every coefficient that touches qubit 1 must permute the
        // diagonal by z -> z XOR 2
        let inst = IsingInstance::random(RandomMode::FullRandomCouplings, 3, 9).unwrap();
        let flipped: Vec<IsingTerm> = inst
            .terms()
            .unwrap()
            .iter()
            .map(|t| {
                let sign = if t.sites.contains(&1) { -1.0 } else { 1.0 };
                IsingTerm::new(t.sites.clone(), sign * t.coeff)
            })
            .collect();
        let other = IsingInstance::new(3, flipped).unwrap();
        for z in 0..8 {
            assert_relative_eq!(inst.energy(z), other.energy(z ^ 2), max_relative = 1e-12);
        }
    }

    #[test]
    fn range_k_enumerates_subsets_in_order() {
        let inst = IsingInstance::random(RandomMode::RangeK { k: 2 }, 3, 0).unwrap();
        let sites: Vec<Vec<usize>> =
            inst.terms().unwrap().iter().map(|t| t.sites.clone()).collect();
        assert_eq!(
            sites,
            vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]]
        );
    }

    #[test]
    fn full_random_has_all_subsets() {
        let inst = IsingInstance::random(RandomMode::FullRandomCouplings, 4, 0).unwrap();
        assert_eq!(inst.terms().unwrap().len(), 15);
        let dup = IsingInstance::random(RandomMode::FullRandomCouplings, 4, 0).unwrap();
        assert_eq!(inst.diagonal(), dup.diagonal());
        let other = IsingInstance::random(RandomMode::FullRandomCouplings, 4, 1).unwrap();
        assert_ne!(inst.diagonal(), other.diagonal());
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        for mode in [
            RandomMode::FullRandomCouplings,
            RandomMode::RangeK { k: 2 },
            RandomMode::FullRandomDiagonal,
        ] {
            let inst = IsingInstance::random(mode, 5, 42).unwrap();
            let back = IsingInstance::from_json(&inst.to_json().unwrap()).unwrap();
            assert_eq!(inst.diagonal(), back.diagonal());
            assert_eq!(inst.terms(), back.terms());
            assert_eq!(inst.stats().perm, back.stats().perm);
        }
    }

    #[test]
    fn instance_file_requires_exactly_one_payload() {
        assert!(IsingInstance::from_json(r#"{"n_qubits": 2}"#).is_err());
        assert!(IsingInstance::from_json(
            r#"{"n_qubits": 1, "terms": [{"sites": [0], "coeff": 1.0}], "diagonal": [1.0, -1.0]}"#
        )
        .is_err());
        let ok = IsingInstance::from_json(r#"{"n_qubits": 1, "diagonal": [1.0, -1.0]}"#).unwrap();
        assert_eq!(ok.diagonal(), &[1.0, -1.0]);
    }

    #[test]
    fn combinations_count_matches_binomial() {
        assert_eq!(combinations(6, 3).len(), 20);
        assert_eq!(combinations(5, 1).len(), 5);
        assert_eq!(combinations(4, 4).len(), 1);
        let all = combinations(6, 3);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }
}
