//! Scaling-exponent fits on aggregated sweep results.

use serde::Serialize;

use crate::error::{Error, Result};

/// Power-law fit `y ~ c * x^(-alpha)` from ordinary least squares on
/// `(ln x, ln y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitResult {
    pub alpha: f64,
    /// Intercept of the log-log line, `ln c`.
    pub intercept: f64,
    /// The `(x_min, x_max)` window the fit actually used.
    pub fit_window: (f64, f64),
    pub r_squared: f64,
    pub stderr_alpha: f64,
    /// How many points fell inside the window and entered the fit.
    pub n_points: usize,
}

/// Fits the decay exponent of `points = [(g, n_bar), ...]` inside `window`
/// (inclusive). `None` selects the default window: the top half of the g
/// grid in log space, `[sqrt(g_min g_max), g_max]`.
///
/// Requires at least four points with positive `n_bar` in the window.
pub fn fit_alpha(points: &[(f64, f64)], window: Option<(f64, f64)>) -> Result<FitResult> {
    if points.iter().any(|&(g, _)| !(g > 0.0) || !g.is_finite()) {
        return Err(Error::InvalidParameter("fit needs positive finite g values".into()));
    }
    let (lo, hi) = match window {
        Some((lo, hi)) if lo <= hi => (lo, hi),
        Some((lo, hi)) => {
            return Err(Error::InvalidParameter(format!("empty fit window ({lo}, {hi})")))
        }
        None => {
            let g_min = points.iter().map(|&(g, _)| g).fold(f64::INFINITY, f64::min);
            let g_max = points.iter().map(|&(g, _)| g).fold(f64::NEG_INFINITY, f64::max);
            ((g_min * g_max).sqrt(), g_max)
        }
    };
    // a touch of slack so grid endpoints are not lost to rounding
    let eps = 1e-12;
    let selected: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(g, _)| g >= lo * (1.0 - eps) && g <= hi * (1.0 + eps))
        .collect();
    if selected.len() < 4 {
        return Err(Error::InvalidParameter(format!(
            "power-law fit needs >= 4 points in the window, found {}",
            selected.len()
        )));
    }
    if let Some(&(g, y)) = selected.iter().find(|&&(_, y)| !(y > 0.0) || !y.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "power-law fit needs positive values; got {y} at g = {g}"
        )));
    }

    let m = selected.len() as f64;
    let xs: Vec<f64> = selected.iter().map(|&(g, _)| g.ln()).collect();
    let ys: Vec<f64> = selected.iter().map(|&(_, y)| y.ln()).collect();
    let x_mean = xs.iter().sum::<f64>() / m;
    let y_mean = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - x_mean).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidParameter("fit window contains a single g value".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - x_mean) * (y - y_mean)).sum();
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let ss_res: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - y_mean).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { (1.0 - ss_res / ss_tot).clamp(0.0, 1.0) };
    let stderr_alpha = (ss_res / (m - 2.0) / sxx).sqrt();
    Ok(FitResult {
        alpha: -slope,
        intercept,
        fit_window: (lo, hi),
        r_squared,
        stderr_alpha,
        n_points: selected.len(),
    })
}

/// Least-squares fit of `y = sum_{k=0}^{degree} c_k / N^k` to
/// `points = [(N, y), ...]`; returns `[c_0, ..., c_degree]`. `c_0` is the
/// extrapolated large-N limit. Needs at least `degree + 1` points.
pub fn fit_inverse_poly(points: &[(f64, f64)], degree: usize) -> Result<Vec<f64>> {
    let k = degree + 1;
    if points.len() < k {
        return Err(Error::InvalidParameter(format!(
            "degree-{degree} fit needs >= {k} points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|&(n, y)| !(n > 0.0) || !n.is_finite() || !y.is_finite()) {
        return Err(Error::InvalidParameter("fit needs positive N and finite values".into()));
    }
    // normal equations A^T A c = A^T y with A[i][j] = N_i^-j
    let mut ata = vec![vec![0.0; k]; k];
    let mut aty = vec![0.0; k];
    for &(n, y) in points {
        let u = 1.0 / n;
        let mut pow_i = 1.0;
        for i in 0..k {
            let mut pow_j = pow_i;
            for j in 0..k {
                // u^(i+j), built incrementally
                if j > 0 {
                    pow_j *= u;
                }
                ata[i][j] += pow_j;
            }
            aty[i] += pow_i * y;
            pow_i *= u;
        }
    }
    solve_dense(&mut ata, &mut aty)?;
    Ok(aty)
}

/// Gaussian elimination with partial pivoting; solution lands in `b`.
fn solve_dense(a: &mut [Vec<f64>], b: &mut [f64]) -> Result<()> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col].abs() < 1e-14 {
            return Err(Error::InvalidParameter(
                "singular normal equations; add more distinct points".into(),
            ));
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for j in col..n {
                a[row][j] -= f * a[col][j];
            }
            b[row] -= f * b[col];
        }
    }
    for col in (0..n).rev() {
        let mut acc = b[col];
        for j in col + 1..n {
            acc -= a[col][j] * b[j];
        }
        b[col] = acc / a[col][col];
    }
    Ok(())
}
