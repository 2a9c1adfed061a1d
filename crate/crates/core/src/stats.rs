//! Small statistical helpers: least-squares line fits and a two-sample
//! Kolmogorov-Smirnov test for integer-valued samples.

use serde::{Deserialize, Serialize};

/// Ordinary least-squares fit of `y = intercept + slope * x`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope estimate.
    pub slope_stderr: f64,
    /// Coefficient of determination.
    pub r2: f64,
    pub n_points: usize,
}

/// Fits a line through `(x, y)` pairs. Requires at least two distinct
/// abscissae; returns `None` otherwise.
pub fn linear_fit(points: &[(f64, f64)]) -> Option<LineFit> {
    let n = points.len();
    if n < 2 {
        return None;
    }
    let nf = n as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum::<f64>();
    if sxx == 0.0 {
        return None;
    }
    let sxy = points
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum::<f64>();
    let syy = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum::<f64>();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res = points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum::<f64>();
    let r2 = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    let slope_stderr = if n > 2 {
        (ss_res / (nf - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Some(LineFit { slope, intercept, slope_stderr, r2, n_points: n })
}

/// Asymptotic two-sided Kolmogorov-Smirnov p-value for statistic `d` with
/// effective sample size `n_eff = n1 n2 / (n1 + n2)`: the tail series
/// `2 Σ (-1)^{k-1} exp(-2 k² λ²)` at `λ = (√n_eff + 0.12 + 0.11/√n_eff) d`.
pub fn ks_p_value(d: f64, n1: usize, n2: usize) -> f64 {
    if d <= 0.0 {
        return 1.0;
    }
    let n_eff = (n1 as f64 * n2 as f64) / (n1 as f64 + n2 as f64);
    let sqrt_n = n_eff.sqrt();
    let lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=100 {
        let term = (-2.0 * (k as f64 * lambda).powi(2)).exp();
        sum += sign * term;
        sign = -sign;
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Two-sample KS test on integer samples given as sorted histograms
/// (value, count). Returns `(d_statistic, p_value)`.
pub fn ks_two_sample(a: &[(u64, u64)], b: &[(u64, u64)]) -> (f64, f64) {
    let n1: u64 = a.iter().map(|e| e.1).sum();
    let n2: u64 = b.iter().map(|e| e.1).sum();
    assert!(n1 > 0 && n2 > 0, "both samples must be non-empty");
    let mut d: f64 = 0.0;
    let (mut i, mut j) = (0usize, 0usize);
    let (mut ca, mut cb) = (0u64, 0u64);
    while i < a.len() || j < b.len() {
        let va = a.get(i).map(|e| e.0);
        let vb = b.get(j).map(|e| e.0);
        let v = match (va, vb) {
            (Some(x), Some(y)) => x.min(y),
            (Some(x), None) => x,
            (None, Some(y)) => y,
            (None, None) => break,
        };
        if va == Some(v) {
            ca += a[i].1;
            i += 1;
        }
        if vb == Some(v) {
            cb += b[j].1;
            j += 1;
        }
        let fa = ca as f64 / n1 as f64;
        let fb = cb as f64 / n2 as f64;
        d = d.max((fa - fb).abs());
    }
    (d, ks_p_value(d, n1 as usize, n2 as usize))
}
