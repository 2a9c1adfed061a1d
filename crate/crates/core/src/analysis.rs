//! Closed-form drift formulas, drift-verification reports, transformed
//! observables, finite-scan criterion checkers, second-moment exponent
//! scans, and the fast two-coordinate kernel for single-block states.

use thiserror::Error;

use crate::config::{enumerate_states, Configuration};
use crate::kernel::{exact_drift, exact_second_moment, transition_distribution, ModelParams};
use crate::lyapunov::{f1, f2_doubled};
use crate::parallel::map_slice;
use crate::scalar::{Rational, Scalar};
use crate::stats::{linear_fit, LineFit};

/// Numerical slack for sign classification of float-mode drifts. Large
/// enough to absorb enumeration round-off, far below every genuine margin
/// that appears at desk scale.
pub const SIGN_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error("the single-shock state has no blocks to analyze")]
    Heaviside,
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("scan bound must be at least 4, got {0}")]
    BadBound(u64),
    #[error("exponent must be positive, got {0}")]
    BadExponent(f64),
}

/// Expected one-step change of the transposition count:
/// `-[beta N - (1-beta)((q-p) N + q)] / (2N+1)`.
pub fn closed_form_drift_f1<S: Scalar>(
    s: &Configuration,
    params: &ModelParams<S>,
) -> Result<S, AnalysisError> {
    if s.is_heaviside() {
        return Err(AnalysisError::Heaviside);
    }
    let n = S::from_int(s.n_blocks() as i64);
    let edges = S::from_int(2 * s.n_blocks() as i64 + 1);
    let beta = params.beta().clone();
    let not_beta = S::one() - beta.clone();
    let p = params.p().clone();
    let q = params.q();
    Ok(-(beta * n.clone() - not_beta * ((q.clone() - p) * n + q)) / edges)
}

/// Expected one-step change of the quadratic potential:
/// `(1-beta) [ (N+q)/(2N+1) - (p-q)/(2N+1) * sum_i (R_i + T_i) ]`.
/// Zero for every state when `beta = 1`.
pub fn closed_form_drift_f2<S: Scalar>(
    s: &Configuration,
    params: &ModelParams<S>,
) -> Result<S, AnalysisError> {
    if s.is_heaviside() {
        return Err(AnalysisError::Heaviside);
    }
    let nb = s.n_blocks();
    let sums = s.sums();
    let mut prefix_total: u128 = 0;
    for i in 1..=nb {
        prefix_total += (sums.r(i) + sums.t(i)) as u128;
    }
    let sum_rt = S::from_int(i64::try_from(prefix_total).expect("desk-scale state"));
    let n = S::from_int(nb as i64);
    let edges = S::from_int(2 * nb as i64 + 1);
    let not_beta = S::one() - params.beta().clone();
    let p = params.p().clone();
    let q = params.q();
    Ok(not_beta * ((n + q.clone()) - (p - q) * sum_rt) / edges)
}

/// Formula-versus-enumeration record for one state at one parameter point.
#[derive(Debug, Clone)]
pub struct DriftReport<S: Scalar> {
    pub config: Configuration,
    pub beta: S,
    pub p: S,
    /// Enumerated expected increments.
    pub drift_f1: S,
    pub drift_f2: S,
    /// Closed-form values.
    pub formula_f1: S,
    pub formula_f2: S,
    /// Enumerated minus closed-form.
    pub residual_f1: S,
    pub residual_f2: S,
    /// Enumerated expected squared increments.
    pub second_moment_f1: S,
    pub second_moment_f2: S,
}

impl<S: Scalar> DriftReport<S> {
    /// Largest residual magnitude, as a float for thresholding.
    pub fn max_abs_residual(&self) -> f64 {
        self.residual_f1
            .clone()
            .abs()
            .to_f64()
            .max(self.residual_f2.clone().abs().to_f64())
    }

    /// Exact mode: both residuals are literally zero. Float mode: both
    /// within `tol`.
    pub fn within(&self, tol: f64) -> bool {
        if S::EXACT {
            self.residual_f1.is_zero() && self.residual_f2.is_zero()
        } else {
            self.max_abs_residual() <= tol
        }
    }
}

/// Builds the formula-versus-enumeration record for one state.
pub fn drift_report<S: Scalar>(
    s: &Configuration,
    params: &ModelParams<S>,
) -> Result<DriftReport<S>, AnalysisError> {
    if s.is_heaviside() {
        return Err(AnalysisError::Heaviside);
    }
    // One enumeration of the transition law feeds all four moments. The
    // law takes only a handful of distinct weights, so the integer
    // increments are summed per weight first and each weight multiplies
    // a single grouped total; exact arithmetic then pays a few scalar
    // products per state instead of a few per move.
    struct Group<S> {
        weight: S,
        d1_sum: i128,
        d1_sq_sum: i128,
        d2_sum: i128,
        d2_sq_sum: i128,
    }
    let here_f1 = f1(s) as i64;
    let here_f2 = f2_doubled(s) as i128;
    let mut groups: Vec<Group<S>> = Vec::new();
    for e in transition_distribution(s, params).entries {
        let d1 = (f1(&e.successor) as i64 - here_f1) as i128;
        let d2 = f2_doubled(&e.successor) as i128 - here_f2;
        let group = match groups.iter_mut().find(|g| g.weight == e.weight) {
            Some(g) => g,
            None => {
                groups.push(Group {
                    weight: e.weight,
                    d1_sum: 0,
                    d1_sq_sum: 0,
                    d2_sum: 0,
                    d2_sq_sum: 0,
                });
                groups.last_mut().expect("just pushed")
            }
        };
        group.d1_sum += d1;
        group.d1_sq_sum += d1 * d1;
        group.d2_sum += d2;
        group.d2_sq_sum += d2 * d2;
    }
    let mut drift_f1 = S::zero();
    let mut drift_f2 = S::zero();
    let mut second_moment_f1 = S::zero();
    let mut second_moment_f2 = S::zero();
    let half = S::ratio(1, 2);
    for g in groups {
        // f2 increments are carried doubled, so `from_doubled` lands on
        // the true sums; squared doubled increments carry a factor 4.
        drift_f1 = drift_f1 + g.weight.clone() * S::from_doubled(2 * g.d1_sum);
        drift_f2 = drift_f2 + g.weight.clone() * S::from_doubled(g.d2_sum);
        second_moment_f1 =
            second_moment_f1 + g.weight.clone() * S::from_doubled(2 * g.d1_sq_sum);
        second_moment_f2 =
            second_moment_f2 + g.weight * S::from_doubled(g.d2_sq_sum) * half.clone();
    }
    let formula_f1 = closed_form_drift_f1(s, params)?;
    let formula_f2 = closed_form_drift_f2(s, params)?;
    Ok(DriftReport {
        config: s.clone(),
        beta: params.beta().clone(),
        p: params.p().clone(),
        residual_f1: drift_f1.clone() - formula_f1.clone(),
        residual_f2: drift_f2.clone() - formula_f2.clone(),
        drift_f1,
        drift_f2,
        formula_f1,
        formula_f2,
        second_moment_f1,
        second_moment_f2,
    })
}

/// Reports for a whole state set, computed in parallel. Violations are
/// returned like every other row — callers inspect residuals; nothing is
/// filtered.
pub fn verify_drift<S: Scalar>(
    states: &[Configuration],
    params: &ModelParams<S>,
) -> Result<Vec<DriftReport<S>>, AnalysisError> {
    if states.is_empty() {
        return Err(AnalysisError::TooFewPoints { needed: 1, got: 0 });
    }
    let reports = map_slice(states, |s| drift_report(s, params));
    reports.into_iter().collect()
}

/// A scalar observable of the state: the two potentials and their power
/// transforms. Powers evaluate to 0 on the single-shock state (the
/// natural continuous extension for positive powers; a fixed convention
/// for negative ones, so hitting the target never produces infinities).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Observable {
    F1,
    F2,
    /// `f2^alpha` with `alpha > 0`.
    PowerOfF2(f64),
    /// `f1^{-alpha}` with `alpha > 0`.
    NegPowerOfF1(f64),
}

impl Observable {
    pub fn eval(&self, s: &Configuration) -> f64 {
        if s.is_heaviside() {
            return 0.0;
        }
        match self {
            Observable::F1 => f1(s) as f64,
            Observable::F2 => f2_doubled(s) as f64 / 2.0,
            Observable::PowerOfF2(a) => (f2_doubled(s) as f64 / 2.0).powf(*a),
            Observable::NegPowerOfF1(a) => (f1(s) as f64).powf(-a),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Observable::F1 => "f1".into(),
            Observable::F2 => "f2".into(),
            Observable::PowerOfF2(a) => format!("phi:{a}"),
            Observable::NegPowerOfF1(a) => format!("psi:{a}"),
        }
    }
}

impl std::str::FromStr for Observable {
    type Err = String;

    /// Accepts `f1`, `f2`, `phi:<alpha>` and `psi:<alpha>`.
    fn from_str(text: &str) -> Result<Self, String> {
        match text {
            "f1" => return Ok(Observable::F1),
            "f2" => return Ok(Observable::F2),
            _ => {}
        }
        let parse_alpha = |raw: &str| -> Result<f64, String> {
            let a: f64 = raw
                .parse()
                .map_err(|_| format!("bad exponent in observable: {raw}"))?;
            if a > 0.0 && a.is_finite() {
                Ok(a)
            } else {
                Err(format!("exponent must be positive and finite, got {raw}"))
            }
        };
        if let Some(raw) = text.strip_prefix("phi:") {
            return Ok(Observable::PowerOfF2(parse_alpha(raw)?));
        }
        if let Some(raw) = text.strip_prefix("psi:") {
            return Ok(Observable::NegPowerOfF1(parse_alpha(raw)?));
        }
        Err(format!(
            "unknown observable `{text}` (expected f1, f2, phi:<alpha> or psi:<alpha>)"
        ))
    }
}

/// Exact enumerated drift of a transformed observable at `s`.
pub fn transformed_drift(
    s: &Configuration,
    params: &ModelParams<f64>,
    observable: &Observable,
) -> Result<f64, AnalysisError> {
    if s.is_heaviside() {
        return Err(AnalysisError::Heaviside);
    }
    if let Observable::PowerOfF2(a) | Observable::NegPowerOfF1(a) = observable {
        if !(*a > 0.0 && a.is_finite()) {
            return Err(AnalysisError::BadExponent(*a));
        }
    }
    Ok(exact_drift(s, params, |x| observable.eval(x)))
}

/// The drift conditions probed by the finite-scan checker. Each asks the
/// scanned drift to have a definite sign outside a finite exceptional
/// set; the two transience variants add a side condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FosterCriterion {
    /// Drift at most a strictly negative constant outside a finite set.
    Ergodic,
    /// Drift nonpositive outside a finite set.
    Recurrent,
    /// Drift nonnegative outside a finite set, plus a state outside the
    /// set whose observable value undercuts every value on the set.
    TransientSublevel,
    /// Drift at least a strictly positive constant outside a finite set,
    /// plus uniformly bounded one-step jumps of the observable.
    TransientBoundedJump,
    /// Nonpositive drift of a transformed observable outside a finite
    /// set, as used for polynomial moment bounds of the hitting time.
    Moment,
}

impl FosterCriterion {
    pub fn code(&self) -> &'static str {
        match self {
            FosterCriterion::Ergodic => "erg",
            FosterCriterion::Recurrent => "rec",
            FosterCriterion::TransientSublevel => "tr1",
            FosterCriterion::TransientBoundedJump => "tr2",
            FosterCriterion::Moment => "mom",
        }
    }

    /// Whether a drift value satisfies this criterion's sign condition.
    fn drift_ok(&self, d: f64) -> bool {
        match self {
            FosterCriterion::Ergodic => d < -SIGN_TOLERANCE,
            FosterCriterion::Recurrent | FosterCriterion::Moment => d <= SIGN_TOLERANCE,
            FosterCriterion::TransientSublevel => d >= -SIGN_TOLERANCE,
            FosterCriterion::TransientBoundedJump => d > SIGN_TOLERANCE,
        }
    }
}

impl std::str::FromStr for FosterCriterion {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        match text {
            "erg" | "ergodic" => Ok(FosterCriterion::Ergodic),
            "rec" | "recurrent" => Ok(FosterCriterion::Recurrent),
            "tr1" | "transient-sublevel" => Ok(FosterCriterion::TransientSublevel),
            "tr2" | "transient-bounded-jump" => Ok(FosterCriterion::TransientBoundedJump),
            "mom" | "moment" => Ok(FosterCriterion::Moment),
            other => Err(format!(
                "unknown criterion `{other}` (expected erg, rec, tr1, tr2 or mom)"
            )),
        }
    }
}

/// What a finite scan can conclude: supporting evidence, contradicting
/// evidence, or neither. Never a proof — the tail beyond the scan bound
/// is unexamined by construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FosterVerdict {
    EvidenceFor,
    EvidenceAgainst,
    Inconclusive,
}

impl FosterVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            FosterVerdict::EvidenceFor => "evidence-for",
            FosterVerdict::EvidenceAgainst => "evidence-against",
            FosterVerdict::Inconclusive => "inconclusive",
        }
    }
}

/// Largest observed one-step jump of the observable, split at the tail
/// cutoff. Growth from head to tail is the scan's signal that jumps are
/// not uniformly bounded.
#[derive(Debug, Clone, Copy)]
pub struct JumpReport {
    pub max_abs_head: f64,
    pub max_abs_tail: f64,
    pub bounded: bool,
}

/// Outcome of a finite drift-condition scan.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub criterion: FosterCriterion,
    pub observable: String,
    pub beta: f64,
    pub p: f64,
    pub bound: u64,
    /// Human-readable description of the scanned set.
    pub scanned: String,
    pub states_scanned: u64,
    /// States failing the drift condition, in scan order, displayed in
    /// block text form.
    pub exceptional: Vec<String>,
    /// How many exceptional states lie beyond the tail cutoff `bound/2`.
    pub tail_exceptional: u64,
    pub tail_states: u64,
    /// Min/max drift over states satisfying the condition.
    pub margin_min: Option<f64>,
    pub margin_max: Option<f64>,
    /// Jump-size report (bounded-jump transience only).
    pub jumps: Option<JumpReport>,
    /// Sublevel-witness check (sublevel transience only): some state
    /// outside the exceptional set takes a smaller observable value than
    /// every exceptional state.
    pub sublevel_witness: Option<bool>,
    pub verdict: FosterVerdict,
}

struct ScanRow {
    size: u64,
    text: String,
    drift: f64,
    g_value: f64,
    max_jump: f64,
    ok: bool,
}

/// Scans every configuration with `2 <= |S| <= bound` and classifies the
/// drift condition of `criterion` for the observable `g`. The exceptional
/// set is listed explicitly; the verdict follows the tail rule: supporting
/// evidence needs a clean tail (no exceptional state with `|S| > bound/2`),
/// contradicting evidence needs the whole tail exceptional.
pub fn check_foster(
    params: &ModelParams<f64>,
    g: &Observable,
    bound: u64,
    criterion: FosterCriterion,
) -> Result<CriterionReport, AnalysisError> {
    if bound < 4 {
        return Err(AnalysisError::BadBound(bound));
    }
    let tail_cutoff = bound / 2;
    let mut exceptional = Vec::new();
    let mut tail_exceptional = 0u64;
    let mut tail_states = 0u64;
    let mut states_scanned = 0u64;
    let mut margin_min = f64::INFINITY;
    let mut margin_max = f64::NEG_INFINITY;
    let mut jump_head: f64 = 0.0;
    let mut jump_tail: f64 = 0.0;
    let mut min_g_ok = f64::INFINITY;
    let mut min_g_exceptional = f64::INFINITY;

    for size in 2..=bound {
        let states = enumerate_states(size, size as usize / 2)
            .into_iter()
            .filter(|s| s.size() == size)
            .collect::<Vec<_>>();
        let rows = map_slice(&states, |s| {
            let here = g.eval(s);
            let mut max_jump: f64 = 0.0;
            let mut drift = 0.0;
            for e in transition_distribution(s, params).entries {
                let diff = g.eval(&e.successor) - here;
                drift += e.weight * diff;
                max_jump = max_jump.max(diff.abs());
            }
            ScanRow {
                size,
                text: s.to_string(),
                drift,
                g_value: here,
                max_jump,
                ok: criterion.drift_ok(drift),
            }
        });
        for row in rows {
            states_scanned += 1;
            let in_tail = row.size > tail_cutoff;
            if in_tail {
                tail_states += 1;
                jump_tail = jump_tail.max(row.max_jump);
            } else {
                jump_head = jump_head.max(row.max_jump);
            }
            if row.ok {
                margin_min = margin_min.min(row.drift);
                margin_max = margin_max.max(row.drift);
                min_g_ok = min_g_ok.min(row.g_value);
            } else {
                if in_tail {
                    tail_exceptional += 1;
                }
                min_g_exceptional = min_g_exceptional.min(row.g_value);
                exceptional.push(row.text);
            }
        }
    }

    let jumps = (criterion == FosterCriterion::TransientBoundedJump).then(|| JumpReport {
        max_abs_head: jump_head,
        max_abs_tail: jump_tail,
        bounded: jump_tail <= jump_head + SIGN_TOLERANCE,
    });
    let sublevel_witness = (criterion == FosterCriterion::TransientSublevel)
        .then(|| min_g_ok < min_g_exceptional);

    let mut verdict = if tail_exceptional == 0 {
        FosterVerdict::EvidenceFor
    } else if tail_exceptional == tail_states {
        FosterVerdict::EvidenceAgainst
    } else {
        FosterVerdict::Inconclusive
    };
    // The side conditions can only withdraw support, never add it.
    if verdict == FosterVerdict::EvidenceFor {
        if let Some(j) = &jumps {
            if !j.bounded {
                verdict = FosterVerdict::Inconclusive;
            }
        }
        if sublevel_witness == Some(false) {
            verdict = FosterVerdict::Inconclusive;
        }
    }

    Ok(CriterionReport {
        criterion,
        observable: g.label(),
        beta: *params.beta(),
        p: *params.p(),
        bound,
        scanned: format!("all configurations with 2 <= |S| <= {bound} ({states_scanned} states)"),
        states_scanned,
        exceptional,
        tail_exceptional,
        tail_states,
        margin_min: (margin_min.is_finite()).then_some(margin_min),
        margin_max: (margin_max.is_finite()).then_some(margin_max),
        jumps,
        sublevel_witness,
        verdict,
    })
}

/// Log-log points and fitted line of an exponent scan.
#[derive(Debug, Clone)]
pub struct ExponentFit {
    /// `(ln |S|, ln E[(step change of f2)^2])` per family member.
    pub points: Vec<(f64, f64)>,
    pub fit: LineFit,
}

/// Exact second moment of the f2 increment under the pure copy dynamics
/// for each family member, fitted on the log-log scale against |S|.
pub fn second_moment_scan(family: &[Configuration]) -> Result<ExponentFit, AnalysisError> {
    if family.len() < 4 {
        return Err(AnalysisError::TooFewPoints { needed: 4, got: family.len() });
    }
    let params = ModelParams::new(Rational::one(), Rational::ratio(1, 2))
        .expect("copy-only parameters are valid");
    let points = map_slice(family, |s| {
        let m2 = exact_second_moment(s, &params, |x| {
            Rational::from_doubled(f2_doubled(x) as i128)
        });
        ((s.size() as f64).ln(), m2.to_f64().ln())
    });
    let fit = linear_fit(&points).ok_or(AnalysisError::TooFewPoints {
        needed: 4,
        got: points.len(),
    })?;
    Ok(ExponentFit { points, fit })
}

/// Exact ceiling of `n^{5/4}` via integer arithmetic: the least `k` with
/// `k^4 >= n^5`.
fn ceil_power_five_fourths(n: u64) -> u64 {
    let n5 = (n as u128).pow(5);
    let mut lo = 1u64;
    let mut hi = 2u64;
    while (hi as u128).pow(4) < n5 {
        hi *= 2;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if (mid as u128).pow(4) >= n5 {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Family with heavy first zero-block and last one-block (`ceil(N^{5/4})`)
/// and unit blocks elsewhere — the extremal shape for the second-moment
/// lower-bound exponent.
pub fn sharp_end_family(block_counts: &[u64]) -> Vec<Configuration> {
    block_counts
        .iter()
        .map(|&n| {
            let heavy = ceil_power_five_fourths(n);
            let blocks: Vec<(u64, u64)> = (0..n)
                .map(|i| {
                    let zeros = if i == 0 { heavy } else { 1 };
                    let ones = if i == n - 1 { heavy } else { 1 };
                    (zeros, ones)
                })
                .collect();
            Configuration::from_blocks(&blocks).expect("positive block lengths")
        })
        .collect()
}

/// All blocks of unit length: `N` blocks, `|S| = 2N`.
pub fn all_unit_family(block_counts: &[u64]) -> Vec<Configuration> {
    block_counts
        .iter()
        .map(|&n| {
            let blocks: Vec<(u64, u64)> = (0..n).map(|_| (1, 1)).collect();
            Configuration::from_blocks(&blocks).expect("positive block lengths")
        })
        .collect()
}

/// Single block of equal zero- and one-length `L`: `|S| = 2L`.
pub fn single_block_family(lengths: &[u64]) -> Vec<Configuration> {
    lengths
        .iter()
        .map(|&l| Configuration::from_blocks(&[(l, l)]).expect("positive block lengths"))
        .collect()
}

/// One-step law of the two-coordinate walk equivalent to the copy-only
/// dynamics on single-block states: six successors, each with probability
/// 1/6. A successor with a zero coordinate is absorbed.
pub fn quadrant_kernel(n: u64, m: u64) -> Vec<((u64, u64), Rational)> {
    assert!(n >= 1 && m >= 1, "interior states only");
    let w = Rational::ratio(1, 6);
    vec![
        ((n - 1, m), w),
        ((n + 1, m), w),
        ((n, m + 1), w),
        ((n, m - 1), w),
        ((n - 1, m + 1), w),
        ((n + 1, m - 1), w),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;
    use std::str::FromStr;

    fn cfg(text: &str) -> Configuration {
        text.parse().expect("valid configuration text")
    }

    fn rp(beta: (i64, i64), p: (i64, i64)) -> ModelParams<Rational> {
        ModelParams::new(Rational::ratio(beta.0, beta.1), Rational::ratio(p.0, p.1)).unwrap()
    }

    #[test]
    fn first_potential_drift_formula_examples() {
        // Symmetric exclusion, one block: 1/(2(2N+1)) = 1/6.
        assert_eq!(
            closed_form_drift_f1(&cfg("1:1"), &rp((0, 1), (1, 2))).unwrap(),
            Rational::ratio(1, 6)
        );
        // Copy-only, one block: -N/(2N+1) = -1/3, independent of sizes.
        assert_eq!(
            closed_form_drift_f1(&cfg("5:9"), &rp((1, 1), (1, 2))).unwrap(),
            Rational::ratio(-1, 3)
        );
        // Mixed case, two blocks: -[1.6 - 0.2 (0.4*2 + 0.7)]/5 = -0.26.
        let v = closed_form_drift_f1(&cfg("1:1,1:1"), &rp((4, 5), (3, 10))).unwrap();
        assert_eq!(v, Rational::ratio(-26, 100));
        assert_eq!(
            closed_form_drift_f1(&Configuration::heaviside(), &rp((0, 1), (1, 2))),
            Err(AnalysisError::Heaviside)
        );
    }

    #[test]
    fn second_potential_drift_formula_examples() {
        // One unit block, exclusion only: (4 - 5p)/3.
        for (pn, pd) in [(7i64, 10i64), (1, 2), (3, 10)] {
            let p = Rational::ratio(pn, pd);
            let expect = (Rational::from_int(4) - Rational::from_int(5) * p.clone())
                / Rational::from_int(3);
            assert_eq!(
                closed_form_drift_f2(&cfg("1:1"), &rp((0, 1), (pn, pd))).unwrap(),
                expect
            );
        }
        // Symmetric exclusion at one unit block: exactly 1/2.
        assert_eq!(
            closed_form_drift_f2(&cfg("1:1"), &rp((0, 1), (1, 2))).unwrap(),
            Rational::ratio(1, 2)
        );
        // Copy-only dynamics: identically zero.
        for text in ["1:1", "3:4", "2:1,5:2", "1:1,1:1,1:1"] {
            assert!(closed_form_drift_f2(&cfg(text), &rp((1, 1), (1, 2)))
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn reports_have_zero_residuals_on_a_small_grid() {
        let states = ["1:1", "2:1", "1:2", "3:4", "1:1,1:1", "2:3,4:1", "1:2,2:1,3:3"];
        for (bn, bd) in [(0i64, 1i64), (1, 4), (1, 2), (3, 4), (1, 1)] {
            for (pn, pd) in [(1i64, 10i64), (1, 2), (9, 10)] {
                let params = rp((bn, bd), (pn, pd));
                for text in states {
                    let rep = drift_report(&cfg(text), &params).unwrap();
                    assert!(
                        rep.residual_f1.is_zero() && rep.residual_f2.is_zero(),
                        "residual at {text} beta={bn}/{bd} p={pn}/{pd}"
                    );
                }
            }
        }
    }

    #[test]
    fn drift_sign_invariants_on_closed_forms() {
        let states: Vec<Configuration> = enumerate_states(10, 5);
        // Heavy copy weight forces negative transposition drift for all p.
        for (pn, pd) in [(1i64, 10i64), (1, 2), (9, 10)] {
            let params = rp((7, 10), (pn, pd));
            for s in &states {
                assert!(closed_form_drift_f1(s, &params).unwrap() < Rational::zero());
            }
        }
        // Light copy weight with leftward-favoring exchange keeps it positive:
        // beta below (q-p)/(2q) for p < 1/2.
        let params = rp((1, 20), (3, 10));
        for s in &states {
            let d = closed_form_drift_f1(s, &params).unwrap();
            let n = Rational::from_int(s.n_blocks() as i64);
            let lower = n.clone()
                * (Rational::ratio(19, 20) * Rational::ratio(4, 10) - Rational::ratio(1, 20))
                / (Rational::from_int(2) * n + Rational::one());
            assert!(d >= lower && lower > Rational::zero());
        }
    }

    #[test]
    fn observable_parsing_and_conventions() {
        assert_eq!(Observable::from_str("f1").unwrap(), Observable::F1);
        assert_eq!(Observable::from_str("phi:0.95").unwrap(), Observable::PowerOfF2(0.95));
        assert_eq!(Observable::from_str("psi:1").unwrap(), Observable::NegPowerOfF1(1.0));
        assert!(Observable::from_str("phi:-1").is_err());
        assert!(Observable::from_str("f3").is_err());
        let h = Configuration::heaviside();
        assert_eq!(Observable::NegPowerOfF1(1.0).eval(&h), 0.0);
        assert_eq!(Observable::PowerOfF2(0.95).eval(&h), 0.0);
        assert_eq!(Observable::F1.eval(&cfg("1:1")), 1.0);
        assert_eq!(Observable::F2.eval(&cfg("2:1")), 3.0);
    }

    #[test]
    fn transformed_drift_signs_at_large_states() {
        // Reciprocal of the transposition count drifts down under
        // symmetric exclusion once the count is large relative to the
        // block count.
        let ep = ModelParams::new(0.0, 0.5).unwrap();
        let s = cfg("167:1,166:1");
        assert_eq!(f1(&s), 500);
        let d = transformed_drift(&s, &ep, &Observable::NegPowerOfF1(1.0)).unwrap();
        assert!(d < 0.0, "got {d}");
        // Sub-linear power of the quadratic potential drifts down under
        // the even mixture at large states.
        let hp = ModelParams::new(0.5, 0.5).unwrap();
        for s in [cfg("20:20"), all_unit_family(&[40]).remove(0)] {
            let d = transformed_drift(&s, &hp, &Observable::PowerOfF2(0.95)).unwrap();
            assert!(d < 0.0, "at {s}: got {d}");
        }
        assert_eq!(
            transformed_drift(&Configuration::heaviside(), &ep, &Observable::F1),
            Err(AnalysisError::Heaviside)
        );
    }

    #[test]
    fn criterion_scans_on_a_small_bound() {
        // Rightward-favoring exclusion: quadratic potential drifts down.
        let report = check_foster(
            &ModelParams::new(0.0, 0.7).unwrap(),
            &Observable::F2,
            12,
            FosterCriterion::Ergodic,
        )
        .unwrap();
        assert_eq!(report.verdict, FosterVerdict::EvidenceFor);
        assert_eq!(report.exceptional, vec!["1:1", "1:2", "2:1"]);

        // Leftward-favoring exclusion: transposition count rises with
        // unit jumps.
        let report = check_foster(
            &ModelParams::new(0.0, 0.4).unwrap(),
            &Observable::F1,
            12,
            FosterCriterion::TransientBoundedJump,
        )
        .unwrap();
        assert_eq!(report.verdict, FosterVerdict::EvidenceFor);
        assert!(report.exceptional.is_empty());
        let jumps = report.jumps.unwrap();
        assert_eq!(jumps.max_abs_head, 1.0);
        assert_eq!(jumps.max_abs_tail, 1.0);
        assert!(jumps.bounded);

        // Copy-only dynamics: flat quadratic drift fails the strict
        // condition everywhere and the jumps grow through the scan.
        let report = check_foster(
            &ModelParams::new(1.0, 0.5).unwrap(),
            &Observable::F2,
            12,
            FosterCriterion::TransientBoundedJump,
        )
        .unwrap();
        assert_eq!(report.verdict, FosterVerdict::EvidenceAgainst);
        let jumps = report.jumps.unwrap();
        assert!(!jumps.bounded, "head {} tail {}", jumps.max_abs_head, jumps.max_abs_tail);

        // Copy-only dynamics: flat drift satisfies the nonpositive
        // condition everywhere.
        let report = check_foster(
            &ModelParams::new(1.0, 0.5).unwrap(),
            &Observable::F2,
            12,
            FosterCriterion::Recurrent,
        )
        .unwrap();
        assert_eq!(report.verdict, FosterVerdict::EvidenceFor);
        assert!(report.exceptional.is_empty());

        assert!(matches!(
            check_foster(
                &ModelParams::new(1.0, 0.5).unwrap(),
                &Observable::F1,
                3,
                FosterCriterion::Ergodic
            ),
            Err(AnalysisError::BadBound(3))
        ));
    }

    #[test]
    fn exponent_scans_on_block_families() {
        // Single equal block: fourth-power growth of the squared step.
        let fit = second_moment_scan(&single_block_family(&[4, 8, 16, 32, 64]))
            .unwrap()
            .fit;
        assert!((fit.slope - 4.0).abs() < 0.35, "slope {}", fit.slope);
        // All-unit family: also fourth-power growth in |S|.
        let fit = second_moment_scan(&all_unit_family(&[2, 4, 8, 16, 32])).unwrap().fit;
        assert!(fit.slope >= 3.2, "slope {}", fit.slope);
        // Heavy-ended family: strictly smaller exponent near 16/5.
        let fit = second_moment_scan(&sharp_end_family(&[4, 8, 16, 32, 64])).unwrap().fit;
        assert!(fit.slope > 2.9 && fit.slope < 3.5, "slope {}", fit.slope);
        assert!(second_moment_scan(&single_block_family(&[1, 2, 3])).is_err());
    }

    #[test]
    fn heavy_end_sizes_are_exact() {
        assert_eq!(ceil_power_five_fourths(4), 6);
        assert_eq!(ceil_power_five_fourths(8), 14);
        assert_eq!(ceil_power_five_fourths(16), 32);
        assert_eq!(ceil_power_five_fourths(32), 77);
        assert_eq!(ceil_power_five_fourths(64), 182);
    }

    #[test]
    fn quadrant_kernel_matches_block_kernel() {
        let params = rp((1, 1), (1, 2));
        for n in 1..=10u64 {
            for m in 1..=10u64 {
                let s = Configuration::from_blocks(&[(n, m)]).unwrap();
                let mut from_blocks: HashMap<(u64, u64), Rational> = HashMap::new();
                for e in transition_distribution(&s, &params).entries {
                    let key = if e.successor.is_heaviside() {
                        (0, 0)
                    } else {
                        let b = e.successor.blocks()[0];
                        (b.zeros, b.ones)
                    };
                    let slot = from_blocks.entry(key).or_insert_with(Rational::zero);
                    *slot = slot.clone() + e.weight;
                }
                let mut from_walk: HashMap<(u64, u64), Rational> = HashMap::new();
                for ((a, b), w) in quadrant_kernel(n, m) {
                    let key = if a == 0 || b == 0 { (0, 0) } else { (a, b) };
                    let slot = from_walk.entry(key).or_insert_with(Rational::zero);
                    *slot = slot.clone() + w;
                }
                assert_eq!(from_blocks, from_walk, "at ({n},{m})");
            }
        }
    }
}
