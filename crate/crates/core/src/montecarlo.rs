//! Batch simulation of the time to reach the single-shock state, in
//! discrete steps, in continuous (event-clock) time, and via the fast
//! two-coordinate walk for single-block copy-only dynamics — plus
//! survival-curve, tail-exponent, and censored-moment estimators built
//! on the batch output.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::Configuration;
use crate::kernel::{gillespie_step, step_in_place, ModelParams};
use crate::lyapunov::f1;
use crate::parallel::chunked_map_reduce;
use crate::rng::trial_rng;
use crate::stats::{linear_fit, LineFit};

#[derive(Debug, Error, PartialEq)]
pub enum McError {
    #[error("start state is already the single-shock state")]
    StartAbsorbed,
    #[error("the fast walk needs a single-block start, got {0} blocks")]
    QuadrantShape(usize),
    #[error("the fast walk models copy-only dynamics; beta must be 1")]
    QuadrantParams,
    #[error("bad fit window: {0}")]
    BadWindow(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("empty parameter grid")]
    EmptyGrid,
    #[error("cap must be at least 1, got {0}")]
    BadCap(f64),
}

/// How trials are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SimMode {
    /// Step the full discrete chain (counts every step, stays included).
    Discrete,
    /// Event-clock dynamics; hitting time is real-valued.
    Continuous,
    /// Two-coordinate walk, valid for single-block starts at beta = 1;
    /// identical hitting law to `Discrete`, much faster per step.
    Quadrant,
}

/// Uncensored hitting times: integer step counts or real event times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SampleSet {
    /// Histogram: step count -> number of trials.
    Steps(BTreeMap<u64, u64>),
    /// Sorted hitting times.
    Times(Vec<f64>),
}

impl SampleSet {
    pub fn n_samples(&self) -> u64 {
        match self {
            SampleSet::Steps(h) => h.values().sum(),
            SampleSet::Times(v) => v.len() as u64,
        }
    }

    /// Number of uncensored hitting times strictly greater than `t`.
    pub fn count_above(&self, t: f64) -> u64 {
        match self {
            SampleSet::Steps(h) => {
                // Integer tau exceeds t iff tau >= floor(t) + 1.
                let cut = if t < 0.0 { 0 } else { t.floor() as u64 + 1 };
                h.range(cut..).map(|(_, c)| *c).sum()
            }
            SampleSet::Times(v) => {
                let idx = v.partition_point(|x| *x <= t);
                (v.len() - idx) as u64
            }
        }
    }
}

/// Outcome of one batch of independent trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HittingStats {
    pub mode: SimMode,
    pub n_trials: u64,
    /// Step cap (integral) or time cap, per mode.
    pub cap: f64,
    pub seed: u64,
    pub n_censored: u64,
    pub samples: SampleSet,
    /// Empirical survival `P(tau > t)` on a log-spaced grid of 64 points
    /// per decade up to the cap.
    pub survival: Vec<(f64, f64)>,
}

/// Censored-moment estimate: exact on uncensored mass, with the capped
/// contribution of censored trials included as an explicit lower bound.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MomentEstimate {
    pub power: f64,
    pub cap: f64,
    pub estimate: f64,
    /// True when any mass was capped, so the estimate only bounds the
    /// moment from below.
    pub lower_bound_only: bool,
}

impl HittingStats {
    pub fn n_uncensored(&self) -> u64 {
        self.samples.n_samples()
    }

    /// Empirical `P(tau > t)`; censored trials count as exceeding any
    /// `t < cap`.
    pub fn survival_probability(&self, t: f64) -> f64 {
        (self.samples.count_above(t) + self.n_censored) as f64 / self.n_trials as f64
    }

    /// Mean and standard error of `min(tau, cap)` over all trials.
    pub fn mean_capped(&self) -> (f64, f64) {
        let n = self.n_trials as f64;
        let (mut sum, mut sum_sq) = (0.0, 0.0);
        let mut add = |value: f64, count: f64| {
            sum += value * count;
            sum_sq += value * value * count;
        };
        match &self.samples {
            SampleSet::Steps(h) => {
                for (&tau, &cnt) in h {
                    add(tau as f64, cnt as f64);
                }
            }
            SampleSet::Times(v) => {
                for &tau in v {
                    add(tau, 1.0);
                }
            }
        }
        add(self.cap, self.n_censored as f64);
        let mean = sum / n;
        let var = (sum_sq / n - mean * mean).max(0.0);
        (mean, (var / n).sqrt())
    }

    /// `E[min(tau, at_cap)^power]`, computable exactly for any cap at or
    /// below the simulated one from the same batch.
    pub fn moment_estimate(&self, power: f64, at_cap: f64) -> Result<MomentEstimate, McError> {
        if !(at_cap >= 1.0) || at_cap > self.cap {
            return Err(McError::BadWindow(format!(
                "moment cap {at_cap} outside [1, {}]",
                self.cap
            )));
        }
        let n = self.n_trials as f64;
        let mut sum = 0.0;
        let mut capped: u64 = self.n_censored;
        match &self.samples {
            SampleSet::Steps(h) => {
                for (&tau, &cnt) in h {
                    if (tau as f64) <= at_cap {
                        sum += (tau as f64).powf(power) * cnt as f64;
                    } else {
                        capped += cnt;
                    }
                }
            }
            SampleSet::Times(v) => {
                for &tau in v {
                    if tau <= at_cap {
                        sum += tau.powf(power);
                    } else {
                        capped += 1;
                    }
                }
            }
        }
        sum += at_cap.powf(power) * capped as f64;
        Ok(MomentEstimate {
            power,
            cap: at_cap,
            estimate: sum / n,
            lower_bound_only: capped > 0,
        })
    }
}

/// Power-law fit of the survival tail.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TailFit {
    pub slope: f64,
    pub stderr: f64,
    pub window: (f64, f64),
    pub n_points: usize,
}

/// Steps the discrete chain until absorption or the step cap.
pub fn hitting_time_discrete<R: Rng>(
    s0: &Configuration,
    params: &ModelParams<f64>,
    cap: u64,
    rng: &mut R,
) -> Result<Option<u64>, McError> {
    if s0.is_heaviside() {
        return Err(McError::StartAbsorbed);
    }
    let mut s = s0.clone();
    for t in 1..=cap {
        step_in_place(&mut s, params, rng);
        if s.is_heaviside() {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Runs the event-clock dynamics until absorption or the time cap.
pub fn hitting_time_continuous<R: Rng>(
    s0: &Configuration,
    params: &ModelParams<f64>,
    cap: f64,
    rng: &mut R,
) -> Result<Option<f64>, McError> {
    if s0.is_heaviside() {
        return Err(McError::StartAbsorbed);
    }
    let mut s = s0.clone();
    let mut t = 0.0;
    loop {
        let (next, dt) = gillespie_step(&s, params, rng).expect("active states have events");
        t += dt;
        if t > cap {
            return Ok(None);
        }
        s = next;
        if s.is_heaviside() {
            return Ok(Some(t));
        }
    }
}

/// The six-move walk on positive coordinates: absorbed when either
/// coordinate reaches zero. Hitting law equals the discrete copy-only
/// chain from the single-block state.
pub fn quadrant_hitting<R: Rng>(n: u64, m: u64, cap: u64, rng: &mut R) -> Option<u64> {
    assert!(n >= 1 && m >= 1, "interior start required");
    let (mut a, mut b) = (n, m);
    for t in 1..=cap {
        match rng.gen_range(0u32..6) {
            0 => a += 1,
            1 => a -= 1,
            2 => b += 1,
            3 => b -= 1,
            4 => {
                a += 1;
                b -= 1;
            }
            _ => {
                a -= 1;
                b += 1;
            }
        }
        if a == 0 || b == 0 {
            return Some(t);
        }
    }
    None
}

enum TrialOutcome {
    HitSteps(u64),
    HitTime(f64),
    Censored,
}

struct BatchAcc {
    steps: BTreeMap<u64, u64>,
    times: Vec<f64>,
    censored: u64,
}

/// Runs `n_trials` independent trials. Trial `i` draws from stream `i`
/// of the seeded generator, and accumulators merge in fixed chunk order,
/// so the result is identical for any thread count.
pub fn batch(
    s0: &Configuration,
    params: &ModelParams<f64>,
    n_trials: u64,
    cap: f64,
    seed: u64,
    mode: SimMode,
) -> Result<HittingStats, McError> {
    if s0.is_heaviside() {
        return Err(McError::StartAbsorbed);
    }
    if cap < 1.0 {
        return Err(McError::BadCap(cap));
    }
    if n_trials == 0 {
        return Err(McError::InsufficientData("zero trials requested".into()));
    }
    let quadrant_start = match mode {
        SimMode::Quadrant => {
            if s0.n_blocks() != 1 {
                return Err(McError::QuadrantShape(s0.n_blocks()));
            }
            if *params.beta() != 1.0 {
                return Err(McError::QuadrantParams);
            }
            let b = s0.blocks()[0];
            Some((b.zeros, b.ones))
        }
        _ => None,
    };
    let effective_cap = match mode {
        SimMode::Continuous => cap,
        _ => cap.floor(),
    };
    let cap_steps = effective_cap as u64;

    let run_trial = |i: u64| -> TrialOutcome {
        let mut rng = trial_rng(seed, i);
        match mode {
            SimMode::Quadrant => {
                let (n, m) = quadrant_start.expect("validated above");
                match quadrant_hitting(n, m, cap_steps, &mut rng) {
                    Some(t) => TrialOutcome::HitSteps(t),
                    None => TrialOutcome::Censored,
                }
            }
            SimMode::Discrete => {
                match hitting_time_discrete(s0, params, cap_steps, &mut rng)
                    .expect("start validated")
                {
                    Some(t) => TrialOutcome::HitSteps(t),
                    None => TrialOutcome::Censored,
                }
            }
            SimMode::Continuous => {
                match hitting_time_continuous(s0, params, effective_cap, &mut rng)
                    .expect("start validated")
                {
                    Some(t) => TrialOutcome::HitTime(t),
                    None => TrialOutcome::Censored,
                }
            }
        }
    };

    let acc = chunked_map_reduce(
        n_trials,
        run_trial,
        || BatchAcc { steps: BTreeMap::new(), times: Vec::new(), censored: 0 },
        |acc, outcome| match outcome {
            TrialOutcome::HitSteps(t) => *acc.steps.entry(t).or_insert(0) += 1,
            TrialOutcome::HitTime(t) => acc.times.push(t),
            TrialOutcome::Censored => acc.censored += 1,
        },
        |mut a, b| {
            for (t, c) in b.steps {
                *a.steps.entry(t).or_insert(0) += c;
            }
            a.times.extend(b.times);
            a.censored += b.censored;
            a
        },
    );

    let samples = match mode {
        SimMode::Continuous => {
            let mut times = acc.times;
            times.sort_by(|a, b| a.partial_cmp(b).expect("finite times"));
            SampleSet::Times(times)
        }
        _ => SampleSet::Steps(acc.steps),
    };
    let survival = survival_grid(&samples, acc.censored, n_trials, effective_cap);
    Ok(HittingStats {
        mode,
        n_trials,
        cap: effective_cap,
        seed,
        n_censored: acc.censored,
        samples,
        survival,
    })
}

/// `P(tau > t)` on a log grid of 64 points per decade over `[1, cap]`.
fn survival_grid(
    samples: &SampleSet,
    censored: u64,
    n_trials: u64,
    cap: f64,
) -> Vec<(f64, f64)> {
    let max_j = (64.0 * cap.log10()).floor() as i64;
    let mut grid = Vec::with_capacity(max_j.max(0) as usize + 1);
    for j in 0..=max_j.max(0) {
        let t = 10f64.powf(j as f64 / 64.0);
        if t > cap {
            break;
        }
        let s = (samples.count_above(t) + censored) as f64 / n_trials as f64;
        grid.push((t, s));
    }
    grid
}

/// Least-squares slope of log survival against log time over `window`,
/// using only grid points with survival above the resolution floor
/// `10 / n_trials`. The window must end strictly below the cap so the fit
/// never reads censored mass.
pub fn tail_fit(stats: &HittingStats, window: (f64, f64)) -> Result<TailFit, McError> {
    let (lo, hi) = window;
    if !(lo >= 1.0 && lo < hi) {
        return Err(McError::BadWindow(format!("need 1 <= lo < hi, got ({lo}, {hi})")));
    }
    if hi >= stats.cap {
        return Err(McError::BadWindow(format!(
            "window end {hi} reaches the censored region (cap {})",
            stats.cap
        )));
    }
    let floor = 10.0 / stats.n_trials as f64;
    let points: Vec<(f64, f64)> = stats
        .survival
        .iter()
        .filter(|(t, s)| *t >= lo && *t <= hi && *s > floor)
        .map(|(t, s)| (t.ln(), s.ln()))
        .collect();
    if points.len() < 4 {
        return Err(McError::InsufficientData(format!(
            "only {} usable grid points in the window",
            points.len()
        )));
    }
    let fit = linear_fit(&points).ok_or_else(|| {
        McError::InsufficientData("degenerate abscissae in fit window".into())
    })?;
    Ok(TailFit {
        slope: fit.slope,
        stderr: fit.slope_stderr,
        window,
        n_points: points.len(),
    })
}

/// One grid cell of the exceedance probe.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ExceedanceRow {
    pub n: u64,
    pub m: u64,
    /// `m / (m + n)` — the predicted shape variable.
    pub shape: f64,
    /// Empirical `P(tau > delta n^2)` with half-width of the 95% interval.
    pub p_exceed_n: f64,
    pub ci_n: f64,
    /// Empirical `P(tau > delta m^2)` with half-width of the 95% interval.
    pub p_exceed_m: f64,
    pub ci_m: f64,
}

/// Exceedance probabilities of the two-coordinate walk over a grid of
/// starts, with a regression of `P(tau > delta n^2)` against `m/(m+n)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExceedanceTable {
    pub delta: f64,
    pub n_trials: u64,
    pub seed: u64,
    pub rows: Vec<ExceedanceRow>,
    pub regression: Option<LineFit>,
}

/// Estimates `P(tau > delta n^2)` and `P(tau > delta m^2)` for the walk
/// from each `(n, m)` on the grid.
pub fn lamperti_probe(
    grid: &[(u64, u64)],
    delta: f64,
    n_trials: u64,
    seed: u64,
) -> Result<ExceedanceTable, McError> {
    if grid.is_empty() {
        return Err(McError::EmptyGrid);
    }
    if !(delta > 0.0) {
        return Err(McError::BadWindow(format!("delta must be positive, got {delta}")));
    }
    let mut rows = Vec::with_capacity(grid.len());
    for (cell, &(n, m)) in grid.iter().enumerate() {
        assert!(n >= 1 && m >= 1, "interior starts only");
        let thr_n = delta * (n as f64) * (n as f64);
        let thr_m = delta * (m as f64) * (m as f64);
        let cap = thr_n.max(thr_m).ceil() as u64 + 1;
        let offset = cell as u64 * n_trials;
        let (exceed_n, exceed_m) = chunked_map_reduce(
            n_trials,
            |i| {
                let mut rng = trial_rng(seed, offset + i);
                let tau = quadrant_hitting(n, m, cap, &mut rng);
                let t = tau.map(|v| v as f64).unwrap_or(f64::INFINITY);
                ((t > thr_n) as u64, (t > thr_m) as u64)
            },
            || (0u64, 0u64),
            |acc, (a, b)| {
                acc.0 += a;
                acc.1 += b;
            },
            |a, b| (a.0 + b.0, a.1 + b.1),
        );
        let est = |hits: u64| {
            let p = hits as f64 / n_trials as f64;
            (p, 1.96 * (p * (1.0 - p) / n_trials as f64).sqrt())
        };
        let (p_exceed_n, ci_n) = est(exceed_n);
        let (p_exceed_m, ci_m) = est(exceed_m);
        rows.push(ExceedanceRow {
            n,
            m,
            shape: m as f64 / (m + n) as f64,
            p_exceed_n,
            ci_n,
            p_exceed_m,
            ci_m,
        });
    }
    let regression = linear_fit(
        &rows
            .iter()
            .map(|r| (r.shape, r.p_exceed_n))
            .collect::<Vec<_>>(),
    );
    Ok(ExceedanceTable { delta, n_trials, seed, rows, regression })
}

/// One `(p, beta)` cell of the exploratory parameter scan.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PhaseCell {
    pub p: f64,
    pub beta: f64,
    /// Fraction of trials absorbed within the step cap.
    pub hit_fraction: f64,
    pub censored_fraction: f64,
    /// Mean least-squares slope of the transposition count against time
    /// over surviving trials; absent when every trial was absorbed.
    pub mean_f1_slope: Option<f64>,
}

/// Hit fractions and growth slopes over a `(p, beta)` grid from a common
/// start. Exploratory output: one row per cell, `p` varying slowest.
pub fn phase_scan(
    ps: &[f64],
    betas: &[f64],
    s0: &Configuration,
    n_trials: u64,
    cap: u64,
    seed: u64,
) -> Result<Vec<PhaseCell>, McError> {
    if ps.is_empty() || betas.is_empty() {
        return Err(McError::EmptyGrid);
    }
    if s0.is_heaviside() {
        return Err(McError::StartAbsorbed);
    }
    if cap == 0 {
        return Err(McError::BadCap(0.0));
    }
    let stride = cap.div_ceil(256);
    let mut cells = Vec::with_capacity(ps.len() * betas.len());
    for (pi, &p) in ps.iter().enumerate() {
        for (bi, &beta) in betas.iter().enumerate() {
            let params = ModelParams::new(beta, p)
                .map_err(|e| McError::BadWindow(e.to_string()))?;
            let offset = ((pi * betas.len() + bi) as u64) * n_trials;
            let (hits, slope_sum, slope_count) = chunked_map_reduce(
                n_trials,
                |i| {
                    let mut rng = trial_rng(seed, offset + i);
                    let mut s = s0.clone();
                    let mut series = vec![(0.0, f1(&s) as f64)];
                    for t in 1..=cap {
                        step_in_place(&mut s, &params, &mut rng);
                        if s.is_heaviside() {
                            return (1u64, 0.0, 0u64);
                        }
                        if t % stride == 0 {
                            series.push((t as f64, f1(&s) as f64));
                        }
                    }
                    let slope = linear_fit(&series).map(|f| f.slope).unwrap_or(0.0);
                    (0u64, slope, 1u64)
                },
                || (0u64, 0.0f64, 0u64),
                |acc, (h, s, c)| {
                    acc.0 += h;
                    acc.1 += s;
                    acc.2 += c;
                },
                |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2),
            );
            let hit_fraction = hits as f64 / n_trials as f64;
            cells.push(PhaseCell {
                p,
                beta,
                hit_fraction,
                censored_fraction: 1.0 - hit_fraction,
                mean_f1_slope: (slope_count > 0).then(|| slope_sum / slope_count as f64),
            });
        }
    }
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> Configuration {
        text.parse().expect("valid configuration text")
    }

    fn voter() -> ModelParams<f64> {
        ModelParams::new(1.0, 0.5).unwrap()
    }

    #[test]
    fn unit_start_hits_immediately_two_thirds_of_the_time() {
        let stats = batch(&cfg("1:1"), &voter(), 60_000, 1e4, 11, SimMode::Quadrant).unwrap();
        let one_step = match &stats.samples {
            SampleSet::Steps(h) => *h.get(&1).unwrap(),
            _ => unreachable!(),
        };
        let frac = one_step as f64 / stats.n_trials as f64;
        assert!((frac - 2.0 / 3.0).abs() < 0.01, "got {frac}");
    }

    #[test]
    fn batches_are_deterministic_and_account_for_censoring() {
        let a = batch(&cfg("1:1"), &voter(), 20_000, 1e3, 5, SimMode::Quadrant).unwrap();
        let b = batch(&cfg("1:1"), &voter(), 20_000, 1e3, 5, SimMode::Quadrant).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n_uncensored() + a.n_censored, a.n_trials);
        for w in a.survival.windows(2) {
            assert!(w[1].1 <= w[0].1);
        }
        let c = batch(&cfg("1:1"), &voter(), 20_000, 1e3, 6, SimMode::Quadrant).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn quadrant_and_discrete_agree_on_coarse_statistics() {
        let q = batch(&cfg("2:2"), &voter(), 30_000, 1e4, 3, SimMode::Quadrant).unwrap();
        let d = batch(&cfg("2:2"), &voter(), 30_000, 1e4, 4, SimMode::Discrete).unwrap();
        let (mq, sq) = q.mean_capped();
        let (md, sd) = d.mean_capped();
        assert!(
            (mq - md).abs() < 4.0 * (sq * sq + sd * sd).sqrt(),
            "means {mq} vs {md}"
        );
    }

    #[test]
    fn continuous_time_runs_faster_than_step_counting() {
        let d = batch(&cfg("1:1"), &voter(), 20_000, 1e4, 9, SimMode::Discrete).unwrap();
        let c = batch(&cfg("1:1"), &voter(), 20_000, 1e4, 10, SimMode::Continuous).unwrap();
        let (md, _) = d.mean_capped();
        let (mc, _) = c.mean_capped();
        // Event clocks tick at total rate 3 from every single-block state.
        assert!(mc < md, "continuous {mc} vs discrete {md}");
    }

    #[test]
    fn batch_validations() {
        let h = Configuration::heaviside();
        assert_eq!(
            batch(&h, &voter(), 10, 1e2, 0, SimMode::Discrete),
            Err(McError::StartAbsorbed)
        );
        assert_eq!(
            batch(&cfg("1:1,1:1"), &voter(), 10, 1e2, 0, SimMode::Quadrant),
            Err(McError::QuadrantShape(2))
        );
        let ep = ModelParams::new(0.0, 0.7).unwrap();
        assert_eq!(
            batch(&cfg("1:1"), &ep, 10, 1e2, 0, SimMode::Quadrant),
            Err(McError::QuadrantParams)
        );
    }

    #[test]
    fn reduced_cap_moments_come_from_one_run() {
        let stats = batch(&cfg("1:1"), &voter(), 50_000, 1e4, 21, SimMode::Quadrant).unwrap();
        let m_full = stats.moment_estimate(1.0, 1e4).unwrap();
        let m_half = stats.moment_estimate(1.0, 5e3).unwrap();
        assert!(m_half.estimate <= m_full.estimate);
        let m0 = stats.moment_estimate(0.0, 1e4).unwrap();
        assert!((m0.estimate - 1.0).abs() < 1e-12);
        assert!(stats.moment_estimate(1.0, 1e5).is_err());
    }

    #[test]
    fn tail_fit_window_rules() {
        let stats = batch(&cfg("1:1"), &voter(), 200_000, 1e4, 13, SimMode::Quadrant).unwrap();
        assert!(matches!(
            tail_fit(&stats, (1e2, 1e4)),
            Err(McError::BadWindow(_))
        ));
        assert!(matches!(
            tail_fit(&stats, (50.0, 2.0)),
            Err(McError::BadWindow(_))
        ));
        let fit = tail_fit(&stats, (10.0, 5e3)).unwrap();
        assert!(fit.n_points >= 4);
        assert!(fit.slope < -1.0 && fit.slope > -2.0, "slope {}", fit.slope);
    }

    #[test]
    fn exceedance_probe_matches_trivial_rows() {
        let table = lamperti_probe(&[(1, 5), (5, 1)], 0.1, 4_000, 17).unwrap();
        // delta n^2 = 0.1 < 1 <= tau forces certain exceedance.
        assert_eq!(table.rows[0].p_exceed_n, 1.0);
        // Symmetric start sizes give complementary shapes.
        assert!((table.rows[0].shape + table.rows[1].shape - 1.0).abs() < 1e-12);
    }

    #[test]
    fn phase_scan_smoke() {
        let cells = phase_scan(
            &[0.3, 0.9],
            &[0.2, 0.8],
            &cfg("1:1"),
            400,
            2_000,
            23,
        )
        .unwrap();
        assert_eq!(cells.len(), 4);
        for c in &cells {
            assert!((0.0..=1.0).contains(&c.hit_fraction));
            assert!((c.hit_fraction + c.censored_fraction - 1.0).abs() < 1e-12);
        }
        // Strong rightward exclusion hits quickly; nearly no censoring.
        let fast = cells.iter().find(|c| c.p == 0.9 && c.beta == 0.2).unwrap();
        assert!(fast.hit_fraction > 0.99, "got {}", fast.hit_fraction);
        let again = phase_scan(&[0.3, 0.9], &[0.2, 0.8], &cfg("1:1"), 400, 2_000, 23).unwrap();
        assert_eq!(format!("{cells:?}"), format!("{again:?}"));
    }
}
