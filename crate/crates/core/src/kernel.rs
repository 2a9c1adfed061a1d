//! One-step transition law of the mixed dynamics and its exact drift /
//! second-moment enumerators, plus continuous-time event tables.
//!
//! A step picks one of the `2N + 1` discrepancy edges uniformly. With
//! probability `beta` the step is a copy event: the pair flips to `11` or
//! `00` with probability 1/2 each. Otherwise it is an exclusion attempt:
//! a `10` pair exchanges with probability `q = 1 - p`, a `01` pair with
//! probability `p`, and the step stays put on rejection.

use rand::Rng;
use thiserror::Error;

use crate::config::{Configuration, Discrepancy, ElementaryMove};
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq)]
pub enum KernelError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("total event rate is zero")]
    ZeroTotalRate,
}

/// Mixing weight `beta` of copy events and exclusion asymmetry `p`
/// (probability of a leftward exchange at a `01` edge); `q = 1 - p` is the
/// rightward exchange probability at a `10` edge.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams<S: Scalar> {
    beta: S,
    p: S,
}

impl<S: Scalar> ModelParams<S> {
    /// Requires `0 <= beta <= 1` and `0 <= p <= 1`; when `beta < 1` the
    /// exclusion part is active, so `p` must be strictly inside `(0, 1)`.
    pub fn new(beta: S, p: S) -> Result<Self, KernelError> {
        let zero = S::zero();
        let one = S::one();
        if beta < zero || beta > one {
            return Err(KernelError::InvalidParams(format!(
                "beta must lie in [0, 1], got {beta}"
            )));
        }
        if p < zero || p > one {
            return Err(KernelError::InvalidParams(format!(
                "p must lie in [0, 1], got {p}"
            )));
        }
        if beta < one && (p <= zero || p >= one) {
            return Err(KernelError::InvalidParams(format!(
                "p must lie strictly in (0, 1) when beta < 1, got {p}"
            )));
        }
        Ok(ModelParams { beta, p })
    }

    pub fn beta(&self) -> &S {
        &self.beta
    }

    pub fn p(&self) -> &S {
        &self.p
    }

    pub fn q(&self) -> S {
        S::one() - self.p.clone()
    }

    pub fn to_f64(&self) -> ModelParams<f64> {
        ModelParams { beta: self.beta.to_f64(), p: self.p.to_f64() }
    }
}

/// One outgoing transition: the move, its target state, and its weight
/// (a probability in the discrete law, a rate in event tables).
#[derive(Debug, Clone)]
pub struct TransitionEntry<S> {
    pub mv: ElementaryMove,
    pub successor: Configuration,
    pub weight: S,
}

/// Full one-step law from a state; `Stay` mass, if any, is aggregated
/// into a single trailing entry.
#[derive(Debug, Clone)]
pub struct TransitionDistribution<S: Scalar> {
    pub entries: Vec<TransitionEntry<S>>,
}

impl<S: Scalar> TransitionDistribution<S> {
    pub fn total(&self) -> S {
        self.entries
            .iter()
            .fold(S::zero(), |acc, e| acc + e.weight.clone())
    }
}

/// The exact one-step law from `s`. Entries carry strictly positive
/// probabilities, in deterministic edge order.
pub fn transition_distribution<S: Scalar>(
    s: &Configuration,
    params: &ModelParams<S>,
) -> TransitionDistribution<S> {
    let n = s.n_blocks();
    let edge_count = S::from_int(2 * n as i64 + 1);
    let beta = params.beta().clone();
    let not_beta = S::one() - beta.clone();
    let half_beta = beta / S::from_int(2);
    let p = params.p().clone();
    let q = params.q();

    let mut entries = Vec::with_capacity(6 * n + 4);
    let mut stay = S::zero();
    let push = |mv: ElementaryMove, weight: S, entries: &mut Vec<TransitionEntry<S>>| {
        if weight > S::zero() {
            let successor = s.apply_move(mv).expect("enumerated moves are valid");
            entries.push(TransitionEntry { mv, successor, weight });
        }
    };
    for d in s.discrepancies() {
        match d {
            Discrepancy::OneZero(k) => {
                push(
                    ElementaryMove::MoveRight(k),
                    not_beta.clone() * q.clone() / edge_count.clone(),
                    &mut entries,
                );
                push(
                    ElementaryMove::AddRight(k),
                    half_beta.clone() / edge_count.clone(),
                    &mut entries,
                );
                push(
                    ElementaryMove::RemoveRight(k),
                    half_beta.clone() / edge_count.clone(),
                    &mut entries,
                );
                stay = stay + not_beta.clone() * p.clone() / edge_count.clone();
            }
            Discrepancy::ZeroOne(k) => {
                push(
                    ElementaryMove::MoveLeft(k),
                    not_beta.clone() * p.clone() / edge_count.clone(),
                    &mut entries,
                );
                push(
                    ElementaryMove::AddLeft(k),
                    half_beta.clone() / edge_count.clone(),
                    &mut entries,
                );
                push(
                    ElementaryMove::RemoveLeft(k),
                    half_beta.clone() / edge_count.clone(),
                    &mut entries,
                );
                stay = stay + not_beta.clone() * q.clone() / edge_count.clone();
            }
        }
    }
    if stay > S::zero() {
        entries.push(TransitionEntry {
            mv: ElementaryMove::Stay,
            successor: s.clone(),
            weight: stay,
        });
    }
    TransitionDistribution { entries }
}

/// `E[g(next) - g(s)]` by full enumeration of the one-step law.
pub fn exact_drift<S: Scalar>(
    s: &Configuration,
    params: &ModelParams<S>,
    g: impl Fn(&Configuration) -> S,
) -> S {
    let here = g(s);
    transition_distribution(s, params)
        .entries
        .into_iter()
        .fold(S::zero(), |acc, e| {
            acc + e.weight * (g(&e.successor) - here.clone())
        })
}

/// `E[(g(next) - g(s))^2]` by full enumeration of the one-step law.
pub fn exact_second_moment<S: Scalar>(
    s: &Configuration,
    params: &ModelParams<S>,
    g: impl Fn(&Configuration) -> S,
) -> S {
    let here = g(s);
    transition_distribution(s, params)
        .entries
        .into_iter()
        .fold(S::zero(), |acc, e| {
            let d = g(&e.successor) - here.clone();
            acc + e.weight * d.clone() * d
        })
}

/// Continuous-time event table: per `10` edge a rightward exchange at
/// rate `(1 - beta) q`, per `01` edge a leftward exchange at rate
/// `(1 - beta) p`, and two copy events at rate `beta / 2` per edge.
/// Only state-changing events carry clocks.
#[derive(Debug, Clone)]
pub struct RateTable<S: Scalar> {
    pub entries: Vec<TransitionEntry<S>>,
}

impl<S: Scalar> RateTable<S> {
    pub fn total_rate(&self) -> S {
        self.entries
            .iter()
            .fold(S::zero(), |acc, e| acc + e.weight.clone())
    }
}

pub fn rate_table<S: Scalar>(s: &Configuration, params: &ModelParams<S>) -> RateTable<S> {
    let beta = params.beta().clone();
    let not_beta = S::one() - beta.clone();
    let half_beta = beta / S::from_int(2);
    let p = params.p().clone();
    let q = params.q();
    let mut entries = Vec::with_capacity(6 * s.n_blocks() + 3);
    let push = |mv: ElementaryMove, weight: S, entries: &mut Vec<TransitionEntry<S>>| {
        if weight > S::zero() {
            let successor = s.apply_move(mv).expect("enumerated moves are valid");
            entries.push(TransitionEntry { mv, successor, weight });
        }
    };
    for d in s.discrepancies() {
        match d {
            Discrepancy::OneZero(k) => {
                push(ElementaryMove::MoveRight(k), not_beta.clone() * q.clone(), &mut entries);
                push(ElementaryMove::AddRight(k), half_beta.clone(), &mut entries);
                push(ElementaryMove::RemoveRight(k), half_beta.clone(), &mut entries);
            }
            Discrepancy::ZeroOne(k) => {
                push(ElementaryMove::MoveLeft(k), not_beta.clone() * p.clone(), &mut entries);
                push(ElementaryMove::AddLeft(k), half_beta.clone(), &mut entries);
                push(ElementaryMove::RemoveLeft(k), half_beta.clone(), &mut entries);
            }
        }
    }
    RateTable { entries }
}

/// Event table including the rejected-exchange clocks as explicit `Stay`
/// entries, so each discrepancy edge carries total rate exactly 1 and the
/// event sequence (attempted jumps) reproduces the discrete chain.
pub fn attempted_jump_table<S: Scalar>(
    s: &Configuration,
    params: &ModelParams<S>,
) -> RateTable<S> {
    let mut table = rate_table(s, params);
    let not_beta = S::one() - params.beta().clone();
    let n = s.n_blocks() as i64;
    let reject =
        not_beta.clone() * (S::from_int(n + 1) * params.p().clone() + S::from_int(n) * params.q());
    if reject > S::zero() {
        table.entries.push(TransitionEntry {
            mv: ElementaryMove::Stay,
            successor: s.clone(),
            weight: reject,
        });
    }
    table
}

/// Samples one move of the discrete chain without materializing the law.
/// Draws: edge index, branch selector, then flip direction or exchange
/// acceptance.
pub fn sample_move<R: Rng>(
    s: &Configuration,
    params: &ModelParams<f64>,
    rng: &mut R,
) -> ElementaryMove {
    let n = s.n_blocks();
    let idx = rng.gen_range(0..2 * n + 1);
    let (is_falling, k) = if idx == 0 {
        (true, 0)
    } else {
        (idx % 2 == 0, (idx + 1) / 2)
    };
    if rng.gen::<f64>() < *params.beta() {
        let add = rng.gen::<bool>();
        match (is_falling, add) {
            (true, true) => ElementaryMove::AddRight(k),
            (true, false) => ElementaryMove::RemoveRight(k),
            (false, true) => ElementaryMove::AddLeft(k),
            (false, false) => ElementaryMove::RemoveLeft(k),
        }
    } else {
        let accept = if is_falling { params.q() } else { *params.p() };
        if rng.gen::<f64>() < accept {
            if is_falling {
                ElementaryMove::MoveRight(k)
            } else {
                ElementaryMove::MoveLeft(k)
            }
        } else {
            ElementaryMove::Stay
        }
    }
}

/// Applies one sampled move in place.
pub fn step_in_place<R: Rng>(
    s: &mut Configuration,
    params: &ModelParams<f64>,
    rng: &mut R,
) -> ElementaryMove {
    let mv = sample_move(s, params, rng);
    s.apply_move_in_place(mv).expect("sampled moves are valid");
    mv
}

/// One continuous-time event: exponential holding time at the total rate,
/// then a move chosen proportionally to its rate.
pub fn gillespie_step<R: Rng>(
    s: &Configuration,
    params: &ModelParams<f64>,
    rng: &mut R,
) -> Result<(Configuration, f64), KernelError> {
    let table = rate_table(s, params);
    sample_from_table(&table, rng)
}

/// One attempted-jump event: like [`gillespie_step`] but over the table
/// that keeps rejected exchanges, so successive draws reproduce the
/// discrete chain step for step.
pub fn skeleton_step<R: Rng>(
    s: &Configuration,
    params: &ModelParams<f64>,
    rng: &mut R,
) -> Result<(Configuration, f64), KernelError> {
    let table = attempted_jump_table(s, params);
    sample_from_table(&table, rng)
}

fn sample_from_table<R: Rng>(
    table: &RateTable<f64>,
    rng: &mut R,
) -> Result<(Configuration, f64), KernelError> {
    let total = table.total_rate();
    if total <= 0.0 {
        return Err(KernelError::ZeroTotalRate);
    }
    let holding = -rng.gen::<f64>().ln() / total;
    let mut target = rng.gen::<f64>() * total;
    for entry in &table.entries {
        target -= entry.weight;
        if target <= 0.0 {
            return Ok((entry.successor.clone(), holding));
        }
    }
    let last = table.entries.last().expect("total > 0 implies entries");
    Ok((last.successor.clone(), holding))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lyapunov::{f1, f2_doubled};
    use crate::scalar::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg(text: &str) -> Configuration {
        text.parse().expect("valid configuration text")
    }

    fn rp(beta: (i64, i64), p: (i64, i64)) -> ModelParams<Rational> {
        ModelParams::new(Rational::ratio(beta.0, beta.1), Rational::ratio(p.0, p.1)).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(ModelParams::new(0.5, 0.3).is_ok());
        assert!(ModelParams::new(1.0, 0.0).is_ok());
        assert!(ModelParams::new(1.5, 0.5).is_err());
        assert!(ModelParams::new(-0.1, 0.5).is_err());
        assert!(ModelParams::new(0.5, 0.0).is_err());
        assert!(ModelParams::new(0.0, 1.0).is_err());
    }

    #[test]
    fn exclusion_law_from_single_shock() {
        let params = rp((0, 1), (7, 10));
        let dist = transition_distribution(&Configuration::heaviside(), &params);
        assert_eq!(dist.entries.len(), 2);
        assert_eq!(dist.entries[0].mv, ElementaryMove::MoveRight(0));
        assert_eq!(dist.entries[0].successor, cfg("1:1"));
        assert_eq!(dist.entries[0].weight, Rational::ratio(3, 10));
        assert_eq!(dist.entries[1].mv, ElementaryMove::Stay);
        assert_eq!(dist.entries[1].weight, Rational::ratio(7, 10));
        assert_eq!(dist.total(), Rational::one());
    }

    #[test]
    fn pure_copy_law_is_uniform_over_six_moves() {
        let params = rp((1, 1), (1, 2));
        let dist = transition_distribution(&cfg("1:1"), &params);
        assert_eq!(dist.entries.len(), 6);
        for e in &dist.entries {
            assert_eq!(e.weight, Rational::ratio(1, 6));
        }
        assert_eq!(dist.total(), Rational::one());
        // Four of the six moves land on the single-shock state.
        let absorbed = dist
            .entries
            .iter()
            .filter(|e| e.successor.is_heaviside())
            .count();
        assert_eq!(absorbed, 4);
    }

    #[test]
    fn mixed_law_keeps_single_shock_mass() {
        let params = rp((1, 2), (7, 10));
        let dist = transition_distribution(&Configuration::heaviside(), &params);
        // Exit only via the rightward exchange with weight (1-beta) q.
        let exit: Rational = dist
            .entries
            .iter()
            .filter(|e| !e.successor.is_heaviside())
            .fold(Rational::zero(), |acc, e| acc + e.weight.clone());
        assert_eq!(exit, Rational::ratio(3, 20));
        assert_eq!(dist.total(), Rational::one());
    }

    #[test]
    fn drift_enumeration_on_small_states() {
        let g1 = |s: &Configuration| Rational::from_int(f1(s) as i64);
        let g2 = |s: &Configuration| Rational::from_doubled(f2_doubled(s) as i128);
        // Pure copy dynamics leave the squared potential flat on average.
        assert_eq!(exact_drift(&cfg("1:1"), &rp((1, 1), (1, 2)), g2), Rational::zero());
        assert_eq!(
            exact_drift(&Configuration::heaviside(), &rp((1, 1), (1, 2)), g2),
            Rational::zero()
        );
        // Exclusion-only drift of f1 at one block: (2q - p) / 3.
        for (pn, pd) in [(7i64, 10i64), (1, 2), (2, 10)] {
            let params = rp((0, 1), (pn, pd));
            let q = Rational::one() - Rational::ratio(pn, pd);
            let expect = (Rational::from_int(2) * q - Rational::ratio(pn, pd))
                / Rational::from_int(3);
            assert_eq!(exact_drift(&cfg("1:1"), &params, g1), expect);
        }
        // Exclusion-only drift of f2 at one block of unit sizes: (4 - 5p) / 3.
        let params = rp((0, 1), (7, 10));
        assert_eq!(
            exact_drift(&cfg("1:1"), &params, g2),
            (Rational::from_int(4) - Rational::from_int(5) * Rational::ratio(7, 10))
                / Rational::from_int(3)
        );
    }

    #[test]
    fn second_moment_enumeration_on_small_states() {
        let g1 = |s: &Configuration| Rational::from_int(f1(s) as i64);
        let g2 = |s: &Configuration| Rational::from_doubled(f2_doubled(s) as i128);
        // Symmetric exclusion: every accepted exchange shifts f1 by one.
        assert_eq!(
            exact_second_moment(&cfg("1:1"), &rp((0, 1), (1, 2)), g1),
            Rational::ratio(1, 2)
        );
        assert_eq!(
            exact_second_moment(&cfg("2:3,1:4"), &rp((0, 1), (1, 2)), g1),
            Rational::ratio(1, 2)
        );
        assert_eq!(
            exact_second_moment(&cfg("1:1"), &rp((1, 1), (1, 2)), g2),
            Rational::from_int(2)
        );
        assert_eq!(
            exact_second_moment(&Configuration::heaviside(), &rp((1, 1), (1, 2)), g2),
            Rational::zero()
        );
    }

    #[test]
    fn rate_tables_on_one_block() {
        let params = ModelParams::new(1.0, 0.5).unwrap();
        let table = rate_table(&cfg("1:1"), &params);
        assert_eq!(table.entries.len(), 6);
        assert!(table.entries.iter().all(|e| e.weight == 0.5));
        assert_eq!(table.total_rate(), 3.0);

        let mixed = ModelParams::new(0.5, 0.5).unwrap();
        let attempted = attempted_jump_table(&cfg("1:1"), &mixed);
        // Three edges at unit attempted rate each.
        assert!((attempted.total_rate() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn sampled_moves_follow_the_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let params = ModelParams::new(0.4, 0.3).unwrap();
        let s = cfg("1:1");
        let dist = transition_distribution(&s, &params);
        let trials = 200_000usize;
        let mut counts = std::collections::HashMap::new();
        for _ in 0..trials {
            let mv = sample_move(&s, &params, &mut rng);
            *counts.entry(mv).or_insert(0usize) += 1;
        }
        for e in &dist.entries {
            let observed = *counts.get(&e.mv).unwrap_or(&0) as f64 / trials as f64;
            let sigma = (e.weight * (1.0 - e.weight) / trials as f64).sqrt();
            assert!(
                (observed - e.weight).abs() < 4.0 * sigma + 1e-9,
                "move {} observed {observed} expected {}",
                e.mv,
                e.weight
            );
        }
    }

    #[test]
    fn gillespie_requires_positive_rate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let params = ModelParams::new(1.0, 0.5).unwrap();
        let (next, dt) = gillespie_step(&cfg("1:1"), &params, &mut rng).unwrap();
        assert!(dt > 0.0);
        assert!(next.n_blocks() <= 1);
    }
}
