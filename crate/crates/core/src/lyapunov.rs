//! Integer potentials on shock-profile states and their one-step
//! increments under the elementary moves.
//!
//! `f1` counts, block by block, ones times the zeros to their left; it
//! equals the minimal number of nearest-neighbor transpositions needed to
//! reach the single-shock state. `f2` is the same sum with squared
//! prefix/suffix weights; it is a half-integer, so it is handled doubled.

use thiserror::Error;

use crate::config::{BlockSums, Configuration, ElementaryMove, InvalidMove};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LyapunovError {
    #[error("the single-shock state is excluded here")]
    SingleShock,
    #[error("potential arithmetic overflow")]
    Overflow,
}

/// Transposition distance to the single-shock state:
/// `sum_i m_i * R_i = sum_i n_i * T_i`.
pub fn f1(s: &Configuration) -> u64 {
    let sums = s.sums();
    let mut acc: u128 = 0;
    for (i, b) in s.blocks().iter().enumerate() {
        acc += b.ones as u128 * sums.r(i + 1) as u128;
    }
    u64::try_from(acc).expect("f1 overflow")
}

/// Twice the squared-weight potential:
/// `2 * f2 = sum_i m_i * R_i^2 + sum_i n_i * T_i^2`.
pub fn f2_doubled(s: &Configuration) -> u128 {
    let sums = s.sums();
    let mut acc: u128 = 0;
    for (i, b) in s.blocks().iter().enumerate() {
        let r = sums.r(i + 1) as u128;
        let t = sums.t(i + 1) as u128;
        acc += b.ones as u128 * r * r + b.zeros as u128 * t * t;
    }
    acc
}

/// `f1(apply_move(s, mv)) - f1(s)` in closed form.
pub fn delta_f1(s: &Configuration, mv: ElementaryMove) -> Result<i64, InvalidMove> {
    s.validate_move(mv)?;
    let sums = s.sums();
    let n = s.n_blocks();
    let r = |k: usize| sums.r(k) as i64;
    let t = |k: usize| if k > n { 0 } else { sums.t(k) as i64 };
    Ok(match mv {
        ElementaryMove::Stay => 0,
        ElementaryMove::MoveRight(_) => 1,
        ElementaryMove::MoveLeft(_) => -1,
        ElementaryMove::AddRight(k) => r(k) - t(k + 1),
        ElementaryMove::RemoveRight(k) => -r(k) + t(k + 1),
        ElementaryMove::AddLeft(k) => r(k) - t(k) - 1,
        ElementaryMove::RemoveLeft(k) => -r(k) + t(k) - 1,
    })
}

/// `2 * (f2(apply_move(s, mv)) - f2(s))` in closed form.
pub fn delta_f2_doubled(s: &Configuration, mv: ElementaryMove) -> Result<i128, InvalidMove> {
    s.validate_move(mv)?;
    let sums = s.sums();
    let n = s.n_blocks();
    let r = |k: usize| sums.r(k) as i128;
    let t = |k: usize| if k > n { 0 } else { sums.t(k) as i128 };
    // Partial weighted sums over whole blocks:
    // ones_r(a) = sum_{i=a..=N} m_i R_i, zeros_t(a) = sum_{i=1..=a} n_i T_i.
    let ones_r = |a: usize| -> i128 {
        s.blocks()[a.saturating_sub(1).min(n)..]
            .iter()
            .zip(a..)
            .map(|(b, i)| b.ones as i128 * sums.r(i) as i128)
            .sum()
    };
    let zeros_t = |a: usize| -> i128 {
        s.blocks()[..a]
            .iter()
            .zip(1..)
            .map(|(b, i)| b.zeros as i128 * sums.t(i) as i128)
            .sum()
    };
    Ok(match mv {
        ElementaryMove::Stay => 0,
        ElementaryMove::MoveRight(k) => 2 * (1 + r(k) + t(k + 1)),
        ElementaryMove::MoveLeft(k) => 2 * (1 - r(k) - t(k)),
        ElementaryMove::AddRight(k) => {
            r(k) + t(k + 1) + r(k) * r(k) - t(k + 1) * t(k + 1) - 2 * ones_r(k + 1)
                + 2 * zeros_t(k)
        }
        ElementaryMove::RemoveRight(k) => {
            r(k) + t(k + 1) - r(k) * r(k) + t(k + 1) * t(k + 1) + 2 * ones_r(k + 1)
                - 2 * zeros_t(k)
        }
        ElementaryMove::AddLeft(k) => {
            -r(k) - t(k) + r(k) * r(k) - t(k) * t(k) - 2 * ones_r(k) + 2 * zeros_t(k)
        }
        ElementaryMove::RemoveLeft(k) => {
            -r(k) - t(k) - r(k) * r(k) + t(k) * t(k) + 2 * ones_r(k) - 2 * zeros_t(k)
        }
    })
}

/// Size-vs-potential sandwich bounds, as exact integer comparisons:
/// `|S|/2 <= f1 <= |S|^2/4`, `|S|^2/4 <= f2 <= |S|^3/8`, and
/// `f1 <= f2^(3/4)`. Rejects the single-shock state.
pub fn check_relations(s: &Configuration) -> Result<[bool; 3], LyapunovError> {
    if s.is_heaviside() {
        return Err(LyapunovError::SingleShock);
    }
    let size = s.size() as u128;
    let v1 = f1(s) as u128;
    let v2d = f2_doubled(s);
    let first = 2 * v1 >= size && 4 * v1 <= size * size;
    let second = 2 * v2d >= size * size && 4 * v2d <= size * size * size;
    // f1^4 <= f2^3 without rounding: 8 * f1^4 <= (2 f2)^3.
    let p4 = v1
        .checked_pow(4)
        .and_then(|x| x.checked_mul(8))
        .ok_or(LyapunovError::Overflow)?;
    let c3 = v2d
        .checked_mul(v2d)
        .and_then(|x| x.checked_mul(v2d))
        .ok_or(LyapunovError::Overflow)?;
    let third = p4 <= c3;
    Ok([first, second, third])
}

/// Lower bound tying the potential to the block count:
/// `f1 >= N (N + 1) / 2`.
pub fn f1_block_lower_bound(s: &Configuration) -> u64 {
    let n = s.n_blocks() as u64;
    n * (n + 1) / 2
}

/// Convenience accessor pairing a state with its sums for repeated
/// increment evaluations.
pub fn sums_of(s: &Configuration) -> BlockSums {
    s.sums()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ElementaryMove::*;

    fn cfg(text: &str) -> Configuration {
        text.parse().expect("valid configuration text")
    }

    #[test]
    fn potential_values_on_small_states() {
        assert_eq!(f1(&Configuration::heaviside()), 0);
        assert_eq!(f2_doubled(&Configuration::heaviside()), 0);
        assert_eq!(f1(&cfg("1:1")), 1);
        assert_eq!(f2_doubled(&cfg("1:1")), 2);
        assert_eq!(f1(&cfg("2:1")), 2);
        assert_eq!(f2_doubled(&cfg("2:1")), 6);
        assert_eq!(f1(&cfg("1:2")), 2);
        assert_eq!(f2_doubled(&cfg("1:2")), 6);
        assert_eq!(f1(&cfg("2:1,1:3")), 2 + 3 * 3);
    }

    #[test]
    fn increments_on_small_states() {
        assert_eq!(delta_f1(&cfg("1:1"), AddRight(1)).unwrap(), 1);
        assert_eq!(delta_f1(&cfg("1:1"), AddLeft(1)).unwrap(), -1);
        assert_eq!(delta_f1(&cfg("1:2"), RemoveLeft(1)).unwrap(), 0);
        assert_eq!(delta_f2_doubled(&cfg("1:1"), AddRight(0)).unwrap(), -2);
        assert_eq!(delta_f2_doubled(&cfg("1:2"), RemoveLeft(1)).unwrap(), 0);
        assert_eq!(delta_f2_doubled(&cfg("1:1"), MoveRight(0)).unwrap(), 2 * 2);
        assert_eq!(delta_f1(&Configuration::heaviside(), MoveRight(0)).unwrap(), 1);
        assert!(delta_f1(&cfg("1:1"), MoveLeft(2)).is_err());
    }

    #[test]
    fn sandwich_relations_hold_with_boundary_case_exact() {
        // 1:1 sits exactly on the f1^4 = f2^3 boundary.
        assert_eq!(check_relations(&cfg("1:1")).unwrap(), [true; 3]);
        assert_eq!(check_relations(&cfg("3:4,1:1,2:7")).unwrap(), [true; 3]);
        assert_eq!(
            check_relations(&Configuration::heaviside()),
            Err(LyapunovError::SingleShock)
        );
    }

    #[test]
    fn block_count_bound() {
        for text in ["1:1", "1:1,1:1", "1:1,1:1,1:1", "5:2,1:1,3:3"] {
            let s = cfg(text);
            assert!(f1(&s) >= f1_block_lower_bound(&s));
        }
    }
}
