//! Slow site-level reference implementations, kept deliberately
//! independent of the block algebra so the two paths can be checked
//! against each other. Tests are the only intended consumer.

use crate::config::{Configuration, ConfigError, ElementaryMove, InvalidMove, SiteWindow};

const PAD: usize = 3;

/// Site array `1^PAD (blocks...) 0^PAD`; wide enough that every
/// elementary move stays inside it.
fn padded_sites(s: &Configuration) -> Vec<bool> {
    let mut v = Vec::with_capacity(s.size() as usize + 2 * PAD);
    v.extend(std::iter::repeat(true).take(PAD));
    for b in s.blocks() {
        v.extend(std::iter::repeat(false).take(b.zeros as usize));
        v.extend(std::iter::repeat(true).take(b.ones as usize));
    }
    v.extend(std::iter::repeat(false).take(PAD));
    v
}

fn parse_sites(v: &[bool]) -> Configuration {
    let start = v.iter().position(|&x| !x).expect("padded array has zeros");
    let end = v.iter().rposition(|&x| x).expect("padded array has ones") + 1;
    let mut window = vec![true];
    if start < end {
        window.extend_from_slice(&v[start..end]);
    }
    window.push(false);
    Configuration::from_sites(&SiteWindow { origin: 0, values: window })
        .expect("padded array parses back")
}

/// Positions `(i, i + 1)` of the k-th `10` pair (descending edges) and
/// k-th `01` pair (ascending edges), in site order.
fn edges(v: &[bool]) -> (Vec<usize>, Vec<usize>) {
    let mut falling = Vec::new();
    let mut rising = Vec::new();
    for i in 0..v.len() - 1 {
        match (v[i], v[i + 1]) {
            (true, false) => falling.push(i),
            (false, true) => rising.push(i),
            _ => {}
        }
    }
    (falling, rising)
}

/// Applies a move by editing the site array directly.
pub fn apply_move_sites(
    s: &Configuration,
    mv: ElementaryMove,
) -> Result<Configuration, InvalidMove> {
    s.validate_move(mv)?;
    let mut v = padded_sites(s);
    let (falling, rising) = edges(&v);
    match mv {
        ElementaryMove::Stay => {}
        ElementaryMove::MoveRight(k) => {
            let i = falling[k];
            v[i] = false;
            v[i + 1] = true;
        }
        ElementaryMove::MoveLeft(k) => {
            let i = rising[k - 1];
            v[i] = true;
            v[i + 1] = false;
        }
        ElementaryMove::AddRight(k) => v[falling[k] + 1] = true,
        ElementaryMove::RemoveRight(k) => v[falling[k]] = false,
        ElementaryMove::AddLeft(k) => v[rising[k - 1]] = true,
        ElementaryMove::RemoveLeft(k) => v[rising[k - 1] + 1] = false,
    }
    Ok(parse_sites(&v))
}

/// `f1` as the raw site double sum: half of (zeros left of each one,
/// plus ones right of each zero).
pub fn f1_sites(s: &Configuration) -> u64 {
    let v = padded_sites(s);
    let mut zeros_so_far: u128 = 0;
    let mut left_sum: u128 = 0;
    for &x in &v {
        if x {
            left_sum += zeros_so_far;
        } else {
            zeros_so_far += 1;
        }
    }
    let mut ones_to_right: u128 = 0;
    let mut right_sum: u128 = 0;
    for &x in v.iter().rev() {
        if x {
            ones_to_right += 1;
        } else {
            right_sum += ones_to_right;
        }
    }
    assert_eq!(left_sum, right_sum, "the two site sums agree by symmetry");
    u64::try_from(left_sum).expect("f1 overflow")
}

/// `2 * f2` as the raw site double sum with squared counts.
pub fn f2_doubled_sites(s: &Configuration) -> u128 {
    let v = padded_sites(s);
    let mut zeros_so_far: u128 = 0;
    let mut left_sum: u128 = 0;
    for &x in &v {
        if x {
            left_sum += zeros_so_far * zeros_so_far;
        } else {
            zeros_so_far += 1;
        }
    }
    let mut ones_to_right: u128 = 0;
    let mut right_sum: u128 = 0;
    for &x in v.iter().rev() {
        if x {
            ones_to_right += 1;
        } else {
            right_sum += ones_to_right * ones_to_right;
        }
    }
    left_sum + right_sum
}

/// Exposed so tests can assert window parsing stays in sync with the
/// padded-array path.
pub fn window_error_check(window: &SiteWindow) -> Result<Configuration, ConfigError> {
    Configuration::from_sites(window)
}
