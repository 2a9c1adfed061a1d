//! Shock-profile states and the elementary moves acting on them.
//!
//! A state is the translation class of a doubly infinite 0/1 profile of the
//! form `...111 0^n1 1^m1 0^n2 1^m2 ... 0^nN 1^mN 000...` with every block
//! length at least 1. It is stored as the list `[(n1, m1), ..., (nN, mN)]`;
//! the empty list is the single-shock state (no finite blocks).

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("block lengths must be at least 1")]
    ZeroBlock,
    #[error("site window must start with 1, end with 0, and alternate in full runs")]
    BadWindow,
    #[error("cannot parse configuration `{0}`: expected `n1:m1,n2:m2,...` or empty")]
    Parse(String),
    #[error("block arithmetic overflow")]
    Overflow,
}

/// A move applied at one discrepancy edge, or no change at all.
///
/// The index `k` names the 1-block whose edge carries the move: `k = 0` is
/// the infinite left block, `k = 1..=N` the finite blocks. Right-edge moves
/// (`MoveRight`, `AddRight`, `RemoveRight`) act at the `10` pair on the
/// right side of block `k` and accept `0 <= k <= N`; left-edge moves
/// (`MoveLeft`, `AddLeft`, `RemoveLeft`) act at the `01` pair on the left
/// side of block `k` and accept `1 <= k <= N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ElementaryMove {
    /// Exchange the `10` pair at the right edge of block `k`: the rightmost
    /// particle of the block hops one site to the right.
    MoveRight(usize),
    /// Exchange the `01` pair at the left edge of block `k`: the leftmost
    /// particle of the block hops one site to the left.
    MoveLeft(usize),
    /// Turn the `10` pair at the right edge of block `k` into `11`.
    AddRight(usize),
    /// Turn the `01` pair at the left edge of block `k` into `11`.
    AddLeft(usize),
    /// Turn the `10` pair at the right edge of block `k` into `00`.
    RemoveRight(usize),
    /// Turn the `01` pair at the left edge of block `k` into `00`.
    RemoveLeft(usize),
    /// No change.
    Stay,
}

impl fmt::Display for ElementaryMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementaryMove::MoveRight(k) => write!(f, "move-right({k})"),
            ElementaryMove::MoveLeft(k) => write!(f, "move-left({k})"),
            ElementaryMove::AddRight(k) => write!(f, "add-right({k})"),
            ElementaryMove::AddLeft(k) => write!(f, "add-left({k})"),
            ElementaryMove::RemoveRight(k) => write!(f, "remove-right({k})"),
            ElementaryMove::RemoveLeft(k) => write!(f, "remove-left({k})"),
            ElementaryMove::Stay => write!(f, "stay"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("move {mv} is not valid for a state with {n_blocks} finite blocks")]
pub struct InvalidMove {
    pub mv: ElementaryMove,
    pub n_blocks: usize,
}

/// One finite block pair: `zeros` empty sites followed by `ones` occupied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub zeros: u64,
    pub ones: u64,
}

/// Translation class of a shock profile, as its finite block list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Configuration {
    blocks: Vec<Block>,
}

/// A discrepancy edge: a `10` pair (right edge of a 1-block) or a `01`
/// pair (left edge of a finite 1-block).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Discrepancy {
    /// `10` edge on the right side of block `k`, `0 <= k <= N`.
    OneZero(usize),
    /// `01` edge on the left side of block `k`, `1 <= k <= N`.
    ZeroOne(usize),
}

/// Prefix/suffix block-length sums, with the boundary conventions
/// `r[0] = 0` and `t[N + 1] = 0`.
#[derive(Debug, Clone)]
pub struct BlockSums {
    r: Vec<u64>,
    t: Vec<u64>,
}

impl BlockSums {
    /// Total zeros in blocks `1..=i`.
    pub fn r(&self, i: usize) -> u64 {
        self.r[i]
    }

    /// Total ones in blocks `i..=N`; zero for `i = N + 1`.
    pub fn t(&self, i: usize) -> u64 {
        self.t[i]
    }
}

impl Configuration {
    /// The single-shock state `...111000...` (no finite blocks).
    pub fn heaviside() -> Self {
        Configuration { blocks: Vec::new() }
    }

    pub fn from_blocks(pairs: &[(u64, u64)]) -> Result<Self, ConfigError> {
        let mut blocks = Vec::with_capacity(pairs.len());
        let mut total: u64 = 0;
        for &(zeros, ones) in pairs {
            if zeros == 0 || ones == 0 {
                return Err(ConfigError::ZeroBlock);
            }
            total = total
                .checked_add(zeros)
                .and_then(|t| t.checked_add(ones))
                .ok_or(ConfigError::Overflow)?;
        }
        let _ = total;
        for &(zeros, ones) in pairs {
            blocks.push(Block { zeros, ones });
        }
        Ok(Configuration { blocks })
    }

    pub fn is_heaviside(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Number of finite blocks `N`.
    pub fn n_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Total length of the finite blocks; 0 for the single-shock state.
    pub fn size(&self) -> u64 {
        self.blocks
            .iter()
            .map(|b| b.zeros + b.ones)
            .fold(0u64, |acc, l| acc.checked_add(l).expect("state size overflow"))
    }

    /// Prefix zeros / suffix ones sums for the block list.
    pub fn sums(&self) -> BlockSums {
        let n = self.blocks.len();
        let mut r = vec![0u64; n + 1];
        for i in 1..=n {
            r[i] = r[i - 1] + self.blocks[i - 1].zeros;
        }
        let mut t = vec![0u64; n + 2];
        for i in (1..=n).rev() {
            t[i] = t[i + 1] + self.blocks[i - 1].ones;
        }
        BlockSums { r, t }
    }

    /// All discrepancy edges, left to right. A state with `N` finite blocks
    /// has exactly `2N + 1`: one `10` edge per block `0..=N` and one `01`
    /// edge per block `1..=N`.
    pub fn discrepancies(&self) -> Vec<Discrepancy> {
        let n = self.blocks.len();
        let mut out = Vec::with_capacity(2 * n + 1);
        out.push(Discrepancy::OneZero(0));
        for k in 1..=n {
            out.push(Discrepancy::ZeroOne(k));
            out.push(Discrepancy::OneZero(k));
        }
        out
    }

    /// All moves valid for this state, discrepancy by discrepancy
    /// (exchange, then add, then remove), without `Stay`.
    pub fn valid_moves(&self) -> Vec<ElementaryMove> {
        let mut out = Vec::with_capacity(6 * self.blocks.len() + 3);
        for d in self.discrepancies() {
            match d {
                Discrepancy::OneZero(k) => {
                    out.push(ElementaryMove::MoveRight(k));
                    out.push(ElementaryMove::AddRight(k));
                    out.push(ElementaryMove::RemoveRight(k));
                }
                Discrepancy::ZeroOne(k) => {
                    out.push(ElementaryMove::MoveLeft(k));
                    out.push(ElementaryMove::AddLeft(k));
                    out.push(ElementaryMove::RemoveLeft(k));
                }
            }
        }
        out
    }

    pub fn validate_move(&self, mv: ElementaryMove) -> Result<(), InvalidMove> {
        let n = self.blocks.len();
        let ok = match mv {
            ElementaryMove::MoveRight(k)
            | ElementaryMove::AddRight(k)
            | ElementaryMove::RemoveRight(k) => k <= n,
            ElementaryMove::MoveLeft(k)
            | ElementaryMove::AddLeft(k)
            | ElementaryMove::RemoveLeft(k) => k >= 1 && k <= n,
            ElementaryMove::Stay => true,
        };
        if ok {
            Ok(())
        } else {
            Err(InvalidMove { mv, n_blocks: n })
        }
    }

    pub fn apply_move(&self, mv: ElementaryMove) -> Result<Configuration, InvalidMove> {
        let mut next = self.clone();
        next.apply_move_in_place(mv)?;
        Ok(next)
    }

    /// Apply a move, merging and splitting blocks as needed so the result
    /// is again a canonical block list.
    pub fn apply_move_in_place(&mut self, mv: ElementaryMove) -> Result<(), InvalidMove> {
        self.validate_move(mv)?;
        let n = self.blocks.len();
        let b = &mut self.blocks;
        match mv {
            ElementaryMove::Stay => {}

            ElementaryMove::MoveRight(0) => {
                if n == 0 {
                    b.push(Block { zeros: 1, ones: 1 });
                } else if b[0].zeros == 1 {
                    b[0].ones += 1;
                } else {
                    b[0].zeros -= 1;
                    b.insert(0, Block { zeros: 1, ones: 1 });
                }
            }
            ElementaryMove::MoveRight(k) if k == n => {
                if b[n - 1].ones == 1 {
                    b[n - 1].zeros += 1;
                } else {
                    b[n - 1].ones -= 1;
                    b.push(Block { zeros: 1, ones: 1 });
                }
            }
            ElementaryMove::MoveRight(k) => {
                // Interior: 1 <= k <= N - 1; the hop lands in 0-block k+1.
                match (b[k - 1].ones == 1, b[k].zeros == 1) {
                    (true, true) => {
                        b[k - 1] = Block { zeros: b[k - 1].zeros + 1, ones: b[k].ones + 1 };
                        b.remove(k);
                    }
                    (true, false) => {
                        b[k - 1].zeros += 1;
                        b[k - 1].ones = 1;
                        b[k].zeros -= 1;
                    }
                    (false, true) => {
                        b[k - 1].ones -= 1;
                        b[k].ones += 1;
                    }
                    (false, false) => {
                        b[k - 1].ones -= 1;
                        b[k].zeros -= 1;
                        b.insert(k, Block { zeros: 1, ones: 1 });
                    }
                }
            }

            ElementaryMove::MoveLeft(k) => {
                match (b[k - 1].zeros == 1, b[k - 1].ones == 1) {
                    (true, true) => {
                        if k >= 2 {
                            b[k - 2].ones += 1;
                        }
                        if k < n {
                            b[k].zeros += 1;
                        }
                        b.remove(k - 1);
                    }
                    (true, false) => {
                        if k >= 2 {
                            b[k - 2].ones += 1;
                        }
                        b[k - 1].ones -= 1;
                    }
                    (false, true) => {
                        b[k - 1].zeros -= 1;
                        if k < n {
                            b[k].zeros += 1;
                        }
                    }
                    (false, false) => {
                        b[k - 1].zeros -= 1;
                        let rest = b[k - 1].ones - 1;
                        b[k - 1].ones = 1;
                        b.insert(k, Block { zeros: 1, ones: rest });
                    }
                }
            }

            ElementaryMove::AddRight(k) if k == n => {
                // Right edge of the last block faces the infinite zeros;
                // for the single-shock state this is a pure translation.
                if n > 0 {
                    b[n - 1].ones += 1;
                }
            }
            ElementaryMove::AddRight(k) => {
                if b[k].zeros == 1 {
                    if k >= 1 {
                        b[k - 1].ones += 1 + b[k].ones;
                    }
                    b.remove(k);
                } else {
                    b[k].zeros -= 1;
                    if k >= 1 {
                        b[k - 1].ones += 1;
                    }
                }
            }

            ElementaryMove::RemoveRight(0) => {
                // Trims the infinite left block; a translation when N = 0.
                if n > 0 {
                    b[0].zeros += 1;
                }
            }
            ElementaryMove::RemoveRight(k) => {
                if b[k - 1].ones == 1 {
                    if k < n {
                        b[k].zeros += b[k - 1].zeros + 1;
                    }
                    b.remove(k - 1);
                } else {
                    b[k - 1].ones -= 1;
                    if k < n {
                        b[k].zeros += 1;
                    }
                }
            }

            ElementaryMove::AddLeft(k) => {
                if b[k - 1].zeros == 1 {
                    if k >= 2 {
                        b[k - 2].ones += 1 + b[k - 1].ones;
                    }
                    b.remove(k - 1);
                } else {
                    b[k - 1].zeros -= 1;
                    b[k - 1].ones += 1;
                }
            }

            ElementaryMove::RemoveLeft(k) => {
                if b[k - 1].ones == 1 {
                    if k < n {
                        b[k].zeros += b[k - 1].zeros + 1;
                    }
                    b.remove(k - 1);
                } else {
                    b[k - 1].ones -= 1;
                    b[k - 1].zeros += 1;
                }
            }
        }
        Ok(())
    }

    /// Site window spanning the finite blocks plus one site of each
    /// infinite region: always starts with `1` and ends with `0`.
    pub fn to_sites(&self) -> SiteWindow {
        let mut values = Vec::with_capacity(self.size() as usize + 2);
        values.push(true);
        for b in &self.blocks {
            values.extend(std::iter::repeat(false).take(b.zeros as usize));
            values.extend(std::iter::repeat(true).take(b.ones as usize));
        }
        values.push(false);
        SiteWindow { origin: 0, values }
    }

    pub fn from_sites(window: &SiteWindow) -> Result<Self, ConfigError> {
        let v = &window.values;
        if v.first() != Some(&true) || v.last() != Some(&false) {
            return Err(ConfigError::BadWindow);
        }
        let start = v.iter().position(|&x| !x).expect("window ends with 0");
        let end = v.iter().rposition(|&x| x).map_or(0, |i| i + 1);
        let mut blocks = Vec::new();
        let mut i = start;
        while i < end {
            let z0 = i;
            while i < end && !v[i] {
                i += 1;
            }
            let zeros = (i - z0) as u64;
            let o0 = i;
            while i < end && v[i] {
                i += 1;
            }
            let ones = (i - o0) as u64;
            if zeros == 0 || ones == 0 {
                return Err(ConfigError::BadWindow);
            }
            blocks.push(Block { zeros, ones });
        }
        Ok(Configuration { blocks })
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for b in &self.blocks {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}:{}", b.zeros, b.ones)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_heaviside() {
            write!(f, "Configuration(heaviside)")
        } else {
            write!(f, "Configuration({self})")
        }
    }
}

impl FromStr for Configuration {
    type Err = ConfigError;

    /// Parses `"n1:m1,n2:m2,..."`; the empty string is the single-shock
    /// state.
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Configuration::heaviside());
        }
        let mut pairs = Vec::new();
        for part in s.split(',') {
            let (zeros, ones) = part
                .split_once(':')
                .ok_or_else(|| ConfigError::Parse(s.to_string()))?;
            let zeros: u64 = zeros.trim().parse().map_err(|_| ConfigError::Parse(s.to_string()))?;
            let ones: u64 = ones.trim().parse().map_err(|_| ConfigError::Parse(s.to_string()))?;
            pairs.push((zeros, ones));
        }
        Self::from_blocks(&pairs)
    }
}

impl Serialize for Configuration {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite cut of a shock profile: leftmost value 1, rightmost value 0,
/// recording the class of the profile under translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiteWindow {
    pub origin: i64,
    pub values: Vec<bool>,
}

impl FromStr for SiteWindow {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        let mut values = Vec::with_capacity(s.len());
        for c in s.trim().chars() {
            match c {
                '0' => values.push(false),
                '1' => values.push(true),
                _ => return Err(ConfigError::BadWindow),
            }
        }
        Ok(SiteWindow { origin: 0, values })
    }
}

impl fmt::Display for SiteWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &v in &self.values {
            write!(f, "{}", if v { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// All states with `1 <= N <= max_blocks` and total block length at most
/// `max_size`, in lexicographic order.
pub fn enumerate_states(max_size: u64, max_blocks: usize) -> Vec<Configuration> {
    let mut out = Vec::new();
    let mut parts: Vec<u64> = Vec::new();
    for n in 1..=max_blocks {
        let len = 2 * n;
        if (len as u64) > max_size {
            break;
        }
        parts.clear();
        parts.resize(len, 1);
        fill(&mut out, &mut parts, 0, max_size);
    }
    return out;

    fn fill(out: &mut Vec<Configuration>, parts: &mut Vec<u64>, depth: usize, budget: u64) {
        let remaining = (parts.len() - depth) as u64;
        if depth == parts.len() {
            let pairs: Vec<(u64, u64)> =
                parts.chunks(2).map(|c| (c[0], c[1])).collect();
            out.push(Configuration::from_blocks(&pairs).expect("positive parts"));
            return;
        }
        let max_here = budget - (remaining - 1);
        for v in 1..=max_here {
            parts[depth] = v;
            fill(out, parts, depth + 1, budget - v);
        }
    }
}

/// A random state with `1..=max_blocks` blocks of length `1..=max_len`.
pub fn random_configuration<R: Rng>(rng: &mut R, max_blocks: usize, max_len: u64) -> Configuration {
    let n = rng.gen_range(1..=max_blocks);
    let pairs: Vec<(u64, u64)> = (0..n)
        .map(|_| (rng.gen_range(1..=max_len), rng.gen_range(1..=max_len)))
        .collect();
    Configuration::from_blocks(&pairs).expect("positive lengths")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> Configuration {
        text.parse().expect("valid configuration text")
    }

    #[test]
    fn block_construction_and_sums() {
        let s = cfg("2:1,1:3");
        assert_eq!(s.n_blocks(), 2);
        assert_eq!(s.size(), 7);
        let sums = s.sums();
        assert_eq!((sums.r(0), sums.r(1), sums.r(2)), (0, 2, 3));
        assert_eq!((sums.t(1), sums.t(2), sums.t(3)), (4, 3, 0));
    }

    #[test]
    fn zero_length_blocks_rejected() {
        assert_eq!(
            Configuration::from_blocks(&[(1, 0)]),
            Err(ConfigError::ZeroBlock)
        );
        assert_eq!(
            Configuration::from_blocks(&[(0, 2)]),
            Err(ConfigError::ZeroBlock)
        );
    }

    #[test]
    fn window_round_trip() {
        assert_eq!(Configuration::heaviside().to_sites().to_string(), "10");
        assert_eq!(cfg("1:1").to_sites().to_string(), "1010");
        assert_eq!(cfg("2:3").to_sites().to_string(), "1001110");
        for text in ["", "1:1", "2:3", "2:1,1:3", "1:4,2:2,3:1"] {
            let s = cfg(text);
            assert_eq!(Configuration::from_sites(&s.to_sites()).unwrap(), s);
        }
    }

    #[test]
    fn window_extra_padding_is_stripped() {
        let w: SiteWindow = "11100100".parse().unwrap();
        assert_eq!(Configuration::from_sites(&w).unwrap(), cfg("2:1"));
    }

    #[test]
    fn window_boundary_convention_enforced() {
        for bad in ["01", "0110", "1", "0", ""] {
            let w: SiteWindow = bad.parse().unwrap();
            assert_eq!(Configuration::from_sites(&w), Err(ConfigError::BadWindow));
        }
    }

    #[test]
    fn discrepancy_count_is_odd() {
        assert_eq!(Configuration::heaviside().discrepancies().len(), 1);
        assert_eq!(cfg("1:1").discrepancies().len(), 3);
        assert_eq!(cfg("2:1,1:3").discrepancies().len(), 5);
    }

    #[test]
    fn single_shock_admits_only_right_edge_moves() {
        let h = Configuration::heaviside();
        assert_eq!(
            h.valid_moves(),
            vec![
                ElementaryMove::MoveRight(0),
                ElementaryMove::AddRight(0),
                ElementaryMove::RemoveRight(0),
            ]
        );
        assert_eq!(h.apply_move(ElementaryMove::MoveRight(0)).unwrap(), cfg("1:1"));
        assert_eq!(h.apply_move(ElementaryMove::AddRight(0)).unwrap(), h);
        assert_eq!(h.apply_move(ElementaryMove::RemoveRight(0)).unwrap(), h);
    }

    #[test]
    fn moves_merge_and_split_blocks() {
        assert_eq!(cfg("1:1").apply_move(ElementaryMove::MoveLeft(1)).unwrap(), Configuration::heaviside());
        assert_eq!(cfg("1:1").apply_move(ElementaryMove::AddRight(0)).unwrap(), Configuration::heaviside());
        assert_eq!(cfg("1:1").apply_move(ElementaryMove::RemoveRight(0)).unwrap(), cfg("2:1"));
        assert_eq!(cfg("1:1").apply_move(ElementaryMove::AddRight(1)).unwrap(), cfg("1:2"));
        // Interior split: both neighbors long enough.
        assert_eq!(cfg("2:2,2:2").apply_move(ElementaryMove::MoveRight(1)).unwrap(), cfg("2:1,1:1,1:2"));
        // Interior merge: hop closes a single-site gap.
        assert_eq!(cfg("2:1,1:2").apply_move(ElementaryMove::MoveRight(1)).unwrap(), cfg("3:3"));
        // Removing a lone particle fuses its zero-blocks.
        assert_eq!(cfg("2:1,3:2").apply_move(ElementaryMove::RemoveRight(1)).unwrap(), cfg("6:2"));
        // Boundary absorption: the last block dissolves into the zero sea.
        assert_eq!(cfg("1:2,4:1").apply_move(ElementaryMove::RemoveLeft(2)).unwrap(), cfg("1:2"));
        assert_eq!(cfg("4:1").apply_move(ElementaryMove::RemoveRight(1)).unwrap(), Configuration::heaviside());
    }

    #[test]
    fn invalid_pairings_rejected() {
        let s = cfg("1:1");
        for mv in [
            ElementaryMove::MoveLeft(0),
            ElementaryMove::AddLeft(0),
            ElementaryMove::RemoveLeft(0),
            ElementaryMove::MoveRight(2),
            ElementaryMove::AddRight(5),
        ] {
            assert!(s.apply_move(mv).is_err(), "{mv} should be invalid");
        }
        assert!(Configuration::heaviside().apply_move(ElementaryMove::MoveLeft(1)).is_err());
    }

    #[test]
    fn text_format_round_trip() {
        for text in ["", "1:1", "2:1,1:3", "10:20,1:1,5:5"] {
            let s = cfg(text);
            assert_eq!(s.to_string(), text);
            assert_eq!(s.to_string().parse::<Configuration>().unwrap(), s);
        }
        assert!("1:".parse::<Configuration>().is_err());
        assert!("1".parse::<Configuration>().is_err());
        assert!("0:1".parse::<Configuration>().is_err());
        assert!("1:1,,2:2".parse::<Configuration>().is_err());
    }

    #[test]
    fn enumeration_counts_match_compositions() {
        // States of total length s split into 2N positive parts:
        // sum over N of C(s-1, 2N-1) = 2^(s-2) when N is unbounded.
        let states = enumerate_states(6, 3);
        let expect: usize = (2..=6).map(|s| 1usize << (s - 2)).sum();
        assert_eq!(states.len(), expect);
        assert!(states.iter().all(|s| s.size() <= 6 && s.n_blocks() >= 1));
        // No duplicates.
        let mut seen = std::collections::HashSet::new();
        assert!(states.iter().all(|s| seen.insert(s.clone())));
    }
}
