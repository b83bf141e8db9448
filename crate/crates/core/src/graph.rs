//! The graded graph of record words. Level `n` holds the `2^{n-1}` words of
//! length `n`; `ρ ↗ τ` when `τ` copies `ρ` up to some position `k`, has a one
//! at `k` and zeros after it. Paths from level 1 to `ρ` are in bijection with
//! permutations whose record word is `ρ`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::{BigRational, BigUint, One, Zero};

use crate::error::{Error, Result};
use crate::perm::RecordWord;

/// Levels above this size are only enumerated lazily.
pub const MATERIALIZE_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphLevel {
    n: usize,
}

impl GraphLevel {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > 128 {
            return Err(Error::Argument(format!("level {n} outside 1..=128")));
        }
        Ok(GraphLevel { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> BigUint {
        BigUint::one() << (self.n - 1)
    }

    pub fn vertices(&self) -> impl Iterator<Item = RecordWord> {
        level_words(self.n)
    }

    pub fn materialize(&self) -> Result<Vec<RecordWord>> {
        if self.n > MATERIALIZE_LIMIT {
            return Err(Error::Budget {
                required: self.size().to_string(),
                budget: 1 << (MATERIALIZE_LIMIT - 1),
            });
        }
        Ok(self.vertices().collect())
    }
}

/// All record words of length `n` in lexicographic order.
pub fn level_words(n: usize) -> impl Iterator<Item = RecordWord> {
    assert!((1..=128).contains(&n), "level {n} outside 1..=128");
    let tail = n - 1;
    let count: u128 = if tail == 128 { u128::MAX } else { 1u128 << tail };
    (0..count).map(move |code| {
        let mut bits = Vec::with_capacity(n);
        bits.push(true);
        for b in (0..tail).rev() {
            bits.push((code >> b) & 1 == 1);
        }
        RecordWord::from_bits_unchecked(bits)
    })
}

/// A path `ρ_1 ↗ ρ_2 ↗ … ↗ ρ_n` starting at level 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathPrefix {
    entries: Vec<RecordWord>,
}

impl PathPrefix {
    pub fn new(entries: Vec<RecordWord>) -> Result<Self> {
        match entries.first() {
            None => return Err(Error::InvalidPath("empty path".into())),
            Some(first) if first.len() != 1 => {
                return Err(Error::InvalidPath(format!("path starts at level {}", first.len())))
            }
            _ => {}
        }
        check_consecutive(&entries)?;
        Ok(PathPrefix { entries })
    }

    pub fn entries(&self) -> &[RecordWord] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn endpoint(&self) -> &RecordWord {
        self.entries.last().expect("non-empty")
    }
}

/// Checks that consecutive words are joined by edges; the first word may sit
/// at any level.
pub fn check_consecutive(words: &[RecordWord]) -> Result<()> {
    for pair in words.windows(2) {
        if pair[1].len() != pair[0].len() + 1 || !edge_unchecked(&pair[0], &pair[1]) {
            return Err(Error::InvalidPath(format!("{} -> {} is not an edge", pair[0], pair[1])));
        }
    }
    Ok(())
}

pub fn is_edge(rho: &RecordWord, tau: &RecordWord) -> Result<bool> {
    if tau.len() != rho.len() + 1 {
        return Err(Error::Argument(format!(
            "edge needs consecutive levels, got lengths {} and {}",
            rho.len(),
            tau.len()
        )));
    }
    Ok(edge_unchecked(rho, tau))
}

/// The only candidate `k` is the last one of `τ`.
pub(crate) fn edge_unchecked(rho: &RecordWord, tau: &RecordWord) -> bool {
    let k = tau.last_one();
    rho.bits()[..k - 1] == tau.bits()[..k - 1]
}

/// Successors of `ρ`, for `k = n+1, n, …, 1` (longest common prefix first).
pub fn successors(rho: &RecordWord) -> Vec<RecordWord> {
    let n = rho.len();
    (1..=n + 1)
        .rev()
        .map(|k| {
            let mut bits = vec![false; n + 1];
            bits[..k - 1].copy_from_slice(&rho.bits()[..k - 1]);
            bits[k - 1] = true;
            RecordWord::from_bits_unchecked(bits)
        })
        .collect()
}

/// Predecessors of `τ` (length `n+1 >= 2`): words agreeing with `τ` before its
/// last one and arbitrary from there on. Lexicographic order.
pub fn predecessors(tau: &RecordWord) -> Vec<RecordWord> {
    let len = tau.len();
    if len < 2 {
        return Vec::new();
    }
    let k = tau.last_one();
    let free = len - k; // positions k..=len-1 of the predecessor
    let fixed = &tau.bits()[..k - 1];
    let mut out = Vec::new();
    for code in 0u64..(1u64 << free) {
        let mut bits = fixed.to_vec();
        for b in (0..free).rev() {
            bits.push((code >> b) & 1 == 1);
        }
        if bits[0] {
            out.push(RecordWord::from_bits_unchecked(bits));
        }
    }
    out
}

/// Number of paths from level 1 to `ρ`, i.e. `∏_{ρ(i)=0} (i-1)`.
pub fn dimension(rho: &RecordWord) -> BigUint {
    rho.zeros().into_iter().fold(BigUint::one(), |acc, i| acc * BigUint::from(i - 1))
}

/// Whether a measure on paths of a common length gives equal mass to all
/// paths sharing an endpoint. Unlisted paths carry mass zero.
pub fn is_central(measure: &[(PathPrefix, BigRational)]) -> Result<bool> {
    let total: BigRational = measure.iter().map(|(_, m)| m.clone()).sum();
    if total != BigRational::one() {
        return Err(Error::Normalization(total.to_string()));
    }
    if let Some((first, _)) = measure.first() {
        if measure.iter().any(|(p, _)| p.len() != first.len()) {
            return Err(Error::Argument("paths of different lengths".into()));
        }
    }
    let mut by_end: BTreeMap<&RecordWord, BTreeMap<&PathPrefix, BigRational>> = BTreeMap::new();
    for (path, mass) in measure {
        if mass < &BigRational::zero() {
            return Err(Error::Normalization(format!("negative mass {mass}")));
        }
        *by_end.entry(path.endpoint()).or_default().entry(path).or_insert_with(BigRational::zero) +=
            mass.clone();
    }
    for (end, paths) in by_end {
        let positive: Vec<&BigRational> = paths.values().filter(|m| !m.is_zero()).collect();
        if positive.is_empty() {
            continue;
        }
        if BigUint::from(positive.len()) != dimension(end) || positive.iter().any(|m| *m != positive[0]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Line-oriented adjacency dump `ρ -> τ1 τ2 …` for levels `1..=max_level`.
pub fn adjacency_export(max_level: usize) -> Result<String> {
    let mut out = String::new();
    for n in 1..=max_level {
        for rho in GraphLevel::new(n)?.materialize()? {
            let succ: Vec<String> = successors(&rho).iter().map(|t| t.to_string()).collect();
            writeln!(out, "{rho} -> {}", succ.join(" ")).expect("string write");
        }
    }
    Ok(out)
}
