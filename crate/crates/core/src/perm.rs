//! Finite permutations in one-row notation, their upper-record words,
//! rank coordinates and the letter-deleting projections between symmetric
//! groups of different sizes.
//!
//! Positions and letters are 1-based everywhere, including the text formats:
//! a permutation prints as `3 4 1 2`, a record word as `1100`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fenwick::Fenwick;
use crate::graph;

/// A permutation of `1..=n`, stored as the word `σ(1) … σ(n)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    word: Vec<u32>,
}

impl Permutation {
    pub fn new(word: Vec<u32>) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty word".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &word {
            let v = v as usize;
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!("letter {v} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!("letter {v} repeated")));
            }
        }
        Ok(Permutation { word })
    }

    /// Caller guarantees `word` is a rearrangement of `1..=word.len()`.
    pub(crate) fn from_word_unchecked(word: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Permutation { word }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { word: (1..=n as u32).collect() }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn into_word(self) -> Vec<u32> {
        self.word
    }

    /// `σ(i)` for a 1-based position.
    pub fn at(&self, position: usize) -> u32 {
        self.word[position - 1]
    }

    /// `σ^{-1}(letter)`, 1-based.
    pub fn position_of(&self, letter: u32) -> usize {
        self.word.iter().position(|&v| v == letter).expect("letter in range") + 1
    }

    /// The inverse word `σ^{-1}(1) … σ^{-1}(n)`.
    pub fn inverse_word(&self) -> Vec<u32> {
        let mut inv = vec![0; self.word.len()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        inv
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.word {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let word = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(word)
    }
}

/// A binary word `ρ(1) … ρ(n)` with `ρ(1) = 1`: the indicator of a record set,
/// and a vertex of the record graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RecordWord {
    bits: Vec<bool>,
}

impl RecordWord {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        match bits.first() {
            None => Err(Error::InvalidRecordWord("empty word".into())),
            Some(false) => Err(Error::InvalidRecordWord("first bit must be 1".into())),
            Some(true) => Ok(RecordWord { bits }),
        }
    }

    pub(crate) fn from_bits_unchecked(bits: Vec<bool>) -> Self {
        debug_assert!(bits.first() == Some(&true));
        RecordWord { bits }
    }

    pub fn all_ones(n: usize) -> Self {
        RecordWord { bits: vec![true; n.max(1)] }
    }

    /// The word of length `n` whose ones are exactly `set` (1-based).
    pub fn from_set(n: usize, set: &[usize]) -> Result<Self> {
        let mut bits = vec![false; n];
        for &i in set {
            if i == 0 || i > n {
                return Err(Error::InvalidRecordWord(format!("position {i} outside 1..={n}")));
            }
            bits[i - 1] = true;
        }
        RecordWord::new(bits)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// `ρ(i)` for a 1-based position.
    pub fn is_record(&self, position: usize) -> bool {
        self.bits[position - 1]
    }

    /// Record positions, increasing.
    pub fn ones(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&i| self.bits[i - 1]).collect()
    }

    /// Non-record positions `ℓ_1 < … < ℓ_k`.
    pub fn zeros(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&i| !self.bits[i - 1]).collect()
    }

    pub fn last_one(&self) -> usize {
        self.bits.iter().rposition(|&b| b).expect("first bit is one") + 1
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

impl fmt::Display for RecordWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for RecordWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("record word {s:?}: unexpected {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        RecordWord::new(bits)
    }
}

/// Ranks `r_1 … r_n` with `r_i ∈ [i]`; `r_i = k` means `σ(i)` is the k-th
/// smallest of `σ(1) … σ(i)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankVector {
    ranks: Vec<u32>,
}

impl RankVector {
    pub fn new(ranks: Vec<u32>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::Argument("empty rank vector".into()));
        }
        for (i, &r) in ranks.iter().enumerate() {
            if r == 0 || r as usize > i + 1 {
                return Err(Error::InvalidRank { index: i + 1, rank: r });
            }
        }
        Ok(RankVector { ranks })
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }
}

pub fn records(sigma: &Permutation) -> RecordWord {
    let mut max = 0;
    let bits = sigma
        .word
        .iter()
        .map(|&v| {
            let rec = v > max;
            max = max.max(v);
            rec
        })
        .collect();
    RecordWord { bits }
}

pub fn to_ranks(sigma: &Permutation) -> RankVector {
    let n = sigma.len();
    let mut seen = Fenwick::new(n);
    let ranks = sigma
        .word
        .iter()
        .map(|&v| {
            let r = seen.prefix(v as usize) + 1;
            seen.add(v as usize, 1);
            r
        })
        .collect();
    RankVector { ranks }
}

pub fn from_ranks(r: &RankVector) -> Permutation {
    from_rank_slice(&r.ranks)
}

/// Rebuilds the word right to left: `σ(i)` is the `r_i`-th smallest letter
/// not used by positions `i+1 … n`.
pub(crate) fn from_rank_slice(ranks: &[u32]) -> Permutation {
    let n = ranks.len();
    let mut pool = Fenwick::full(n);
    let mut word = vec![0u32; n];
    for i in (0..n).rev() {
        let v = pool.kth(ranks[i]);
        pool.add(v, -1);
        word[i] = v as u32;
    }
    Permutation { word }
}

/// `π_m^n`: delete the letters `m+1 … n` from the word.
pub fn project(sigma: &Permutation, m: usize) -> Result<Permutation> {
    if m == 0 || m > sigma.len() {
        return Err(Error::Argument(format!("projection size {m} outside 1..={}", sigma.len())));
    }
    Ok(project_unchecked(sigma, m))
}

pub(crate) fn project_unchecked(sigma: &Permutation, m: usize) -> Permutation {
    let m = m as u32;
    Permutation { word: sigma.word.iter().copied().filter(|&v| v <= m).collect() }
}

/// `Φ_n(σ)`: the record words of `π_1^n(σ), …, π_n^n(σ)`.
pub fn phi_path(sigma: &Permutation) -> Vec<RecordWord> {
    (1..=sigma.len()).map(|j| records(&project_unchecked(sigma, j))).collect()
}

/// Inverse of [`phi_path`]. Letter `j` sits at the last record position of
/// the `j`-th word relative to the letters `1 … j`, so the permutation is
/// rebuilt by successive insertion.
pub fn phi_inverse(path: &[RecordWord]) -> Result<Permutation> {
    let first = path.first().ok_or_else(|| Error::InvalidPath("empty path".into()))?;
    if first.len() != 1 {
        return Err(Error::InvalidPath(format!("path starts at level {}", first.len())));
    }
    for pair in path.windows(2) {
        if pair[1].len() != pair[0].len() + 1 || !graph::edge_unchecked(&pair[0], &pair[1]) {
            return Err(Error::InvalidPath(format!("{} -> {} is not an edge", pair[0], pair[1])));
        }
    }
    let mut word: Vec<u32> = Vec::with_capacity(path.len());
    for (j, rho) in path.iter().enumerate() {
        word.insert(rho.last_one() - 1, j as u32 + 1);
    }
    Ok(Permutation { word })
}

/// Record set of `σ` after inserting letter `n` at position `j` into a word
/// whose record set is `b`: keep the records of `b` before `j`, add `j`.
pub fn deletion_insertion(b: &RecordWord, j: usize) -> Result<RecordWord> {
    let n = b.len() + 1;
    if j == 0 || j > n {
        return Err(Error::Argument(format!("insertion position {j} outside 1..={n}")));
    }
    let mut bits = vec![false; n];
    bits[..j - 1].copy_from_slice(&b.bits[..j - 1]);
    bits[j - 1] = true;
    Ok(RecordWord { bits })
}

/// The record sets `A ⊆ [n]` reachable from `B ⊆ [n-1]` by one
/// deletion-insertion, listed with multiplicity for `j = 1, …, n`.
pub fn record_successor_multiset(b: &RecordWord) -> Vec<RecordWord> {
    (1..=b.len() + 1).map(|j| deletion_insertion(b, j).expect("j in range")).collect()
}

/// For every `B` of length `n-1` (lexicographic order), the number of
/// insertion positions `j` turning `B` into `a`. Each count is the number of
/// `σ` with `R(σ) = a` above a fixed `τ` with `R(τ) = B`.
pub fn record_predecessors(a: &RecordWord) -> Result<Vec<(RecordWord, u32)>> {
    let n = a.len();
    if n < 2 {
        return Err(Error::Argument("record_predecessors needs length >= 2".into()));
    }
    Ok(graph::level_words(n - 1)
        .map(|b| {
            let count = (1..=n)
                .filter(|&j| deletion_insertion(&b, j).map(|x| &x == a).unwrap_or(false))
                .count() as u32;
            (b, count)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn w(s: &str) -> RecordWord {
        s.parse().unwrap()
    }

    #[test]
    fn records_examples() {
        assert_eq!(records(&p("3 4 1 2")), w("1100"));
        assert_eq!(records(&p("1 2 3 4")), w("1111"));
        assert_eq!(records(&p("5 4 3 2 1")), w("10000"));
        assert_eq!(records(&p("2 6 5 7 1 4 3")).ones(), vec![1, 2, 4]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(to_ranks(&p("1")).ranks(), &[1]);
        assert_eq!(to_ranks(&p("3 4 1 2")).ranks(), &[1, 2, 1, 2]);
        assert_eq!(to_ranks(&Permutation::identity(6)).ranks(), &[1, 2, 3, 4, 5, 6]);
        let r = RankVector::new(vec![1, 2, 1, 2]).unwrap();
        assert_eq!(from_ranks(&r), p("3 4 1 2"));
        assert_eq!(from_ranks(&RankVector::new(vec![1, 2, 3]).unwrap()), Permutation::identity(3));
        assert_eq!(from_ranks(&RankVector::new(vec![1]).unwrap()), p("1"));
    }

    #[test]
    fn invalid_rank_rejected() {
        assert_eq!(RankVector::new(vec![1, 3]), Err(Error::InvalidRank { index: 2, rank: 3 }));
        assert!(RankVector::new(vec![0]).is_err());
    }

    #[test]
    fn invalid_inputs_rejected() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![]).is_err());
        assert!("0110".parse::<RecordWord>().is_err());
        assert!("1x".parse::<RecordWord>().is_err());
    }

    #[test]
    fn projection_examples() {
        assert_eq!(project(&p("3 4 1 2"), 3).unwrap(), p("3 1 2"));
        assert_eq!(project(&p("2 6 5 7 1 4 3"), 4).unwrap(), p("2 1 4 3"));
        let s = p("2 6 5 7 1 4 3");
        assert_eq!(project(&s, 7).unwrap(), s);
        assert!(project(&s, 0).is_err());
        assert!(project(&s, 8).is_err());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_path(&p("1")), vec![w("1")]);
        assert_eq!(phi_path(&p("3 1 2")), vec![w("1"), w("11"), w("100")]);
        assert_eq!(phi_path(&p("3 4 1 2")), vec![w("1"), w("11"), w("100"), w("1100")]);
        assert_eq!(phi_inverse(&[w("1"), w("11"), w("100"), w("1100")]).unwrap(), p("3 4 1 2"));
        // The path 1, 10, 100, 1100 is valid too; it encodes a different permutation.
        assert_eq!(phi_inverse(&[w("1"), w("10"), w("100"), w("1100")]).unwrap(), p("3 4 2 1"));
        let ones: Vec<_> = (1..=5).map(RecordWord::all_ones).collect();
        assert_eq!(phi_inverse(&ones).unwrap(), Permutation::identity(5));
        assert!(phi_inverse(&[w("1"), w("10"), w("111")]).is_err());
        assert!(phi_inverse(&[w("11")]).is_err());
    }

    #[test]
    fn successor_multiset_for_b_135() {
        let b = RecordWord::from_set(6, &[1, 3, 5]).unwrap();
        let sets: Vec<Vec<usize>> = record_successor_multiset(&b).iter().map(|a| a.ones()).collect();
        assert_eq!(
            sets,
            vec![
                vec![1],
                vec![1, 2],
                vec![1, 3],
                vec![1, 3, 4],
                vec![1, 3, 5],
                vec![1, 3, 5, 6],
                vec![1, 3, 5, 7]
            ]
        );
    }

    #[test]
    fn predecessor_examples() {
        let preds = record_predecessors(&w("11")).unwrap();
        assert_eq!(preds, vec![(w("1"), 1)]);
        let preds = record_predecessors(&w("10")).unwrap();
        assert_eq!(preds, vec![(w("1"), 1)]);
        assert!(record_predecessors(&w("1")).is_err());
        // Multiplicities never exceed one.
        for a in graph::level_words(6) {
            for (_, m) in record_predecessors(&a).unwrap() {
                assert!(m <= 1);
            }
        }
    }

    #[test]
    fn display_round_trip() {
        assert_eq!(p("3 4 1 2").to_string(), "3 4 1 2");
        assert_eq!(w("10110").to_string(), "10110");
        assert_eq!(p("3,4,1,2"), p("3 4 1 2"));
    }
}
