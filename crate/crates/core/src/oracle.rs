//! Brute-force ground truth over `S_n` for small `n`.
//!
//! Everything here works by scanning all `n!` words and counting. Nothing
//! calls the product formulas of [`crate::graph`] or the closed-form laws of
//! [`crate::measures`], so agreement between the two is a real check.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::{BigInt, BigRational, One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{FiniteDistribution, OrderPrefix};
use crate::perm::{Permutation, RecordWord};

/// Upper bound on the number of permutations a single oracle call may scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationBudget {
    pub max_permutations: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_permutations: 40320 }
    }
}

impl EnumerationBudget {
    pub fn new(max_permutations: u64) -> Result<Self> {
        if max_permutations == 0 {
            return Err(Error::Argument("budget must be positive".into()));
        }
        Ok(EnumerationBudget { max_permutations })
    }

    fn admit(&self, n: usize) -> Result<()> {
        let mut count: u64 = 1;
        for i in 2..=n as u64 {
            count = count.saturating_mul(i);
        }
        if count > self.max_permutations {
            return Err(Error::Budget { required: format!("{n}! = {count}"), budget: self.max_permutations });
        }
        Ok(())
    }
}

/// All permutations of `[n]` in lexicographic order of their words.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut word: Vec<u32> = (1..=n as u32).collect();
    let mut out = vec![Permutation::from_word_unchecked(word.clone())];
    while next_permutation(&mut word) {
        out.push(Permutation::from_word_unchecked(word.clone()));
    }
    out
}

fn next_permutation(word: &mut [u32]) -> bool {
    let Some(i) = (1..word.len()).rev().find(|&i| word[i - 1] < word[i]) else {
        return false;
    };
    let j = (i..word.len()).rev().find(|&j| word[j] > word[i - 1]).expect("pivot has a successor");
    word.swap(i - 1, j);
    word[i..].reverse();
    true
}

/// Upper records by a left-to-right maximum scan.
fn scan_records(word: &[u32]) -> RecordWord {
    let mut max = 0;
    let bits = word
        .iter()
        .map(|&v| {
            let record = v > max;
            max = max.max(v);
            record
        })
        .collect();
    RecordWord::from_bits_unchecked(bits)
}

/// Deletes the letters above `k`.
fn restrict(word: &[u32], k: usize) -> Permutation {
    Permutation::from_word_unchecked(word.iter().copied().filter(|&v| v as usize <= k).collect())
}

/// Every `σ ∈ S_n` with record word `ρ`, lexicographically.
pub fn enumerate_record_fiber(rho: &RecordWord, budget: EnumerationBudget) -> Result<Vec<Permutation>> {
    budget.admit(rho.len())?;
    Ok(all_permutations(rho.len()).into_iter().filter(|s| &scan_records(s.word()) == rho).collect())
}

/// Law of `σ^{-1}(t)` for `σ` uniform on the fiber of `ρ`, conditioned on
/// `σ^{-1}(s) = placed[s-1]` for `s < t`, by counting.
pub fn oracle_position_distribution(
    rho: &RecordWord,
    placed: &OrderPrefix,
    t: usize,
    budget: EnumerationBudget,
) -> Result<BTreeMap<usize, BigRational>> {
    let n = rho.len();
    if t == 0 || t > n || placed.len() + 1 < t {
        return Err(Error::Argument(format!("t = {t} with {} placed letters and n = {n}", placed.len())));
    }
    position_distribution_in_fiber(&enumerate_record_fiber(rho, budget)?, &placed.positions()[..t - 1], t)
}

/// Counted law of `σ^{-1}(t)` over an explicit list of permutations,
/// restricted to those with `σ^{-1}(s) = placed[s-1]` for `s < t`.
pub fn position_distribution_in_fiber(
    fiber: &[Permutation],
    placed: &[u128],
    t: usize,
) -> Result<BTreeMap<usize, BigRational>> {
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    let mut total = 0u64;
    for sigma in fiber {
        let inverse = sigma.inverse_word();
        if t <= inverse.len() && placed.iter().enumerate().all(|(s, &p)| inverse[s] as u128 == p) {
            *counts.entry(inverse[t - 1] as usize).or_insert(0) += 1;
            total += 1;
        }
    }
    if total == 0 {
        return Err(Error::Conditioning("no permutation in the fiber meets the condition".into()));
    }
    Ok(counts
        .into_iter()
        .map(|(p, c)| (p, BigRational::new(BigInt::from(c), BigInt::from(total))))
        .collect())
}

/// Pushforward of `measure` under deletion of the letters above `k`.
pub fn oracle_projection(
    measure: &FiniteDistribution,
    k: usize,
    budget: EnumerationBudget,
) -> Result<FiniteDistribution> {
    let n = measure.size().unwrap_or(0);
    budget.admit(n)?;
    if k == 0 || k > n {
        return Err(Error::Argument(format!("k = {k} outside 1..={n}")));
    }
    Ok(match measure {
        FiniteDistribution::Exact(m) => {
            let mut out: BTreeMap<Permutation, BigRational> = BTreeMap::new();
            for (sigma, v) in m {
                *out.entry(restrict(sigma.word(), k)).or_insert_with(BigRational::zero) += v;
            }
            FiniteDistribution::Exact(out)
        }
        FiniteDistribution::Float(m) => {
            let mut out: BTreeMap<Permutation, f64> = BTreeMap::new();
            for (sigma, v) in m {
                *out.entry(restrict(sigma.word(), k)).or_insert(0.0) += v;
            }
            FiniteDistribution::Float(out)
        }
    })
}

/// Whether the mass is constant on every record fiber, scanning all of
/// `S_n` (permutations outside the support have mass zero).
pub fn is_record_dependent(measure: &FiniteDistribution, budget: EnumerationBudget) -> Result<bool> {
    let Some(n) = measure.size() else { return Ok(true) };
    budget.admit(n)?;
    match measure {
        FiniteDistribution::Exact(m) => {
            let zero = BigRational::zero();
            let mut seen: BTreeMap<RecordWord, &BigRational> = BTreeMap::new();
            for sigma in all_permutations(n) {
                let v = m.get(&sigma).unwrap_or(&zero);
                if *seen.entry(scan_records(sigma.word())).or_insert(v) != v {
                    return Ok(false);
                }
            }
        }
        FiniteDistribution::Float(m) => {
            let mut seen: BTreeMap<RecordWord, f64> = BTreeMap::new();
            for sigma in all_permutations(n) {
                let v = m.get(&sigma).copied().unwrap_or(0.0);
                if (*seen.entry(scan_records(sigma.word())).or_insert(v) - v).abs() > 1e-12 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The measure `c·θ^{|R(σ)|}` on `S_n`.
pub fn ewens_measure(n: usize, theta: u64, budget: EnumerationBudget) -> Result<FiniteDistribution> {
    budget.admit(n)?;
    let all = all_permutations(n);
    let weights: Vec<BigInt> =
        all.iter().map(|s| BigInt::from(theta).pow(scan_records(s.word()).count_ones() as u32)).collect();
    let total: BigInt = weights.iter().sum();
    Ok(FiniteDistribution::Exact(
        all.into_iter().zip(weights).map(|(s, w)| (s, BigRational::new(w, total.clone()))).collect(),
    ))
}

/// A random record-dependent measure: each fiber gets an integer weight in
/// `0..=9` (not all zero), spread uniformly over its elements.
pub fn random_record_dependent_measure<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
    budget: EnumerationBudget,
) -> Result<FiniteDistribution> {
    budget.admit(n)?;
    let mut fibers: BTreeMap<RecordWord, Vec<Permutation>> = BTreeMap::new();
    for sigma in all_permutations(n) {
        fibers.entry(scan_records(sigma.word())).or_default().push(sigma);
    }
    let mut weights: Vec<u64> = fibers.keys().map(|_| rng.random_range(0..=9)).collect();
    if weights.iter().all(|&w| w == 0) {
        weights[0] = 1;
    }
    let total: u64 = weights.iter().sum();
    let mut out = BTreeMap::new();
    for ((_, members), w) in fibers.into_iter().zip(weights) {
        let mass = BigRational::new(BigInt::from(w), BigInt::from(total) * BigInt::from(members.len()));
        for sigma in members {
            out.insert(sigma, mass.clone());
        }
    }
    Ok(FiniteDistribution::Exact(out))
}

/// Text listing of every record fiber of `S_n` with the counted law of
/// `σ^{-1}(1)`, sorted by record word:
///
/// ```text
/// 110 size 2
///   1 3 2
///   2 3 1
///   first 1:1/2 3:1/2
/// ```
pub fn golden_dump(n: usize, budget: EnumerationBudget) -> Result<String> {
    budget.admit(n)?;
    let mut fibers: BTreeMap<String, Vec<Permutation>> = BTreeMap::new();
    for sigma in all_permutations(n) {
        fibers.entry(scan_records(sigma.word()).to_string()).or_default().push(sigma);
    }
    let mut out = String::new();
    for (rho, members) in &fibers {
        writeln!(out, "{rho} size {}", members.len()).expect("string write");
        let mut first: BTreeMap<usize, u64> = BTreeMap::new();
        for sigma in members {
            writeln!(out, "  {sigma}").expect("string write");
            *first.entry(sigma.position_of(1)).or_insert(0) += 1;
        }
        let total = members.len() as u64;
        let law: Vec<String> = first
            .iter()
            .map(|(p, &c)| {
                let q = BigRational::new(BigInt::from(c), BigInt::from(total));
                if q.is_one() {
                    format!("{p}:1")
                } else {
                    format!("{p}:{}/{}", q.numer(), q.denom())
                }
            })
            .collect();
        writeln!(out, "  first {}", law.join(" ")).expect("string write");
    }
    Ok(out)
}
