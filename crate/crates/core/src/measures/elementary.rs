//! Elementary measures `P^ρ`: the uniform law on `{σ ∈ S_n : R(σ) = ρ}`.
//!
//! In rank coordinates `P^ρ` is a product measure: `r_i = i` at records and
//! `r_i` uniform on `[i-1]` elsewhere.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use rand::Rng;

use super::dist::FiniteDistribution;
use super::dual::OrderPrefix;
use crate::error::{Error, Result};
use crate::fenwick::Fenwick;
use crate::graph::dimension;
use crate::par::{map_indexed, Execution};
use crate::perm::{records, Permutation, RecordWord};
use crate::rng::stream;

/// `L(ρ) = ∏_{zeros ℓ} (1 - 1/(ℓ-1))`.
pub fn l_statistic(rho: &RecordWord) -> BigRational {
    rho.zeros().into_iter().fold(BigRational::one(), |acc, l| {
        acc * BigRational::new(BigInt::from(l - 2), BigInt::from(l - 1))
    })
}

pub fn l_statistic_f64(rho: &RecordWord) -> f64 {
    rho.zeros().into_iter().map(|l| 1.0 - 1.0 / (l - 1) as f64).product()
}

/// Draws from `P^ρ` by placing values from the largest down: the rightmost
/// record takes the maximum, the non-records after it take uniformly chosen
/// free values, then the next record takes the largest free value, and so on.
pub fn sample_elementary<R: Rng + ?Sized>(rho: &RecordWord, rng: &mut R) -> Permutation {
    let n = rho.len();
    let bits = rho.bits();
    let mut pool = Fenwick::full(n);
    let mut word = vec![0u32; n];
    let mut take = |k: usize| {
        let v = pool.kth(k as u32);
        pool.add(v, -1);
        v as u32
    };
    let mut remaining = n;
    let mut end = n;
    for m in (1..=n).rev().filter(|&i| bits[i - 1]) {
        word[m - 1] = take(remaining);
        remaining -= 1;
        for slot in word[m..end].iter_mut() {
            *slot = take(rng.random_range(1..=remaining));
            remaining -= 1;
        }
        end = m - 1;
    }
    Permutation::from_word_unchecked(word)
}

/// `1/dim(ρ)` on the fiber of `ρ`, zero elsewhere.
pub fn elementary_pmf(rho: &RecordWord, sigma: &Permutation) -> Result<BigRational> {
    if rho.len() != sigma.len() {
        return Err(Error::Argument(format!("sizes differ: {} and {}", rho.len(), sigma.len())));
    }
    if records(sigma) != *rho {
        return Ok(BigRational::zero());
    }
    Ok(BigRational::new(BigInt::one(), BigInt::from(dimension(rho))))
}

/// Law of `σ^{-1}(1)` under `P^ρ`: mass `L(ρ)` at 1 and
/// `1/(ℓ_j - 1) · ∏_{i>j} (1 - 1/(ℓ_i - 1))` at each zero `ℓ_j`.
pub fn position_of_one_distribution(rho: &RecordWord) -> BTreeMap<usize, BigRational> {
    let zeros = rho.zeros();
    let mut out = BTreeMap::new();
    let mut suffix = BigRational::one();
    for &l in zeros.iter().rev() {
        let q = BigRational::new(BigInt::one(), BigInt::from(l - 1));
        out.insert(l, &q * &suffix);
        suffix *= BigRational::one() - q;
    }
    out.insert(1, suffix);
    out.retain(|_, m| !m.is_zero());
    out
}

/// Law of `σ^{-1}(t)` given `σ^{-1}(s) = placed[s-1]` for `s < t`. The
/// remaining positions, renumbered in order, carry the restriction of `ρ`;
/// the answer is the position-of-one law of that shorter word.
pub fn conditional_position_distribution(
    rho: &RecordWord,
    placed: &OrderPrefix,
    t: usize,
) -> Result<BTreeMap<usize, BigRational>> {
    let n = rho.len();
    if t != placed.len() + 1 || t > n {
        return Err(Error::Argument(format!("t = {t} needs {} placed letters and t ≤ {n}", t.max(1) - 1)));
    }
    let placed: Vec<usize> = placed
        .positions()
        .iter()
        .map(|&p| {
            usize::try_from(p)
                .ok()
                .filter(|&p| p <= n)
                .ok_or_else(|| Error::Conditioning(format!("position {p} outside 1..={n}")))
        })
        .collect::<Result<_>>()?;
    for s in 0..placed.len() {
        let step = reduced_position_law(rho, &placed[..s])?;
        if !step.contains_key(&placed[s]) {
            return Err(Error::Conditioning(format!(
                "σ^-1({}) = {} has probability zero given the earlier positions",
                s + 1,
                placed[s]
            )));
        }
    }
    reduced_position_law(rho, &placed)
}

fn reduced_position_law(rho: &RecordWord, placed: &[usize]) -> Result<BTreeMap<usize, BigRational>> {
    let n = rho.len();
    let mut taken = vec![false; n + 1];
    for &p in placed {
        taken[p] = true;
    }
    let free: Vec<usize> = (1..=n).filter(|&i| !taken[i]).collect();
    let bits: Vec<bool> = free.iter().map(|&i| rho.bits()[i - 1]).collect();
    if !bits.first().copied().unwrap_or(false) {
        return Err(Error::Conditioning(format!(
            "the first free position {} is not a record of {rho}",
            free.first().copied().unwrap_or(0)
        )));
    }
    let reduced = RecordWord::from_bits_unchecked(bits);
    Ok(position_of_one_distribution(&reduced).into_iter().map(|(h, m)| (free[h - 1], m)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectionMode {
    /// Enumerate the `dim(ρ)` rank vectors; fails above `budget`.
    Exact { budget: u64 },
    /// Empirical law of `samples` draws; chunk `i` uses stream `i` of `seed`.
    MonteCarlo { samples: usize, seed: u64 },
}

const MC_CHUNK: usize = 4096;

/// Law of `π_k^n(σ)` for `σ ~ P^ρ`.
pub fn elementary_projection(rho: &RecordWord, k: usize, mode: ProjectionMode) -> Result<FiniteDistribution> {
    elementary_projection_with(rho, k, mode, Execution::default())
}

pub fn elementary_projection_with(
    rho: &RecordWord,
    k: usize,
    mode: ProjectionMode,
    exec: Execution,
) -> Result<FiniteDistribution> {
    let n = rho.len();
    if k == 0 || k > n {
        return Err(Error::Argument(format!("k = {k} outside 1..={n}")));
    }
    match mode {
        ProjectionMode::Exact { budget } => {
            let dim = dimension(rho);
            let count = dim.to_u64().filter(|&d| d <= budget).ok_or_else(|| Error::Budget {
                required: dim.to_string(),
                budget,
            })?;
            let zeros = rho.zeros();
            let mut ranks: Vec<u32> = (1..=n as u32).collect();
            for &z in &zeros {
                ranks[z - 1] = 1;
            }
            let mut counts: BTreeMap<Permutation, u64> = BTreeMap::new();
            loop {
                *counts.entry(project_ranks(&ranks, k)).or_insert(0) += 1;
                // Mixed-radix increment over the zero positions.
                let mut advanced = false;
                for &z in zeros.iter().rev() {
                    if ranks[z - 1] < (z - 1) as u32 {
                        ranks[z - 1] += 1;
                        advanced = true;
                        break;
                    }
                    ranks[z - 1] = 1;
                }
                if !advanced {
                    break;
                }
            }
            let total = BigInt::from(count);
            Ok(FiniteDistribution::Exact(
                counts
                    .into_iter()
                    .map(|(p, c)| (p, BigRational::new(BigInt::from(c), total.clone())))
                    .collect(),
            ))
        }
        ProjectionMode::MonteCarlo { samples, seed } => {
            if samples == 0 {
                return Err(Error::Argument("Monte Carlo mode needs at least one sample".into()));
            }
            let chunks = samples.div_ceil(MC_CHUNK);
            let partial = map_indexed(exec, chunks, |c| {
                let mut rng = stream(seed, c as u64);
                let size = MC_CHUNK.min(samples - c * MC_CHUNK);
                let mut local: BTreeMap<Permutation, u64> = BTreeMap::new();
                for _ in 0..size {
                    *local.entry(sample_elementary_projection(rho, k, &mut rng)).or_insert(0) += 1;
                }
                local
            });
            let mut counts: BTreeMap<Permutation, u64> = BTreeMap::new();
            for local in partial {
                for (p, c) in local {
                    *counts.entry(p).or_insert(0) += c;
                }
            }
            Ok(FiniteDistribution::from_counts(counts, samples as u64))
        }
    }
}

/// Draws `π_k^n(σ)` for `σ ~ P^ρ` without building `σ`: scanning positions
/// from the right, position `i` takes the `r_i`-th smallest free value, and
/// the free values `≤ k` are always the smallest free ones.
pub fn sample_elementary_projection<R: Rng + ?Sized>(rho: &RecordWord, k: usize, rng: &mut R) -> Permutation {
    let bits = rho.bits();
    let mut small: Vec<u32> = (1..=k as u32).collect();
    let mut at: Vec<(usize, u32)> = Vec::with_capacity(k);
    for i in (1..=bits.len()).rev() {
        let r = if bits[i - 1] { i } else { rng.random_range(1..i) };
        if r <= small.len() {
            at.push((i, small.remove(r - 1)));
            if small.is_empty() {
                break;
            }
        }
    }
    letters_by_position(at)
}

fn project_ranks(ranks: &[u32], k: usize) -> Permutation {
    let mut small: Vec<u32> = (1..=k as u32).collect();
    let mut at: Vec<(usize, u32)> = Vec::with_capacity(k);
    for i in (1..=ranks.len()).rev() {
        let r = ranks[i - 1] as usize;
        if r <= small.len() {
            at.push((i, small.remove(r - 1)));
            if small.is_empty() {
                break;
            }
        }
    }
    letters_by_position(at)
}

fn letters_by_position(mut at: Vec<(usize, u32)>) -> Permutation {
    at.sort_unstable();
    Permutation::from_word_unchecked(at.into_iter().map(|(_, v)| v).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn w(s: &str) -> RecordWord {
        s.parse().unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn l_examples() {
        assert_eq!(l_statistic(&w("1111")), q(1, 1));
        assert_eq!(l_statistic(&w("10110")), q(0, 1));
        assert_eq!(l_statistic(&w("11010")), q(3, 8));
        assert!((l_statistic_f64(&w("11010")) - 0.375).abs() < 1e-15);
    }

    #[test]
    fn sampler_examples() {
        let mut rng = seeded(2);
        for _ in 0..50 {
            assert_eq!(sample_elementary(&w("1111"), &mut rng), p("1 2 3 4"));
            assert_eq!(sample_elementary(&w("10"), &mut rng), p("2 1"));
        }
        let mut seen = BTreeMap::new();
        for _ in 0..4000 {
            *seen.entry(sample_elementary(&w("110"), &mut rng)).or_insert(0) += 1;
        }
        assert_eq!(seen.keys().cloned().collect::<Vec<_>>(), vec![p("1 3 2"), p("2 3 1")]);
        assert!(seen.values().all(|&c| (1800..2200).contains(&c)));
    }

    #[test]
    fn sampler_hits_fiber() {
        let mut rng = seeded(4);
        for bits in ["1", "10", "10110", "11010", "1000001", "1101001110"] {
            let rho = w(bits);
            for _ in 0..200 {
                assert_eq!(records(&sample_elementary(&rho, &mut rng)), rho);
            }
        }
    }

    #[test]
    fn pmf_examples() {
        assert_eq!(elementary_pmf(&w("1111"), &p("1 2 3 4")).unwrap(), q(1, 1));
        assert_eq!(elementary_pmf(&w("10110"), &p("3 1 4 5 2")).unwrap(), q(1, 4));
        assert_eq!(elementary_pmf(&w("110"), &p("3 2 1")).unwrap(), q(0, 1));
        assert!(elementary_pmf(&w("110"), &p("1 2")).is_err());
    }

    #[test]
    fn position_of_one_examples() {
        assert_eq!(position_of_one_distribution(&w("1111")), BTreeMap::from([(1, q(1, 1))]));
        assert_eq!(
            position_of_one_distribution(&w("10110")),
            BTreeMap::from([(2, q(3, 4)), (5, q(1, 4))])
        );
        assert_eq!(
            position_of_one_distribution(&w("11010")),
            BTreeMap::from([(1, q(3, 8)), (3, q(3, 8)), (5, q(1, 4))])
        );
    }

    #[test]
    fn conditional_examples() {
        let one = OrderPrefix::new(vec![1]).unwrap();
        assert_eq!(
            conditional_position_distribution(&w("1111"), &one, 2).unwrap(),
            BTreeMap::from([(2, q(1, 1))])
        );
        let two = OrderPrefix::new(vec![2]).unwrap();
        assert_eq!(
            conditional_position_distribution(&w("10110"), &two, 2).unwrap(),
            BTreeMap::from([(1, q(2, 3)), (5, q(1, 3))])
        );
        let five = OrderPrefix::new(vec![5]).unwrap();
        assert_eq!(
            conditional_position_distribution(&w("10110"), &five, 2).unwrap(),
            BTreeMap::from([(2, q(1, 1))])
        );
        // σ^{-1}(1) = 1 is impossible when position 2 is not a record.
        assert!(matches!(
            conditional_position_distribution(&w("10110"), &one, 2),
            Err(Error::Conditioning(_))
        ));
        assert!(conditional_position_distribution(&w("10110"), &one, 3).is_err());
    }

    #[test]
    fn projection_examples() {
        let exact = ProjectionMode::Exact { budget: 40_320 };
        let d = elementary_projection(&w("1111"), 2, exact).unwrap();
        assert_eq!(d, FiniteDistribution::point_mass(p("1 2")));
        // Fiber {1 3 2, 2 3 1} projects to {1 2, 2 1}.
        let d = elementary_projection(&w("110"), 2, exact).unwrap();
        assert_eq!(d, FiniteDistribution::uniform(2));
        let err = elementary_projection(&w("1000000000"), 2, ProjectionMode::Exact { budget: 1000 });
        assert!(matches!(err, Err(Error::Budget { .. })));
    }

    #[test]
    fn monte_carlo_projection_is_close_and_deterministic() {
        let rho = w("10110110");
        let exact = elementary_projection(&rho, 3, ProjectionMode::Exact { budget: 40_320 }).unwrap();
        let mode = ProjectionMode::MonteCarlo { samples: 50_000, seed: 8 };
        let mc = elementary_projection(&rho, 3, mode).unwrap();
        assert!(exact.total_variation(&mc) < 0.02);
        let again = elementary_projection_with(&rho, 3, mode, Execution::Sequential).unwrap();
        assert_eq!(mc, again);
    }
}
