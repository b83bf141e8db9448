//! Exact marginals of boundary measures on `S_n`.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

use super::alpha::{AlphaSpec, OmegaPoint};
use super::dist::FiniteDistribution;
use super::dual::{dual_step, OrderPrefix};
use super::nu::exact_masses;
use crate::error::{Error, Result};
use crate::oracle::{all_permutations, EnumerationBudget};
use crate::perm::Permutation;

/// The permutation of `[n]` obtained by listing letters `1..=n` in the order
/// of their positions.
pub fn prefix_to_projection(prefix: &OrderPrefix, n: usize) -> Result<Permutation> {
    if prefix.len() < n {
        return Err(Error::InsufficientPrefix { have: prefix.len(), need: n });
    }
    Ok(positions_to_permutation(&prefix.positions()[..n]))
}

pub(crate) fn positions_to_permutation(positions: &[u128]) -> Permutation {
    let mut letters: Vec<u32> = (1..=positions.len() as u32).collect();
    letters.sort_unstable_by_key(|&l| positions[l as usize - 1]);
    Permutation::from_word_unchecked(letters)
}

/// Law of `π_n(O)` for `O ~ P^(α,1)` with finitely many finite terms,
/// obtained by following every branch of the dual algorithm. Needs
/// `(K+1)^n` within the budget, `K` the number of finite terms.
pub fn exact_marginal(omega: &OmegaPoint, n: usize, budget: EnumerationBudget) -> Result<FiniteDistribution> {
    let alpha = match omega {
        OmegaPoint::AlphaP { alpha, p } if *p == 1.0 && alpha.is_finite_support() => alpha,
        _ => {
            return Err(Error::Argument(
                "exact marginals need p = 1 and finitely many finite terms of α".into(),
            ))
        }
    };
    if n == 0 {
        return Err(Error::Argument("n must be at least 1".into()));
    }
    let branches = BigInt::from(alpha.explicit().len() + 1).pow(n as u32);
    if branches.to_u64().is_none_or(|b| b > budget.max_permutations) {
        return Err(Error::Budget { required: branches.to_string(), budget: budget.max_permutations });
    }
    let mut out: BTreeMap<Permutation, BigRational> = BTreeMap::new();
    let mut positions = Vec::with_capacity(n);
    explore(alpha, n, &mut positions, &BigRational::one(), &mut out)?;
    Ok(FiniteDistribution::Exact(out))
}

fn explore(
    alpha: &AlphaSpec,
    n: usize,
    positions: &mut Vec<u128>,
    weight: &BigRational,
    out: &mut BTreeMap<Permutation, BigRational>,
) -> Result<()> {
    if positions.len() == n {
        *out.entry(positions_to_permutation(positions)).or_insert_with(BigRational::zero) += weight;
        return Ok(());
    }
    for (nu, mass) in exact_masses(alpha.explicit()).into_iter().enumerate() {
        if mass.is_zero() {
            continue;
        }
        let (y, next) = dual_step(alpha, nu)?;
        positions.push(yth_free(positions, y));
        explore(&next, n, positions, &(weight * mass), out)?;
        positions.pop();
    }
    Ok(())
}

fn yth_free(used: &[u128], y: u128) -> u128 {
    let mut sorted = used.to_vec();
    sorted.sort_unstable();
    let mut candidate = y;
    for &u in &sorted {
        if u <= candidate {
            candidate += 1;
        }
    }
    candidate
}

/// Law of `π_n(O)` for `O ~ P^(α,p)`, `α` with finitely many finite terms,
/// in floating point: letters join the first block with probability `p`,
/// the first block follows `P^(α,1)` and the second is uniform.
pub fn mixed_marginal(omega: &OmegaPoint, n: usize, budget: EnumerationBudget) -> Result<FiniteDistribution> {
    let (alpha, p) = match omega {
        OmegaPoint::AlphaP { alpha, p } if alpha.is_finite_support() => (alpha, *p),
        OmegaPoint::Star => return Ok(FiniteDistribution::uniform(n)),
        _ => return Err(Error::Argument("mixed marginals need finitely many finite terms of α".into())),
    };
    if n > 10 {
        return Err(Error::Budget { required: format!("2^{n} subsets"), budget: 1 << 10 });
    }
    let first_omega = OmegaPoint::AlphaP { alpha: alpha.clone(), p: 1.0 };
    let mut first_laws: Vec<BTreeMap<Permutation, f64>> = vec![BTreeMap::new()];
    for m in 1..=n {
        first_laws.push(exact_marginal(&first_omega, m, budget)?.to_float());
    }
    let second_perms: Vec<Vec<Vec<u32>>> = (0..=n).map(words_or_empty).collect();
    let mut out: BTreeMap<Permutation, f64> = BTreeMap::new();
    for mask in 0u32..(1 << n) {
        let first: Vec<u32> = (1..=n as u32).filter(|l| mask >> (l - 1) & 1 == 1).collect();
        let second: Vec<u32> = (1..=n as u32).filter(|l| mask >> (l - 1) & 1 == 0).collect();
        let weight = p.powi(first.len() as i32) * (1.0 - p).powi(second.len() as i32);
        if weight == 0.0 {
            continue;
        }
        let second_mass = 1.0 / second_perms[second.len()].len() as f64;
        let first_law: Vec<(Vec<u32>, f64)> = if first.is_empty() {
            vec![(Vec::new(), 1.0)]
        } else {
            first_laws[first.len()]
                .iter()
                .map(|(tau, m)| (tau.word().iter().map(|&v| first[v as usize - 1]).collect(), *m))
                .collect()
        };
        for (head, m1) in &first_law {
            for rest in &second_perms[second.len()] {
                let mut word = head.clone();
                word.extend(rest.iter().map(|&v| second[v as usize - 1]));
                *out.entry(Permutation::from_word_unchecked(word)).or_insert(0.0) += weight * m1 * second_mass;
            }
        }
    }
    Ok(FiniteDistribution::Float(out))
}

fn words_or_empty(m: usize) -> Vec<Vec<u32>> {
    if m == 0 {
        vec![Vec::new()]
    } else {
        all_permutations(m).into_iter().map(Permutation::into_word).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::records;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn omega(prefix: &[u128]) -> OmegaPoint {
        OmegaPoint::alpha_p(AlphaSpec::finite(prefix.to_vec()).unwrap(), 1.0).unwrap()
    }

    #[test]
    fn prefix_examples() {
        let pr = |v: Vec<u128>| OrderPrefix::new(v).unwrap();
        assert_eq!(prefix_to_projection(&pr(vec![1, 2, 3]), 3).unwrap(), p("1 2 3"));
        assert_eq!(prefix_to_projection(&pr(vec![2, 1]), 2).unwrap(), p("2 1"));
        assert_eq!(prefix_to_projection(&pr(vec![2, 4, 1]), 3).unwrap(), p("3 1 2"));
        assert_eq!(
            prefix_to_projection(&pr(vec![2, 1]), 3),
            Err(Error::InsufficientPrefix { have: 2, need: 3 })
        );
    }

    #[test]
    fn trivial_marginals() {
        let b = EnumerationBudget::default();
        let d = exact_marginal(&omega(&[]), 3, b).unwrap();
        assert_eq!(d, FiniteDistribution::point_mass(p("1 2 3")));
        let d = exact_marginal(&omega(&[1]), 2, b).unwrap();
        assert_eq!(d, FiniteDistribution::point_mass(p("2 1")));
    }

    #[test]
    fn marginals_are_rd_and_coherent() {
        let b = EnumerationBudget::default();
        for prefix in [&[2u128][..], &[2, 5], &[1, 3], &[3, 4, 6]] {
            let mut previous: Option<FiniteDistribution> = None;
            for n in 1..=6 {
                let d = exact_marginal(&omega(prefix), n, b).unwrap().checked().unwrap();
                assert!(d.is_record_dependent(), "{prefix:?} n = {n}");
                // Once n passes the last α_k + 1 the non-records sit exactly there.
                if n as u128 > *prefix.last().unwrap() {
                    let expected: Vec<usize> = prefix.iter().map(|&a| a as usize + 1).filter(|&z| z <= n).collect();
                    for sigma in d.support() {
                        assert_eq!(records(sigma).zeros(), expected);
                    }
                }
                if let Some(prev) = previous {
                    assert_eq!(d.pushforward(n - 1).unwrap(), prev);
                }
                previous = Some(d);
            }
        }
    }

    #[test]
    fn budget_and_arguments() {
        let small = EnumerationBudget { max_permutations: 10 };
        assert!(matches!(exact_marginal(&omega(&[2, 5]), 3, small), Err(Error::Budget { .. })));
        assert!(exact_marginal(&OmegaPoint::Star, 3, EnumerationBudget::default()).is_err());
        let half = OmegaPoint::alpha_p(AlphaSpec::finite(vec![2]).unwrap(), 0.5).unwrap();
        assert!(exact_marginal(&half, 3, EnumerationBudget::default()).is_err());
    }

    #[test]
    fn mixed_marginal_limits() {
        let b = EnumerationBudget::default();
        let one = mixed_marginal(&omega(&[2, 5]), 4, b).unwrap();
        let exact = exact_marginal(&omega(&[2, 5]), 4, b).unwrap();
        assert!(one.total_variation(&exact) < 1e-12);
        let half = OmegaPoint::alpha_p(AlphaSpec::finite(vec![2]).unwrap(), 0.5).unwrap();
        let d = mixed_marginal(&half, 4, b).unwrap().checked().unwrap();
        assert!(d.is_record_dependent());
        assert_eq!(d.pushforward(3).unwrap().total_variation(&mixed_marginal(&half, 3, b).unwrap()) < 1e-12, true);
    }
}
