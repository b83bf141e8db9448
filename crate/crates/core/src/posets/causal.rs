use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::measures::AlphaSpec;
use crate::oracle::{all_permutations, EnumerationBudget};
use crate::perm::{Permutation, RecordWord};

/// The order generated by `β_1 ◁ β_2 ◁ …` and `α_i + 1 ◁ max{β_k ≤ α_i}`,
/// where `β` lists the positive integers outside `{α_k + 1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CausalSetSpec {
    alpha: AlphaSpec,
}

impl CausalSetSpec {
    pub fn new(alpha: AlphaSpec) -> Self {
        CausalSetSpec { alpha }
    }

    pub fn alpha(&self) -> &AlphaSpec {
        &self.alpha
    }

    /// Indicator of `{β_k} ∩ [n]`, which is a record word since `β_1 = 1`.
    pub fn beta_window(&self, n: usize) -> RecordWord {
        let shifted = self.alpha.terms_up_to(n as u128);
        let bits = (1..=n).map(|i| !shifted.contains(&(i as u128 - 1))).collect();
        RecordWord::from_bits_unchecked(bits)
    }

    pub fn beta(&self, n: usize) -> Vec<usize> {
        self.beta_window(n).ones()
    }
}

/// `◁` restricted to `[n]`, stored as the sorted strict predecessor list of
/// each element (transitively closed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalWindow {
    predecessors: Vec<Vec<usize>>,
}

impl CausalWindow {
    pub fn len(&self) -> usize {
        self.predecessors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.predecessors.is_empty()
    }

    pub fn predecessors(&self, j: usize) -> &[usize] {
        &self.predecessors[j - 1]
    }

    /// `i ◁ j`.
    pub fn precedes(&self, i: usize, j: usize) -> bool {
        self.predecessors[j - 1].binary_search(&i).is_ok()
    }

    /// Whether `i` and `j` are incomparable.
    pub fn incomparable(&self, i: usize, j: usize) -> bool {
        i != j && !self.precedes(i, j) && !self.precedes(j, i)
    }
}

pub fn causal_order_window(spec: &CausalSetSpec, n: usize) -> Result<CausalWindow> {
    if n == 0 {
        return Err(Error::Argument("window size must be at least 1".into()));
    }
    let beta = spec.beta_window(n);
    // Elements outside β are minimal; one lies below exactly the β elements
    // from its cover onwards.
    let mut cover = vec![0usize; n + 1];
    let mut last_beta = 0;
    for i in 1..=n {
        if beta.is_record(i) {
            last_beta = i;
        } else {
            cover[i] = last_beta;
        }
    }
    let mut predecessors = vec![Vec::new(); n];
    for j in 1..=n {
        if !beta.is_record(j) {
            continue;
        }
        predecessors[j - 1] =
            (1..=n).filter(|&i| if beta.is_record(i) { i < j } else { cover[i] <= j }).collect();
    }
    Ok(CausalWindow { predecessors })
}

/// Whether `σ`, read as the map sending the element at position `i` to the
/// value `σ(i)`, preserves `◁`: positions are filled by the letters
/// `1, 2, …` in turn, and `i ◁ j` forces `i` to be filled first.
pub fn is_natural_extension(window: &CausalWindow, sigma: &Permutation) -> Result<bool> {
    if sigma.len() != window.len() {
        return Err(Error::Argument(format!("σ has size {}, window {}", sigma.len(), window.len())));
    }
    Ok((1..=sigma.len()).all(|j| window.predecessors(j).iter().all(|&i| sigma.at(i) < sigma.at(j))))
}

/// All natural extensions of the window, lexicographically.
pub fn linear_extensions(window: &CausalWindow, budget: EnumerationBudget) -> Result<Vec<Permutation>> {
    let n = window.len();
    if (2..=n as u64).try_fold(1u64, |acc, i| acc.checked_mul(i)).is_none_or(|c| c > budget.max_permutations) {
        return Err(Error::Budget { required: format!("{n}!"), budget: budget.max_permutations });
    }
    Ok(all_permutations(n)
        .into_iter()
        .filter(|s| is_natural_extension(window, s).expect("sizes agree"))
        .collect())
}

/// Under the uniform law on natural extensions of `([n], ◁)`, whether every
/// stem `σ^{-1}(1), …, σ^{-1}(k)` has a probability depending only on the
/// set of its entries.
pub fn order_invariance_check(spec: &CausalSetSpec, n: usize, budget: EnumerationBudget) -> Result<bool> {
    let window = causal_order_window(spec, n)?;
    let extensions = linear_extensions(&window, budget)?;
    for k in 1..=n {
        let mut stems: BTreeMap<Vec<u32>, BTreeMap<Vec<u32>, u64>> = BTreeMap::new();
        for sigma in &extensions {
            let stem = sigma.inverse_word()[..k].to_vec();
            let mut down_set = stem.clone();
            down_set.sort_unstable();
            *stems.entry(down_set).or_default().entry(stem).or_insert(0) += 1;
        }
        for counts in stems.values() {
            let first = counts.values().next().expect("non-empty group");
            if counts.values().any(|c| c != first) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    use crate::measures::{exact_marginal, FiniteDistribution, OmegaPoint};
    use crate::perm::records;

    fn spec(prefix: &[u128]) -> CausalSetSpec {
        CausalSetSpec::new(AlphaSpec::finite(prefix.to_vec()).unwrap())
    }

    #[test]
    fn total_order_when_alpha_is_infinite() {
        let w = causal_order_window(&spec(&[]), 5).unwrap();
        for j in 1..=5 {
            assert_eq!(w.predecessors(j), (1..j).collect::<Vec<_>>().as_slice());
        }
        let ext = linear_extensions(&w, EnumerationBudget::default()).unwrap();
        assert_eq!(ext, vec![Permutation::identity(5)]);
    }

    #[test]
    fn generators_for_alpha_two() {
        let s = spec(&[2]);
        assert_eq!(s.beta(4), vec![1, 2, 4]);
        let w = causal_order_window(&s, 4).unwrap();
        assert!(w.precedes(1, 2) && w.precedes(2, 4) && w.precedes(3, 2) && w.precedes(3, 4));
        assert!(w.incomparable(1, 3));
    }

    #[test]
    fn antichain_segment() {
        let w = causal_order_window(&spec(&[2, 3]), 6).unwrap();
        assert!(w.incomparable(3, 4));
        assert!(w.precedes(3, 2) && w.precedes(4, 2) && w.precedes(4, 5));
    }

    #[test]
    fn violating_a_generator() {
        let w = causal_order_window(&spec(&[2]), 4).unwrap();
        // Position 3 holds a larger letter than its cover at position 2.
        assert!(!is_natural_extension(&w, &"1 2 3 4".parse().unwrap()).unwrap());
        assert!(is_natural_extension(&w, &"2 3 1 4".parse().unwrap()).unwrap());
    }

    #[test]
    fn extensions_are_the_beta_fiber() {
        for prefix in [&[1u128][..], &[2], &[2, 3], &[3, 4, 6]] {
            let s = spec(prefix);
            for n in 1..=6 {
                let w = causal_order_window(&s, n).unwrap();
                let beta = s.beta_window(n);
                for sigma in all_permutations(n) {
                    assert_eq!(is_natural_extension(&w, &sigma).unwrap(), records(&sigma) == beta);
                }
            }
        }
    }

    #[test]
    fn invariance() {
        let b = EnumerationBudget::default();
        assert!(order_invariance_check(&spec(&[2]), 4, b).unwrap());
        assert!(order_invariance_check(&spec(&[2, 4]), 6, b).unwrap());
        assert!(order_invariance_check(&spec(&[]), 5, b).unwrap());
    }

    #[test]
    fn conditioned_marginal_is_uniform_on_extensions() {
        let b = EnumerationBudget::default();
        let s = spec(&[2, 4]);
        let n = 6;
        let omega = OmegaPoint::alpha_p(s.alpha().clone(), 1.0).unwrap();
        let law = exact_marginal(&omega, n, b).unwrap();
        let FiniteDistribution::Exact(masses) = law else { unreachable!() };
        let beta = s.beta_window(n);
        let fiber: Vec<(&Permutation, &BigRational)> = masses.iter().filter(|(p, _)| records(p) == beta).collect();
        let ext = linear_extensions(&causal_order_window(&s, n).unwrap(), b).unwrap();
        assert_eq!(fiber.iter().map(|(p, _)| (*p).clone()).collect::<Vec<_>>(), ext);
        assert!(fiber.iter().all(|(_, m)| *m == fiber[0].1));
    }
}
