//! Samplers for the finite projections of `P^ω`.

use rand::Rng;

use super::alpha::OmegaPoint;
use super::dual::DualState;
use crate::perm::{from_rank_slice, Permutation};

/// Uniform permutation of `[n]` from independent ranks `r_i ~ U[i]`.
pub fn sample_uniform<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let ranks: Vec<u32> = (1..=n as u32).map(|i| rng.random_range(1..=i)).collect();
    from_rank_slice(&ranks)
}

/// Sort key of a letter in a sampled order of `ℕ`: letters of the first
/// block precede those of the second; inside the first block the key is the
/// dual-algorithm position, inside the second an independent uniform draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrderKey {
    First(u128),
    Second(u64),
}

/// Keys for letters `1..=n` of one order drawn from `P^ω`. Restricting the
/// keys to `1..=m` gives a draw of the size-`m` projection, so one call
/// yields a coherent trajectory.
pub fn sample_order_keys<R: Rng + ?Sized>(omega: &OmegaPoint, n: usize, rng: &mut R) -> Vec<OrderKey> {
    match omega {
        OmegaPoint::Star => (0..n).map(|_| OrderKey::Second(rng.random())).collect(),
        OmegaPoint::AlphaP { alpha, p } => {
            let mut dual = DualState::new(alpha);
            (0..n)
                .map(|_| {
                    if *p >= 1.0 || rng.random::<f64>() < *p {
                        OrderKey::First(dual.step(rng))
                    } else {
                        OrderKey::Second(rng.random())
                    }
                })
                .collect()
        }
    }
}

/// Lists the letters `1..=keys.len()` by increasing key (ties, which have
/// probability `2^-64`, go to the smaller letter).
pub fn keys_to_permutation(keys: &[OrderKey]) -> Permutation {
    let mut letters: Vec<u32> = (1..=keys.len() as u32).collect();
    letters.sort_by_key(|&l| (keys[l as usize - 1], l));
    Permutation::from_word_unchecked(letters)
}

/// A draw of `π_n(O)` for `O ~ P^ω`.
pub fn sample_projection<R: Rng + ?Sized>(omega: &OmegaPoint, n: usize, rng: &mut R) -> Permutation {
    match omega {
        OmegaPoint::Star => sample_uniform(n, rng),
        OmegaPoint::AlphaP { .. } => keys_to_permutation(&sample_order_keys(omega, n, rng)),
    }
}
