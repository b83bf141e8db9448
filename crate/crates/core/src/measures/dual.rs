//! The dual algorithm: the positions `σ^{-1}(1), σ^{-1}(2), …` of an order
//! drawn from `P^(α,1)`, one letter at a time.
//!
//! Each step draws `ν` from the law of the current `α`, takes the `y`-th
//! free position with `y = 1` for `ν = 0` and `y = α_ν + 1` otherwise, then
//! updates `α`. Explicit terms are handled by an inverse-CDF scan; a
//! squares tail is sampled exactly by thinning a dominating sequence of
//! coins with probabilities `1/(j - c)²`, whose "no success from `j` on"
//! probability telescopes to `(j - c - 1)/(j - c)`.

use rand::Rng;

use super::alpha::{AlphaSpec, Tail, TailRule, UpdateCase};
use crate::error::{Error, Result};
use crate::rng::open_unit;

/// Candidates of the dominating process at or past this index are treated
/// as absent; the probability of ever producing one is below `2^-60`.
const THINNING_HORIZON: f64 = 4.611_686_018_427_388e18; // 2^62

/// Positions `σ^{-1}(1), …, σ^{-1}(m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderPrefix {
    positions: Vec<u128>,
}

impl OrderPrefix {
    pub fn new(positions: Vec<u128>) -> Result<Self> {
        let mut sorted = positions.clone();
        sorted.sort_unstable();
        if sorted.first() == Some(&0) {
            return Err(Error::Argument("positions are 1-based".into()));
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Argument("positions must be distinct".into()));
        }
        Ok(OrderPrefix { positions })
    }

    pub fn empty() -> Self {
        OrderPrefix { positions: Vec::new() }
    }

    pub fn positions(&self) -> &[u128] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// The set of positions already taken: a full initial segment `1..=filled`
/// plus a sorted list of isolated positions beyond it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UsedPositions {
    filled: u128,
    scattered: Vec<u128>,
}

impl UsedPositions {
    pub fn new() -> Self {
        Self::default()
    }

    /// The `y`-th free position (1-based); marks it as used.
    pub fn take(&mut self, y: u128) -> u128 {
        debug_assert!(y >= 1);
        // Free positions strictly before scattered[i]: scattered[i] - filled - 1 - i.
        let (mut lo, mut hi) = (0usize, self.scattered.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.scattered[mid] - self.filled - 1 - (mid as u128) < y {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        let position = self.filled + y + lo as u128;
        if position == self.filled + 1 {
            self.filled += 1;
            let absorbed = self
                .scattered
                .iter()
                .enumerate()
                .take_while(|(i, &p)| p == self.filled + 1 + *i as u128)
                .count();
            self.filled += absorbed as u128;
            self.scattered.drain(..absorbed);
        } else {
            self.scattered.insert(lo, position);
        }
        position
    }

    /// Largest `k` with `1..=k` all used.
    pub fn filled_prefix(&self) -> u128 {
        self.filled
    }

    pub fn contains(&self, position: u128) -> bool {
        position >= 1 && (position <= self.filled || self.scattered.binary_search(&position).is_ok())
    }
}

/// Sampler state: the current `α` and the used positions.
#[derive(Debug, Clone)]
pub struct DualState {
    alpha: AlphaSpec,
    used: UsedPositions,
}

impl DualState {
    pub fn new(alpha: &AlphaSpec) -> Self {
        let mut alpha = alpha.clone();
        if let Tail::Rule { rule: TailRule::PowersOfTwo, .. } = alpha.tail() {
            while alpha.materialize_first() {}
        }
        DualState { alpha, used: UsedPositions::new() }
    }

    pub fn alpha(&self) -> &AlphaSpec {
        &self.alpha
    }

    pub fn used(&self) -> &UsedPositions {
        &self.used
    }

    /// Places the next letter and returns its position.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> u128 {
        let y = match self.sample_tail(rng) {
            Some(j) => {
                let value = self.alpha.tail_value(j).expect("accepted index is live");
                self.alpha.remove_rule_index(j);
                value + 1
            }
            None => match sample_explicit(self.alpha.explicit(), rng) {
                0 => {
                    if self.alpha.get(1) == Some(1) {
                        self.alpha.remove_element(1);
                    } else {
                        self.alpha.decrement_from(0);
                    }
                    1
                }
                k => {
                    let value = self.alpha.explicit()[k - 1];
                    self.alpha.remove_element(k);
                    value + 1
                }
            },
        };
        self.used.take(y)
    }

    /// Rule index of the last success among the tail coins, if any.
    fn sample_tail<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Option<u64> {
        let (start, s_max) = loop {
            match self.alpha.tail() {
                Tail::Infinite => return None,
                Tail::Rule { rule: TailRule::PowersOfTwo, .. } => {
                    unreachable!("powers-of-two tails are materialized up front")
                }
                Tail::Rule { start, shift, holes, .. } => {
                    let (start, s_max) = (*start, *shift + holes.len() as u128);
                    let room = (start as u128 * start as u128).checked_sub(s_max);
                    if matches!(room, Some(r) if r >= 4) {
                        break (start, s_max);
                    }
                }
            }
            self.alpha.materialize_first();
        };
        let j0 = start as f64;
        let c = j0 - (j0 * j0 - s_max as f64).sqrt();
        let mut j = start;
        let mut last = None;
        loop {
            let x = j as f64 - c;
            let a = (x - 1.0) / x;
            let u = open_unit(rng);
            if u <= a {
                return last;
            }
            let candidate = (c + u / (u - a)).floor();
            if !(candidate < THINNING_HORIZON) {
                return last;
            }
            let f = (candidate as u64).max(j);
            if let Some(value) = self.alpha.tail_value(f) {
                let dominating = (f as f64 - c).powi(2);
                if rng.random::<f64>() * (value as f64) < dominating {
                    last = Some(f);
                }
            }
            j = f + 1;
        }
    }
}

/// Index of the last success among coins `1/α_1 … 1/α_K`, 0 if none.
fn sample_explicit<R: Rng + ?Sized>(explicit: &[u128], rng: &mut R) -> usize {
    let u = open_unit(rng);
    let mut survive = 1.0f64;
    for k in (1..=explicit.len()).rev() {
        survive *= 1.0 - 1.0 / explicit[k - 1] as f64;
        if survive < u {
            return k;
        }
    }
    0
}

/// `σ^{-1}(1), …, σ^{-1}(m)` under `P^(α,1)`.
pub fn sample_order_prefix_dual<R: Rng + ?Sized>(alpha: &AlphaSpec, m: usize, rng: &mut R) -> OrderPrefix {
    let mut state = DualState::new(alpha);
    OrderPrefix { positions: (0..m).map(|_| state.step(rng)).collect() }
}

/// One step from an explicit state, for callers that enumerate branches.
/// Returns the chosen `y` and the updated sequence for a given `ν`.
pub fn dual_step(alpha: &AlphaSpec, nu: usize) -> Result<(u128, AlphaSpec)> {
    if nu == 0 {
        let case = if alpha.get(1) == Some(1) { UpdateCase::HeadAlphaOne } else { UpdateCase::Head };
        Ok((1, alpha.update(case)?))
    } else {
        let value = alpha.get(nu).ok_or_else(|| Error::Argument(format!("α_{nu} is infinite")))?;
        Ok((value + 1, alpha.update(UpdateCase::Slot(nu))?))
    }
}
