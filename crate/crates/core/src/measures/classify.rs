//! Finite-depth identification of the boundary point a path converges to.

use serde::{Deserialize, Serialize};

use super::alpha::{AlphaSpec, OmegaPoint};
use super::elementary::l_statistic_f64;
use crate::error::{Error, Result};
use crate::graph::check_consecutive;
use crate::perm::RecordWord;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifyConfig {
    /// `L(ρ_N)` below this counts as zero.
    pub threshold: f64,
    /// Number of trailing levels over which `L` must be non-increasing.
    pub trend_window: usize,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig { threshold: 1e-6, trend_window: 10 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Classification {
    Limit { omega: OmegaPoint, p1: f64, p2: f64 },
    Undetermined { reason: String },
}

/// Estimates the limit of `P^{ρ_n}` from the inspected levels. `L → 0`
/// gives the apex; otherwise the coordinates up to `N/4` must agree across
/// levels `N/2 … N`, their zeros `ℓ_i` give `α_i = ℓ_i - 1`, and
/// `p = L(ρ_N) / ∏ (1 - 1/α_i)`.
pub fn classify_limit(path: &[RecordWord], config: ClassifyConfig) -> Result<Classification> {
    let last = path.last().ok_or_else(|| Error::InvalidPath("empty path".into()))?;
    check_consecutive(path)?;
    let tail = &path[path.len().saturating_sub(config.trend_window)..];
    let ls: Vec<f64> = tail.iter().map(l_statistic_f64).collect();
    let l_last = *ls.last().expect("non-empty");
    if l_last < config.threshold {
        if ls.windows(2).all(|w| w[1] <= w[0]) {
            return Ok(Classification::Limit { omega: OmegaPoint::Star, p1: l_last, p2: f64::NAN });
        }
        return Ok(Classification::Undetermined { reason: format!("L = {l_last:e} is small but not decreasing") });
    }
    let n = last.len();
    let frozen = n / 4;
    let window: Vec<&RecordWord> = path.iter().filter(|w| w.len() >= n / 2).collect();
    if let Some(w) = window.iter().find(|w| w.bits()[..frozen] != last.bits()[..frozen]) {
        return Ok(Classification::Undetermined {
            reason: format!("coordinates up to {frozen} differ between levels {} and {n}", w.len()),
        });
    }
    let zeros: Vec<u128> = last.zeros().into_iter().filter(|&z| z <= frozen).map(|z| z as u128).collect();
    let alpha: Vec<u128> = zeros.iter().map(|z| z - 1).collect();
    let p2: f64 = alpha.iter().map(|&a| 1.0 - 1.0 / a as f64).product();
    let p = (l_last / p2).min(1.0);
    let omega = OmegaPoint::alpha_p(AlphaSpec::finite(alpha)?, p)?;
    Ok(Classification::Limit { omega, p1: l_last, p2 })
}

/// How many leading coordinates are switched on at level `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Growth {
    /// `m(n) = n`.
    All,
    /// `m(n) = ⌈√n⌉`.
    Sqrt,
    /// `m(n) = ⌈n·a/b⌉` with `0 < a ≤ b`.
    Fraction(u32, u32),
}

/// The path `ρ_n(i) = [i ≤ m(n) and i ∉ Z]` for a fixed set of frozen zeros
/// `Z` (which must avoid 1) and a growth rule `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignedPath {
    pub frozen_zeros: Vec<usize>,
    pub growth: Growth,
}

impl DesignedPath {
    pub fn new(frozen_zeros: Vec<usize>, growth: Growth) -> Result<Self> {
        if frozen_zeros.contains(&1) || frozen_zeros.contains(&0) {
            return Err(Error::Argument("frozen zeros must lie in 2, 3, …".into()));
        }
        if let Growth::Fraction(a, b) = growth {
            if a == 0 || a > b {
                return Err(Error::Argument(format!("fraction {a}/{b} outside (0, 1]")));
            }
        }
        Ok(DesignedPath { frozen_zeros, growth })
    }

    pub fn active(&self, n: usize) -> usize {
        match self.growth {
            Growth::All => n,
            Growth::Sqrt => {
                let mut m = (n as f64).sqrt() as usize;
                while m * m < n {
                    m += 1;
                }
                while m > 1 && (m - 1) * (m - 1) >= n {
                    m -= 1;
                }
                m.max(1)
            }
            Growth::Fraction(a, b) => (n * a as usize).div_ceil(b as usize).max(1),
        }
    }

    pub fn word(&self, n: usize) -> RecordWord {
        let m = self.active(n);
        let bits = (1..=n).map(|i| i <= m && !self.frozen_zeros.contains(&i)).collect();
        RecordWord::from_bits_unchecked(bits)
    }

    pub fn words(&self, depth: usize) -> Vec<RecordWord> {
        (1..=depth).map(|n| self.word(n)).collect()
    }

    /// The boundary point the path converges to.
    pub fn limit(&self) -> OmegaPoint {
        let mut zeros = self.frozen_zeros.clone();
        zeros.sort_unstable();
        zeros.dedup();
        let alpha = AlphaSpec::finite(zeros.iter().map(|&z| z as u128 - 1).collect()).expect("increasing");
        match self.growth {
            Growth::All => OmegaPoint::AlphaP { alpha, p: 1.0 },
            Growth::Sqrt => OmegaPoint::Star,
            Growth::Fraction(a, b) => OmegaPoint::AlphaP { alpha, p: a as f64 / b as f64 },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limit(c: Classification) -> (OmegaPoint, f64, f64) {
        match c {
            Classification::Limit { omega, p1, p2 } => (omega, p1, p2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn all_ones_path() {
        let path: Vec<RecordWord> = (1..=200).map(RecordWord::all_ones).collect();
        let (omega, p1, p2) = limit(classify_limit(&path, ClassifyConfig::default()).unwrap());
        assert_eq!(omega, OmegaPoint::alpha_p(AlphaSpec::infinite(), 1.0).unwrap());
        assert_eq!((p1, p2), (1.0, 1.0));
    }

    #[test]
    fn single_frozen_zero() {
        let path = DesignedPath::new(vec![3], Growth::All).unwrap().words(200);
        let (omega, p1, p2) = limit(classify_limit(&path[2..], ClassifyConfig::default()).unwrap());
        assert_eq!(omega, OmegaPoint::alpha_p(AlphaSpec::finite(vec![2]).unwrap(), 1.0).unwrap());
        assert_eq!((p1, p2), (0.5, 0.5));
    }

    #[test]
    fn decreasing_words_go_to_the_apex() {
        let path: Vec<RecordWord> = (1..=100).map(|n| RecordWord::from_set(n, &[1]).unwrap()).collect();
        assert_eq!(limit(classify_limit(&path, ClassifyConfig::default()).unwrap()).0, OmegaPoint::Star);
    }

    #[test]
    fn fraction_growth_gives_p() {
        let path = DesignedPath::new(vec![3, 6], Growth::Fraction(1, 2)).unwrap().words(2000);
        let (omega, _, _) = limit(classify_limit(&path, ClassifyConfig::default()).unwrap());
        match omega {
            OmegaPoint::AlphaP { alpha, p } => {
                assert_eq!(alpha, AlphaSpec::finite(vec![2, 5]).unwrap());
                assert!((p - 0.5).abs() < 0.01, "p = {p}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn slow_decay_is_undetermined_at_small_depth() {
        let path = DesignedPath::new(vec![], Growth::Sqrt).unwrap().words(2000);
        assert!(matches!(
            classify_limit(&path, ClassifyConfig::default()).unwrap(),
            Classification::Undetermined { .. }
        ));
    }

    #[test]
    fn designed_paths_are_paths() {
        for path in [
            DesignedPath::new(vec![3, 6], Growth::All).unwrap(),
            DesignedPath::new(vec![2, 7], Growth::Sqrt).unwrap(),
            DesignedPath::new(vec![4], Growth::Fraction(2, 3)).unwrap(),
        ] {
            assert!(check_consecutive(&path.words(300)).is_ok());
        }
        let bad = vec![RecordWord::all_ones(2), "101".parse().unwrap(), RecordWord::all_ones(4)];
        assert!(matches!(classify_limit(&bad, ClassifyConfig::default()), Err(Error::InvalidPath(_))));
    }

    #[test]
    fn sqrt_growth() {
        let d = DesignedPath::new(vec![], Growth::Sqrt).unwrap();
        let got: Vec<usize> = (1..=10).map(|n| d.active(n)).collect();
        assert_eq!(got, vec![1, 2, 2, 2, 3, 3, 3, 3, 3, 4]);
    }
}
