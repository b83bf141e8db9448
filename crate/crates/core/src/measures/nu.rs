//! The law of `ν`, the index of the last success among independent coins
//! with success probabilities `1/α_1, 1/α_2, …`:
//!
//! ```text
//! P(ν = 0) = ∏_m (1 - 1/α_m),   P(ν = k) = (1/α_k) ∏_{m>k} (1 - 1/α_m).
//! ```

use num::{BigInt, BigRational, One, Zero};

use super::alpha::{AlphaSpec, Tail, TailRule};
use crate::error::{Error, Result};

/// Number of rule-tail terms whose masses are listed individually.
pub const LISTED_TAIL_TERMS: u64 = 1000;

#[derive(Debug, Clone, PartialEq)]
pub enum NuDistribution {
    /// `masses[k] = P(ν = k)` for `k = 0 … K`; exact.
    Exact(Vec<BigRational>),
    /// Masses for `k = 0 … masses.len()-1`, the remaining mass `P(ν ≥
    /// masses.len())`, and a bound on the absolute error of every entry.
    Approx { masses: Vec<f64>, tail_mass: f64, error_bound: f64 },
}

impl NuDistribution {
    pub fn mass(&self, k: usize) -> f64 {
        match self {
            NuDistribution::Exact(m) => m.get(k).map_or(0.0, ratio_to_f64),
            NuDistribution::Approx { masses, .. } => masses.get(k).copied().unwrap_or(0.0),
        }
    }

    pub fn total(&self) -> f64 {
        match self {
            NuDistribution::Exact(m) => m.iter().map(ratio_to_f64).sum(),
            NuDistribution::Approx { masses, tail_mass, .. } => masses.iter().sum::<f64>() + tail_mass,
        }
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn reciprocal(a: u128) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(a))
}

/// Exact masses for a sequence whose terms past `explicit` are all `+∞`.
pub(crate) fn exact_masses(explicit: &[u128]) -> Vec<BigRational> {
    let k = explicit.len();
    let mut masses = vec![BigRational::zero(); k + 1];
    let mut suffix = BigRational::one();
    for i in (0..k).rev() {
        let q = reciprocal(explicit[i]);
        masses[i + 1] = &q * &suffix;
        suffix *= BigRational::one() - q;
    }
    masses[0] = suffix;
    masses
}

pub fn nu_distribution(alpha: &AlphaSpec, tolerance: f64) -> Result<NuDistribution> {
    if !(tolerance > 0.0) {
        return Err(Error::Argument(format!("tolerance {tolerance} must be positive")));
    }
    let (rule, start, shift, holes) = match alpha.tail() {
        Tail::Infinite => return Ok(NuDistribution::Exact(exact_masses(alpha.explicit()))),
        Tail::Rule { rule, start, shift, holes } => (*rule, *start, *shift, holes.clone()),
    };
    if alpha.tail_sum_bound().is_none() {
        return Err(Error::Alpha(format!(
            "no certified tail bound for start {start}, shift {shift}, {} holes",
            holes.len()
        )));
    }
    // Rule indices of the listed tail terms, then the product over the rest.
    let last_listed = match rule {
        TailRule::Squares => {
            (start + LISTED_TAIL_TERMS - 1 + holes.len() as u64).max(holes.last().copied().unwrap_or(0))
        }
        TailRule::PowersOfTwo => TailRule::POWERS_HORIZON.max(start),
    };
    let listed: Vec<u128> = (start..=last_listed).filter_map(|j| alpha.tail_value(j)).collect();
    let (beyond, error_bound) = match rule {
        TailRule::Squares => {
            let s_total = shift + holes.len() as u128;
            squares_product_beyond(last_listed, s_total, tolerance)
        }
        TailRule::PowersOfTwo => (1.0, 2f64.powi(-125)),
    };

    let explicit = alpha.explicit();
    let mut masses = vec![0.0; explicit.len() + listed.len() + 1];
    let mut suffix = beyond;
    let terms: Vec<u128> = explicit.iter().chain(listed.iter()).copied().collect();
    for (i, &a) in terms.iter().enumerate().rev() {
        let q = 1.0 / a as f64;
        masses[i + 1] = q * suffix;
        suffix *= 1.0 - q;
    }
    masses[0] = suffix;
    Ok(NuDistribution::Approx { masses, tail_mass: 1.0 - beyond, error_bound })
}

/// `∏_{j > m} (1 - 1/(j² - s))` with a bound on its absolute error. All holes
/// lie at or below `m`, so the shift beyond `m` is the constant `s`.
///
/// The product equals `m/(m+1) · ∏_{j>m} (1 - s/((j²-s)(j²-1)))`; the second
/// factor is evaluated up to an index `M` past which it differs from 1 by at
/// most `8s / (3(M-1)³)`.
fn squares_product_beyond(m: u64, s: u128, tolerance: f64) -> (f64, f64) {
    let base = m as f64 / (m as f64 + 1.0);
    if s == 0 {
        return (base, f64::EPSILON);
    }
    let s = s as f64;
    let target = tolerance / 4.0;
    let mut big_m = ((8.0 * s / (3.0 * target)).cbrt() + 2.0).ceil() as u64;
    big_m = big_m.max(m).max((2.0 * s).sqrt().ceil() as u64 + 2);
    let mut log_correction = 0.0f64;
    for j in (m + 1)..=big_m {
        let jj = (j as f64) * (j as f64);
        log_correction += (-s / ((jj - s) * (jj - 1.0))).ln_1p();
    }
    let remainder = 8.0 * s / (3.0 * ((big_m - 1) as f64).powi(3));
    (base * log_correction.exp(), remainder + 1e-15)
}
