use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::{BigInt, BigRational, One, Signed, Zero};

use super::nu::ratio_to_f64;
use crate::error::{Error, Result};
use crate::perm::{project_unchecked, records, Permutation, RecordWord};

/// A probability distribution on `S_n`, listed over its support in
/// lexicographic order of the words.
#[derive(Debug, Clone, PartialEq)]
pub enum FiniteDistribution {
    Exact(BTreeMap<Permutation, BigRational>),
    Float(BTreeMap<Permutation, f64>),
}

impl FiniteDistribution {
    pub fn point_mass(sigma: Permutation) -> Self {
        FiniteDistribution::Exact(BTreeMap::from([(sigma, BigRational::one())]))
    }

    /// Uniform law on `S_n`, enumerated lexicographically.
    pub fn uniform(n: usize) -> Self {
        let all = crate::oracle::all_permutations(n);
        let mass = BigRational::new(BigInt::one(), BigInt::from(all.len()));
        FiniteDistribution::Exact(all.into_iter().map(|p| (p, mass.clone())).collect())
    }

    /// Empirical law of `total` draws.
    pub fn from_counts(counts: BTreeMap<Permutation, u64>, total: u64) -> Self {
        FiniteDistribution::Float(counts.into_iter().map(|(p, c)| (p, c as f64 / total as f64)).collect())
    }

    /// Validates sizes, signs and normalization.
    pub fn checked(self) -> Result<Self> {
        let n = self.size();
        let sizes_ok = match &self {
            FiniteDistribution::Exact(m) => m.keys().all(|p| Some(p.len()) == n),
            FiniteDistribution::Float(m) => m.keys().all(|p| Some(p.len()) == n),
        };
        if !sizes_ok {
            return Err(Error::Argument("support mixes permutation sizes".into()));
        }
        match &self {
            FiniteDistribution::Exact(m) => {
                let total: BigRational = m.values().cloned().sum();
                if m.values().any(|v| v.is_negative()) || !total.is_one() {
                    return Err(Error::Normalization(total.to_string()));
                }
            }
            FiniteDistribution::Float(m) => {
                let total: f64 = m.values().sum();
                if m.values().any(|&v| !(v >= 0.0)) || (total - 1.0).abs() > 1e-12 {
                    return Err(Error::Normalization(total.to_string()));
                }
            }
        }
        Ok(self)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, FiniteDistribution::Exact(_))
    }

    /// Size `n` of the underlying symmetric group, if the support is nonempty.
    pub fn size(&self) -> Option<usize> {
        match self {
            FiniteDistribution::Exact(m) => m.keys().next().map(Permutation::len),
            FiniteDistribution::Float(m) => m.keys().next().map(Permutation::len),
        }
    }

    pub fn mass_f64(&self, sigma: &Permutation) -> f64 {
        match self {
            FiniteDistribution::Exact(m) => m.get(sigma).map_or(0.0, ratio_to_f64),
            FiniteDistribution::Float(m) => m.get(sigma).copied().unwrap_or(0.0),
        }
    }

    pub fn support(&self) -> Vec<&Permutation> {
        match self {
            FiniteDistribution::Exact(m) => m.keys().collect(),
            FiniteDistribution::Float(m) => m.keys().collect(),
        }
    }

    pub fn to_float(&self) -> BTreeMap<Permutation, f64> {
        match self {
            FiniteDistribution::Exact(m) => m.iter().map(|(p, v)| (p.clone(), ratio_to_f64(v))).collect(),
            FiniteDistribution::Float(m) => m.clone(),
        }
    }

    pub fn total_variation(&self, other: &FiniteDistribution) -> f64 {
        if let (FiniteDistribution::Exact(_), FiniteDistribution::Exact(_)) = (self, other) {
            return ratio_to_f64(&self.total_variation_exact(other).expect("both exact"));
        }
        let a = self.to_float();
        let b = other.to_float();
        let mut sum = 0.0;
        for (p, v) in &a {
            sum += (v - b.get(p).copied().unwrap_or(0.0)).abs();
        }
        for (p, v) in &b {
            if !a.contains_key(p) {
                sum += v.abs();
            }
        }
        sum / 2.0
    }

    pub fn total_variation_exact(&self, other: &FiniteDistribution) -> Option<BigRational> {
        let (FiniteDistribution::Exact(a), FiniteDistribution::Exact(b)) = (self, other) else {
            return None;
        };
        let mut sum = BigRational::zero();
        for (p, v) in a {
            sum += (v - b.get(p).cloned().unwrap_or_else(BigRational::zero)).abs();
        }
        for (p, v) in b {
            if !a.contains_key(p) {
                sum += v.abs();
            }
        }
        Some(sum / BigRational::from_integer(2.into()))
    }

    /// Pushforward under `π_k^n`.
    pub fn pushforward(&self, k: usize) -> Result<FiniteDistribution> {
        if let Some(n) = self.size() {
            if k == 0 || k > n {
                return Err(Error::Argument(format!("k = {k} outside 1..={n}")));
            }
        }
        Ok(match self {
            FiniteDistribution::Exact(m) => {
                let mut out: BTreeMap<Permutation, BigRational> = BTreeMap::new();
                for (p, v) in m {
                    *out.entry(project_unchecked(p, k)).or_insert_with(BigRational::zero) += v;
                }
                FiniteDistribution::Exact(out)
            }
            FiniteDistribution::Float(m) => {
                let mut out: BTreeMap<Permutation, f64> = BTreeMap::new();
                for (p, v) in m {
                    *out.entry(project_unchecked(p, k)).or_insert(0.0) += v;
                }
                FiniteDistribution::Float(out)
            }
        })
    }

    /// Whether the mass function is constant on every record fiber of `S_n`
    /// (support gaps count as mass zero).
    pub fn is_record_dependent(&self) -> bool {
        let Some(n) = self.size() else { return true };
        let fiber_sizes = fiber_sizes(n);
        match self {
            FiniteDistribution::Exact(m) => {
                let mut by_fiber: BTreeMap<RecordWord, (BigRational, u64)> = BTreeMap::new();
                for (p, v) in m {
                    let e = by_fiber.entry(records(p)).or_insert((v.clone(), 0));
                    if &e.0 != v {
                        return false;
                    }
                    e.1 += 1;
                }
                by_fiber.iter().all(|(rho, (v, c))| v.is_zero() || fiber_sizes[rho] == *c)
            }
            FiniteDistribution::Float(m) => {
                let mut by_fiber: BTreeMap<RecordWord, (f64, u64)> = BTreeMap::new();
                for (p, &v) in m {
                    let e = by_fiber.entry(records(p)).or_insert((v, 0));
                    if (e.0 - v).abs() > 1e-12 {
                        return false;
                    }
                    e.1 += 1;
                }
                by_fiber.iter().all(|(rho, (v, c))| v.abs() <= 1e-12 || fiber_sizes[rho] == *c)
            }
        }
    }

    /// Lines `<word> <num>/<den>` or `<word> <float>`; the word is the usual
    /// space-separated one-row form, so the mass is the last field.
    pub fn export(&self) -> String {
        let mut out = String::new();
        match self {
            FiniteDistribution::Exact(m) => {
                for (p, v) in m {
                    writeln!(out, "{} {}/{}", p, v.numer(), v.denom()).expect("string write");
                }
            }
            FiniteDistribution::Float(m) => {
                for (p, v) in m {
                    writeln!(out, "{p} {v:.12e}").expect("string write");
                }
            }
        }
        out
    }
}

fn fiber_sizes(n: usize) -> BTreeMap<RecordWord, u64> {
    crate::graph::level_words(n)
        .map(|rho| {
            let d = crate::graph::dimension(&rho);
            let d = u64::try_from(d).unwrap_or(u64::MAX);
            (rho, d)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn uniform_is_normalized_and_rd() {
        let u = FiniteDistribution::uniform(4).checked().unwrap();
        assert_eq!(u.support().len(), 24);
        assert!(u.is_record_dependent());
        assert_eq!(u.pushforward(3).unwrap(), FiniteDistribution::uniform(3));
    }

    #[test]
    fn point_mass_projection() {
        let d = FiniteDistribution::point_mass(p("3 4 1 2"));
        assert_eq!(d.pushforward(3).unwrap(), FiniteDistribution::point_mass(p("3 1 2")));
        assert!(!d.is_record_dependent());
    }

    #[test]
    fn total_variation() {
        let u = FiniteDistribution::uniform(2);
        let d = FiniteDistribution::point_mass(p("1 2"));
        assert_eq!(u.total_variation(&d), 0.5);
        assert_eq!(d.total_variation(&d), 0.0);
        let f = FiniteDistribution::Float(u.to_float());
        assert!((f.total_variation(&d) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn export_format() {
        let u = FiniteDistribution::uniform(2);
        assert_eq!(u.export(), "1 2 1/2\n2 1 1/2\n");
        let f = FiniteDistribution::Float(BTreeMap::from([(p("1"), 1.0)]));
        assert_eq!(f.export(), "1 1.000000000000e0\n");
    }

    #[test]
    fn normalization_checked() {
        let bad = FiniteDistribution::Exact(BTreeMap::from([(p("1 2"), BigRational::new(1.into(), 2.into()))]));
        assert!(matches!(bad.checked(), Err(Error::Normalization(_))));
    }
}
