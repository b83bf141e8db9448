//! Strictly increasing sequences `α` with summable reciprocals, and the
//! boundary points `Ω = {*} ∪ {(α, p)}`.
//!
//! A sequence is an explicit prefix followed by a tail. The tail is either
//! all `+∞` or a closed-form rule `α_j = f(j)` for rule indices `j ≥ start`,
//! carried through the updates of the dual algorithm as a global downward
//! shift plus a sorted list of removed indices ("holes"):
//!
//! ```text
//! value(j) = f(j) - shift - #{h in holes : h < j}    (j ≥ start, j ∉ holes)
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailRule {
    /// `α_j = j²`.
    Squares,
    /// `α_j = 2^j`.
    PowersOfTwo,
}

impl TailRule {
    /// Largest rule index whose value is tracked exactly. Beyond it the
    /// powers-of-two tail is treated as `+∞`; the neglected reciprocal mass
    /// is below `2^-125`.
    pub const POWERS_HORIZON: u64 = 126;

    pub(crate) fn value(self, j: u64) -> Option<u128> {
        match self {
            TailRule::Squares => Some((j as u128) * (j as u128)),
            TailRule::PowersOfTwo => (j <= Self::POWERS_HORIZON).then(|| 1u128 << j),
        }
    }

    fn name(self) -> &'static str {
        match self {
            TailRule::Squares => "squares",
            TailRule::PowersOfTwo => "powers_of_two",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tail {
    Infinite,
    Rule { rule: TailRule, start: u64, shift: u128, holes: Vec<u64> },
}

/// Which of the three update rules applies after placing letter 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateCase {
    /// Letter 1 went to position 1 and `α_1 ≥ 2`: every term drops by one.
    Head,
    /// Letter 1 went to position 1 and `α_1 = 1`: drop `α_1`, shift the rest.
    HeadAlphaOne,
    /// Letter 1 went to position `α_i + 1`: drop `α_i`, decrement later terms.
    Slot(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlphaSpec {
    explicit: Vec<u128>,
    tail: Tail,
}

impl AlphaSpec {
    /// Finite prefix followed by `+∞`.
    pub fn finite(prefix: Vec<u128>) -> Result<Self> {
        check_increasing(&prefix)?;
        Ok(AlphaSpec { explicit: prefix, tail: Tail::Infinite })
    }

    /// The all-`+∞` sequence.
    pub fn infinite() -> Self {
        AlphaSpec { explicit: Vec::new(), tail: Tail::Infinite }
    }

    /// `prefix` followed by `α_k = f(k)` for `k > prefix.len()`.
    pub fn with_rule(prefix: Vec<u128>, rule: TailRule) -> Result<Self> {
        check_increasing(&prefix)?;
        let start = prefix.len() as u64 + 1;
        if let (Some(&last), Some(first_tail)) = (prefix.last(), rule.value(start)) {
            if last >= first_tail {
                return Err(Error::Alpha(format!(
                    "prefix ends at {last} but the {} tail starts at {first_tail}",
                    rule.name()
                )));
            }
        }
        Ok(AlphaSpec { explicit: prefix, tail: Tail::Rule { rule, start, shift: 0, holes: Vec::new() } })
    }

    /// `α_k = k²` for all `k`.
    pub fn squares() -> Self {
        Self::with_rule(Vec::new(), TailRule::Squares).expect("empty prefix")
    }

    pub fn explicit(&self) -> &[u128] {
        &self.explicit
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn is_finite_support(&self) -> bool {
        matches!(self.tail, Tail::Infinite)
    }

    /// `α_k` (1-based); `None` stands for `+∞`.
    pub fn get(&self, k: usize) -> Option<u128> {
        if k == 0 {
            return None;
        }
        if k <= self.explicit.len() {
            return Some(self.explicit[k - 1]);
        }
        match &self.tail {
            Tail::Infinite => None,
            Tail::Rule { .. } => {
                let t = (k - self.explicit.len()) as u64;
                self.tail_value(self.tail_rule_index(t))
            }
        }
    }

    /// The finite terms `α_1 … α_k` with `α_k ≤ bound`.
    pub fn terms_up_to(&self, bound: u128) -> Vec<u128> {
        let mut out = Vec::new();
        for k in 1.. {
            match self.get(k) {
                Some(v) if v <= bound => out.push(v),
                _ => break,
            }
        }
        out
    }

    /// Rule index of the `t`-th tail element (`t ≥ 1`).
    pub(crate) fn tail_rule_index(&self, t: u64) -> u64 {
        match &self.tail {
            Tail::Infinite => unreachable!("no rule tail"),
            Tail::Rule { start, holes, .. } => {
                let mut j = start + t - 1;
                for &h in holes {
                    if h <= j {
                        j += 1;
                    } else {
                        break;
                    }
                }
                j
            }
        }
    }

    /// Value at rule index `j`, `None` for holes and for indices past the
    /// representable horizon.
    pub(crate) fn tail_value(&self, j: u64) -> Option<u128> {
        match &self.tail {
            Tail::Infinite => None,
            Tail::Rule { rule, start, shift, holes } => {
                if j < *start || holes.binary_search(&j).is_ok() {
                    return None;
                }
                let below = holes.partition_point(|&h| h < j) as u128;
                rule.value(j).map(|v| v - shift - below)
            }
        }
    }

    /// Upper bound for `Σ_{tail} 1/α_k`, `None` when the current shift is too
    /// large for the closed-form estimate.
    pub fn tail_sum_bound(&self) -> Option<f64> {
        match &self.tail {
            Tail::Infinite => Some(0.0),
            Tail::Rule { rule, start, shift, holes } => {
                let s = (*shift + holes.len() as u128) as f64;
                let a = *start as f64;
                match rule {
                    TailRule::Squares => {
                        if s == 0.0 {
                            Some(if *start == 1 { 2.0 } else { 1.0 / (a - 1.0) })
                        } else if *start >= 2 && a * a > s {
                            Some(1.0 / (1.0 - s / (a * a)) / (a - 1.0))
                        } else {
                            None
                        }
                    }
                    TailRule::PowersOfTwo => {
                        let head = 2f64.powf(a);
                        if s < head {
                            Some(2f64.powf(1.0 - a) / (1.0 - s / head))
                        } else {
                            None
                        }
                    }
                }
            }
        }
    }

    /// `Σ 1/α_k` up to the certified tail bound.
    pub fn reciprocal_sum_bound(&self) -> Option<f64> {
        let head: f64 = self.explicit.iter().map(|&a| 1.0 / a as f64).sum();
        self.tail_sum_bound().map(|b| head + b)
    }

    /// Applies update rule (i), (ii) or (iii).
    pub fn update(&self, case: UpdateCase) -> Result<AlphaSpec> {
        let mut next = self.clone();
        match case {
            UpdateCase::Head => {
                if self.get(1) == Some(1) {
                    return Err(Error::Argument("rule (i) needs α_1 ≥ 2".into()));
                }
                next.decrement_from(0);
            }
            UpdateCase::HeadAlphaOne => {
                if self.get(1) != Some(1) {
                    return Err(Error::Argument("rule (ii) needs α_1 = 1".into()));
                }
                next.remove_element(1);
            }
            UpdateCase::Slot(i) => {
                if self.get(i).is_none() {
                    return Err(Error::Argument(format!("α_{i} is not a finite term")));
                }
                next.remove_element(i);
            }
        }
        Ok(next)
    }

    /// Removes `α_i`; later terms drop by one.
    pub(crate) fn remove_element(&mut self, i: usize) {
        let k = self.explicit.len();
        if i <= k {
            self.explicit.remove(i - 1);
            self.decrement_from(i - 1);
        } else {
            let j = self.tail_rule_index((i - k) as u64);
            if let Tail::Rule { holes, .. } = &mut self.tail {
                let at = holes.partition_point(|&h| h < j);
                holes.insert(at, j);
            }
            self.normalize();
        }
    }

    /// Removes the tail element at rule index `j`.
    pub(crate) fn remove_rule_index(&mut self, j: u64) {
        if let Tail::Rule { holes, .. } = &mut self.tail {
            let at = holes.partition_point(|&h| h < j);
            debug_assert!(holes.get(at) != Some(&j));
            holes.insert(at, j);
        }
        self.normalize();
    }

    /// Decrements explicit terms from index `from` (0-based) and the tail.
    pub(crate) fn decrement_from(&mut self, from: usize) {
        for a in &mut self.explicit[from..] {
            *a -= 1;
        }
        if let Tail::Rule { shift, .. } = &mut self.tail {
            *shift += 1;
        }
    }

    fn normalize(&mut self) {
        if let Tail::Rule { start, shift, holes, .. } = &mut self.tail {
            while holes.first() == Some(start) {
                holes.remove(0);
                *start += 1;
                *shift += 1;
            }
        }
    }

    /// Moves the first tail element into the explicit prefix. Returns false
    /// when there is nothing finite left to move.
    pub(crate) fn materialize_first(&mut self) -> bool {
        let value = match &self.tail {
            Tail::Infinite => return false,
            Tail::Rule { start, .. } => self.tail_value(*start),
        };
        match value {
            None => {
                self.tail = Tail::Infinite;
                false
            }
            Some(v) => {
                self.explicit.push(v);
                if let Tail::Rule { start, .. } = &mut self.tail {
                    *start += 1;
                }
                self.normalize();
                true
            }
        }
    }

    /// Whether the sequence still has its initial form `prefix + f(k)`.
    fn is_pristine(&self) -> bool {
        match &self.tail {
            Tail::Infinite => true,
            Tail::Rule { start, shift, holes, .. } => {
                *shift == 0 && holes.is_empty() && *start == self.explicit.len() as u64 + 1
            }
        }
    }

    fn tail_name(&self) -> &'static str {
        match &self.tail {
            Tail::Infinite => "infinite",
            Tail::Rule { rule, .. } => rule.name(),
        }
    }
}

fn check_increasing(prefix: &[u128]) -> Result<()> {
    if prefix.first() == Some(&0) {
        return Err(Error::Alpha("terms must be positive".into()));
    }
    if let Some(w) = prefix.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::Alpha(format!("not strictly increasing: {} >= {}", w[0], w[1])));
    }
    Ok(())
}

impl fmt::Display for AlphaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.explicit.iter().map(|a| a.to_string()).collect();
        write!(f, "(")?;
        for t in &terms {
            write!(f, "{t}, ")?;
        }
        match &self.tail {
            Tail::Infinite => write!(f, "∞, …)"),
            Tail::Rule { rule: TailRule::Squares, .. } if self.is_pristine() => write!(f, "k², …)"),
            Tail::Rule { rule: TailRule::PowersOfTwo, .. } if self.is_pristine() => write!(f, "2^k, …)"),
            Tail::Rule { .. } => {
                let more: Vec<String> = (self.explicit.len() + 1..=self.explicit.len() + 3)
                    .map(|k| self.get(k).map_or("∞".to_string(), |v| v.to_string()))
                    .collect();
                write!(f, "{}, …)", more.join(", "))
            }
        }
    }
}

/// A point of the boundary: the uniform apex or a pair `(α, p)`.
#[derive(Debug, Clone, PartialEq)]
pub enum OmegaPoint {
    Star,
    AlphaP { alpha: AlphaSpec, p: f64 },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum OmegaRecord {
    Star,
    AlphaP { alpha_prefix: Vec<u64>, tail: String, p: f64 },
}

impl OmegaPoint {
    pub fn alpha_p(alpha: AlphaSpec, p: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::Argument(format!("p = {p} outside (0, 1]")));
        }
        Ok(OmegaPoint::AlphaP { alpha, p })
    }

    pub fn to_json(&self) -> Result<String> {
        let record = match self {
            OmegaPoint::Star => OmegaRecord::Star,
            OmegaPoint::AlphaP { alpha, p } => {
                if !alpha.is_pristine() {
                    return Err(Error::Argument("only unmodified sequences serialize".into()));
                }
                let prefix = alpha
                    .explicit
                    .iter()
                    .map(|&a| u64::try_from(a).map_err(|_| Error::Alpha(format!("{a} exceeds u64"))))
                    .collect::<Result<Vec<u64>>>()?;
                OmegaRecord::AlphaP { alpha_prefix: prefix, tail: alpha.tail_name().into(), p: *p }
            }
        };
        Ok(serde_json::to_string(&record)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let record: OmegaRecord = serde_json::from_str(text)?;
        Self::from_record(record)
    }

    pub fn from_value(value: serde_json::Value) -> Result<Self> {
        Self::from_record(serde_json::from_value(value)?)
    }

    pub fn to_value(&self) -> Result<serde_json::Value> {
        Ok(serde_json::from_str(&self.to_json()?)?)
    }

    fn from_record(record: OmegaRecord) -> Result<Self> {
        match record {
            OmegaRecord::Star => Ok(OmegaPoint::Star),
            OmegaRecord::AlphaP { alpha_prefix, tail, p } => {
                let prefix: Vec<u128> = alpha_prefix.into_iter().map(u128::from).collect();
                let alpha = match tail.as_str() {
                    "infinite" => AlphaSpec::finite(prefix)?,
                    "squares" => AlphaSpec::with_rule(prefix, TailRule::Squares)?,
                    "powers_of_two" => AlphaSpec::with_rule(prefix, TailRule::PowersOfTwo)?,
                    other => return Err(Error::Parse(format!("unknown tail kind {other:?}"))),
                };
                OmegaPoint::alpha_p(alpha, p)
            }
        }
    }

    /// Short label used in CSV output.
    pub fn label(&self) -> String {
        match self {
            OmegaPoint::Star => "star".into(),
            OmegaPoint::AlphaP { alpha, p } => format!("alpha={alpha};p={p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn finite(v: &[u128]) -> AlphaSpec {
        AlphaSpec::finite(v.to_vec()).unwrap()
    }

    #[test]
    fn update_rules() {
        let a = finite(&[3, 5, 9]);
        assert_eq!(a.update(UpdateCase::Head).unwrap(), finite(&[2, 4, 8]));
        assert_eq!(finite(&[1, 5, 9]).update(UpdateCase::HeadAlphaOne).unwrap(), finite(&[4, 8]));
        assert_eq!(a.update(UpdateCase::Slot(2)).unwrap(), finite(&[3, 8]));
        assert!(finite(&[1, 5]).update(UpdateCase::Head).is_err());
        assert!(a.update(UpdateCase::HeadAlphaOne).is_err());
        assert!(a.update(UpdateCase::Slot(4)).is_err());
        assert_eq!(AlphaSpec::infinite().update(UpdateCase::Head).unwrap(), AlphaSpec::infinite());
    }

    #[test]
    fn rule_tail_updates_match_direct_arithmetic() {
        let a = AlphaSpec::with_rule(vec![2, 5], TailRule::Squares).unwrap();
        let terms = |s: &AlphaSpec| (1..=8).map(|k| s.get(k).unwrap()).collect::<Vec<_>>();
        assert_eq!(terms(&a), vec![2, 5, 9, 16, 25, 36, 49, 64]);
        let b = a.update(UpdateCase::Slot(4)).unwrap();
        assert_eq!(terms(&b), vec![2, 5, 9, 24, 35, 48, 63, 80]);
        let c = b.update(UpdateCase::Head).unwrap();
        assert_eq!(terms(&c), vec![1, 4, 8, 23, 34, 47, 62, 79]);
        let d = c.update(UpdateCase::HeadAlphaOne).unwrap();
        assert_eq!(terms(&d), vec![3, 7, 22, 33, 46, 61, 78, 97]);
        let e = d.update(UpdateCase::Slot(3)).unwrap();
        assert_eq!(terms(&e), vec![3, 7, 32, 45, 60, 77, 96, 117]);
        let mut f = e.clone();
        assert!(f.materialize_first());
        assert_eq!(terms(&f), terms(&e));
        assert_eq!(f.explicit().len(), 2);
    }

    #[test]
    fn removing_tail_head_normalizes() {
        let a = AlphaSpec::squares();
        let b = a.update(UpdateCase::HeadAlphaOne).unwrap();
        assert_eq!((1..=3).map(|k| b.get(k).unwrap()).collect::<Vec<_>>(), vec![3, 8, 15]);
        assert_eq!(b.tail, Tail::Rule { rule: TailRule::Squares, start: 2, shift: 1, holes: vec![] });
    }

    #[test]
    fn tail_bounds() {
        let sq = AlphaSpec::squares();
        assert_eq!(sq.tail_sum_bound(), Some(2.0));
        let sq5 = AlphaSpec::with_rule(vec![3, 4, 9, 16], TailRule::Squares).unwrap();
        let bound = sq5.tail_sum_bound().unwrap();
        let exact: f64 = (5..200_000u64).map(|j| 1.0 / (j * j) as f64).sum();
        assert!(bound >= exact && bound <= 0.26);
        let shifted = sq5.update(UpdateCase::Head).unwrap().update(UpdateCase::Head).unwrap();
        let exact: f64 = (5..200_000u64).map(|j| 1.0 / (j * j - 2) as f64).sum();
        assert!(shifted.tail_sum_bound().unwrap() >= exact);
        let p2 = AlphaSpec::with_rule(vec![], TailRule::PowersOfTwo).unwrap();
        assert_eq!(p2.tail_sum_bound(), Some(1.0));
    }

    #[test]
    fn invalid_sequences() {
        assert!(AlphaSpec::finite(vec![2, 2]).is_err());
        assert!(AlphaSpec::finite(vec![0, 2]).is_err());
        assert!(AlphaSpec::with_rule(vec![2, 9], TailRule::Squares).is_err());
        assert!(OmegaPoint::alpha_p(AlphaSpec::infinite(), 0.0).is_err());
        assert!(OmegaPoint::alpha_p(AlphaSpec::infinite(), 1.5).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"kind":"alpha_p","alpha_prefix":[2,5,9],"tail":"infinite","p":0.75}"#;
        let omega = OmegaPoint::from_json(text).unwrap();
        assert_eq!(omega, OmegaPoint::alpha_p(finite(&[2, 5, 9]), 0.75).unwrap());
        assert_eq!(omega.to_json().unwrap(), text);
        assert_eq!(OmegaPoint::from_json(r#"{"kind":"star"}"#).unwrap(), OmegaPoint::Star);
        assert_eq!(OmegaPoint::Star.to_json().unwrap(), r#"{"kind":"star"}"#);
        let sq = OmegaPoint::from_json(r#"{"kind":"alpha_p","alpha_prefix":[],"tail":"squares","p":1.0}"#)
            .unwrap();
        assert_eq!(sq, OmegaPoint::alpha_p(AlphaSpec::squares(), 1.0).unwrap());
        assert!(OmegaPoint::from_json(r#"{"kind":"alpha_p","alpha_prefix":[],"tail":"cubes","p":1}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(finite(&[2, 5]).to_string(), "(2, 5, ∞, …)");
        assert_eq!(AlphaSpec::squares().to_string(), "(k², …)");
    }
}
