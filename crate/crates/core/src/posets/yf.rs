use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use num::{BigUint, One};

use crate::error::{Error, Result};

/// A word over `{1, 2}`, graded by its digit sum. The empty word is the
/// root at level 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FibWord {
    digits: Vec<u8>,
}

impl FibWord {
    pub fn new(digits: Vec<u8>) -> Result<Self> {
        if let Some(d) = digits.iter().find(|&&d| d != 1 && d != 2) {
            return Err(Error::Parse(format!("digit {d} is not 1 or 2")));
        }
        Ok(FibWord { digits })
    }

    pub fn root() -> Self {
        FibWord { digits: Vec::new() }
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn weight(&self) -> usize {
        self.digits.iter().map(|&d| d as usize).sum()
    }
}

impl fmt::Display for FibWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for FibWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .trim()
            .chars()
            .map(|c| match c {
                '1' => Ok(1),
                '2' => Ok(2),
                other => Err(Error::Parse(format!("unexpected character {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        if digits.is_empty() {
            return Err(Error::Parse("empty word".into()));
        }
        Ok(FibWord { digits })
    }
}

/// Words are written with their first letter on the left, so the block of
/// 2's the rule acts on is the leading one: a 1 goes into any of the `m+1`
/// slots around the leading `2^m`, and the first 1 (the one right after that
/// block) may become a 2.
pub fn yf_successors(w: &FibWord) -> Vec<FibWord> {
    let m = w.digits.iter().take_while(|&&d| d == 2).count();
    let mut out: Vec<FibWord> = (0..=m)
        .map(|slot| {
            let mut digits = w.digits.clone();
            digits.insert(slot, 1);
            FibWord { digits }
        })
        .collect();
    if m < w.digits.len() {
        let mut digits = w.digits.clone();
        digits[m] = 2;
        out.push(FibWord { digits });
    }
    out
}

pub fn yf_predecessors(w: &FibWord) -> Vec<FibWord> {
    let mut candidates: Vec<FibWord> = (0..w.digits.len())
        .map(|i| {
            let mut digits = w.digits.clone();
            if digits[i] == 1 {
                digits.remove(i);
            } else {
                digits[i] = 1;
            }
            FibWord { digits }
        })
        .filter(|u| yf_successors(u).contains(w))
        .collect();
    candidates.sort();
    candidates.dedup();
    candidates
}

/// All words of weight `n`, lexicographically.
pub fn yf_level(n: usize) -> Vec<FibWord> {
    fn fill(rest: usize, prefix: &mut Vec<u8>, out: &mut Vec<FibWord>) {
        if rest == 0 {
            out.push(FibWord { digits: prefix.clone() });
            return;
        }
        for d in [1u8, 2] {
            if d as usize <= rest {
                prefix.push(d);
                fill(rest - d as usize, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    fill(n, &mut Vec::new(), &mut out);
    out
}

/// Number of paths from the root to `w`.
pub fn yf_dimension(w: &FibWord) -> BigUint {
    fn count(w: &FibWord, memo: &mut HashMap<FibWord, BigUint>) -> BigUint {
        if w.digits.is_empty() {
            return BigUint::one();
        }
        if let Some(d) = memo.get(w) {
            return d.clone();
        }
        let d = if w.digits == [1] {
            BigUint::one()
        } else {
            yf_predecessors(w).iter().map(|u| count(u, memo)).sum()
        };
        memo.insert(w.clone(), d.clone());
        d
    }
    count(w, &mut HashMap::new())
}

/// Adjacency dump `w -> w1 w2 …` for levels `1..=max_level`.
pub fn yf_adjacency_export(max_level: usize) -> String {
    let mut out = String::new();
    for n in 1..=max_level {
        for w in yf_level(n) {
            let succ: Vec<String> = yf_successors(&w).iter().map(|s| s.to_string()).collect();
            writeln!(out, "{w} -> {}", succ.join(" ")).expect("string write");
        }
    }
    out
}
