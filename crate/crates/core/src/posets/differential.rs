use std::collections::BTreeSet;

use serde::Serialize;

use super::yf::{yf_level, yf_predecessors, yf_successors, FibWord};
use crate::error::{Error, Result};
use crate::graph::{level_words, predecessors, successors};
use crate::perm::RecordWord;

/// Largest level the differential check accepts.
pub const MAX_DIFFERENTIAL_LEVEL: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GradedFamily {
    YoungFibonacci,
    Records,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// `up ≠ down + 1` at `vertex`.
    Degree { vertex: String, up: usize, down: usize },
    /// Distinct `a`, `b` on one level with unequal numbers of common up- and
    /// down-neighbours.
    Common { a: String, b: String, common_up: usize, common_down: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferentialReport {
    pub family: GradedFamily,
    pub max_level: usize,
    pub vertices_checked: usize,
    pub violations: Vec<Violation>,
}

impl DifferentialReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Both graphs are rooted at the empty word on level 0, whose only
/// successor is the word `1`.
struct Level {
    vertices: Vec<String>,
    up: Vec<BTreeSet<String>>,
    down: Vec<BTreeSet<String>>,
}

fn level(family: GradedFamily, n: usize) -> Level {
    let (vertices, up, down): (Vec<String>, Vec<BTreeSet<String>>, Vec<BTreeSet<String>>) = match family {
        GradedFamily::YoungFibonacci => {
            let words = if n == 0 { vec![FibWord::root()] } else { yf_level(n) };
            let names = words.iter().map(|w| w.to_string()).collect();
            let up = words.iter().map(|w| yf_successors(w).iter().map(|s| s.to_string()).collect()).collect();
            let down = words
                .iter()
                .map(|w| match n {
                    0 => BTreeSet::new(),
                    1 => BTreeSet::from([String::new()]),
                    _ => yf_predecessors(w).iter().map(|s| s.to_string()).collect(),
                })
                .collect();
            (names, up, down)
        }
        GradedFamily::Records => {
            let words: Vec<RecordWord> = if n == 0 { Vec::new() } else { level_words(n).collect() };
            if n == 0 {
                (vec![String::new()], vec![BTreeSet::from(["1".to_string()])], vec![BTreeSet::new()])
            } else {
                let names = words.iter().map(|w| w.to_string()).collect();
                let up = words.iter().map(|w| successors(w).iter().map(|s| s.to_string()).collect()).collect();
                let down = words
                    .iter()
                    .map(|w| {
                        if n == 1 {
                            BTreeSet::from([String::new()])
                        } else {
                            predecessors(w).iter().map(|s| s.to_string()).collect()
                        }
                    })
                    .collect();
                (names, up, down)
            }
        }
    };
    Level { vertices, up, down }
}

/// Checks `up = down + 1` at every vertex of levels `0..=max_level` and the
/// common-neighbour identity for every pair on each of those levels.
pub fn differential_poset_check(family: GradedFamily, max_level: usize) -> Result<DifferentialReport> {
    if max_level > MAX_DIFFERENTIAL_LEVEL {
        return Err(Error::Argument(format!("max_level {max_level} above {MAX_DIFFERENTIAL_LEVEL}")));
    }
    let mut violations = Vec::new();
    let mut vertices_checked = 0;
    for n in 0..=max_level {
        let l = level(family, n);
        vertices_checked += l.vertices.len();
        for (i, v) in l.vertices.iter().enumerate() {
            if l.up[i].len() != l.down[i].len() + 1 {
                violations.push(Violation::Degree { vertex: v.clone(), up: l.up[i].len(), down: l.down[i].len() });
            }
        }
        for i in 0..l.vertices.len() {
            for j in i + 1..l.vertices.len() {
                let common_up = l.up[i].intersection(&l.up[j]).count();
                let common_down = l.down[i].intersection(&l.down[j]).count();
                if common_up != common_down {
                    violations.push(Violation::Common {
                        a: l.vertices[i].clone(),
                        b: l.vertices[j].clone(),
                        common_up,
                        common_down,
                    });
                }
            }
        }
    }
    Ok(DifferentialReport { family, max_level, vertices_checked, violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn young_fibonacci_is_differential() {
        let r = differential_poset_check(GradedFamily::YoungFibonacci, 8).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.vertices_checked, 1 + [1, 2, 3, 5, 8, 13, 21, 34].iter().sum::<usize>());
    }

    #[test]
    fn records_graph_is_not() {
        let r = differential_poset_check(GradedFamily::Records, 5).unwrap();
        assert!(r.violations.contains(&Violation::Degree { vertex: "10".into(), up: 3, down: 1 }));
        let r1 = differential_poset_check(GradedFamily::Records, 1).unwrap();
        assert!(r1.passed());
    }

    #[test]
    fn level_bound() {
        assert!(differential_poset_check(GradedFamily::Records, 17).is_err());
    }
}
