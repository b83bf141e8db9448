//! The end-to-end check suite behind `rdperm verify`. Every randomized check
//! runs from a fixed seed and the rendered report contains no timings, so two
//! runs print the same bytes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num::BigUint;

use crate::error::Result;
use crate::experiments::{
    boundary_convergence, log_grid, lln_position_of_max, nonrecord_positions, record_growth, ExperimentConfig,
    ExperimentKind, ExperimentReport,
};
use crate::graph::{check_consecutive, dimension, level_words};
use crate::measures::{
    conditional_position_distribution, exact_marginal, position_of_one_distribution, sample_projection,
    AlphaSpec, DesignedPath, FiniteDistribution, Growth, OmegaPoint, OrderPrefix, ProjectionMode,
};
use crate::oracle::{
    all_permutations, enumerate_record_fiber, is_record_dependent, oracle_projection,
    position_distribution_in_fiber, random_record_dependent_measure, EnumerationBudget,
};
use crate::par::Execution;
use crate::perm::{phi_inverse, phi_path, record_successor_multiset, Permutation, RecordWord};
use crate::posets::{
    causal_order_window, differential_poset_check, is_natural_extension, order_invariance_check, yf_level,
    yf_successors, CausalSetSpec, FibWord, GradedFamily, Violation,
};
use crate::rng::{seeded, stream};

/// Seed of the boundary-convergence Monte Carlo runs.
pub const CONVERGENCE_SEED: u64 = 424_242;
/// Seed of the law-of-large-numbers replicates.
pub const LLN_SEED: u64 = 1;
/// Seed of the random measures and the sampler comparison.
pub const ORACLE_SEED: u64 = 20_240_607;

/// Depths for the path with `⌈√n⌉` leading ones, whose limit is the apex.
pub const APEX_PATH_DEPTHS: [usize; 4] = [100, 400, 1600, 6400];
/// Depths for the path with zeros frozen at 3 and 6.
pub const FROZEN_PATH_DEPTHS: [usize; 4] = [10, 50, 200, 500];
/// Draws per depth for the apex path.
pub const CONVERGENCE_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

impl CriterionReport {
    fn new(id: u32, title: &'static str) -> Self {
        CriterionReport { id, title, passed: true, details: Vec::new() }
    }

    fn check(&mut self, ok: bool, line: String) {
        self.passed &= ok;
        self.details.push(format!("[{}] {line}", if ok { "ok" } else { "FAILED" }));
    }

    fn note(&mut self, line: String) {
        self.details.push(format!("      {line}"));
    }

    pub fn status_line(&self) -> String {
        format!("criterion {}: {} {}", self.id, if self.passed { "PASS" } else { "FAIL" }, self.title)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub criteria: Vec<CriterionReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.criteria {
            writeln!(out, "{}", c.status_line()).expect("string write");
            for d in &c.details {
                writeln!(out, "  {d}").expect("string write");
            }
        }
        let failed = self.criteria.iter().filter(|c| !c.passed).count();
        writeln!(out, "{} of {} criteria passed", self.criteria.len() - failed, self.criteria.len())
            .expect("string write");
        out
    }
}

pub fn run_all(exec: Execution) -> Result<VerifyReport> {
    Ok(VerifyReport {
        criteria: vec![
            exact_combinatorics()?,
            projection_closure()?,
            position_distributions()?,
            dual_algorithm()?,
            boundary(exec)?,
            lln(exec)?,
            records(exec)?,
            structures()?,
        ],
    })
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Φ round trips, `|Γ_n| = n!`, dimension against fiber counts, `n ≤ 8`.
pub fn exact_combinatorics() -> Result<CriterionReport> {
    let mut r = CriterionReport::new(1, "exact combinatorics of Φ_n and dim(ρ), n ≤ 8");
    let budget = EnumerationBudget::default();
    for n in 1..=8 {
        let mut paths: BTreeSet<Vec<RecordWord>> = BTreeSet::new();
        let mut round_trips = true;
        for sigma in all_permutations(n) {
            let path = phi_path(&sigma);
            round_trips &= check_consecutive(&path).is_ok() && path[0].len() == 1;
            round_trips &= phi_inverse(&path)? == sigma;
            paths.insert(path);
        }
        r.check(
            round_trips && paths.len() as u64 == factorial(n),
            format!("n = {n}: Φ round trips, {} distinct paths, n! = {}", paths.len(), factorial(n)),
        );
        let mut agree = true;
        let mut total = BigUint::from(0u32);
        for rho in level_words(n) {
            let d = dimension(&rho);
            agree &= BigUint::from(enumerate_record_fiber(&rho, budget)?.len()) == d;
            total += d;
        }
        r.check(
            agree && total == BigUint::from(factorial(n)),
            format!("n = {n}: dim(ρ) equals every fiber count, Σ dim = {total}"),
        );
    }
    Ok(r)
}

/// Projections of random record-dependent measures stay record-dependent;
/// the deletion-insertion list for `B = {1, 3, 5}`, `n = 7`.
pub fn projection_closure() -> Result<CriterionReport> {
    let mut r = CriterionReport::new(2, "record dependence survives projection");
    let budget = EnumerationBudget::default();
    let mut rng = seeded(ORACLE_SEED);
    let mut closed = 0;
    let mut agree = 0;
    for i in 0..100 {
        let n = 2 + i % 6;
        let m = random_record_dependent_measure(n, &mut rng, budget)?.checked()?;
        let projected = oracle_projection(&m, n - 1, budget)?;
        if is_record_dependent(&m, budget)? && is_record_dependent(&projected, budget)? {
            closed += 1;
        }
        if m.pushforward(n - 1)? == projected {
            agree += 1;
        }
    }
    r.check(closed == 100, format!("{closed}/100 random measures on S_2..S_7 project to record-dependent measures"));
    r.check(agree == 100, format!("{agree}/100 library pushforwards equal the oracle's"));
    let b = RecordWord::from_set(6, &[1, 3, 5])?;
    let got: Vec<String> = record_successor_multiset(&b).iter().map(set_notation).collect();
    let listed = ["{1}", "{1,2}", "{1,3}", "{1,3}", "{1,3,4}", "{1,3,5}", "{1,3,5,6}", "{1,3,5,7}"];
    r.check(
        got == listed,
        format!("B = {{1,3,5}}, n = 7 gives {} sets: {}", got.len(), got.join(" ")),
    );
    if got != listed {
        r.note(format!("listed for comparison ({} sets): {}", listed.len(), listed.join(" ")));
    }
    Ok(r)
}

fn set_notation(rho: &RecordWord) -> String {
    let ones: Vec<String> = rho.ones().iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", ones.join(","))
}

/// Closed-form position laws against fiber counts for every `ρ`, `n ≤ 8`,
/// and every realizable prefix of length at most 3.
pub fn position_distributions() -> Result<CriterionReport> {
    let mut r = CriterionReport::new(3, "position distributions equal fiber counts, n ≤ 8");
    let budget = EnumerationBudget::default();
    for n in 1..=8 {
        let mut compared = 0usize;
        let mut mismatches = Vec::new();
        for rho in level_words(n) {
            let fiber = enumerate_record_fiber(&rho, budget)?;
            if position_of_one_distribution(&rho) != position_distribution_in_fiber(&fiber, &[], 1)? {
                mismatches.push(format!("{rho}: σ^-1(1)"));
            }
            let mut prefixes: BTreeSet<Vec<u128>> = BTreeSet::new();
            for sigma in &fiber {
                let inverse = sigma.inverse_word();
                for len in 0..=3.min(n - 1) {
                    prefixes.insert(inverse[..len].iter().map(|&p| p as u128).collect());
                }
            }
            for prefix in prefixes {
                let t = prefix.len() + 1;
                let closed = conditional_position_distribution(&rho, &OrderPrefix::new(prefix.clone())?, t)?;
                compared += 1;
                if closed != position_distribution_in_fiber(&fiber, &prefix, t)? {
                    mismatches.push(format!("{rho}: prefix {prefix:?}"));
                }
            }
        }
        r.check(mismatches.is_empty(), format!("n = {n}: {compared} conditional laws compared exactly"));
        for m in mismatches.iter().take(5) {
            r.note(format!("mismatch {m}"));
        }
    }
    Ok(r)
}

/// `P^ρ` on `S_N`, `ρ` with zeros exactly at `α_k + 1`, pushed to `S_n`:
/// an independent description of the marginal of `P^(α,1)`.
fn elementary_oracle(alpha: &[u128], n: usize) -> Result<FiniteDistribution> {
    let big = n.max(alpha.last().map_or(0, |&a| a as usize + 1));
    let zeros: BTreeSet<usize> = alpha.iter().map(|&a| a as usize + 1).collect();
    let rho = RecordWord::new((1..=big).map(|i| !zeros.contains(&i)).collect())?;
    let fiber = enumerate_record_fiber(&rho, EnumerationBudget::default())?;
    let mass = num::BigRational::new(1.into(), fiber.len().into());
    let law = FiniteDistribution::Exact(fiber.into_iter().map(|s| (s, mass.clone())).collect());
    if big == n {
        Ok(law)
    } else {
        oracle_projection(&law, n, EnumerationBudget::default())
    }
}

/// Exact dual-algorithm marginals: record dependence, coherence, agreement
/// with the fiber oracle and with the sampler.
pub fn dual_algorithm() -> Result<CriterionReport> {
    let mut r = CriterionReport::new(4, "dual algorithm marginals for (2,∞,…) and (2,5,∞,…)");
    let budget = EnumerationBudget::default();
    let samples = 100_000usize;
    for (idx, prefix) in [vec![2u128], vec![2, 5]].into_iter().enumerate() {
        let omega = OmegaPoint::alpha_p(AlphaSpec::finite(prefix.clone())?, 1.0)?;
        let mut previous: Option<FiniteDistribution> = None;
        for n in 1..=5 {
            let exact = exact_marginal(&omega, n, budget)?.checked()?;
            let rd = is_record_dependent(&exact, budget)?;
            let coherent = previous.as_ref().is_none_or(|p| exact.pushforward(n - 1).ok().as_ref() == Some(p));
            let oracle = elementary_oracle(&prefix, n)? == exact;
            let mut rng = stream(ORACLE_SEED, (10 * idx + n) as u64);
            let mut counts: BTreeMap<Permutation, u64> = BTreeMap::new();
            for _ in 0..samples {
                *counts.entry(sample_projection(&omega, n, &mut rng)).or_insert(0) += 1;
            }
            let tv = FiniteDistribution::from_counts(counts, samples as u64).total_variation(&exact);
            let bound = 3.0 * (factorial(n) as f64 / samples as f64).sqrt();
            r.check(
                rd && coherent && oracle && tv <= bound,
                format!(
                    "{} n = {n}: RD {rd}, coherent {coherent}, equals fiber oracle {oracle}, sampler TV {tv:.5} ≤ {bound:.5}",
                    omega.label()
                ),
            );
            previous = Some(exact);
        }
    }
    Ok(r)
}

/// Total variation at `k = 3` along the two designed paths.
pub fn boundary(exec: Execution) -> Result<CriterionReport> {
    let mut r = CriterionReport::new(5, "boundary convergence along designed paths, k = 3");
    let apex = DesignedPath::new(Vec::new(), Growth::Sqrt)?;
    let mode = ProjectionMode::MonteCarlo { samples: CONVERGENCE_SAMPLES, seed: CONVERGENCE_SEED };
    let report = boundary_convergence(&apex, 3, &APEX_PATH_DEPTHS, mode, exec)?;
    for p in &report.points {
        r.note(format!("⌈√n⌉ ones, depth {}: L = {:.5}, TV to uniform {:.5}", p.depth, p.l, p.tv));
    }
    let last = report.points.last().expect("non-empty schedule");
    r.check(last.tv < 0.05, format!("TV to uniform at depth {} is {:.5} < 0.05", last.depth, last.tv));
    let frozen = DesignedPath::new(vec![3, 6], Growth::All)?;
    let report = boundary_convergence(&frozen, 3, &FROZEN_PATH_DEPTHS, ProjectionMode::Exact { budget: 1_000 }, exec)?;
    for p in &report.points {
        r.note(format!("zeros at 3 and 6, depth {}: L = {:.5}, TV to {} {:.5}", p.depth, p.l, report.target.label(), p.tv));
    }
    let last = report.points.last().expect("non-empty schedule");
    r.check(last.tv < 0.02, format!("TV to the limit at depth {} is {:.5} < 0.02", last.depth, last.tv));
    Ok(r)
}

fn describe(r: &mut CriterionReport, report: &ExperimentReport) {
    for c in &report.checks {
        r.check(c.passed, format!("{}: {}, observed {:.3}, required {}", report.omega.label(), c.name, c.observed, c.required));
    }
}

fn squares(p: f64) -> Result<OmegaPoint> {
    OmegaPoint::alpha_p(AlphaSpec::squares(), p)
}

/// Position of the maximum and non-record positions, 200 replicates.
pub fn lln(exec: Execution) -> Result<CriterionReport> {
    let mut r = CriterionReport::new(6, "laws of large numbers, 200 replicates up to n = 10^4");
    let grid = log_grid(10, 10_000, 100);
    let config = ExperimentConfig::new(ExperimentKind::LlnPositionOfMax, squares(1.0)?, grid.clone(), 200, LLN_SEED);
    describe(&mut r, &lln_position_of_max(&config, exec)?);
    let config = ExperimentConfig::new(ExperimentKind::LlnPositionOfMax, OmegaPoint::Star, grid, 200, LLN_SEED);
    describe(&mut r, &lln_position_of_max(&config, exec)?);
    let alpha = AlphaSpec::finite(vec![2, 5, 10, 17, 26])?;
    let mut config =
        ExperimentConfig::new(ExperimentKind::NonrecordPositions, OmegaPoint::alpha_p(alpha, 1.0)?, vec![100, 1_000, 10_000], 200, LLN_SEED);
    config.thresholds.fraction = 1.0;
    config.thresholds.nonrecord_k = 5;
    describe(&mut r, &nonrecord_positions(&config, exec)?);
    Ok(r)
}

/// Normalized record counts at `n = 10^4`, 200 replicates.
pub fn records(exec: Execution) -> Result<CriterionReport> {
    let mut r = CriterionReport::new(7, "record growth at n = 10^4, 200 replicates");
    let sizes = vec![100, 1_000, 10_000];
    let mut config = ExperimentConfig::new(ExperimentKind::RecordGrowth, squares(0.5)?, sizes.clone(), 200, LLN_SEED);
    config.thresholds.record_band = [0.9, 1.1];
    config.thresholds.fraction = 0.9;
    describe(&mut r, &record_growth(&config, exec)?);
    let mut config = ExperimentConfig::new(ExperimentKind::RecordGrowth, OmegaPoint::Star, sizes, 200, LLN_SEED);
    config.thresholds.record_band = [0.7, 1.3];
    config.thresholds.fraction = 0.9;
    describe(&mut r, &record_growth(&config, exec)?);
    Ok(r)
}

/// Young-Fibonacci levels and successors, differential identities, the
/// causal set attached to `α`.
pub fn structures() -> Result<CriterionReport> {
    let mut r = CriterionReport::new(8, "Young-Fibonacci graph and the causal set");
    let counts: Vec<usize> = (1..=20).map(|n| yf_level(n).len()).collect();
    let fibonacci = counts.windows(3).all(|w| w[2] == w[0] + w[1]) && counts[0] == 1 && counts[1] == 2;
    r.check(fibonacci, format!("level sizes 1..20: {counts:?}"));
    let four: BTreeSet<String> = yf_level(4).iter().map(|w| w.to_string()).collect();
    let listed: BTreeSet<String> = ["1111", "211", "121", "112", "22"].iter().map(|s| s.to_string()).collect();
    r.check(four == listed, format!("level 4: {}", four.iter().cloned().collect::<Vec<_>>().join(" ")));
    let succ: Vec<String> = yf_successors(&"2212".parse::<FibWord>()?).iter().map(|w| w.to_string()).collect();
    r.check(succ == ["12212", "21212", "22112", "2222"], format!("successors of 2212: {}", succ.join(" ")));

    let yf = differential_poset_check(GradedFamily::YoungFibonacci, 8)?;
    r.check(
        yf.passed(),
        format!("Young-Fibonacci up to level 8: {} vertices, {} violations", yf.vertices_checked, yf.violations.len()),
    );
    let rec = differential_poset_check(GradedFamily::Records, 5)?;
    let witness = rec.violations.iter().find_map(|v| match v {
        Violation::Degree { vertex, up, down } => Some(format!("vertex {vertex} has up-degree {up}, down-degree {down}")),
        Violation::Common { .. } => None,
    });
    r.check(
        witness.is_some(),
        format!("record graph up to level 5: {} violations, e.g. {}", rec.violations.len(), witness.unwrap_or_default()),
    );

    let budget = EnumerationBudget::default();
    for (prefix, n) in [(vec![2u128], 4usize), (vec![2, 4], 6)] {
        let spec = CausalSetSpec::new(AlphaSpec::finite(prefix.clone())?);
        r.check(
            order_invariance_check(&spec, n, budget)?,
            format!("α = {}: uniform extensions of [{n}] are order-invariant", spec.alpha()),
        );
    }
    let specs = [
        AlphaSpec::infinite(),
        AlphaSpec::finite(vec![1])?,
        AlphaSpec::finite(vec![2])?,
        AlphaSpec::finite(vec![2, 3])?,
        AlphaSpec::finite(vec![2, 4])?,
        AlphaSpec::finite(vec![3, 4, 6])?,
        AlphaSpec::squares(),
    ];
    let mut duality = true;
    for alpha in &specs {
        let spec = CausalSetSpec::new(alpha.clone());
        for n in 1..=7 {
            let window = causal_order_window(&spec, n)?;
            let beta = spec.beta_window(n);
            for sigma in all_permutations(n) {
                duality &= is_natural_extension(&window, &sigma)? == (crate::perm::records(&sigma) == beta);
            }
        }
    }
    r.check(duality, format!("natural extensions are exactly the β-record fibers, {} sequences, n ≤ 7", specs.len()));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_oracle_small_cases() {
        let one = elementary_oracle(&[1], 2).unwrap();
        assert_eq!(one, FiniteDistribution::point_mass("2 1".parse().unwrap()));
        let id = elementary_oracle(&[], 3).unwrap();
        assert_eq!(id, FiniteDistribution::point_mass(Permutation::identity(3)));
    }

    #[test]
    fn report_rendering() {
        let mut c = CriterionReport::new(9, "demo");
        c.check(true, "fine".into());
        c.check(false, "broken".into());
        let text = VerifyReport { criteria: vec![c] }.render();
        assert_eq!(text, "criterion 9: FAIL demo\n  [ok] fine\n  [FAILED] broken\n0 of 1 criteria passed\n");
    }

    #[test]
    fn structural_criterion_passes() {
        assert!(structures().unwrap().passed);
    }
}
