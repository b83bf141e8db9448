//! Monte Carlo harness for the limit laws of boundary measures.
//!
//! Each replicate samples one growing order of `ℕ` and reads every size in
//! the grid off that single order, so the projections within a replicate are
//! coherent. Replicate `i` uses stream `i` of the root seed; rows come out
//! ordered by replicate, then size, whatever the execution mode.

use std::io::Write;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fenwick::Fenwick;
use crate::measures::{
    elementary_projection_with, exact_marginal, l_statistic_f64, mixed_marginal, sample_order_keys, AlphaSpec,
    DesignedPath, DualState, FiniteDistribution, OmegaPoint, OrderKey, ProjectionMode,
};
use crate::oracle::EnumerationBudget;
use crate::par::{map_indexed, Execution};
use crate::rng::stream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    LlnPositionOfMax,
    NonrecordPositions,
    RecordGrowth,
    DualFillsPositions,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::LlnPositionOfMax => "lln_position_of_max",
            ExperimentKind::NonrecordPositions => "nonrecord_positions",
            ExperimentKind::RecordGrowth => "record_growth",
            ExperimentKind::DualFillsPositions => "dual_fills_positions",
        }
    }
}

/// Pass/fail thresholds. Every field is written out in config files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Thresholds {
    /// Share of replicates that must satisfy the per-replicate condition.
    pub fraction: f64,
    /// `σ_n^{-1}(n)/n` at the largest size must reach this (`(α, p)` points).
    pub position_of_max_at_least: f64,
    /// The running minimum of `σ_n^{-1}(n)/n` must fall to this (apex).
    pub running_min_at_most: f64,
    /// Accepted band for the normalized record count at the largest size.
    pub record_band: [f64; 2],
    /// Number of leading non-record positions tracked.
    pub nonrecord_k: usize,
    /// Probes `k` for the fill time of `{1, …, k}`.
    pub fill_probes: Vec<u64>,
    /// Dual-algorithm steps allowed per replicate.
    pub fill_horizon: u64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            fraction: 0.95,
            position_of_max_at_least: 0.9,
            running_min_at_most: 0.05,
            record_band: [0.9, 1.1],
            nonrecord_k: 5,
            fill_probes: vec![1, 10, 100],
            fill_horizon: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub omega: OmegaPoint,
    pub sizes: Vec<usize>,
    pub replicates: usize,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub thresholds: Thresholds,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    experiment: ExperimentKind,
    omega: Value,
    sizes: Vec<usize>,
    replicates: usize,
    seed: u64,
    #[serde(default)]
    output: Option<PathBuf>,
    #[serde(default)]
    thresholds: Thresholds,
}

impl ExperimentConfig {
    pub fn new(experiment: ExperimentKind, omega: OmegaPoint, sizes: Vec<usize>, replicates: usize, seed: u64) -> Self {
        ExperimentConfig { experiment, omega, sizes, replicates, seed, output: None, thresholds: Thresholds::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.replicates == 0 {
            return Err(Error::Argument("replicates must be at least 1".into()));
        }
        if self.sizes.is_empty() || self.sizes[0] == 0 || self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Argument("sizes must be positive and strictly increasing".into()));
        }
        if !(0.0..=1.0).contains(&self.thresholds.fraction) {
            return Err(Error::Argument("fraction outside [0, 1]".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawConfig = serde_json::from_str(text)?;
        let config = ExperimentConfig {
            experiment: raw.experiment,
            omega: OmegaPoint::from_value(raw.omega)?,
            sizes: raw.sizes,
            replicates: raw.replicates,
            seed: raw.seed,
            output: raw.output,
            thresholds: raw.thresholds,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> Result<String> {
        let raw = RawConfig {
            experiment: self.experiment,
            omega: self.omega.to_value()?,
            sizes: self.sizes.clone(),
            replicates: self.replicates,
            seed: self.seed,
            output: self.output.clone(),
            thresholds: self.thresholds.clone(),
        };
        Ok(serde_json::to_string_pretty(&raw)?)
    }
}

/// About `count` sizes spread geometrically over `[lo, hi]`, both included.
pub fn log_grid(lo: usize, hi: usize, count: usize) -> Vec<usize> {
    let ratio = (hi as f64 / lo as f64).ln();
    let mut out: Vec<usize> = (0..count)
        .map(|i| (lo as f64 * (ratio * i as f64 / (count - 1).max(1) as f64).exp()).round() as usize)
        .collect();
    out.push(hi);
    out.dedup();
    out.retain(|&n| n >= lo && n <= hi);
    out.sort_unstable();
    out.dedup();
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryStat {
    pub n: usize,
    pub replicate: usize,
    pub statistic: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub observed: f64,
    pub required: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub experiment: ExperimentKind,
    pub omega: OmegaPoint,
    pub seed: u64,
    pub rows: Vec<TrajectoryStat>,
    pub checks: Vec<Check>,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// CSV with header `experiment,omega,replicate,n,statistic,value,seed`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["experiment", "omega", "replicate", "n", "statistic", "value", "seed"])?;
        let omega = self.omega.label();
        let seed = self.seed.to_string();
        for row in &self.rows {
            w.write_record([
                self.experiment.name(),
                omega.as_str(),
                &row.replicate.to_string(),
                &row.n.to_string(),
                &row.statistic,
                &format!("{}", row.value),
                &seed,
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn run_experiment(config: &ExperimentConfig, exec: Execution) -> Result<ExperimentReport> {
    match config.experiment {
        ExperimentKind::LlnPositionOfMax => lln_position_of_max(config, exec),
        ExperimentKind::NonrecordPositions => nonrecord_positions(config, exec),
        ExperimentKind::RecordGrowth => record_growth(config, exec),
        ExperimentKind::DualFillsPositions => dual_fills_positions(config, exec),
    }
}

/// Incremental view of the orders `σ_1, σ_2, …` read off one key sequence.
struct Walker {
    ranks: Vec<usize>,
    tree: Fenwick,
    /// Record letters with their key ranks, by increasing position.
    stack: Vec<(usize, usize)>,
    n: usize,
    last_position: usize,
}

impl Walker {
    fn new(keys: &[OrderKey]) -> Self {
        let mut order: Vec<usize> = (0..keys.len()).collect();
        order.sort_by_key(|&i| (keys[i], i));
        let mut ranks = vec![0; keys.len()];
        for (r, &i) in order.iter().enumerate() {
            ranks[i] = r + 1;
        }
        Walker { tree: Fenwick::new(keys.len()), ranks, stack: Vec::new(), n: 0, last_position: 0 }
    }

    /// Inserts letter `n + 1`, the new maximum: it becomes a record and
    /// every record after it stops being one.
    fn advance(&mut self) {
        let rank = self.ranks[self.n];
        self.n += 1;
        self.last_position = 1 + self.tree.prefix(rank) as usize;
        self.tree.add(rank, 1);
        while self.stack.last().is_some_and(|&(_, r)| r > rank) {
            self.stack.pop();
        }
        self.stack.push((self.n, rank));
    }

    fn advance_to(&mut self, n: usize) {
        while self.n < n {
            self.advance();
        }
    }

    fn record_count(&self) -> usize {
        self.stack.len()
    }

    /// Positions of the first `k` non-records of `σ_n`.
    fn nonrecord_positions(&self, k: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(k);
        let mut next = 1;
        for &(_, rank) in &self.stack {
            let q = self.tree.prefix(rank) as usize;
            while next < q && out.len() < k {
                out.push(next);
                next += 1;
            }
            if out.len() == k {
                return out;
            }
            next = q + 1;
        }
        while next <= self.n && out.len() < k {
            out.push(next);
            next += 1;
        }
        out
    }
}

fn replicate_keys(config: &ExperimentConfig, replicate: usize) -> Vec<OrderKey> {
    let mut rng = stream(config.seed, replicate as u64);
    sample_order_keys(&config.omega, *config.sizes.last().expect("validated"), &mut rng)
}

fn fraction(hits: usize, total: usize) -> f64 {
    hits as f64 / total as f64
}

/// `σ_n^{-1}(n)/n` along each trajectory, with its running minimum over the
/// size grid as the proxy for the lower limit.
pub fn lln_position_of_max(config: &ExperimentConfig, exec: Execution) -> Result<ExperimentReport> {
    config.validate()?;
    let per_replicate = map_indexed(exec, config.replicates, |rep| {
        let mut walker = Walker::new(&replicate_keys(config, rep));
        let mut running = f64::INFINITY;
        let mut rows = Vec::with_capacity(2 * config.sizes.len());
        for &n in &config.sizes {
            walker.advance_to(n);
            let stat = walker.last_position as f64 / n as f64;
            running = running.min(stat);
            rows.push(TrajectoryStat { n, replicate: rep, statistic: "position_of_max".into(), value: stat });
            rows.push(TrajectoryStat { n, replicate: rep, statistic: "running_min".into(), value: running });
        }
        (rows, walker.last_position as f64 / walker.n as f64, running)
    });
    let t = &config.thresholds;
    let total = per_replicate.len();
    let check = match config.omega {
        OmegaPoint::Star => {
            let hits = per_replicate.iter().filter(|r| r.2 <= t.running_min_at_most).count();
            Check {
                name: format!("running minimum ≤ {}", t.running_min_at_most),
                observed: fraction(hits, total),
                required: format!("≥ {}", t.fraction),
                passed: fraction(hits, total) >= t.fraction,
            }
        }
        OmegaPoint::AlphaP { .. } => {
            let hits = per_replicate.iter().filter(|r| r.1 >= t.position_of_max_at_least).count();
            Check {
                name: format!("final statistic ≥ {}", t.position_of_max_at_least),
                observed: fraction(hits, total),
                required: format!("≥ {}", t.fraction),
                passed: fraction(hits, total) >= t.fraction,
            }
        }
    };
    Ok(ExperimentReport {
        experiment: ExperimentKind::LlnPositionOfMax,
        omega: config.omega.clone(),
        seed: config.seed,
        rows: per_replicate.into_iter().flat_map(|r| r.0).collect(),
        checks: vec![check],
    })
}

/// Positions of the first `k` non-records at each size, compared at the
/// largest size with `α_k + 1`.
pub fn nonrecord_positions(config: &ExperimentConfig, exec: Execution) -> Result<ExperimentReport> {
    config.validate()?;
    let OmegaPoint::AlphaP { alpha, .. } = &config.omega else {
        return Err(Error::UnsupportedExperiment("non-record positions are not defined at the apex".into()));
    };
    let k = config.thresholds.nonrecord_k;
    let expected: Vec<Option<usize>> =
        (1..=k).map(|i| alpha.get(i).and_then(|a| usize::try_from(a + 1).ok())).collect();
    let per_replicate = map_indexed(exec, config.replicates, |rep| {
        let mut walker = Walker::new(&replicate_keys(config, rep));
        let mut rows = Vec::new();
        let mut last = Vec::new();
        for &n in &config.sizes {
            walker.advance_to(n);
            last = walker.nonrecord_positions(k);
            for (i, &q) in last.iter().enumerate() {
                rows.push(TrajectoryStat { n, replicate: rep, statistic: format!("nonrecord_{}", i + 1), value: q as f64 });
            }
        }
        (rows, last)
    });
    let total = per_replicate.len();
    let mut checks = Vec::new();
    for (i, want) in expected.iter().enumerate() {
        let hits = per_replicate.iter().filter(|r| r.1.get(i).copied() == *want).count();
        let label = want.map_or("absent".to_string(), |w| w.to_string());
        checks.push(Check {
            name: format!("non-record {} at {label}", i + 1),
            observed: fraction(hits, total),
            required: format!("≥ {}", config.thresholds.fraction),
            passed: fraction(hits, total) >= config.thresholds.fraction,
        });
    }
    Ok(ExperimentReport {
        experiment: ExperimentKind::NonrecordPositions,
        omega: config.omega.clone(),
        seed: config.seed,
        rows: per_replicate.into_iter().flat_map(|r| r.0).collect(),
        checks,
    })
}

/// `|R(σ_n)|/(np)` for `(α, p)` points and `|R(σ_n)|/ln n` at the apex.
pub fn record_growth(config: &ExperimentConfig, exec: Execution) -> Result<ExperimentReport> {
    config.validate()?;
    let scale = |n: usize| match &config.omega {
        OmegaPoint::Star => (n as f64).ln(),
        OmegaPoint::AlphaP { p, .. } => n as f64 * p,
    };
    if config.sizes[0] < 2 && config.omega == OmegaPoint::Star {
        return Err(Error::Argument("ln n vanishes at n = 1".into()));
    }
    let per_replicate = map_indexed(exec, config.replicates, |rep| {
        let mut walker = Walker::new(&replicate_keys(config, rep));
        let mut rows = Vec::new();
        let mut last = 0.0;
        for &n in &config.sizes {
            walker.advance_to(n);
            last = walker.record_count() as f64 / scale(n);
            rows.push(TrajectoryStat { n, replicate: rep, statistic: "normalized_records".into(), value: last });
        }
        (rows, last)
    });
    let [lo, hi] = config.thresholds.record_band;
    let hits = per_replicate.iter().filter(|r| r.1 >= lo && r.1 <= hi).count();
    let observed = fraction(hits, per_replicate.len());
    Ok(ExperimentReport {
        experiment: ExperimentKind::RecordGrowth,
        omega: config.omega.clone(),
        seed: config.seed,
        rows: per_replicate.into_iter().flat_map(|r| r.0).collect(),
        checks: vec![Check {
            name: format!("normalized records in [{lo}, {hi}]"),
            observed,
            required: format!("≥ {}", config.thresholds.fraction),
            passed: observed >= config.thresholds.fraction,
        }],
    })
}

/// Number of dual-algorithm steps until positions `1..=k` are all occupied,
/// for each probe `k`. The sizes grid is not used.
pub fn dual_fills_positions(config: &ExperimentConfig, exec: Execution) -> Result<ExperimentReport> {
    config.validate()?;
    let OmegaPoint::AlphaP { alpha, .. } = &config.omega else {
        return Err(Error::UnsupportedExperiment("the dual algorithm needs a sequence α".into()));
    };
    let mut probes = config.thresholds.fill_probes.clone();
    probes.sort_unstable();
    probes.dedup();
    let horizon = config.thresholds.fill_horizon;
    let per_replicate = map_indexed(exec, config.replicates, |rep| fill_times(alpha, &probes, horizon, config.seed, rep));
    let total = per_replicate.len();
    let mut rows = Vec::new();
    for (rep, times) in per_replicate.iter().enumerate() {
        for (&k, t) in probes.iter().zip(times) {
            if let Some(t) = t {
                rows.push(TrajectoryStat { n: k as usize, replicate: rep, statistic: "fill_time".into(), value: *t as f64 });
            }
        }
    }
    let checks = probes
        .iter()
        .enumerate()
        .map(|(i, k)| {
            let observed = fraction(per_replicate.iter().filter(|t| t[i].is_some()).count(), total);
            Check {
                name: format!("{{1..{k}}} filled within {horizon} steps"),
                observed,
                required: format!("≥ {}", config.thresholds.fraction),
                passed: observed >= config.thresholds.fraction,
            }
        })
        .collect();
    Ok(ExperimentReport {
        experiment: ExperimentKind::DualFillsPositions,
        omega: config.omega.clone(),
        seed: config.seed,
        rows,
        checks,
    })
}

fn fill_times(alpha: &AlphaSpec, probes: &[u64], horizon: u64, seed: u64, rep: usize) -> Vec<Option<u64>> {
    let mut rng = stream(seed, rep as u64);
    let mut dual = DualState::new(alpha);
    let mut out = vec![None; probes.len()];
    let mut pending = 0;
    for t in 1..=horizon {
        dual.step(&mut rng);
        let filled = dual.used().filled_prefix();
        while pending < probes.len() && filled >= probes[pending] as u128 {
            out[pending] = Some(t);
            pending += 1;
        }
        if pending == probes.len() {
            break;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergencePoint {
    pub depth: usize,
    pub l: f64,
    pub tv: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub target: OmegaPoint,
    pub k: usize,
    pub points: Vec<ConvergencePoint>,
}

impl ConvergenceReport {
    /// Whether the distances never rise by more than `slack`.
    pub fn non_increasing_within(&self, slack: f64) -> bool {
        self.points.windows(2).all(|w| w[1].tv <= w[0].tv + slack)
    }
}

/// Law of `π_k` under a boundary point, exact where possible.
pub fn limit_marginal(omega: &OmegaPoint, k: usize) -> Result<FiniteDistribution> {
    match omega {
        OmegaPoint::Star => Ok(FiniteDistribution::uniform(k)),
        OmegaPoint::AlphaP { p, .. } if *p == 1.0 => exact_marginal(omega, k, EnumerationBudget::default()),
        OmegaPoint::AlphaP { .. } => mixed_marginal(omega, k, EnumerationBudget::default()),
    }
}

/// Total-variation distance between the size-`k` projection of `P^{ρ_n}`
/// and that of the path's limit, along a depth schedule.
pub fn boundary_convergence(
    path: &DesignedPath,
    k: usize,
    depths: &[usize],
    mode: ProjectionMode,
    exec: Execution,
) -> Result<ConvergenceReport> {
    if depths.first().is_none_or(|&d| d < k) {
        return Err(Error::Argument(format!("every depth must be at least k = {k}")));
    }
    let target = path.limit();
    let limit = limit_marginal(&target, k)?;
    let mut points = Vec::with_capacity(depths.len());
    for &depth in depths {
        let rho = path.word(depth);
        let law = elementary_projection_with(&rho, k, mode, exec)?;
        points.push(ConvergencePoint { depth, l: l_statistic_f64(&rho), tv: law.total_variation(&limit) });
    }
    Ok(ConvergenceReport { target, k, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{keys_to_permutation, Growth};
    use crate::perm::records;
    use crate::rng::seeded;

    fn omega(prefix: &[u128], p: f64) -> OmegaPoint {
        OmegaPoint::alpha_p(AlphaSpec::finite(prefix.to_vec()).unwrap(), p).unwrap()
    }

    #[test]
    fn walker_matches_brute_force() {
        let mut rng = seeded(9);
        for om in [OmegaPoint::Star, omega(&[2, 5], 1.0), OmegaPoint::alpha_p(AlphaSpec::squares(), 0.5).unwrap()] {
            let keys = sample_order_keys(&om, 60, &mut rng);
            let mut walker = Walker::new(&keys);
            for n in 1..=60 {
                walker.advance_to(n);
                let sigma = keys_to_permutation(&keys[..n]);
                assert_eq!(walker.last_position, sigma.position_of(n as u32));
                let rho = records(&sigma);
                assert_eq!(walker.record_count(), rho.count_ones());
                let zeros = rho.zeros();
                assert_eq!(walker.nonrecord_positions(4), zeros[..zeros.len().min(4)].to_vec());
            }
        }
    }

    #[test]
    fn identity_statistics() {
        let id = omega(&[], 1.0);
        let config = ExperimentConfig::new(ExperimentKind::LlnPositionOfMax, id.clone(), vec![1, 5, 50], 3, 1);
        let r = lln_position_of_max(&config, Execution::Sequential).unwrap();
        assert!(r.rows.iter().all(|row| row.value == 1.0));
        assert!(r.passed());
        let config = ExperimentConfig::new(ExperimentKind::RecordGrowth, id.clone(), vec![1, 5, 50], 3, 1);
        let r = record_growth(&config, Execution::Sequential).unwrap();
        assert!(r.rows.iter().all(|row| row.value == 1.0));
        let config = ExperimentConfig::new(ExperimentKind::NonrecordPositions, id, vec![10, 100], 3, 1);
        assert!(nonrecord_positions(&config, Execution::Sequential).unwrap().rows.is_empty());
    }

    #[test]
    fn nonrecords_settle() {
        let mut config = ExperimentConfig::new(ExperimentKind::NonrecordPositions, omega(&[2, 5], 1.0), vec![10, 1000], 20, 4);
        config.thresholds.nonrecord_k = 2;
        config.thresholds.fraction = 1.0;
        let r = nonrecord_positions(&config, Execution::Sequential).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
        let star = ExperimentConfig::new(ExperimentKind::NonrecordPositions, OmegaPoint::Star, vec![10], 1, 4);
        assert!(matches!(nonrecord_positions(&star, Execution::Sequential), Err(Error::UnsupportedExperiment(_))));
    }

    #[test]
    fn fill_times_for_simple_sequences() {
        assert_eq!(fill_times(&AlphaSpec::infinite(), &[1, 5, 9], 100, 0, 0), vec![Some(1), Some(5), Some(9)]);
        let one = AlphaSpec::finite(vec![1]).unwrap();
        assert_eq!(fill_times(&one, &[1], 100, 0, 0), vec![Some(2)]);
    }

    #[test]
    fn parallel_equals_sequential() {
        let config = ExperimentConfig::new(
            ExperimentKind::RecordGrowth,
            OmegaPoint::alpha_p(AlphaSpec::squares(), 0.5).unwrap(),
            vec![10, 100, 1000],
            8,
            77,
        );
        let a = record_growth(&config, Execution::Sequential).unwrap();
        let b = record_growth(&config, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        let mut x = Vec::new();
        let mut y = Vec::new();
        a.write_csv(&mut x).unwrap();
        b.write_csv(&mut y).unwrap();
        assert_eq!(x, y);
        assert!(String::from_utf8(x).unwrap().starts_with("experiment,omega,replicate,n,statistic,value,seed\n"));
    }

    #[test]
    fn config_round_trip() {
        let mut config = ExperimentConfig::new(ExperimentKind::RecordGrowth, OmegaPoint::Star, log_grid(10, 10_000, 100), 200, 1);
        config.thresholds.record_band = [0.7, 1.3];
        let text = config.to_json().unwrap();
        assert_eq!(ExperimentConfig::from_json(&text).unwrap(), config);
        let broken = text.replace("\"replicates\": 200", "\"replicates\": 0");
        assert!(ExperimentConfig::from_json(&broken).is_err());
    }

    #[test]
    fn grid_shape() {
        let g = log_grid(10, 10_000, 100);
        assert_eq!((g[0], *g.last().unwrap()), (10, 10_000));
        assert!(g.len() >= 95 && g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn frozen_zeros_converge_exactly() {
        let path = DesignedPath::new(vec![3, 6], Growth::All).unwrap();
        let r = boundary_convergence(
            &path,
            3,
            &[6, 10, 20],
            ProjectionMode::Exact { budget: 1_000 },
            Execution::Sequential,
        )
        .unwrap();
        assert!(r.points.iter().all(|p| p.tv == 0.0), "{:?}", r.points);
        let ones = DesignedPath::new(vec![], Growth::All).unwrap();
        let r = boundary_convergence(&ones, 3, &[3, 50], ProjectionMode::Exact { budget: 1 }, Execution::Sequential)
            .unwrap();
        assert!(r.points.iter().all(|p| p.tv == 0.0));
    }
}
