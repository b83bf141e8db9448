use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rdperm::experiments::{run_experiment, ExperimentConfig};
use rdperm::graph::{adjacency_export, dimension, level_words, successors};
use rdperm::measures::{
    classify_limit, elementary_projection, exact_marginal, mixed_marginal, sample_projection, Classification,
    ClassifyConfig, DesignedPath, Growth, ProjectionMode, TailRule,
};
use rdperm::oracle::EnumerationBudget;
use rdperm::perm::project;
use rdperm::posets::{yf_adjacency_export, yf_dimension, yf_level, yf_successors, FibWord};
use rdperm::rng::seeded;
use rdperm::{verify, AlphaSpec, Error, Execution, FiniteDistribution, OmegaPoint, Permutation, RecordWord};

const DEFAULT_SEED: u64 = 0;

#[derive(Parser)]
#[command(name = "rdperm", version, about = "Record-dependent random permutations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw permutations of [n] from P^ω.
    Sample {
        /// `star`, a JSON record, or `<alpha>[;p=<p>]` with alpha one of
        /// `inf`, `squares`, `powers_of_two` or a comma list such as `2,5`.
        #[arg(long)]
        omega: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print the law on S_n of a boundary point or of an elementary measure.
    Pmf {
        #[arg(long, conflicts_with = "rho", required_unless_present = "rho")]
        omega: Option<String>,
        /// Record word; prints P^ρ projected to S_k (k defaults to |ρ|).
        #[arg(long)]
        rho: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 40_320)]
        budget: u64,
    },
    /// Delete the letters above m.
    Project {
        #[arg(long)]
        word: String,
        #[arg(long)]
        m: usize,
    },
    /// Explore the record graph or the Young-Fibonacci graph.
    Graph {
        #[arg(long, value_enum, default_value_t = Family::R)]
        family: Family,
        #[arg(long, group = "query")]
        level: Option<usize>,
        #[arg(long, group = "query")]
        successors: Option<String>,
        #[arg(long, group = "query")]
        dimension: Option<String>,
        /// Adjacency lists for levels 1..=N.
        #[arg(long, group = "query")]
        export: Option<usize>,
    },
    /// Estimate the limit of a designed path.
    Classify {
        /// Frozen zero positions, comma separated.
        #[arg(long, default_value = "")]
        frozen: String,
        /// `all`, `sqrt` or a fraction `a/b`.
        #[arg(long, default_value = "all")]
        growth: String,
        #[arg(long)]
        depth: usize,
    },
    /// Run an experiment described by a JSON config and write CSV.
    Experiment {
        #[arg(long)]
        config: String,
        /// Overrides the config's output path; `-` is standard output.
        #[arg(long)]
        output: Option<String>,
        #[arg(long)]
        sequential: bool,
    },
    /// Run the full check suite; exit 0 iff every criterion passes.
    Verify {
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    #[value(name = "R")]
    R,
    #[value(name = "YF")]
    Yf,
}

fn parse_omega(text: &str) -> rdperm::Result<OmegaPoint> {
    let text = text.trim();
    if text == "star" {
        return Ok(OmegaPoint::Star);
    }
    if text.starts_with('{') {
        return OmegaPoint::from_json(text);
    }
    let (alpha, p) = match text.split_once(';') {
        Some((a, rest)) => {
            let p = rest
                .trim()
                .strip_prefix("p=")
                .ok_or_else(|| Error::Parse(format!("expected p=<value> after ';' in {text:?}")))?;
            (a.trim(), p.parse::<f64>().map_err(|e| Error::Parse(format!("p: {e}")))?)
        }
        None => (text, 1.0),
    };
    let alpha = match alpha {
        "inf" => AlphaSpec::infinite(),
        "squares" => AlphaSpec::squares(),
        "powers_of_two" => AlphaSpec::with_rule(Vec::new(), TailRule::PowersOfTwo)?,
        list => AlphaSpec::finite(
            list.split(',')
                .map(|s| s.trim().parse::<u128>().map_err(|e| Error::Parse(format!("alpha term {s:?}: {e}"))))
                .collect::<rdperm::Result<Vec<u128>>>()?,
        )?,
    };
    OmegaPoint::alpha_p(alpha, p)
}

fn parse_growth(text: &str) -> rdperm::Result<Growth> {
    match text {
        "all" => Ok(Growth::All),
        "sqrt" => Ok(Growth::Sqrt),
        fraction => {
            let (a, b) = fraction
                .split_once('/')
                .ok_or_else(|| Error::Parse(format!("growth {fraction:?} is not all, sqrt or a/b")))?;
            let num = |s: &str| s.trim().parse::<u32>().map_err(|e| Error::Parse(format!("growth: {e}")));
            Ok(Growth::Fraction(num(a)?, num(b)?))
        }
    }
}

fn seed_of(seed: Option<u64>) -> u64 {
    let seed = seed.unwrap_or(DEFAULT_SEED);
    eprintln!("seed: {seed}");
    seed
}

fn run(cli: Cli, out: &mut impl Write) -> rdperm::Result<ExitCode> {
    match cli.command {
        Command::Sample { omega, n, count, seed } => {
            let omega = parse_omega(&omega)?;
            if n == 0 {
                return Err(Error::Argument("n must be at least 1".into()));
            }
            let mut rng = seeded(seed_of(seed));
            for _ in 0..count {
                writeln!(out, "{}", sample_projection(&omega, n, &mut rng))?;
            }
        }
        Command::Pmf { omega, rho, n, k, budget } => {
            let law = match (omega, rho) {
                (Some(omega), _) => {
                    let n = n.ok_or_else(|| Error::Argument("--omega needs --n".into()))?;
                    let omega = parse_omega(&omega)?;
                    let budget = EnumerationBudget::new(budget)?;
                    match &omega {
                        OmegaPoint::Star => FiniteDistribution::uniform(n),
                        OmegaPoint::AlphaP { p, .. } if *p == 1.0 => exact_marginal(&omega, n, budget)?,
                        OmegaPoint::AlphaP { .. } => mixed_marginal(&omega, n, budget)?,
                    }
                }
                (None, Some(rho)) => {
                    let rho: RecordWord = rho.parse()?;
                    let k = k.unwrap_or(rho.len());
                    elementary_projection(&rho, k, ProjectionMode::Exact { budget })?
                }
                (None, None) => unreachable!("clap requires one of --omega and --rho"),
            };
            write!(out, "{}", law.export())?;
        }
        Command::Project { word, m } => {
            let sigma: Permutation = word.parse()?;
            writeln!(out, "{}", project(&sigma, m)?)?;
        }
        Command::Graph { family, level, successors: succ, dimension: dim, export } => match family {
            Family::R => {
                if let Some(n) = level {
                    for rho in level_words(n) {
                        writeln!(out, "{rho}")?;
                    }
                } else if let Some(w) = succ {
                    let s: Vec<String> = successors(&w.parse()?).iter().map(|t| t.to_string()).collect();
                    writeln!(out, "{}", s.join(" "))?;
                } else if let Some(w) = dim {
                    writeln!(out, "{}", dimension(&w.parse()?))?;
                } else if let Some(max) = export {
                    write!(out, "{}", adjacency_export(max)?)?;
                } else {
                    return Err(Error::Argument("graph needs --level, --successors, --dimension or --export".into()));
                }
            }
            Family::Yf => {
                if let Some(n) = level {
                    for w in yf_level(n) {
                        writeln!(out, "{w}")?;
                    }
                } else if let Some(w) = succ {
                    let s: Vec<String> = yf_successors(&w.parse::<FibWord>()?).iter().map(|t| t.to_string()).collect();
                    writeln!(out, "{}", s.join(" "))?;
                } else if let Some(w) = dim {
                    writeln!(out, "{}", yf_dimension(&w.parse()?))?;
                } else if let Some(max) = export {
                    write!(out, "{}", yf_adjacency_export(max))?;
                } else {
                    return Err(Error::Argument("graph needs --level, --successors, --dimension or --export".into()));
                }
            }
        },
        Command::Classify { frozen, growth, depth } => {
            let zeros = frozen
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<usize>().map_err(|e| Error::Parse(format!("frozen zero {s:?}: {e}"))))
                .collect::<rdperm::Result<Vec<usize>>>()?;
            let path = DesignedPath::new(zeros, parse_growth(&growth)?)?;
            if depth == 0 {
                return Err(Error::Argument("depth must be at least 1".into()));
            }
            match classify_limit(&path.words(depth), ClassifyConfig::default())? {
                Classification::Limit { omega, p1, p2 } => {
                    writeln!(out, "{}", omega.to_json()?)?;
                    eprintln!("L(rho_N) = {p1}, product over frozen zeros = {p2}");
                }
                Classification::Undetermined { reason } => writeln!(out, "undetermined: {reason}")?,
            }
        }
        Command::Experiment { config, output, sequential } => {
            let mut config = ExperimentConfig::from_json(&fs::read_to_string(&config)?)?;
            if let Some(o) = output {
                config.output = Some(o.into());
            }
            eprintln!("seed: {}", config.seed);
            let exec = if sequential { Execution::Sequential } else { Execution::default() };
            let report = run_experiment(&config, exec)?;
            match config.output.as_deref() {
                Some(path) if path.as_os_str() != "-" => report.write_csv(fs::File::create(path)?)?,
                _ => report.write_csv(&mut *out)?,
            }
            for c in &report.checks {
                eprintln!("{}: {} (observed {:.4}, required {})", if c.passed { "PASS" } else { "FAIL" }, c.name, c.observed, c.required);
            }
        }
        Command::Verify { sequential } => {
            let exec = if sequential { Execution::Sequential } else { Execution::default() };
            let report = verify::run_all(exec)?;
            write!(out, "{}", report.render())?;
            return Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => {
            let _ = out.flush();
            code
        }
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::Budget { .. }) { 3 } else { 2 })
        }
    }
}
