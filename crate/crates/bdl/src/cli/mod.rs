//! Command-line driver: configuration, parameter sampling, check
//! orchestration and report output.

pub mod checks;
pub mod sample;

use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::arith::field::{is_prime_u64, DEFAULT_PRIME};
use crate::error::Error;
use crate::report::VerificationReport;

#[derive(Parser, Debug)]
#[command(name = "bdl", version, about = "Exact checks of the (gl_n, gl_m) duality for Bethe algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run one check (or `all`) and report.
    Run(RunArgs),
    /// List the available checks.
    List,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArithMode {
    /// Exact rationals.
    Exact,
    /// Integers modulo a prime; a fast falsification probe.
    Modular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamMode {
    Symbolic,
    Random,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    #[default]
    Text,
}

#[derive(Args, Debug, Clone, Default)]
pub struct RunArgs {
    /// Check name, or `all`.
    #[arg(long)]
    pub check: Option<String>,
    /// JSON file with any of the fields below; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub a: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',')]
    pub b: Option<Vec<u32>>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub mode: Option<ArithMode>,
    #[arg(long)]
    pub prime: Option<u64>,
    /// Total drop of the Verma weight spaces.
    #[arg(long)]
    pub depth: Option<u32>,
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Write the JSON report array here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub params: Option<ParamMode>,
    /// Height bound of sampled rationals.
    #[arg(long)]
    pub height: Option<i64>,
    /// Random parameter draws per check.
    #[arg(long)]
    pub instances: Option<usize>,
    /// Random coefficient vectors per spectral certificate.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Time budget per check, in seconds.
    #[arg(long)]
    pub budget: Option<f64>,
    /// Permit n + m ≥ 5.
    #[arg(long)]
    pub allow_large: bool,
    /// Record wall-clock times (reports are then no longer reproducible).
    #[arg(long)]
    pub timing: bool,
    /// Format of standard output.
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

/// Contents of a `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub check: Option<String>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub a: Option<Vec<u32>>,
    pub b: Option<Vec<u32>>,
    pub seed: Option<u64>,
    pub mode: Option<ArithMode>,
    pub prime: Option<u64>,
    pub depth: Option<u32>,
    pub jobs: Option<usize>,
    pub params: Option<ParamMode>,
    pub height: Option<i64>,
    pub instances: Option<usize>,
    pub trials: Option<usize>,
    pub budget: Option<f64>,
    pub allow_large: Option<bool>,
}

/// A fully resolved configuration.
#[derive(Clone, Debug)]
pub struct InstanceConfig {
    pub check: String,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub seed: u64,
    pub mode: ArithMode,
    pub prime: u64,
    pub depth: u32,
    pub jobs: Option<usize>,
    pub params: ParamMode,
    pub height: i64,
    pub instances: usize,
    pub trials: usize,
    pub budget: Option<Duration>,
    pub allow_large: bool,
    pub timing: bool,
}

impl InstanceConfig {
    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn m(&self) -> usize {
        self.b.len()
    }
}

/// `n` ones spread over `m` parts as evenly as possible.
fn even_split(total: usize, parts: usize) -> Vec<u32> {
    (0..parts).map(|j| (total / parts + usize::from(j < total % parts)) as u32).collect()
}

fn margins(n: Option<usize>, m: Option<usize>, a: Option<Vec<u32>>, b: Option<Vec<u32>>) -> Result<(Vec<u32>, Vec<u32>), Error> {
    let bad = |s: String| Err(Error::Config(s));
    if let (Some(n), Some(a)) = (n, &a) {
        if a.len() != n {
            return bad(format!("--a has {} entries but n = {n}", a.len()));
        }
    }
    if let (Some(m), Some(b)) = (m, &b) {
        if b.len() != m {
            return bad(format!("--b has {} entries but m = {m}", b.len()));
        }
    }
    let n = a.as_ref().map_or(n.unwrap_or(2), |a| a.len());
    let m = b.as_ref().map_or(m.unwrap_or(2), |b| b.len());
    if n == 0 || m == 0 {
        return bad("n and m must be positive".into());
    }
    let (a, b) = match (a, b) {
        (Some(a), Some(b)) => (a, b),
        (Some(a), None) => {
            let s = a.iter().sum::<u32>() as usize;
            (a, even_split(s, m))
        }
        (None, Some(b)) => {
            let s = b.iter().sum::<u32>() as usize;
            (even_split(s, n), b)
        }
        (None, None) => (vec![1; n], even_split(n, m)),
    };
    if a.iter().sum::<u32>() != b.iter().sum::<u32>() {
        return bad(format!("margins differ: sum {a:?} != sum {b:?}"));
    }
    Ok((a, b))
}

/// Flags over `BDL_JOBS` over the config file over defaults.
pub fn resolve(args: &RunArgs, env_jobs: Option<String>) -> Result<InstanceConfig, Error> {
    let file: ConfigFile = match &args.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?
        }
        None => ConfigFile::default(),
    };
    let check = args.check.clone().or(file.check).ok_or_else(|| Error::Config("no check given".into()))?;
    if check != "all" && !checks::CHECKS.iter().any(|c| c.name == check) {
        return Err(Error::Config(format!("unknown check {check:?}")));
    }
    let (a, b) = margins(args.n.or(file.n), args.m.or(file.m), args.a.clone().or(file.a), args.b.clone().or(file.b))?;
    let env_jobs = match env_jobs {
        Some(s) => Some(s.trim().parse::<usize>().map_err(|_| Error::Config(format!("BDL_JOBS={s:?} is not a count")))?),
        None => None,
    };
    let cfg = InstanceConfig {
        check,
        a,
        b,
        seed: args.seed.or(file.seed).unwrap_or(0),
        mode: args.mode.or(file.mode).unwrap_or(ArithMode::Exact),
        prime: args.prime.or(file.prime).unwrap_or(DEFAULT_PRIME),
        depth: args.depth.or(file.depth).unwrap_or(2),
        jobs: args.jobs.or(env_jobs).or(file.jobs),
        params: args.params.or(file.params).unwrap_or(ParamMode::Random),
        height: args.height.or(file.height).unwrap_or(10),
        instances: args.instances.or(file.instances).unwrap_or(3),
        trials: args.trials.or(file.trials).unwrap_or(5),
        budget: args.budget.or(file.budget).map(Duration::from_secs_f64),
        allow_large: args.allow_large || file.allow_large.unwrap_or(false),
        timing: args.timing,
    };
    validate(&cfg)?;
    Ok(cfg)
}

fn validate(cfg: &InstanceConfig) -> Result<(), Error> {
    let bad = |s: &str| Err(Error::Config(s.into()));
    if cfg.height < 1 {
        return bad("height must be at least 1");
    }
    if cfg.mode == ArithMode::Modular && (cfg.prime <= 1 << 40 || !is_prime_u64(cfg.prime)) {
        return bad("modular mode needs a prime above 2^40");
    }
    if cfg.prime >= 1 << 62 {
        return bad("prime must be below 2^62");
    }
    if cfg.jobs == Some(0) {
        return bad("jobs must be positive");
    }
    if cfg.instances == 0 || cfg.trials == 0 {
        return bad("instances and trials must be positive");
    }
    if cfg.budget.is_some_and(|d| d.is_zero()) {
        return bad("budget must be positive");
    }
    if cfg.n() + cfg.m() >= 5 && !cfg.allow_large {
        return bad("n + m >= 5 is opt-in (--allow-large)");
    }
    Ok(())
}

/// The JSON report array.
pub fn to_json(reports: &[VerificationReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(check: &str) -> RunArgs {
        RunArgs { check: Some(check.into()), ..Default::default() }
    }

    #[test]
    fn defaults() {
        let c = resolve(&args("main3"), None).unwrap();
        assert_eq!((c.a.clone(), c.b.clone()), (vec![1, 1], vec![1, 1]));
        assert_eq!(c.mode, ArithMode::Exact);
        assert_eq!(c.height, 10);
    }

    #[test]
    fn margins_from_sizes() {
        assert_eq!(margins(Some(3), Some(2), None, None).unwrap(), (vec![1, 1, 1], vec![2, 1]));
        assert_eq!(margins(None, None, Some(vec![2, 0]), None).unwrap(), (vec![2, 0], vec![1, 1]));
        assert!(margins(None, None, Some(vec![2, 0]), Some(vec![1])).is_err());
        assert!(margins(Some(3), None, Some(vec![1]), None).is_err());
    }

    #[test]
    fn invalid_configs() {
        assert!(resolve(&args("nope"), None).is_err());
        let mut a = args("main1");
        a.n = Some(3);
        a.m = Some(2);
        assert!(resolve(&a, None).is_err());
        a.allow_large = true;
        assert!(resolve(&a, None).is_ok());
        let mut a = args("main1");
        a.mode = Some(ArithMode::Modular);
        a.prime = Some(101);
        assert!(resolve(&a, None).is_err());
        assert!(resolve(&args("main1"), Some("x".into())).is_err());
    }

    #[test]
    fn env_jobs_sits_between_flag_and_file() {
        assert_eq!(resolve(&args("main1"), Some("3".into())).unwrap().jobs, Some(3));
        let mut a = args("main1");
        a.jobs = Some(5);
        assert_eq!(resolve(&a, Some("3".into())).unwrap().jobs, Some(5));
    }
}
