//! Suite definitions and their key-value config files.
//!
//! A suite file starts from a preset and overrides lists and scalars:
//!
//! ```text
//! suite = qsweep          # fig3 | scalability | qsweep | klimit | native
//! schemes = symmetric, heavy_top
//! algorithms = gb, gbp, global
//! n = 100
//! ms = 1000
//! qs = 0, 0.1, 0.3
//! ks = none, 20, 40
//! seeds = 1, 2, 3
//! time_limit = 3600       # seconds per run
//! integer = false
//! ```

use std::fs;
use std::path::Path;
use std::str::FromStr;
use std::time::Duration;

use crate::error::ConfigError;
use crate::generators::{GeneratorConfig, Scheme};
use crate::solver::Algorithm;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    /// Weighting schemes at `n = 100, m = 1000, q = 0.1`.
    Fig3,
    /// Growing feed length on symmetric rewards.
    Scalability,
    /// Quit probability sweep.
    QSweep,
    /// Cardinality limits.
    KLimit,
    /// The two simulated native-advertising feeds.
    Native,
}

impl SuiteKind {
    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::Fig3 => "fig3",
            SuiteKind::Scalability => "scalability",
            SuiteKind::QSweep => "qsweep",
            SuiteKind::KLimit => "klimit",
            SuiteKind::Native => "native",
        }
    }
}

impl FromStr for SuiteKind {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [SuiteKind::Fig3, SuiteKind::Scalability, SuiteKind::QSweep, SuiteKind::KLimit, SuiteKind::Native]
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| ConfigError::Value {
                key: "suite".into(),
                message: format!("unknown suite '{s}', expected fig3, scalability, qsweep, klimit or native"),
            })
    }
}

/// The cross product `schemes x ms x qs x ks x algorithms x seeds`.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchSuite {
    pub kind: SuiteKind,
    /// Generator parameters shared by all instances; scheme, `m`, `q` and seed are overridden.
    pub base: GeneratorConfig,
    pub schemes: Vec<Scheme>,
    pub ms: Vec<usize>,
    pub qs: Vec<f64>,
    pub ks: Vec<Option<usize>>,
    pub algorithms: Vec<Algorithm>,
    pub seeds: Vec<u64>,
    pub time_limit: Duration,
}

impl BenchSuite {
    pub fn preset(kind: SuiteKind) -> Self {
        let mut suite = BenchSuite {
            kind,
            base: GeneratorConfig::default(),
            schemes: Scheme::WEIGHTING.to_vec(),
            ms: vec![1000],
            qs: vec![0.1],
            ks: vec![None],
            algorithms: Algorithm::COMPARED.to_vec(),
            seeds: vec![1, 2, 3],
            time_limit: Duration::from_secs(3600),
        };
        match kind {
            SuiteKind::Fig3 => {}
            SuiteKind::Scalability => {
                suite.schemes = vec![Scheme::Symmetric];
                suite.ms = vec![1000, 2000, 5000, 10000];
            }
            SuiteKind::QSweep => {
                suite.schemes = vec![Scheme::Symmetric];
                suite.qs = vec![0.0, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];
            }
            SuiteKind::KLimit => {
                suite.schemes = vec![Scheme::Symmetric];
                suite.ks = vec![Some(5), Some(10), Some(20), Some(40), Some(80)];
            }
            SuiteKind::Native => {
                suite.schemes = vec![Scheme::SessionYoutube, Scheme::SessionBlocks];
                suite.ms = vec![1440];
            }
        }
        suite
    }

    pub fn runs(&self) -> usize {
        self.schemes.len() * self.ms.len() * self.qs.len() * self.ks.len() * self.algorithms.len() * self.seeds.len()
    }
}

fn value<T: FromStr>(key: &str, raw: &str) -> Result<T, ConfigError> {
    raw.parse().map_err(|_| ConfigError::Value { key: key.into(), message: format!("cannot parse '{raw}'") })
}

fn list<T: FromStr>(key: &str, raw: &str) -> Result<Vec<T>, ConfigError> {
    let items = raw.split(',').map(|v| value(key, v.trim())).collect::<Result<Vec<T>, _>>()?;
    if items.is_empty() {
        return Err(ConfigError::Value { key: key.into(), message: "empty list".into() });
    }
    Ok(items)
}

fn parse_k(raw: &str) -> Result<Option<usize>, ConfigError> {
    match raw {
        "none" | "-" => Ok(None),
        v => value("ks", v).map(Some),
    }
}

pub fn parse_suite(text: &str) -> Result<BenchSuite, ConfigError> {
    let mut pairs = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, raw) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
            line: k + 1,
            message: format!("expected 'key = value', found '{line}'"),
        })?;
        pairs.push((k + 1, key.trim().to_string(), raw.trim().to_string()));
    }
    let kind = pairs
        .iter()
        .find(|(_, key, _)| key == "suite")
        .map(|(_, _, raw)| raw.parse::<SuiteKind>())
        .transpose()?
        .ok_or_else(|| ConfigError::Missing("suite".into()))?;
    let mut suite = BenchSuite::preset(kind);
    for (line, key, raw) in pairs {
        let raw = raw.as_str();
        match key.as_str() {
            "suite" => {}
            "schemes" => suite.schemes = list(&key, raw)?,
            "algorithms" => {
                suite.algorithms = raw
                    .split(',')
                    .map(|a| {
                        a.trim().parse::<Algorithm>().map_err(|e| ConfigError::Value {
                            key: "algorithms".into(),
                            message: e.to_string(),
                        })
                    })
                    .collect::<Result<_, _>>()?
            }
            "n" => suite.base.n = value(&key, raw)?,
            "ms" | "m" => suite.ms = list(&key, raw)?,
            "qs" | "q" => suite.qs = list(&key, raw)?,
            "ks" | "k" => suite.ks = raw.split(',').map(|v| parse_k(v.trim())).collect::<Result<_, _>>()?,
            "seeds" => suite.seeds = list(&key, raw)?,
            "time_limit" => suite.time_limit = Duration::from_secs_f64(value::<f64>(&key, raw)?.max(0.0)),
            "integer" => suite.base.integer_rewards = value(&key, raw)?,
            "c" => suite.base.big_reward = value(&key, raw)?,
            other => {
                return Err(ConfigError::Syntax { line, message: format!("unknown key '{other}'") });
            }
        }
    }
    if suite.seeds.is_empty() || suite.algorithms.is_empty() {
        return Err(ConfigError::Value { key: "seeds".into(), message: "suite has no runs".into() });
    }
    Ok(suite)
}

pub fn read_suite(path: impl AsRef<Path>) -> Result<BenchSuite, ConfigError> {
    parse_suite(&fs::read_to_string(path)?)
}
