//! Key-value generator configs.
//!
//! One `key = value` pair per line; blank lines and `#` comments are skipped. Keys:
//!
//! | key | meaning |
//! |-----|---------|
//! | `scheme` | `symmetric`, `heavy_top`, `heavy_bottom`, `finely_targeted`, `adversarial`, `session_youtube`, `session_blocks` |
//! | `n`, `m`, `q`, `seed` | sizes, quit probability, seed |
//! | `integer` | `true` for integer rewards `1..=10` |
//! | `c` | last-slot reward of the adversarial chain |
//! | `advertisers`, `categories`, `continue_prob`, `alpha_match`, `alpha_mismatch` | video-feed model |
//! | `category_means`, `category_stds` | comma-separated per-category statistics |
//! | `blocks`, `block_categories`, `slots_per_block`, `time_buckets` | ad-block model |
//!
//! Unset keys keep their defaults. Setting `categories` without statistics resets them to
//! the synthetic defaults for that many categories.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use super::{GeneratorConfig, Scheme};
use crate::error::ConfigError;

fn value<T: FromStr>(key: &str, raw: &str) -> Result<T, ConfigError> {
    raw.parse().map_err(|_| ConfigError::Value { key: key.into(), message: format!("cannot parse '{raw}'") })
}

fn list(key: &str, raw: &str) -> Result<Vec<f64>, ConfigError> {
    raw.split(',').map(|v| value(key, v.trim())).collect()
}

pub fn parse_generator_config(text: &str) -> Result<GeneratorConfig, ConfigError> {
    let mut cfg = GeneratorConfig::default();
    let mut scheme_set = false;
    let (mut means, mut stds) = (None, None);
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, raw) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
            line: k + 1,
            message: format!("expected 'key = value', found '{line}'"),
        })?;
        let (key, raw) = (key.trim(), raw.trim());
        match key {
            "scheme" => {
                cfg.scheme = raw.parse::<Scheme>()?;
                scheme_set = true;
            }
            "n" => cfg.n = value(key, raw)?,
            "m" => cfg.m = value(key, raw)?,
            "q" => cfg.q = value(key, raw)?,
            "seed" => cfg.seed = value(key, raw)?,
            "integer" => cfg.integer_rewards = value(key, raw)?,
            "c" => cfg.big_reward = value(key, raw)?,
            "advertisers" => cfg.video.advertisers = value(key, raw)?,
            "categories" => {
                let c: usize = value(key, raw)?;
                cfg.video.categories = c;
                cfg.video.category_stats = (0..c).map(super::session::default_category_stat).collect();
            }
            "continue_prob" => cfg.video.continue_prob = value(key, raw)?,
            "alpha_match" => cfg.video.alpha_match = value(key, raw)?,
            "alpha_mismatch" => cfg.video.alpha_mismatch = value(key, raw)?,
            "category_means" => means = Some(list(key, raw)?),
            "category_stds" => stds = Some(list(key, raw)?),
            "blocks" => cfg.blocks.blocks = value(key, raw)?,
            "block_categories" => cfg.blocks.categories = value(key, raw)?,
            "slots_per_block" => cfg.blocks.slots_per_block = value(key, raw)?,
            "time_buckets" => cfg.blocks.buckets = Some(value(key, raw)?),
            other => {
                return Err(ConfigError::Syntax { line: k + 1, message: format!("unknown key '{other}'") });
            }
        }
    }
    if !scheme_set {
        return Err(ConfigError::Missing("scheme".into()));
    }
    match (means, stds) {
        (None, None) => {}
        (Some(mu), Some(sd)) if mu.len() == sd.len() => {
            cfg.video.categories = mu.len();
            cfg.video.category_stats = mu.into_iter().zip(sd).collect();
        }
        _ => {
            return Err(ConfigError::Value {
                key: "category_means".into(),
                message: "category_means and category_stds must be given together with equal length".into(),
            })
        }
    }
    cfg.check()?;
    Ok(cfg)
}

pub fn read_generator_config(path: impl AsRef<Path>) -> Result<GeneratorConfig, ConfigError> {
    parse_generator_config(&fs::read_to_string(path)?)
}
