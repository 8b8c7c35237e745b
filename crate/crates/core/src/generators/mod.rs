//! Seeded instance generators. Every generator is a pure function of its parameters and seed.

mod config;
mod schemes;
mod session;

use std::fmt;
use std::str::FromStr;

pub use config::{parse_generator_config, read_generator_config};
pub use schemes::{
    gen_adversarial, gen_asymmetric, gen_finely_targeted, gen_symmetric, subsample_edges, Direction,
};
pub use session::{browsing_permutation, gen_ad_blocks, gen_video_feed, AdBlockParams, VideoFeedParams, AD_BLOCK_SLOTS};

use crate::error::ConfigError;
use crate::instance::ProblemInstance;

/// Reward model of a generated instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Symmetric,
    HeavyTop,
    HeavyBottom,
    FinelyTargeted,
    Adversarial,
    SessionYoutube,
    SessionBlocks,
}

impl Scheme {
    pub const ALL: [Scheme; 7] = [
        Scheme::Symmetric,
        Scheme::HeavyTop,
        Scheme::HeavyBottom,
        Scheme::FinelyTargeted,
        Scheme::Adversarial,
        Scheme::SessionYoutube,
        Scheme::SessionBlocks,
    ];

    /// The four synthetic weighting schemes.
    pub const WEIGHTING: [Scheme; 4] =
        [Scheme::Symmetric, Scheme::HeavyTop, Scheme::HeavyBottom, Scheme::FinelyTargeted];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Symmetric => "symmetric",
            Scheme::HeavyTop => "heavy_top",
            Scheme::HeavyBottom => "heavy_bottom",
            Scheme::FinelyTargeted => "finely_targeted",
            Scheme::Adversarial => "adversarial",
            Scheme::SessionYoutube => "session_youtube",
            Scheme::SessionBlocks => "session_blocks",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scheme::ALL.into_iter().find(|sc| sc.name() == s).ok_or_else(|| ConfigError::Value {
            key: "scheme".into(),
            message: format!(
                "unknown scheme '{s}', expected one of {}",
                Scheme::ALL.map(Scheme::name).join(", ")
            ),
        })
    }
}

/// Everything needed to generate one instance.
///
/// `n` is ignored by the adversarial scheme (which uses `n = m`) and by the session schemes
/// (whose ad count follows from their parameters).
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub scheme: Scheme,
    pub n: usize,
    pub m: usize,
    pub q: f64,
    pub seed: u64,
    /// Integer rewards `1..=10` instead of continuous `[1, 10]`.
    pub integer_rewards: bool,
    /// Reward of the last slot in the adversarial chain.
    pub big_reward: f64,
    pub video: VideoFeedParams,
    pub blocks: AdBlockParams,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            scheme: Scheme::Symmetric,
            n: 100,
            m: 1000,
            q: 0.1,
            seed: 1,
            integer_rewards: false,
            big_reward: 2f64.powi(19),
            video: VideoFeedParams::default(),
            blocks: AdBlockParams::default(),
        }
    }
}

impl GeneratorConfig {
    pub fn new(scheme: Scheme, n: usize, m: usize, q: f64, seed: u64) -> Self {
        GeneratorConfig { scheme, n, m, q, seed, ..GeneratorConfig::default() }
    }

    /// Checks counts and probabilities before generating.
    pub fn check(&self) -> Result<(), ConfigError> {
        let bad = |key: &str, message: &str| Err(ConfigError::Value { key: key.into(), message: message.into() });
        let needs_n = !matches!(self.scheme, Scheme::Adversarial | Scheme::SessionYoutube | Scheme::SessionBlocks);
        if needs_n && self.n == 0 {
            return bad("n", "must be positive");
        }
        if self.m == 0 {
            return bad("m", "must be positive");
        }
        if !(0.0..1.0).contains(&self.q) {
            return bad("q", "must lie in [0, 1)");
        }
        if self.scheme == Scheme::Adversarial {
            if self.m < 2 {
                return bad("m", "the adversarial chain needs at least 2 slots");
            }
            if !(self.big_reward > 0.0 && self.big_reward.is_finite()) {
                return bad("c", "must be positive and finite");
            }
        }
        if self.video.category_stats.iter().any(|&(_, s)| !(s >= 0.0)) {
            return bad("category_stds", "standard deviations must be non-negative");
        }
        Ok(())
    }
}

/// Generates the instance described by `config`.
pub fn generate(config: &GeneratorConfig) -> Result<ProblemInstance, ConfigError> {
    config.check()?;
    let GeneratorConfig { n, m, q, seed, integer_rewards: int, .. } = *config;
    let inst = match config.scheme {
        Scheme::Symmetric => gen_symmetric(n, m, q, seed, int)?,
        Scheme::HeavyTop => gen_asymmetric(n, m, q, seed, Direction::Top, int)?,
        Scheme::HeavyBottom => gen_asymmetric(n, m, q, seed, Direction::Bottom, int)?,
        Scheme::FinelyTargeted => gen_finely_targeted(n, m, q, seed)?,
        Scheme::Adversarial => gen_adversarial(m, config.big_reward, q)?,
        Scheme::SessionYoutube => gen_video_feed(m, q, seed, &config.video)?,
        Scheme::SessionBlocks => gen_ad_blocks(m, q, seed, &config.blocks)?,
    };
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::validate_instance;

    #[test]
    fn scheme_names_round_trip() {
        for s in Scheme::ALL {
            assert_eq!(s.name().parse::<Scheme>().unwrap(), s);
        }
        assert!("zigzag".parse::<Scheme>().is_err());
    }

    #[test]
    fn every_scheme_generates_valid_instances() {
        for s in Scheme::ALL {
            let mut cfg = GeneratorConfig::new(s, 7, 30, 0.2, 3);
            cfg.blocks = AdBlockParams { blocks: 5, categories: 4, slots_per_block: 3, ..AdBlockParams::default() };
            let inst = generate(&cfg).unwrap();
            assert!(validate_instance(&inst.to_raw()).is_empty(), "{s}");
            assert_eq!(inst, generate(&cfg).unwrap(), "{s}");
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(generate(&GeneratorConfig::new(Scheme::Symmetric, 0, 5, 0.1, 1)).is_err());
        assert!(generate(&GeneratorConfig::new(Scheme::Symmetric, 2, 5, 1.0, 1)).is_err());
        assert!(generate(&GeneratorConfig::new(Scheme::Adversarial, 2, 1, 0.1, 1)).is_err());
    }
}
