//! Simulated native-advertising feeds built from summary statistics.

use rand::seq::index::sample;
use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::ConfigError;
use crate::instance::{Edge, ProblemInstance};
use crate::rng::{derive_seed, rng_from_seed, FeedRng};

/// Parameters of the video-feed model: a browsing session over category-labelled videos
/// and one ad per (advertiser, category).
#[derive(Debug, Clone, PartialEq)]
pub struct VideoFeedParams {
    pub advertisers: usize,
    pub categories: usize,
    /// Probability of continuing within the current category.
    pub continue_prob: f64,
    pub alpha_match: f64,
    pub alpha_mismatch: f64,
    /// Per-category `(mean, std)` of the reward proxy. Synthetic defaults, not fitted to data.
    pub category_stats: Vec<(f64, f64)>,
    /// Category of every video; sampled uniformly when `None`.
    pub video_categories: Option<Vec<usize>>,
}

impl Default for VideoFeedParams {
    fn default() -> Self {
        let categories = 8;
        VideoFeedParams {
            advertisers: 15,
            categories,
            continue_prob: 0.5,
            alpha_match: 0.8,
            alpha_mismatch: 0.01,
            category_stats: (0..categories).map(default_category_stat).collect(),
            video_categories: None,
        }
    }
}

pub(super) fn default_category_stat(k: usize) -> (f64, f64) {
    let mean = 1000.0 * 2f64.powi(k as i32);
    (mean, 1.5 * mean)
}

/// Parameters of the ad-block model: `blocks` groups of one ad per category, each group
/// attached to `slots_per_block` random slots.
#[derive(Debug, Clone, PartialEq)]
pub struct AdBlockParams {
    pub blocks: usize,
    pub categories: usize,
    pub slots_per_block: usize,
    /// `categories x buckets` reward table; slot `j` of `m` falls in bucket
    /// `(j - 1) * buckets / m`. Synthesized from the seed when `None`.
    pub reward_table: Option<Vec<Vec<f64>>>,
    /// Number of time buckets of the synthesized table (`m` when `None`).
    pub buckets: Option<usize>,
}

impl Default for AdBlockParams {
    fn default() -> Self {
        AdBlockParams { blocks: 144, categories: 100, slots_per_block: 10, reward_table: None, buckets: None }
    }
}

/// Default slot count of the ad-block model (one slot per minute of a day).
pub const AD_BLOCK_SLOTS: usize = 1440;

fn invalid(key: &str, message: String) -> ConfigError {
    ConfigError::Value { key: key.into(), message }
}

/// Orders videos by the browsing model: start anywhere; with probability `continue_prob`
/// move to an unseen video of the current category, otherwise to an unseen video of another
/// category. Whichever pool is empty, the other one is used. Returns video indices.
pub fn browsing_permutation(categories: &[usize], continue_prob: f64, rng: &mut FeedRng) -> Vec<usize> {
    let num_cat = categories.iter().max().map_or(0, |&c| c + 1);
    let mut unseen: Vec<Vec<usize>> = vec![Vec::new(); num_cat];
    for (v, &c) in categories.iter().enumerate() {
        unseen[c].push(v);
    }
    let mut remaining = categories.len();
    let mut order = Vec::with_capacity(remaining);
    let take = |cat: usize, unseen: &mut Vec<Vec<usize>>, rng: &mut FeedRng| {
        let k = rng.random_range(0..unseen[cat].len());
        unseen[cat].swap_remove(k)
    };
    if remaining == 0 {
        return order;
    }
    let first = rng.random_range(0..remaining);
    let mut current = categories[first];
    let pos = unseen[current].iter().position(|&v| v == first).expect("video is unseen");
    unseen[current].swap_remove(pos);
    order.push(first);
    remaining -= 1;
    while remaining > 0 {
        let same = unseen[current].len();
        let other = remaining - same;
        let stay = same > 0 && (other == 0 || rng.random::<f64>() < continue_prob);
        let cat = if stay {
            current
        } else {
            let mut u = rng.random_range(0..other);
            (0..num_cat)
                .filter(|&c| c != current)
                .find(|&c| {
                    if u < unseen[c].len() {
                        true
                    } else {
                        u -= unseen[c].len();
                        false
                    }
                })
                .expect("another category has unseen videos")
        };
        order.push(take(cat, &mut unseen, rng));
        current = cat;
        remaining -= 1;
    }
    order
}

/// Video feed with `m` slots (one after each video) and `advertisers * categories` ads.
/// Ad `a` has category `(a - 1) % categories`; the reward after a video of category `k` is
/// `alpha |Normal(mean_k, std_k)|` with `alpha` depending on whether the categories match.
pub fn gen_video_feed(m: usize, q: f64, seed: u64, params: &VideoFeedParams) -> Result<ProblemInstance, ConfigError> {
    let cats = params.categories;
    if cats == 0 || params.advertisers == 0 || m == 0 {
        return Err(invalid("categories", "video feed needs positive advertisers, categories and slots".into()));
    }
    if params.category_stats.len() != cats {
        return Err(invalid(
            "category_stats",
            format!(
            "expected {cats} category statistics, got {}",
            params.category_stats.len()
        )));
    }
    if !(0.0..=1.0).contains(&params.continue_prob) {
        return Err(invalid("continue_prob", format!("continue probability {} outside [0, 1]", params.continue_prob)));
    }
    let normals = params
        .category_stats
        .iter()
        .map(|&(mean, std)| Normal::new(mean, std).map_err(|e| invalid("category_stats", format!("{e}"))))
        .collect::<Result<Vec<_>, _>>()?;

    let mut rng = rng_from_seed(seed);
    let labels = match &params.video_categories {
        Some(v) => {
            if v.len() != m || v.iter().any(|&c| c >= cats) {
                return Err(invalid("video_categories", format!("need {m} video categories below {cats}")));
            }
            v.clone()
        }
        None => (0..m).map(|_| rng.random_range(0..cats)).collect(),
    };
    let order = browsing_permutation(&labels, params.continue_prob, &mut rng);

    let n = params.advertisers * cats;
    let mut edges = Vec::with_capacity(n * m);
    for i in 1..=n {
        let ad_cat = (i - 1) % cats;
        for (j, &video) in order.iter().enumerate() {
            let k = labels[video];
            let alpha = if k == ad_cat { params.alpha_match } else { params.alpha_mismatch };
            edges.push(Edge::new(i, j + 1, alpha * normals[k].sample(&mut rng).abs()));
        }
    }
    Ok(ProblemInstance::new(n, m, q, edges)?)
}

/// Ad-block feed with `m` slots and `blocks * categories` ads. Ad `(h - 1) k + c + 1` is the
/// category-`c` ad of block `h`; its reward at slot `j` is `table[c][bucket(j)]`.
pub fn gen_ad_blocks(m: usize, q: f64, seed: u64, params: &AdBlockParams) -> Result<ProblemInstance, ConfigError> {
    let (b, k, spb) = (params.blocks, params.categories, params.slots_per_block);
    if b == 0 || k == 0 || m == 0 {
        return Err(invalid("blocks", "ad blocks need positive blocks, categories and slots".into()));
    }
    if spb > m {
        return Err(invalid("slots_per_block", format!("{spb} slots per block exceed the {m} slots")));
    }
    let table = match &params.reward_table {
        Some(t) => {
            if t.len() != k || t.iter().any(|row| row.is_empty() || row.len() != t[0].len()) {
                return Err(invalid("reward_table", format!("reward table must have {k} rows of equal positive length")));
            }
            t.clone()
        }
        None => synthetic_table(k, params.buckets.unwrap_or(m), derive_seed(seed, 1)),
    };
    let buckets = table[0].len();

    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::with_capacity(b * k * spb);
    for h in 0..b {
        let mut slots = sample(&mut rng, m, spb).into_vec();
        slots.sort_unstable();
        for &s in &slots {
            let bucket = s * buckets / m;
            for (c, row) in table.iter().enumerate() {
                edges.push(Edge::new(h * k + c + 1, s + 1, row[bucket]));
            }
        }
    }
    Ok(ProblemInstance::new(b * k, m, q, edges)?)
}

/// Log-uniform rewards on `[8.4, 1500]`, a synthetic stand-in for per-cluster averages.
fn synthetic_table(categories: usize, buckets: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = rng_from_seed(seed);
    let (lo, hi) = (8.4f64.ln(), 1500f64.ln());
    (0..categories)
        .map(|_| (0..buckets).map(|_| rng.random_range(lo..=hi).exp()).collect())
        .collect()
}
