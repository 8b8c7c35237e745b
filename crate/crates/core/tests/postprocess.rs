mod common;

use common::{naive_prune, random_allocation, random_instance, seeded};
use feedalloc::algorithms::backwards_greedy;
use feedalloc::postprocess::{prune_to_k, truncate_greedy_run, TruncatedGreedy};
use feedalloc::baselines::{global_greedy_with, Threshold};
use feedalloc::{expected_reward, Deadline, Mode};
use proptest::prelude::*;

proptest! {
    #[test]
    fn pruning_matches_reference((seed, n, m, q, k) in (any::<u64>(), 1usize..7, 1usize..14, 0.0f64..0.9, 0usize..8)) {
        let mut rng = seeded(seed);
        let inst = random_instance(&mut rng, n, m, 0.6, q);
        let alloc = random_allocation(&mut rng, &inst, 0.9);
        let pruned = prune_to_k(&inst, &alloc, k).unwrap();
        prop_assert!(pruned.len() <= k);
        prop_assert_eq!(pruned.len(), alloc.len().min(k));
        prop_assert_eq!(pruned.pairs().collect::<Vec<_>>(), naive_prune(&inst, &alloc, k));
    }

    #[test]
    fn pruning_is_nested((seed, n, m, q) in (any::<u64>(), 1usize..7, 1usize..14, 0.0f64..0.9)) {
        let mut rng = seeded(seed);
        let inst = random_instance(&mut rng, n, m, 0.6, q);
        let alloc = backwards_greedy(&inst, Mode::Matching).allocation;
        let mut prev = alloc.clone();
        for k in (0..alloc.len()).rev() {
            let direct = prune_to_k(&inst, &alloc, k).unwrap();
            let step = prune_to_k(&inst, &prev, k).unwrap();
            prop_assert_eq!(&direct, &step);
            prop_assert!(direct.pairs().all(|p| prev.pairs().any(|x| x == p)));
            prev = direct;
        }
    }

    #[test]
    fn truncated_greedy_respects_k((seed, n, m, q, k) in (any::<u64>(), 1usize..7, 1usize..14, 0.0f64..0.9, 0usize..6)) {
        let inst = random_instance(&mut seeded(seed), n, m, 0.7, q);
        for alg in [TruncatedGreedy::Global, TruncatedGreedy::Forward, TruncatedGreedy::Threshold(Threshold::Auto)] {
            prop_assert!(truncate_greedy_run(alg, &inst, k).size() <= k);
        }
        let full = global_greedy_with(&inst, None, &Deadline::none()).unwrap();
        let cut = truncate_greedy_run(TruncatedGreedy::Global, &inst, k);
        prop_assert!(cut.allocation.pairs().all(|p| full.allocation.pairs().any(|x| x == p)));
    }
}

/// Reward after pruning to `k` usually grows with `k`, but only removal of ads with positive
/// marginal value guarantees it; this records how often it holds on greedy solutions.
#[test]
fn pruned_reward_is_monotone_on_greedy_solutions() {
    let mut violations = 0;
    let mut checks = 0;
    for seed in 0..200 {
        let inst = random_instance(&mut seeded(seed), 5, 12, 0.6, 0.25);
        let alloc = backwards_greedy(&inst, Mode::Matching).allocation;
        let mut last = f64::INFINITY;
        for k in (0..=alloc.len()).rev() {
            let v = expected_reward(&inst, &prune_to_k(&inst, &alloc, k).unwrap()).unwrap();
            checks += 1;
            if v > last + 1e-12 {
                violations += 1;
            }
            last = v;
        }
    }
    assert_eq!(violations, 0, "{violations} of {checks} budget steps increased reward");
}

#[test]
fn pruning_to_a_larger_budget_is_identity() {
    let mut rng = seeded(2);
    let inst = random_instance(&mut rng, 4, 8, 0.8, 0.3);
    let alloc = random_allocation(&mut rng, &inst, 1.0);
    assert_eq!(prune_to_k(&inst, &alloc, alloc.len()).unwrap(), alloc);
    assert!(prune_to_k(&inst, &alloc, 0).unwrap().is_empty());
}
