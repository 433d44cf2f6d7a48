//! Cross-solver consistency checks beyond the acceptance gate: independent
//! algorithmic routes must agree wherever their domains overlap.

use votesig::colgen::{solve_private_colgen, solve_private_exact, AnonymousOracle};
use votesig::gen::{gen_instance, gen_msi, InstanceGenConfig, MsiGenConfig, PriorKind};
use votesig::kvoting::solve_private_kvoting;
use votesig::model::{anonymous_from_rule, SenderUtility, VotingRule};
use votesig::public::{msi_reduce, solve_public_exact, solve_public_profile_lp};
use votesig::DEFAULT_COLUMN_GUARD;

/// The posterior-vertex engine and the literal per-profile LP are two
/// formulations of the same program; their optima must coincide.
#[test]
fn public_routes_agree_on_random_instances() {
    for seed in 0..40u64 {
        let states = 1 + (seed as usize % 3);
        let receivers = 1 + (seed as usize % 3);
        let candidates = 2 + ((seed / 3) as usize % 2);
        let k = 1 + (seed as usize % receivers);
        let inst = gen_instance(&InstanceGenConfig {
            states,
            receivers,
            candidates,
            rule: VotingRule::KVoting { k },
            prior: PriorKind::Random,
            seed,
        });
        let f = SenderUtility::RuleValue(inst.rule.clone());
        let (vertex, scheme) = solve_public_exact(&inst, &f, DEFAULT_COLUMN_GUARD).unwrap();
        let (profile_lp, _) = solve_public_profile_lp(&inst, &f, DEFAULT_COLUMN_GUARD).unwrap();
        assert!(
            (vertex - profile_lp).abs() <= 1e-7,
            "seed {seed}: vertex {vertex} vs profile LP {profile_lp}"
        );
        assert!(
            votesig::model::check_persuasive_public(&inst, &scheme, 1e-6)
                .unwrap()
                .persuasive,
            "seed {seed}"
        );
    }
}

/// Same agreement on actual reduction outputs small enough for the
/// per-profile LP (2 subsets x 2 elements = 6 voters, 64 signals).
#[test]
fn public_routes_agree_on_tiny_reductions() {
    for seed in 0..6u64 {
        let msi = gen_msi(&MsiGenConfig {
            elements: 2,
            subsets: 2,
            k: 1 + (seed as usize % 2),
            q: 2,
            seed,
        });
        let (inst, _) = msi_reduce(&msi).unwrap();
        let f = SenderUtility::RuleValue(inst.rule.clone());
        let (vertex, _) = solve_public_exact(&inst, &f, DEFAULT_COLUMN_GUARD).unwrap();
        let (profile_lp, _) = solve_public_profile_lp(&inst, &f, DEFAULT_COLUMN_GUARD).unwrap();
        assert!(
            (vertex - profile_lp).abs() <= 1e-7,
            "seed {seed}: vertex {vertex} vs profile LP {profile_lp}"
        );
    }
}

/// At ten receivers the full LP has 3 * 2^10 columns — guard-sized — and all
/// three private routes (polynomial LP, full LP, column generation) must
/// still agree.
#[test]
fn private_routes_agree_at_moderate_scale() {
    let inst = gen_instance(&InstanceGenConfig {
        states: 3,
        receivers: 10,
        candidates: 2,
        rule: VotingRule::KVoting { k: 6 },
        prior: PriorKind::Random,
        seed: 2024,
    });
    let kv = solve_private_kvoting(&inst, 6).unwrap();
    let f = SenderUtility::RuleValue(VotingRule::KVoting { k: 6 });
    let (exact, _) = solve_private_exact(&inst, &f, DEFAULT_COLUMN_GUARD).unwrap();
    assert!(
        (kv.value - exact).abs() <= 1e-6,
        "kvoting {} vs exact {exact}",
        kv.value
    );

    let anon = anonymous_from_rule(&inst.rule, 3, 10, 2).unwrap();
    let f_anon = SenderUtility::Anonymous(anon.clone());
    let cg = solve_private_colgen(&inst, &f_anon, &AnonymousOracle { utility: anon }).unwrap();
    assert!(
        (cg.value - exact).abs() <= 1e-6,
        "colgen {} vs exact {exact} ({} rounds, {} columns)",
        cg.value,
        cg.rounds,
        cg.num_columns
    );
}
