//! Property tests for the model and solver invariants.

use proptest::prelude::*;

use votesig::gen::{gen_instance, InstanceGenConfig, PriorKind};
use votesig::kvoting::solve_private_kvoting;
use votesig::model::{
    best_response, marginals_of, product_of_marginals, rule_wins, sender_value, JointScheme,
    MarginalScheme, SenderUtility, VotingRule,
};

/// Strategy: a normalized probability row of the given length.
fn prob_row(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..1.0, len).prop_map(|raw| {
        let sum: f64 = raw.iter().sum();
        raw.into_iter().map(|x| x / sum).collect()
    })
}

fn marginal_scheme(
    receivers: usize,
    states: usize,
    candidates: usize,
) -> impl Strategy<Value = MarginalScheme> {
    prop::collection::vec(
        prop::collection::vec(prob_row(candidates), states),
        receivers,
    )
    .prop_map(|probs| MarginalScheme::new(probs).expect("rows are normalized"))
}

proptest! {
    /// Product of marginals marginalizes back to the same marginals.
    #[test]
    fn product_then_marginalize_is_identity(
        m in (1usize..=3, 1usize..=3, 2usize..=3)
            .prop_flat_map(|(r, s, c)| marginal_scheme(r, s, c))
    ) {
        let joint = product_of_marginals(&m).unwrap();
        // Mass conservation: every state row of the product sums to one.
        for row in &joint.rows {
            let sum: f64 = row.values().sum();
            prop_assert!((sum - 1.0).abs() <= 1e-9);
        }
        let back = marginals_of(&joint);
        for r in 0..m.num_receivers() {
            for theta in 0..m.num_states() {
                for c in 0..m.num_candidates() {
                    prop_assert!(
                        (back.probs[r][theta][c] - m.probs[r][theta][c]).abs() <= 1e-12
                    );
                }
            }
        }
    }

    /// Two-candidate plurality is exactly simple majority.
    #[test]
    fn plurality_equals_majority_on_two_candidates(receivers in 1usize..=12, c0 in 0usize..=12) {
        let c0 = c0.min(receivers);
        let counts = vec![c0, receivers - c0];
        let k = receivers / 2 + 1;
        prop_assert_eq!(
            rule_wins(&VotingRule::Plurality, &counts),
            rule_wins(&VotingRule::KVoting { k }, &counts)
        );
    }

    /// Sender value is linear: the value of a mixture of two schemes is the
    /// mixture of their values.
    #[test]
    fn sender_value_is_linear(seed in 0u64..500, lambda in 0.0f64..1.0) {
        let inst = gen_instance(&InstanceGenConfig {
            states: 2,
            receivers: 3,
            candidates: 2,
            rule: VotingRule::KVoting { k: 2 },
            prior: PriorKind::Random,
            seed,
        });
        let a = JointScheme::deterministic(3, 2, vec![vec![0, 0, 1], vec![1, 0, 0]]).unwrap();
        let b = JointScheme::deterministic(3, 2, vec![vec![1, 1, 1], vec![0, 0, 0]]).unwrap();
        let mut rows = Vec::new();
        for theta in 0..2 {
            let mut row = a.rows[theta].clone();
            for (p, v) in row.iter_mut() {
                let _ = p;
                *v *= lambda;
            }
            for (p, v) in &b.rows[theta] {
                *row.entry(p.clone()).or_insert(0.0) += v * (1.0 - lambda);
            }
            rows.push(row);
        }
        let mix = JointScheme::new(3, 2, rows).unwrap();
        let f = SenderUtility::RuleValue(VotingRule::KVoting { k: 2 });
        let va = sender_value(&inst, &f, &a).unwrap();
        let vb = sender_value(&inst, &f, &b).unwrap();
        let vm = sender_value(&inst, &f, &mix).unwrap();
        prop_assert!((vm - (lambda * va + (1.0 - lambda) * vb)).abs() <= 1e-9);
    }

    /// Adding a constant to all of a receiver's payoffs in one state does not
    /// change its best response.
    #[test]
    fn best_response_shift_invariant(
        seed in 0u64..500,
        state in 0usize..2,
        shift in -5.0f64..5.0,
    ) {
        let mut inst = gen_instance(&InstanceGenConfig {
            states: 2,
            receivers: 2,
            candidates: 3,
            rule: VotingRule::Plurality,
            prior: PriorKind::Random,
            seed,
        });
        let posterior = inst.prior.clone();
        let before = best_response(&inst, 0, &posterior);
        for c in 0..3 {
            inst.receivers[0].utility[state][c] += shift;
        }
        prop_assert_eq!(before, best_response(&inst, 0, &posterior));
    }
}

/// The optimal k-voting value never increases in k.
#[test]
fn kvoting_value_monotone_in_k() {
    for seed in 0..25u64 {
        let receivers = 2 + (seed as usize % 3);
        let inst = gen_instance(&InstanceGenConfig {
            states: 1 + (seed as usize % 3),
            receivers,
            candidates: 2 + (seed as usize % 2),
            rule: VotingRule::KVoting { k: 1 },
            prior: PriorKind::Random,
            seed,
        });
        let mut prev = f64::INFINITY;
        for k in 1..=receivers {
            let v = solve_private_kvoting(&inst, k).unwrap().value;
            assert!(
                v <= prev + 1e-9,
                "seed {seed}: value increased from {prev} to {v} at k={k}"
            );
            prev = v;
        }
    }
}
