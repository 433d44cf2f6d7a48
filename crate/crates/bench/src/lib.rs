//! Shared benchmark corpus: deterministic instances spanning the solver
//! surface at a few sizes.

use votesig::gen::{gen_instance, InstanceGenConfig, PriorKind};
use votesig::model::{Instance, VotingRule};

/// Seeded random k-voting instances of increasing size.
pub fn kvoting_corpus() -> Vec<(String, Instance, usize)> {
    [(2usize, 3usize, 2usize), (3, 4, 2), (3, 5, 3)]
        .iter()
        .map(|&(states, receivers, candidates)| {
            let k = receivers / 2 + 1;
            let inst = gen_instance(&InstanceGenConfig {
                states,
                receivers,
                candidates,
                rule: VotingRule::KVoting { k },
                prior: PriorKind::Random,
                seed: (states * 100 + receivers * 10 + candidates) as u64,
            });
            (format!("n{states}_r{receivers}_c{candidates}"), inst, k)
        })
        .collect()
}

/// A plurality instance sized for the column-generation benchmark.
pub fn plurality_instance() -> Instance {
    gen_instance(&InstanceGenConfig {
        states: 3,
        receivers: 5,
        candidates: 3,
        rule: VotingRule::Plurality,
        prior: PriorKind::Random,
        seed: 99,
    })
}
