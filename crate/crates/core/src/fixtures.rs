//! Canonical small instances used across tests, benchmarks, and docs.

use crate::model::{Instance, Receiver, VotingRule};

/// Three voters, two candidates, three equally likely states. Voter `r`
/// values `c0` at +1 in "their" state and -1 elsewhere; `c1` is worth -1/4
/// everywhere. Under simple majority (k = 2) the optimal scheme wins with
/// probability 1 even though the no-signal and fully-informative baselines
/// both yield 0.
pub fn example1() -> Instance {
    let voter = |own: usize| Receiver {
        name: format!("v{}", own + 1),
        utility: (0..3)
            .map(|theta| {
                let c0 = if theta == own { 1.0 } else { -1.0 };
                vec![c0, -0.25]
            })
            .collect(),
    };
    Instance {
        states: vec!["A".into(), "B".into(), "C".into()],
        prior: vec![1.0 / 3.0; 3],
        candidates: vec!["c0".into(), "c1".into()],
        receivers: (0..3).map(voter).collect(),
        rule: VotingRule::KVoting { k: 2 },
        provenance: None,
    }
}

/// Two voters, two states, unanimity rule. Persuading voter `i` requires
/// posterior weight at least 2/3 on state `i`, which no shared posterior can
/// give both voters at once: private signaling achieves 1/2 while public
/// signaling achieves 0.
pub fn gap_instance() -> Instance {
    let voter = |own: usize| Receiver {
        name: format!("v{}", own + 1),
        utility: (0..2)
            .map(|theta| {
                let c0 = if theta == own { 1.0 } else { -2.0 };
                vec![c0, 0.0]
            })
            .collect(),
    };
    Instance {
        states: vec!["s1".into(), "s2".into()],
        prior: vec![0.5, 0.5],
        candidates: vec!["c0".into(), "c1".into()],
        receivers: (0..2).map(voter).collect(),
        rule: VotingRule::KVoting { k: 2 },
        provenance: None,
    }
}
