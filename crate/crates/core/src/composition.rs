//! Constructive scheme composition: complete `c0` marginals into full
//! persuasive marginals, rewrite a joint scheme to match improved marginals
//! without losing column mass or sender value, and couple `c0` marginals into
//! a profile distribution attaining the k-voting win-probability bound.

use std::collections::BTreeMap;

use crate::lp::{solve_lp, LpProblem, LpStatus, Relation};
use crate::model::{
    best_response, best_response_excluding_c0, next_profile, point_mass, validate_instance,
    Instance, JointScheme, MarginalScheme, Profile,
};
use crate::{Error, Result};

/// Per-receiver record of one marginal-lifting sweep.
#[derive(Debug, Clone)]
pub struct ReceiverTrace {
    /// Opponent profiles in the order they were visited (lexicographic).
    pub order: Vec<Profile>,
    /// `residuals[theta][i]` is the undistributed `c0` mass after visiting
    /// `order[..i]`; index 0 holds the initial deficit. The final entry is 0
    /// whenever the dominance precondition holds.
    pub residuals: Vec<Vec<f64>>,
    /// Largest change in any column's total mass during this sweep; the
    /// update rule preserves column mass, so this is pure float noise.
    pub max_column_drift: f64,
}

/// Full trace of a [`compose_joint`] run.
#[derive(Debug, Clone)]
pub struct CompositionTrace {
    pub receivers: Vec<ReceiverTrace>,
}

/// Completes `c0` marginals into a full marginal scheme: for each
/// `(r, theta)` the leftover `1 - phi_r(theta, c0)` goes to the tie-broken
/// per-state best response. When `c0` itself is the best response the two
/// masses merge on `c0`.
pub fn complete_marginals(inst: &Instance, c0mass: &[Vec<f64>]) -> Result<MarginalScheme> {
    let nr = inst.num_receivers();
    let n = inst.num_states();
    let nc = inst.num_candidates();
    if c0mass.len() != nr || c0mass.iter().any(|per_state| per_state.len() != n) {
        return Err(Error::DimensionMismatch(
            "c0 mass table must be receivers x states".to_string(),
        ));
    }
    let mut probs = vec![vec![vec![0.0; nc]; n]; nr];
    for r in 0..nr {
        for theta in 0..n {
            let mass = c0mass[r][theta].clamp(0.0, 1.0);
            let best = best_response(inst, r, &point_mass(n, theta));
            probs[r][theta][0] = mass;
            probs[r][theta][best] += 1.0 - mass;
        }
    }
    MarginalScheme::new(probs)
}

/// Lifts a joint scheme so its marginals match `targets`, visiting receivers
/// in order and, per receiver, opponent profiles lexicographically: the `c0`
/// entry of each column is raised by the remaining deficit clamped at the
/// column mass, and the rest of the column is redistributed proportionally to
/// the target's non-`c0` marginals. Column mass is preserved at every step,
/// so persuasiveness of `targets` carries over to the output, and under a
/// k-voting rule the sender value never decreases.
///
/// Requires `targets`' `c0` marginals to dominate the base scheme's
/// (`Error::DominanceViolated` otherwise) and `|C|^|R| <= guard`.
pub fn compose_joint(
    inst: &Instance,
    base: &JointScheme,
    targets: &MarginalScheme,
    guard: usize,
) -> Result<(JointScheme, CompositionTrace)> {
    let report = validate_instance(inst);
    if !report.passed() {
        return Err(Error::InvalidInstance(report.violations.join("; ")));
    }
    let nr = inst.num_receivers();
    let nc = inst.num_candidates();
    let n = inst.num_states();
    if base.num_receivers != nr
        || base.num_candidates != nc
        || base.num_states() != n
        || targets.num_receivers() != nr
        || targets.num_states() != n
        || targets.num_candidates() != nc
    {
        return Err(Error::DimensionMismatch(
            "base scheme and targets must match the instance".to_string(),
        ));
    }
    let num_profiles = inst.num_profiles().ok_or(Error::SizeGuard {
        needed: usize::MAX,
        guard,
    })?;
    if num_profiles > guard {
        return Err(Error::SizeGuard {
            needed: num_profiles,
            guard,
        });
    }

    let base_marginals = crate::model::marginals_of(base);
    for r in 0..nr {
        for theta in 0..n {
            let target = targets.probs[r][theta][0];
            let have = base_marginals.probs[r][theta][0];
            if target < have - 1e-9 {
                return Err(Error::DominanceViolated {
                    receiver: r,
                    state: theta,
                    target,
                    base: have,
                });
            }
        }
    }

    // Densify: x[theta][profile_index].
    let mut x = vec![vec![0.0; num_profiles]; n];
    for (theta, row) in base.rows.iter().enumerate() {
        for (profile, &p) in row {
            x[theta][profile_index(profile, nc)] += p;
        }
    }

    let opp_count = num_profiles / nc;
    let mut traces = Vec::with_capacity(nr);
    for r in 0..nr {
        // Current c0 marginal of receiver r, recomputed from the scheme.
        let mut deficits: Vec<f64> = (0..n)
            .map(|theta| {
                let mut current = 0.0;
                let mut opp = vec![0usize; nr - 1];
                for _ in 0..opp_count.max(1) {
                    current += x[theta][full_index(r, 0, &opp, nc)];
                    if nr == 1 || !next_profile(&mut opp, nc) {
                        break;
                    }
                }
                (targets.probs[r][theta][0] - current).max(0.0)
            })
            .collect();

        let mut order = Vec::with_capacity(opp_count);
        let mut residuals: Vec<Vec<f64>> = deficits.iter().map(|&d| vec![d]).collect();
        let mut max_column_drift: f64 = 0.0;

        let mut opp = vec![0usize; nr.saturating_sub(1)];
        for _ in 0..opp_count.max(1) {
            order.push(opp.clone());
            for theta in 0..n {
                let c0_idx = full_index(r, 0, &opp, nc);
                let column_mass: f64 = (0..nc).map(|c| x[theta][full_index(r, c, &opp, nc)]).sum();
                let old_c0 = x[theta][c0_idx];
                let new_c0 = (old_c0 + deficits[theta]).min(column_mass);
                deficits[theta] -= new_c0 - old_c0;
                x[theta][c0_idx] = new_c0;
                let rest = (column_mass - new_c0).max(0.0);
                let denom: f64 = targets.probs[r][theta][1..].iter().sum();
                for c in 1..nc {
                    let idx = full_index(r, c, &opp, nc);
                    // When the target puts everything on c0 the column rest is
                    // zero too; define the 0/0 share as 0.
                    x[theta][idx] = if denom > 1e-15 {
                        targets.probs[r][theta][c] * rest / denom
                    } else {
                        0.0
                    };
                }
                let after: f64 = (0..nc).map(|c| x[theta][full_index(r, c, &opp, nc)]).sum();
                max_column_drift = max_column_drift.max((after - column_mass).abs());
                residuals[theta].push(deficits[theta]);
            }
            if nr == 1 || !next_profile(&mut opp, nc) {
                break;
            }
        }
        traces.push(ReceiverTrace {
            order,
            residuals,
            max_column_drift,
        });
    }

    let mut rows: Vec<BTreeMap<Profile, f64>> = Vec::with_capacity(n);
    for theta in 0..n {
        let mut row = BTreeMap::new();
        let mut sum = 0.0;
        for (idx, &p) in x[theta].iter().enumerate() {
            if p > 1e-15 {
                row.insert(index_profile(idx, nr, nc), p);
                sum += p;
            }
        }
        if sum > 0.0 {
            for p in row.values_mut() {
                *p /= sum;
            }
        }
        rows.push(row);
    }
    let scheme = JointScheme::new(nr, nc, rows)?;
    Ok((scheme, CompositionTrace { receivers: traces }))
}

/// Lexicographic index of a full profile.
pub fn profile_index(profile: &[usize], num_candidates: usize) -> usize {
    profile.iter().fold(0, |acc, &c| acc * num_candidates + c)
}

/// Inverse of [`profile_index`].
pub fn index_profile(mut idx: usize, num_receivers: usize, num_candidates: usize) -> Profile {
    let mut profile = vec![0usize; num_receivers];
    for slot in profile.iter_mut().rev() {
        *slot = idx % num_candidates;
        idx /= num_candidates;
    }
    profile
}

/// Index of the full profile assembled from receiver `r` playing `c` and the
/// remaining receivers playing `opp` (in receiver order, skipping `r`).
fn full_index(r: usize, c: usize, opp: &[usize], num_candidates: usize) -> usize {
    let mut acc = 0usize;
    let mut opp_iter = opp.iter();
    let total = opp.len() + 1;
    for pos in 0..total {
        let digit = if pos == r {
            c
        } else {
            *opp_iter.next().expect("opp digit")
        };
        acc = acc * num_candidates + digit;
    }
    acc
}

/// A distribution over profiles matching the given per-receiver `c0`
/// probabilities in one state while maximizing the chance that at least `k`
/// receivers play `c0`.
#[derive(Debug, Clone)]
pub struct Coupling {
    pub profiles: Vec<(Profile, f64)>,
    pub success_probability: f64,
}

/// Solves the coupling LP over the `2^|R|` indicator sets of who receives
/// `c0` (non-`c0` receivers get their best response among the other
/// candidates, which leaves the k-voting objective untouched). The optimum
/// equals [`crate::kvoting::beta_from_marginals`] on the same slice.
pub fn couple_for_kvoting(
    inst: &Instance,
    theta: usize,
    c0slice: &[f64],
    k: usize,
    guard: usize,
) -> Result<Coupling> {
    let nr = inst.num_receivers();
    if c0slice.len() != nr {
        return Err(Error::DimensionMismatch(
            "c0 slice must have one entry per receiver".to_string(),
        ));
    }
    if k == 0 || k > nr {
        return Err(Error::BadParameter(format!("k={k} out of range 1..={nr}")));
    }
    if theta >= inst.num_states() {
        return Err(Error::BadParameter(format!("state {theta} out of range")));
    }
    let num_sets = 1usize
        .checked_shl(nr as u32)
        .filter(|&s| s <= guard)
        .ok_or(Error::SizeGuard {
            needed: usize::MAX,
            guard,
        })?;

    let mut lp = LpProblem::new(0);
    for set in 0..num_sets {
        let wins = (set as u64).count_ones() as usize >= k;
        // Bounded above by the total-mass row.
        lp.add_var(
            format!("p_{set:b}"),
            if wins { 1.0 } else { 0.0 },
            0.0,
            f64::INFINITY,
        );
    }
    lp.add_constraint((0..num_sets).map(|s| (s, 1.0)).collect(), Relation::Eq, 1.0);
    for r in 0..nr {
        let coeffs: Vec<(usize, f64)> = (0..num_sets)
            .filter(|set| set & (1 << r) != 0)
            .map(|set| (set, 1.0))
            .collect();
        lp.add_constraint(coeffs, Relation::Eq, c0slice[r].clamp(0.0, 1.0));
    }
    let sol = solve_lp(&lp);
    if sol.status != LpStatus::Optimal {
        return Err(Error::LpFailed(sol.status));
    }

    let posterior = point_mass(inst.num_states(), theta);
    let fallback: Vec<usize> = (0..nr)
        .map(|r| best_response_excluding_c0(inst, r, &posterior))
        .collect();
    let mut profiles = Vec::new();
    for (set, &p) in sol.primal.iter().enumerate() {
        if p > 1e-12 {
            let profile: Profile = (0..nr)
                .map(|r| if set & (1 << r) != 0 { 0 } else { fallback[r] })
                .collect();
            profiles.push((profile, p));
        }
    }
    Ok(Coupling {
        profiles,
        success_probability: sol.objective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::kvoting::beta_from_marginals;
    use crate::model::{
        check_persuasive_joint, check_persuasive_marginal, marginals_of, product_of_marginals,
        SenderUtility, VotingRule,
    };
    use crate::DEFAULT_COLUMN_GUARD;

    #[test]
    fn complete_marginals_example1() {
        let inst = fixtures::example1();
        // Voter 1's best response in state B is c1.
        let mut c0 = vec![vec![0.0; 3]; 3];
        c0[0][0] = 1.0;
        c0[0][1] = 5.0 / 6.0;
        let m = complete_marginals(&inst, &c0).unwrap();
        assert_eq!(m.probs[0][0], vec![1.0, 0.0]);
        assert!((m.probs[0][1][1] - 1.0 / 6.0).abs() < 1e-12);
        // Zero c0 mass: fully informative best-response marginals.
        let zero = vec![vec![0.0; 3]; 3];
        let m0 = complete_marginals(&inst, &zero).unwrap();
        assert_eq!(m0.probs[1][1], vec![1.0, 0.0]); // own state: c0 best
        assert_eq!(m0.probs[1][0], vec![0.0, 1.0]); // elsewhere: c1 best
    }

    #[test]
    fn compose_identity_when_targets_match_base() {
        let inst = fixtures::example1();
        let profiles: Vec<Profile> = (0..3)
            .map(|t| crate::model::informative_profile(&inst, t))
            .collect();
        let base = JointScheme::deterministic(3, 2, profiles).unwrap();
        let targets = marginals_of(&base);
        let (out, trace) = compose_joint(&inst, &base, &targets, DEFAULT_COLUMN_GUARD).unwrap();
        let f = SenderUtility::RuleValue(VotingRule::KVoting { k: 2 });
        let v_base = crate::model::sender_value(&inst, &f, &base).unwrap();
        let v_out = crate::model::sender_value(&inst, &f, &out).unwrap();
        assert!((v_base - v_out).abs() < 1e-12);
        let back = marginals_of(&out);
        for r in 0..3 {
            for theta in 0..3 {
                for c in 0..2 {
                    assert!((back.probs[r][theta][c] - targets.probs[r][theta][c]).abs() < 1e-9);
                }
            }
        }
        for rt in &trace.receivers {
            for res in &rt.residuals {
                assert!(res.iter().all(|&d| d.abs() < 1e-9));
            }
        }
    }

    #[test]
    fn compose_two_receivers_uniform_base() {
        // Single state, two receivers, uniform base (marginals 1/2), targets 3/4.
        let inst = Instance {
            states: vec!["s".into()],
            prior: vec![1.0],
            candidates: vec!["c0".into(), "c1".into()],
            receivers: (0..2)
                .map(|i| crate::model::Receiver {
                    name: format!("r{i}"),
                    utility: vec![vec![1.0, 0.0]],
                })
                .collect(),
            rule: VotingRule::KVoting { k: 2 },
            provenance: None,
        };
        let uniform_row: BTreeMap<Profile, f64> =
            (0..4).map(|i| (vec![(i >> 1) & 1, i & 1], 0.25)).collect();
        let base = JointScheme::new(2, 2, vec![uniform_row]).unwrap();
        let targets =
            MarginalScheme::new(vec![vec![vec![0.75, 0.25]], vec![vec![0.75, 0.25]]]).unwrap();
        let (out, _) = compose_joint(&inst, &base, &targets, 100).unwrap();
        let back = marginals_of(&out);
        assert!((back.probs[0][0][0] - 0.75).abs() < 1e-9);
        assert!((back.probs[1][0][0] - 0.75).abs() < 1e-9);
        let total: f64 = out.rows[0].values().sum();
        assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn compose_single_receiver_returns_target() {
        let inst = Instance {
            states: vec!["s".into()],
            prior: vec![1.0],
            candidates: vec!["c0".into(), "c1".into()],
            receivers: vec![crate::model::Receiver {
                name: "r".into(),
                utility: vec![vec![1.0, 0.0]],
            }],
            rule: VotingRule::KVoting { k: 1 },
            provenance: None,
        };
        let base = JointScheme::deterministic(1, 2, vec![vec![1]]).unwrap();
        let targets = MarginalScheme::new(vec![vec![vec![0.6, 0.4]]]).unwrap();
        let (out, _) = compose_joint(&inst, &base, &targets, 100).unwrap();
        assert!((out.rows[0][&vec![0]] - 0.6).abs() < 1e-12);
        assert!((out.rows[0][&vec![1]] - 0.4).abs() < 1e-12);
    }

    #[test]
    fn dominance_violation_detected() {
        let inst = fixtures::example1();
        let base = JointScheme::deterministic(3, 2, vec![vec![0, 0, 0]; 3]).unwrap();
        let targets = complete_marginals(&inst, &vec![vec![0.5; 3]; 3]).unwrap();
        assert!(matches!(
            compose_joint(&inst, &base, &targets, DEFAULT_COLUMN_GUARD),
            Err(Error::DominanceViolated { .. })
        ));
    }

    #[test]
    fn compose_preserves_persuasiveness_and_value() {
        // Lift the fully informative scheme to the optimal k=2 marginals.
        let inst = fixtures::example1();
        let sol = crate::kvoting::solve_private_kvoting(&inst, 2).unwrap();
        let targets = complete_marginals(&inst, &sol.c0_marginals).unwrap();
        assert!(
            check_persuasive_marginal(&inst, &targets, 1e-7)
                .unwrap()
                .persuasive
        );
        let base_marginals = complete_marginals(&inst, &vec![vec![0.0; 3]; 3]).unwrap();
        let base = product_of_marginals(&base_marginals).unwrap();
        let (out, _) = compose_joint(&inst, &base, &targets, DEFAULT_COLUMN_GUARD).unwrap();
        let report = check_persuasive_joint(&inst, &out, 1e-6).unwrap();
        assert!(report.persuasive, "worst {}", report.worst_slack);
        // The sweep promises marginal match and no value loss, not optimal
        // coupling of the improved marginals.
        let f = SenderUtility::RuleValue(VotingRule::KVoting { k: 2 });
        let v = crate::model::sender_value(&inst, &f, &out).unwrap();
        assert!(v >= crate::model::sender_value(&inst, &f, &base).unwrap() - 1e-9);
        let lifted = marginals_of(&out);
        for r in 0..3 {
            for theta in 0..3 {
                assert!((lifted.probs[r][theta][0] - targets.probs[r][theta][0]).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn coupling_matches_beta_examples() {
        let inst = fixtures::example1();
        let cases: Vec<(Vec<f64>, usize, f64)> = vec![
            (vec![1.0, 5.0 / 6.0, 5.0 / 6.0], 2, 1.0),
            (vec![0.5, 0.5, 0.0], 2, 0.5),
            (vec![0.5, 0.5, 0.0], 1, 1.0),
        ];
        for (slice, k, expected) in cases {
            let coupling = couple_for_kvoting(&inst, 0, &slice, k, 1024).unwrap();
            assert!(
                (coupling.success_probability - expected).abs() < 1e-7,
                "slice {slice:?} k={k}: got {}",
                coupling.success_probability
            );
            assert!((coupling.success_probability - beta_from_marginals(&slice, k)).abs() < 1e-7);
            // Marginals of the coupling match the slice.
            for r in 0..3 {
                let got: f64 = coupling
                    .profiles
                    .iter()
                    .filter(|(p, _)| p[r] == 0)
                    .map(|(_, prob)| prob)
                    .sum();
                assert!((got - slice[r]).abs() < 1e-9, "r={r}");
            }
        }
    }
}
