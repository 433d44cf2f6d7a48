//! Exact desk-scale public signaling, the subset-intersection hardness
//! reduction, and the k-voting/plurality padding reduction.
//!
//! Public direct signals are full recommendation profiles observed by every
//! voter, so persuasiveness is per signal: every recommendation must be a
//! best response under the posterior the signal induces. Unlike the private
//! case, all voters share one posterior per signal — that restriction is the
//! entire private/public gap.
//!
//! The primary solver decomposes each signal's obedience region into the
//! vertices of its posterior polytope `Q_s = {q in simplex : every voter
//! weakly prefers s_r under q}` and optimizes mass over (signal, vertex)
//! pairs subject to the prior-decomposition constraints. That is an exact
//! reformulation of the per-profile LP (every feasible `x(., s)` is a
//! nonnegative combination of `Q_s` vertices and vice versa) with only
//! `|states|` rows, which keeps the hardness-reduction instances tractable.
//! The literal per-profile LP is retained as [`solve_public_profile_lp`] and
//! cross-checked against the vertex route in tests.

use std::collections::{BTreeMap, BTreeSet};

use crate::lp::{solve_lp, LpProblem, LpStatus, Relation};
use crate::model::{
    next_profile, validate_instance, Instance, Profile, PublicScheme, Receiver, SenderUtility,
    VotingRule,
};
use crate::{Error, Result};

/// Cap on tight-constraint combinations per signal during vertex enumeration.
const VERTEX_COMBO_GUARD: usize = 2_000_000;

/// Optimal public value and scheme via posterior-vertex decomposition.
pub fn solve_public_exact(
    inst: &Instance,
    f: &SenderUtility,
    guard: usize,
) -> Result<(f64, PublicScheme)> {
    let report = validate_instance(inst);
    if !report.passed() {
        return Err(Error::InvalidInstance(report.violations.join("; ")));
    }
    let n = inst.num_states();
    let nr = inst.num_receivers();
    let nc = inst.num_candidates();
    let num_profiles = inst.num_profiles().ok_or(Error::SizeGuard {
        needed: usize::MAX,
        guard,
    })?;
    let needed = num_profiles.checked_mul(n).ok_or(Error::SizeGuard {
        needed: usize::MAX,
        guard,
    })?;
    if needed > guard {
        return Err(Error::SizeGuard { needed, guard });
    }

    // Columns: one per (signal, vertex of its posterior polytope).
    let mut columns: Vec<(Profile, Vec<f64>, f64)> = Vec::new();
    let mut profile = vec![0usize; nr];
    loop {
        let rows = obedience_rows(inst, &profile);
        for q in polytope_vertices(n, &rows)? {
            let mut obj = 0.0;
            for (theta, &w) in q.iter().enumerate() {
                if w > 0.0 {
                    obj += w * f.value_for_profile(theta, &profile, nc)?;
                }
            }
            columns.push((profile.clone(), q, obj));
        }
        if !next_profile(&mut profile, nc) {
            break;
        }
    }

    let mut lp = LpProblem::new(0);
    for (i, (_, _, obj)) in columns.iter().enumerate() {
        // Total mass is pinned to 1 through the prior rows; no upper bound.
        lp.add_var(format!("l{i}"), *obj, 0.0, f64::INFINITY);
    }
    for theta in 0..n {
        let coeffs: Vec<(usize, f64)> = columns
            .iter()
            .enumerate()
            .filter(|(_, (_, q, _))| q[theta] > 0.0)
            .map(|(i, (_, q, _))| (i, q[theta]))
            .collect();
        lp.add_constraint(coeffs, Relation::Eq, inst.prior[theta]);
    }
    let sol = solve_lp(&lp);
    if sol.status != LpStatus::Optimal {
        return Err(Error::LpFailed(sol.status));
    }

    let mut rows: Vec<BTreeMap<Profile, f64>> = vec![BTreeMap::new(); n];
    for ((profile, q, _), &mass) in columns.iter().zip(&sol.primal) {
        if mass <= 1e-12 {
            continue;
        }
        for (theta, &w) in q.iter().enumerate() {
            if w > 1e-15 {
                *rows[theta].entry(profile.clone()).or_insert(0.0) += mass * w / inst.prior[theta];
            }
        }
    }
    for row in &mut rows {
        let sum: f64 = row.values().sum();
        if sum > 0.0 {
            for p in row.values_mut() {
                *p /= sum;
            }
        }
    }
    let scheme = PublicScheme::new(nr, nc, rows)?;
    Ok((sol.objective, scheme))
}

/// The literal per-profile public LP: variables `x(theta, s)`, obedience rows
/// per `(s, r, c')` and mass rows per state. Exponentially many rows, kept at
/// desk scale as an independent cross-check of [`solve_public_exact`].
pub fn solve_public_profile_lp(
    inst: &Instance,
    f: &SenderUtility,
    guard: usize,
) -> Result<(f64, PublicScheme)> {
    let report = validate_instance(inst);
    if !report.passed() {
        return Err(Error::InvalidInstance(report.violations.join("; ")));
    }
    let n = inst.num_states();
    let nr = inst.num_receivers();
    let nc = inst.num_candidates();
    let num_profiles = inst.num_profiles().ok_or(Error::SizeGuard {
        needed: usize::MAX,
        guard,
    })?;
    let needed = num_profiles.checked_mul(n).ok_or(Error::SizeGuard {
        needed: usize::MAX,
        guard,
    })?;
    if needed > guard {
        return Err(Error::SizeGuard { needed, guard });
    }

    let mut lp = LpProblem::new(0);
    let var = |s_idx: usize, theta: usize| s_idx * n + theta;
    let mut profiles = Vec::with_capacity(num_profiles);
    let mut profile = vec![0usize; nr];
    loop {
        profiles.push(profile.clone());
        if !next_profile(&mut profile, nc) {
            break;
        }
    }
    for (s_idx, s) in profiles.iter().enumerate() {
        for theta in 0..n {
            let obj = f.value_for_profile(theta, s, nc)?;
            lp.add_var(format!("x_{s_idx}_{theta}"), obj, 0.0, f64::INFINITY);
        }
    }
    for (s_idx, s) in profiles.iter().enumerate() {
        for (r, &c) in s.iter().enumerate() {
            for alt in 0..nc {
                if alt == c {
                    continue;
                }
                let coeffs: Vec<(usize, f64)> = (0..n)
                    .map(|theta| {
                        (
                            var(s_idx, theta),
                            inst.utility(r, theta, c) - inst.utility(r, theta, alt),
                        )
                    })
                    .collect();
                lp.add_constraint(coeffs, Relation::Ge, 0.0);
            }
        }
    }
    for theta in 0..n {
        let coeffs: Vec<(usize, f64)> = (0..profiles.len())
            .map(|s_idx| (var(s_idx, theta), 1.0))
            .collect();
        lp.add_constraint(coeffs, Relation::Eq, inst.prior[theta]);
    }
    let sol = solve_lp(&lp);
    if sol.status != LpStatus::Optimal {
        return Err(Error::LpFailed(sol.status));
    }
    let mut rows: Vec<BTreeMap<Profile, f64>> = vec![BTreeMap::new(); n];
    for (s_idx, s) in profiles.iter().enumerate() {
        for theta in 0..n {
            let x = sol.primal[var(s_idx, theta)];
            if x > 1e-12 {
                *rows[theta].entry(s.clone()).or_insert(0.0) += x / inst.prior[theta];
            }
        }
    }
    for row in &mut rows {
        let sum: f64 = row.values().sum();
        if sum > 0.0 {
            for p in row.values_mut() {
                *p /= sum;
            }
        }
    }
    Ok((sol.objective, PublicScheme::new(nr, nc, rows)?))
}

/// Obedience inequalities of one public signal as dense rows over posteriors:
/// row `.` q >= 0 for every (receiver, alternative) pair.
fn obedience_rows(inst: &Instance, profile: &[usize]) -> Vec<Vec<f64>> {
    let n = inst.num_states();
    let nc = inst.num_candidates();
    let mut rows = Vec::new();
    for (r, &c) in profile.iter().enumerate() {
        for alt in 0..nc {
            if alt == c {
                continue;
            }
            rows.push(
                (0..n)
                    .map(|theta| inst.utility(r, theta, c) - inst.utility(r, theta, alt))
                    .collect(),
            );
        }
    }
    rows
}

/// Gaussian elimination with partial pivoting; `None` when singular.
fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot =
            (col..n).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        if a[pivot][col].abs() < 1e-11 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for i in 0..n {
            if i == col {
                continue;
            }
            let f = a[i][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for j in col..n {
                a[i][j] -= f * a[col][j];
            }
            b[i] -= f * b[col];
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

/// Vertices of `{q >= 0, sum q = 1, rows . q >= 0}`: every vertex has `n - 1`
/// tight inequalities on top of the simplex equality, so all combinations are
/// enumerated, solved, and filtered for feasibility. Deduplicated to 1e-8.
fn polytope_vertices(n: usize, rows: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let feasible = |q: &[f64]| {
        q.iter().all(|&x| x >= -1e-9)
            && rows
                .iter()
                .all(|row| row.iter().zip(q).map(|(a, x)| a * x).sum::<f64>() >= -1e-9)
    };
    if n == 1 {
        let q = vec![1.0];
        return Ok(if feasible(&q) { vec![q] } else { vec![] });
    }

    // Inequality t < n is `q_t >= 0`; t >= n is row `t - n`.
    let total = n + rows.len();
    let pick = n - 1;
    let combos = binomial_usize(total, pick).ok_or(Error::SizeGuard {
        needed: usize::MAX,
        guard: VERTEX_COMBO_GUARD,
    })?;
    if combos > VERTEX_COMBO_GUARD {
        return Err(Error::SizeGuard {
            needed: combos,
            guard: VERTEX_COMBO_GUARD,
        });
    }

    let mut vertices: Vec<Vec<f64>> = Vec::new();
    let mut combo: Vec<usize> = (0..pick).collect();
    loop {
        let mut a = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        a.push(vec![1.0; n]);
        b.push(1.0);
        for &t in &combo {
            if t < n {
                let mut row = vec![0.0; n];
                row[t] = 1.0;
                a.push(row);
            } else {
                a.push(rows[t - n].clone());
            }
            b.push(0.0);
        }
        if let Some(q) = solve_linear(a, b) {
            if feasible(&q)
                && !vertices
                    .iter()
                    .any(|v| v.iter().zip(&q).all(|(x, y)| (x - y).abs() < 1e-8))
            {
                let mut q = q;
                for x in q.iter_mut() {
                    *x = x.max(0.0);
                }
                vertices.push(q);
            }
        }
        if !next_combination(&mut combo, total) {
            break;
        }
    }
    Ok(vertices)
}

fn next_combination(combo: &mut [usize], total: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < total - (k - i) {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn binomial_usize(n: usize, k: usize) -> Option<usize> {
    let k = k.min(n - k);
    let mut result: usize = 1;
    for i in 0..k {
        result = result.checked_mul(n - i)?;
        result /= i + 1;
    }
    Some(result)
}

/// A maximum-k-subset-intersection instance: elements, a family of subsets
/// (as element-index sets), and the parameters `k` (sets picked) and `q`
/// (required intersection size).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MsiInstance {
    pub elements: Vec<String>,
    pub subsets: Vec<BTreeSet<usize>>,
    pub k: usize,
    pub q: usize,
}

impl MsiInstance {
    pub fn validate(&self) -> Result<()> {
        let n = self.elements.len();
        let m = self.subsets.len();
        if n == 0 || m == 0 {
            return Err(Error::BadParameter(
                "MSI instance needs elements and subsets".to_string(),
            ));
        }
        if self.k == 0 || self.k > m {
            return Err(Error::BadParameter(format!(
                "MSI k={} out of range 1..={m}",
                self.k
            )));
        }
        if self.q == 0 || self.q > n {
            return Err(Error::BadParameter(format!(
                "MSI q={} out of range 1..={n}",
                self.q
            )));
        }
        for (i, s) in self.subsets.iter().enumerate() {
            if s.iter().any(|&e| e >= n) {
                return Err(Error::BadParameter(format!(
                    "subset {i} references an element out of range"
                )));
            }
        }
        Ok(())
    }
}

/// Builds the public-signaling instance of the hardness reduction and returns
/// it with the winning threshold `k + m*q`.
///
/// One voter per subset (`+1` on `c0` in states of its elements, `-n^2`
/// elsewhere), `m` voters per element (`+1` in the element's own state,
/// `-1/(q-1)` elsewhere), `c1` worth 0 to everyone, uniform prior, and a
/// `(k + m*q)`-voting rule. Requires `q >= 2`: the element-voter penalty
/// divides by `q - 1`.
pub fn msi_reduce(msi: &MsiInstance) -> Result<(Instance, usize)> {
    msi.validate()?;
    if msi.q < 2 {
        return Err(Error::BadParameter(
            "the reduction needs q >= 2 (penalty -1/(q-1))".to_string(),
        ));
    }
    let n = msi.elements.len();
    let m = msi.subsets.len();
    let nsq = (n * n) as f64;
    let penalty = -1.0 / (msi.q as f64 - 1.0);

    let mut receivers = Vec::with_capacity(m + m * n);
    for (i, subset) in msi.subsets.iter().enumerate() {
        receivers.push(Receiver {
            name: format!("r_A{}", i + 1),
            utility: (0..n)
                .map(|e| vec![if subset.contains(&e) { 1.0 } else { -nsq }, 0.0])
                .collect(),
        });
    }
    for e in 0..n {
        for j in 0..m {
            receivers.push(Receiver {
                name: format!("r_{}_{}", msi.elements[e], j + 1),
                utility: (0..n)
                    .map(|ep| vec![if ep == e { 1.0 } else { penalty }, 0.0])
                    .collect(),
            });
        }
    }
    let threshold = msi.k + m * msi.q;
    let instance = Instance {
        states: msi.elements.iter().map(|e| format!("theta_{e}")).collect(),
        prior: vec![1.0 / n as f64; n],
        candidates: vec!["c0".into(), "c1".into()],
        receivers,
        rule: VotingRule::KVoting { k: threshold },
        provenance: Some(serde_json::json!({
            "reduction": "maximum-k-subset-intersection",
            "k": msi.k,
            "q": msi.q,
            "threshold": threshold,
            "subset_voters": m,
            "element_voters": m * n,
        })),
    };
    Ok((instance, threshold))
}

/// Decides the MSI instance by enumerating all `k`-subsets of the family.
/// Guarded by `C(m, k) <= guard`.
pub fn msi_brute(msi: &MsiInstance, guard: usize) -> Result<bool> {
    Ok(msi_max_witness(msi, guard)? >= msi.q)
}

/// Largest intersection size attainable by exactly `k` of the subsets.
pub fn msi_max_witness(msi: &MsiInstance, guard: usize) -> Result<usize> {
    msi.validate()?;
    let m = msi.subsets.len();
    let combos = binomial_usize(m, msi.k).ok_or(Error::SizeGuard {
        needed: usize::MAX,
        guard,
    })?;
    if combos > guard {
        return Err(Error::SizeGuard {
            needed: combos,
            guard,
        });
    }
    let mut best = 0usize;
    let mut combo: Vec<usize> = (0..msi.k).collect();
    loop {
        let mut intersection = msi.subsets[combo[0]].clone();
        for &i in &combo[1..] {
            intersection = intersection
                .intersection(&msi.subsets[i])
                .copied()
                .collect();
        }
        best = best.max(intersection.len());
        if !next_combination(&mut combo, m) {
            break;
        }
    }
    Ok(best)
}

/// Pads a two-candidate k-voting instance into an equivalent plurality
/// instance: with `k* = floor(|R|/2) + 1`, thresholds above `k*` get
/// `2k - |R| - 1` voters who strictly prefer `c1` in every state, thresholds
/// below get `|R| + 1 - 2k` voters who strictly prefer `c0`, and `k = k*`
/// needs no padding. Padded voters have state-independent payoffs (1 for
/// their candidate, 0 for the other), so every persuasive scheme gives them
/// their dominant candidate and `c0` wins the padded plurality vote iff it
/// won the original k-vote.
pub fn pad_kv_to_plurality(inst: &Instance, k: usize) -> Result<Instance> {
    let report = validate_instance(inst);
    if !report.passed() {
        return Err(Error::InvalidInstance(report.violations.join("; ")));
    }
    if inst.num_candidates() != 2 {
        return Err(Error::BadParameter(
            "padding requires exactly two candidates".to_string(),
        ));
    }
    let nr = inst.num_receivers();
    if k == 0 || k > nr {
        return Err(Error::BadParameter(format!("k={k} out of range 1..={nr}")));
    }
    let k_star = nr / 2 + 1;
    let mut padded = inst.clone();
    padded.rule = VotingRule::Plurality;
    let n = inst.num_states();
    let add_voters = |padded: &mut Instance, count: usize, candidate: usize| {
        for i in 0..count {
            let mut util = vec![0.0; 2];
            util[candidate] = 1.0;
            padded.receivers.push(Receiver {
                name: format!("pad_c{candidate}_{}", i + 1),
                utility: vec![util; n],
            });
        }
    };
    use std::cmp::Ordering;
    match k.cmp(&k_star) {
        Ordering::Greater => add_voters(&mut padded, 2 * k - nr - 1, 1),
        Ordering::Less => add_voters(&mut padded, nr + 1 - 2 * k, 0),
        Ordering::Equal => {}
    }
    Ok(padded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{check_persuasive_public, sender_value_public};
    use crate::DEFAULT_COLUMN_GUARD;

    fn tiny_msi() -> MsiInstance {
        MsiInstance {
            elements: vec!["e1".into(), "e2".into()],
            subsets: vec![BTreeSet::from([0, 1]), BTreeSet::from([0])],
            k: 1,
            q: 2,
        }
    }

    #[test]
    fn example1_public_value_is_one() {
        let inst = fixtures::example1();
        let f = SenderUtility::RuleValue(VotingRule::KVoting { k: 2 });
        let (value, scheme) = solve_public_exact(&inst, &f, DEFAULT_COLUMN_GUARD).unwrap();
        assert!((value - 1.0).abs() < 1e-7, "value {value}");
        let report = check_persuasive_public(&inst, &scheme, 1e-6).unwrap();
        assert!(report.persuasive, "worst {}", report.worst_slack);
        let recomputed = sender_value_public(&inst, &f, &scheme).unwrap();
        assert!((recomputed - 1.0).abs() < 1e-7);
    }

    #[test]
    fn vertex_route_matches_profile_lp_on_example1() {
        let inst = fixtures::example1();
        let f = SenderUtility::RuleValue(VotingRule::KVoting { k: 2 });
        let (v1, _) = solve_public_exact(&inst, &f, DEFAULT_COLUMN_GUARD).unwrap();
        let (v2, scheme2) = solve_public_profile_lp(&inst, &f, DEFAULT_COLUMN_GUARD).unwrap();
        assert!((v1 - v2).abs() < 1e-7, "vertex {v1} vs profile LP {v2}");
        assert!(
            check_persuasive_public(&inst, &scheme2, 1e-6)
                .unwrap()
                .persuasive
        );
    }

    #[test]
    fn gap_instance_public_zero() {
        let inst = fixtures::gap_instance();
        let f = SenderUtility::RuleValue(VotingRule::KVoting { k: 2 });
        let (value, _) = solve_public_exact(&inst, &f, DEFAULT_COLUMN_GUARD).unwrap();
        assert!(value.abs() <= 1e-7, "public value {value}");
        let (private, _) =
            crate::colgen::solve_private_exact(&inst, &f, DEFAULT_COLUMN_GUARD).unwrap();
        assert!((private - 0.5).abs() < 1e-6, "private value {private}");
    }

    #[test]
    fn single_state_public_equals_informative() {
        let inst = Instance {
            states: vec!["s".into()],
            prior: vec![1.0],
            candidates: vec!["c0".into(), "c1".into()],
            receivers: vec![
                Receiver {
                    name: "a".into(),
                    utility: vec![vec![1.0, 0.0]],
                },
                Receiver {
                    name: "b".into(),
                    utility: vec![vec![-1.0, 0.0]],
                },
            ],
            rule: VotingRule::KVoting { k: 1 },
            provenance: None,
        };
        let f = SenderUtility::RuleValue(VotingRule::KVoting { k: 1 });
        let (public, _) = solve_public_exact(&inst, &f, 1000).unwrap();
        let (private, _) = crate::colgen::solve_private_exact(&inst, &f, 1000).unwrap();
        assert!((public - 1.0).abs() < 1e-9);
        assert!((public - private).abs() < 1e-9);
    }

    #[test]
    fn msi_reduce_mapping_counts() {
        let msi = tiny_msi();
        let (inst, threshold) = msi_reduce(&msi).unwrap();
        assert_eq!(inst.num_receivers(), 6);
        assert_eq!(inst.num_states(), 2);
        assert_eq!(threshold, 5);
        assert_eq!(inst.rule, VotingRule::KVoting { k: 5 });
        // r_A2 in state theta_e2: e2 not in A2 so payoff is -n^2 = -4.
        assert_eq!(inst.utility(1, 1, 0), -4.0);
        // Element voters: -1/(q-1) = -1 off their own state.
        assert_eq!(inst.utility(2, 1, 0), -1.0);
        assert_eq!(inst.utility(2, 0, 0), 1.0);
        // c1 is worth 0 to everyone.
        for r in 0..6 {
            for theta in 0..2 {
                assert_eq!(inst.utility(r, theta, 1), 0.0);
            }
        }
        assert!(validate_instance(&inst).passed());
    }

    #[test]
    fn msi_reduce_rejects_q1() {
        let mut msi = tiny_msi();
        msi.q = 1;
        assert!(matches!(msi_reduce(&msi), Err(Error::BadParameter(_))));
    }

    #[test]
    fn msi_brute_examples() {
        let msi = tiny_msi();
        assert!(msi_brute(&msi, 1000).unwrap());
        let pair = MsiInstance { k: 2, ..tiny_msi() };
        assert!(!msi_brute(&pair, 1000).unwrap());
        let q1 = MsiInstance { q: 1, ..tiny_msi() };
        assert!(msi_brute(&q1, 1000).unwrap());
    }

    #[test]
    fn msi_yes_instance_has_positive_public_value() {
        let msi = tiny_msi();
        let (inst, _) = msi_reduce(&msi).unwrap();
        let f = SenderUtility::RuleValue(inst.rule.clone());
        let (value, scheme) = solve_public_exact(&inst, &f, DEFAULT_COLUMN_GUARD).unwrap();
        // Witness intersection {e1, e2} has size 2 out of n = 2 states.
        assert!(value >= 2.0 / 2.0 - 1e-7, "value {value}");
        assert!(
            check_persuasive_public(&inst, &scheme, 1e-6)
                .unwrap()
                .persuasive
        );
    }

    #[test]
    fn padding_voter_counts() {
        let inst = fixtures::example1();
        let up = pad_kv_to_plurality(&inst, 3).unwrap();
        assert_eq!(up.num_receivers(), 5);
        assert!(up.receivers[4].utility[0] == vec![0.0, 1.0]);
        let down = pad_kv_to_plurality(&inst, 1).unwrap();
        assert_eq!(down.num_receivers(), 5);
        assert!(down.receivers[4].utility[0] == vec![1.0, 0.0]);
        let same = pad_kv_to_plurality(&inst, 2).unwrap();
        assert_eq!(same.num_receivers(), 3);
        assert_eq!(same.rule, VotingRule::Plurality);
    }

    #[test]
    fn padding_preserves_optimum_on_example1() {
        let inst = fixtures::example1();
        for k in 1..=3usize {
            let padded = pad_kv_to_plurality(&inst, k).unwrap();
            let f = SenderUtility::RuleValue(VotingRule::Plurality);
            let (padded_value, _) =
                crate::colgen::solve_private_exact(&padded, &f, DEFAULT_COLUMN_GUARD).unwrap();
            let original = crate::kvoting::solve_private_kvoting(&inst, k).unwrap();
            assert!(
                (padded_value - original.value).abs() < 1e-6,
                "k={k}: padded {padded_value} vs original {}",
                original.value
            );
        }
    }
}
