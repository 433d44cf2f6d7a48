//! Domain types for persuasion instances and signaling schemes, plus the
//! evaluation and verification primitives shared by every solver.
//!
//! Conventions used throughout the crate:
//! * candidates are indexed `0..num_candidates`, index 0 is the sender's
//!   candidate `c0`;
//! * an action profile is a `Vec<usize>` of candidate indices, one per
//!   receiver, in receiver order;
//! * schemes store probabilities per state; rows must sum to 1.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Row-sum tolerance for probability tables.
pub const PROB_TOL: f64 = 1e-9;

/// One candidate recommendation per receiver.
pub type Profile = Vec<usize>;

/// A voter: display name plus `utility[state][candidate]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Receiver {
    pub name: String,
    pub utility: Vec<Vec<f64>>,
}

/// The electoral rule deciding whether `c0` wins a vote profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum VotingRule {
    /// `c0` wins iff it receives at least `k` votes.
    #[serde(rename = "k-voting")]
    KVoting { k: usize },
    /// `c0` wins iff it receives strictly more votes than every other candidate.
    #[serde(rename = "plurality")]
    Plurality,
}

/// A persuasion instance: states with a common prior, candidates (index 0 is
/// the sender's), voters with per-state per-candidate utilities, and the rule.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Instance {
    pub states: Vec<String>,
    pub prior: Vec<f64>,
    pub candidates: Vec<String>,
    pub receivers: Vec<Receiver>,
    pub rule: VotingRule,
    /// Optional metadata, e.g. the mapping emitted by the MSI reduction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<serde_json::Value>,
}

impl Instance {
    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_candidates(&self) -> usize {
        self.candidates.len()
    }

    pub fn num_receivers(&self) -> usize {
        self.receivers.len()
    }

    /// `u_r(theta, c)`.
    #[inline]
    pub fn utility(&self, receiver: usize, state: usize, candidate: usize) -> f64 {
        self.receivers[receiver].utility[state][candidate]
    }

    /// Number of joint recommendation profiles, `|C|^|R|`, if representable.
    pub fn num_profiles(&self) -> Option<usize> {
        let mut total: usize = 1;
        for _ in 0..self.num_receivers() {
            total = total.checked_mul(self.num_candidates())?;
        }
        Some(total)
    }

    /// Validates and returns the instance, for use at load boundaries.
    pub fn checked(self) -> Result<Self> {
        let report = validate_instance(&self);
        if report.passed() {
            Ok(self)
        } else {
            Err(Error::InvalidInstance(report.violations.join("; ")))
        }
    }
}

/// Outcome of [`validate_instance`]: empty `violations` means the instance is
/// well formed.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every structural invariant and reports all violations at once.
pub fn validate_instance(inst: &Instance) -> ValidationReport {
    let mut v = Vec::new();
    let n = inst.num_states();
    let ell1 = inst.num_candidates();
    let nr = inst.num_receivers();

    if n == 0 {
        v.push("instance must have at least one state".to_string());
    }
    if nr == 0 {
        v.push("instance must have at least one receiver".to_string());
    }
    if ell1 < 2 {
        v.push("instance must have at least two candidates".to_string());
    }
    if inst.prior.len() != n {
        v.push(format!(
            "prior has {} entries but there are {} states",
            inst.prior.len(),
            n
        ));
    } else {
        let sum: f64 = inst.prior.iter().sum();
        if (sum - 1.0).abs() > PROB_TOL {
            v.push(format!("prior sums to {sum}, expected 1"));
        }
        for (i, &p) in inst.prior.iter().enumerate() {
            if p.is_nan() || p <= 0.0 {
                v.push(format!("prior[{i}] = {p} is not strictly positive"));
            }
        }
    }
    for (r, recv) in inst.receivers.iter().enumerate() {
        if recv.utility.len() != n {
            v.push(format!(
                "receiver {r} has a utility table over {} states, expected {n}",
                recv.utility.len()
            ));
            continue;
        }
        for (theta, row) in recv.utility.iter().enumerate() {
            if row.len() != ell1 {
                v.push(format!(
                    "receiver {r}, state {theta}: {} utilities, expected {ell1}",
                    row.len()
                ));
            } else if row.iter().any(|x| !x.is_finite()) {
                v.push(format!("receiver {r}, state {theta}: non-finite utility"));
            }
        }
    }
    if let VotingRule::KVoting { k } = inst.rule {
        if k == 0 || k > nr {
            v.push(format!("k-voting threshold k={k} out of range 1..={nr}"));
        }
    }
    ValidationReport { violations: v }
}

/// Sender's utility: either the 0/1 win indicator of a voting rule, or an
/// arbitrary anonymous function of the per-candidate vote counts.
#[derive(Debug, Clone)]
pub enum SenderUtility {
    RuleValue(VotingRule),
    Anonymous(AnonymousUtility),
}

/// Per-state map from candidate-count vectors (summing to `|R|`) to values.
#[derive(Debug, Clone)]
pub struct AnonymousUtility {
    /// `per_state[theta][counts] = f_theta(counts)`; must be total over all
    /// count vectors summing to the number of receivers.
    pub per_state: Vec<BTreeMap<Vec<usize>, f64>>,
}

impl AnonymousUtility {
    /// Verifies the maps are total over all compositions of `num_receivers`
    /// into `num_candidates` parts.
    pub fn validate(&self, num_receivers: usize, num_candidates: usize) -> Result<()> {
        let comps = crate::colgen::enumerate_compositions(num_receivers, num_candidates)?;
        for (theta, map) in self.per_state.iter().enumerate() {
            if map.len() != comps.len() {
                return Err(Error::DimensionMismatch(format!(
                    "anonymous utility for state {theta} has {} count vectors, expected {}",
                    map.len(),
                    comps.len()
                )));
            }
            for comp in &comps {
                if !map.contains_key(comp) {
                    return Err(Error::DimensionMismatch(format!(
                        "anonymous utility for state {theta} is missing counts {comp:?}"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl SenderUtility {
    /// `f_theta` evaluated on a count vector.
    pub fn value_for_counts(&self, state: usize, counts: &[usize]) -> Result<f64> {
        match self {
            SenderUtility::RuleValue(rule) => Ok(if rule_wins(rule, counts) { 1.0 } else { 0.0 }),
            SenderUtility::Anonymous(anon) => anon
                .per_state
                .get(state)
                .and_then(|m| m.get(counts))
                .copied()
                .ok_or_else(|| {
                    Error::DimensionMismatch(format!(
                        "anonymous utility undefined for state {state}, counts {counts:?}"
                    ))
                }),
        }
    }

    /// `f_theta` evaluated on a full profile.
    pub fn value_for_profile(
        &self,
        state: usize,
        profile: &[usize],
        num_candidates: usize,
    ) -> Result<f64> {
        let counts = delta_counts(profile, num_candidates)?;
        self.value_for_counts(state, &counts)
    }
}

/// Builds the anonymous encoding of a voting rule's win indicator.
pub fn anonymous_from_rule(
    rule: &VotingRule,
    num_states: usize,
    num_receivers: usize,
    num_candidates: usize,
) -> Result<AnonymousUtility> {
    let comps = crate::colgen::enumerate_compositions(num_receivers, num_candidates)?;
    let map: BTreeMap<Vec<usize>, f64> = comps
        .into_iter()
        .map(|c| {
            let w = if rule_wins(rule, &c) { 1.0 } else { 0.0 };
            (c, w)
        })
        .collect();
    Ok(AnonymousUtility {
        per_state: vec![map; num_states],
    })
}

/// Counts how many receivers each candidate is recommended in `profile`.
pub fn delta_counts(profile: &[usize], num_candidates: usize) -> Result<Vec<usize>> {
    let mut counts = vec![0usize; num_candidates];
    for &c in profile {
        if c >= num_candidates {
            return Err(Error::DimensionMismatch(format!(
                "profile entry {c} exceeds candidate range 0..{num_candidates}"
            )));
        }
        counts[c] += 1;
    }
    Ok(counts)
}

/// Whether `c0` wins given per-candidate vote counts.
///
/// Under plurality, ties count as a loss for `c0`: the win condition is the
/// strict inequality `delta(s, c0) > delta(s, c)` for every other candidate.
pub fn rule_wins(rule: &VotingRule, counts: &[usize]) -> bool {
    match rule {
        VotingRule::KVoting { k } => counts[0] >= *k,
        VotingRule::Plurality => counts[1..].iter().all(|&c| counts[0] > c),
    }
}

/// The receiver's optimal candidate under a posterior belief.
///
/// Ties are broken deterministically: `c0` first, then the lowest candidate
/// index. The strict `>` comparison below realizes exactly that order.
pub fn best_response(inst: &Instance, receiver: usize, posterior: &[f64]) -> usize {
    let mut best = 0usize;
    let mut best_val = f64::NEG_INFINITY;
    for c in 0..inst.num_candidates() {
        let val: f64 = posterior
            .iter()
            .enumerate()
            .map(|(theta, &p)| p * inst.utility(receiver, theta, c))
            .sum();
        if val > best_val {
            best_val = val;
            best = c;
        }
    }
    best
}

/// The receiver's optimal candidate excluding `c0`, same tie-breaking.
pub fn best_response_excluding_c0(inst: &Instance, receiver: usize, posterior: &[f64]) -> usize {
    let mut best = 1usize;
    let mut best_val = f64::NEG_INFINITY;
    for c in 1..inst.num_candidates() {
        let val: f64 = posterior
            .iter()
            .enumerate()
            .map(|(theta, &p)| p * inst.utility(receiver, theta, c))
            .sum();
        if val > best_val {
            best_val = val;
            best = c;
        }
    }
    best
}

/// Point-mass posterior on `state`.
pub fn point_mass(num_states: usize, state: usize) -> Vec<f64> {
    let mut p = vec![0.0; num_states];
    p[state] = 1.0;
    p
}

/// Per-state best-response profile: what each voter plays when the state is
/// fully revealed.
pub fn informative_profile(inst: &Instance, state: usize) -> Profile {
    let posterior = point_mass(inst.num_states(), state);
    (0..inst.num_receivers())
        .map(|r| best_response(inst, r, &posterior))
        .collect()
}

fn validate_rows(
    rows: &[BTreeMap<Profile, f64>],
    num_receivers: usize,
    num_candidates: usize,
    what: &str,
) -> Result<()> {
    for (theta, row) in rows.iter().enumerate() {
        let mut sum = 0.0;
        for (profile, &p) in row {
            if profile.len() != num_receivers {
                return Err(Error::InvalidScheme(format!(
                    "{what}: state {theta} has a profile of length {}, expected {num_receivers}",
                    profile.len()
                )));
            }
            if profile.iter().any(|&c| c >= num_candidates) {
                return Err(Error::InvalidScheme(format!(
                    "{what}: state {theta} has a profile with candidate out of range"
                )));
            }
            if !(-PROB_TOL..=1.0 + PROB_TOL).contains(&p) {
                return Err(Error::InvalidScheme(format!(
                    "{what}: state {theta} has probability {p} outside [0, 1]"
                )));
            }
            sum += p;
        }
        if (sum - 1.0).abs() > PROB_TOL {
            return Err(Error::InvalidScheme(format!(
                "{what}: state {theta} row sums to {sum}, expected 1"
            )));
        }
    }
    Ok(())
}

/// A private joint signaling scheme: `rows[theta][profile]` is the probability
/// of recommending `profile` in state `theta`. Stored sparsely — only profiles
/// with positive mass.
#[derive(Debug, Clone, PartialEq)]
pub struct JointScheme {
    pub num_receivers: usize,
    pub num_candidates: usize,
    pub rows: Vec<BTreeMap<Profile, f64>>,
}

impl JointScheme {
    /// Validates row sums and entry ranges; drops zero entries and clamps the
    /// sub-tolerance float noise LP extraction leaves behind.
    pub fn new(
        num_receivers: usize,
        num_candidates: usize,
        mut rows: Vec<BTreeMap<Profile, f64>>,
    ) -> Result<Self> {
        validate_rows(&rows, num_receivers, num_candidates, "joint scheme")?;
        for row in &mut rows {
            row.retain(|_, p| *p > 0.0);
            for p in row.values_mut() {
                *p = p.min(1.0);
            }
        }
        Ok(JointScheme {
            num_receivers,
            num_candidates,
            rows,
        })
    }

    /// Deterministic scheme playing `profiles[theta]` with probability 1.
    pub fn deterministic(
        num_receivers: usize,
        num_candidates: usize,
        profiles: Vec<Profile>,
    ) -> Result<Self> {
        let rows = profiles
            .into_iter()
            .map(|p| BTreeMap::from([(p, 1.0)]))
            .collect();
        Self::new(num_receivers, num_candidates, rows)
    }

    pub fn num_states(&self) -> usize {
        self.rows.len()
    }
}

/// A public signaling scheme: one shared signal, each signal a full
/// recommendation profile observed by every voter. Same storage as
/// [`JointScheme`] but verified against the public obedience constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct PublicScheme {
    pub num_receivers: usize,
    pub num_candidates: usize,
    pub rows: Vec<BTreeMap<Profile, f64>>,
}

impl PublicScheme {
    pub fn new(
        num_receivers: usize,
        num_candidates: usize,
        mut rows: Vec<BTreeMap<Profile, f64>>,
    ) -> Result<Self> {
        validate_rows(&rows, num_receivers, num_candidates, "public scheme")?;
        for row in &mut rows {
            row.retain(|_, p| *p > 0.0);
            for p in row.values_mut() {
                *p = p.min(1.0);
            }
        }
        Ok(PublicScheme {
            num_receivers,
            num_candidates,
            rows,
        })
    }

    pub fn num_states(&self) -> usize {
        self.rows.len()
    }
}

/// Per-receiver marginal scheme: `probs[r][theta][c]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalScheme {
    pub probs: Vec<Vec<Vec<f64>>>,
}

impl MarginalScheme {
    pub fn new(probs: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        for (r, per_state) in probs.iter().enumerate() {
            for (theta, row) in per_state.iter().enumerate() {
                let sum: f64 = row.iter().sum();
                if (sum - 1.0).abs() > PROB_TOL {
                    return Err(Error::InvalidScheme(format!(
                        "marginal scheme: receiver {r}, state {theta} sums to {sum}"
                    )));
                }
                if row
                    .iter()
                    .any(|&p| !(-PROB_TOL..=1.0 + PROB_TOL).contains(&p))
                {
                    return Err(Error::InvalidScheme(format!(
                        "marginal scheme: receiver {r}, state {theta} has entry outside [0, 1]"
                    )));
                }
            }
        }
        Ok(MarginalScheme { probs })
    }

    pub fn num_receivers(&self) -> usize {
        self.probs.len()
    }

    pub fn num_states(&self) -> usize {
        self.probs.first().map_or(0, |p| p.len())
    }

    pub fn num_candidates(&self) -> usize {
        self.probs
            .first()
            .and_then(|p| p.first())
            .map_or(0, |row| row.len())
    }
}

/// Marginalizes a joint scheme: `phi_r(theta, c) = sum over profiles with
/// `s_r = c` of `phi(theta, s)`.
pub fn marginals_of(scheme: &JointScheme) -> MarginalScheme {
    let n = scheme.num_states();
    let mut probs = vec![vec![vec![0.0; scheme.num_candidates]; n]; scheme.num_receivers];
    for (theta, row) in scheme.rows.iter().enumerate() {
        for (profile, &p) in row {
            for (r, &c) in profile.iter().enumerate() {
                probs[r][theta][c] += p;
            }
        }
    }
    MarginalScheme { probs }
}

/// Independent product of per-receiver marginals, materialized densely over
/// all `|C|^|R|` profiles (entries below `1e-15` are dropped).
pub fn product_of_marginals(m: &MarginalScheme) -> Result<JointScheme> {
    let nr = m.num_receivers();
    let nc = m.num_candidates();
    let n = m.num_states();
    let mut rows = Vec::with_capacity(n);
    for theta in 0..n {
        let mut row = BTreeMap::new();
        let mut profile = vec![0usize; nr];
        loop {
            let p: f64 = profile
                .iter()
                .enumerate()
                .map(|(r, &c)| m.probs[r][theta][c])
                .product();
            if p > 1e-15 {
                row.insert(profile.clone(), p);
            }
            if !next_profile(&mut profile, nc) {
                break;
            }
        }
        rows.push(row);
    }
    JointScheme::new(nr, nc, rows)
}

/// Advances `profile` to the lexicographic successor; false when exhausted.
pub fn next_profile(profile: &mut [usize], num_candidates: usize) -> bool {
    for digit in profile.iter_mut().rev() {
        *digit += 1;
        if *digit < num_candidates {
            return true;
        }
        *digit = 0;
    }
    false
}

/// Expected sender utility `sum_theta mu(theta) sum_s phi(theta,s) f_theta(s)`.
pub fn sender_value(inst: &Instance, f: &SenderUtility, scheme: &JointScheme) -> Result<f64> {
    sender_value_rows(
        inst,
        f,
        &scheme.rows,
        scheme.num_receivers,
        scheme.num_candidates,
    )
}

/// Same as [`sender_value`] for a public scheme (the formula is identical).
pub fn sender_value_public(
    inst: &Instance,
    f: &SenderUtility,
    scheme: &PublicScheme,
) -> Result<f64> {
    sender_value_rows(
        inst,
        f,
        &scheme.rows,
        scheme.num_receivers,
        scheme.num_candidates,
    )
}

fn sender_value_rows(
    inst: &Instance,
    f: &SenderUtility,
    rows: &[BTreeMap<Profile, f64>],
    num_receivers: usize,
    num_candidates: usize,
) -> Result<f64> {
    if rows.len() != inst.num_states()
        || num_receivers != inst.num_receivers()
        || num_candidates != inst.num_candidates()
    {
        return Err(Error::DimensionMismatch(
            "scheme dimensions do not match the instance".to_string(),
        ));
    }
    let mut total = 0.0;
    for (theta, row) in rows.iter().enumerate() {
        for (profile, &p) in row {
            total += inst.prior[theta] * p * f.value_for_profile(theta, profile, num_candidates)?;
        }
    }
    Ok(total)
}

/// The worst obedience constraint found by a persuasiveness check.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub receiver: usize,
    pub recommended: usize,
    pub alternative: usize,
    /// Set for public schemes, where constraints are per signal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<Profile>,
}

/// Result of a persuasiveness check. `worst_slack` is the minimum over all
/// obedience constraints of their left-hand side; the scheme is persuasive
/// when it is at least `-tol`.
#[derive(Debug, Clone, Serialize)]
pub struct PersuasionReport {
    pub persuasive: bool,
    pub worst_slack: f64,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst: Option<Violation>,
}

impl PersuasionReport {
    fn from_slacks(slacks: Vec<(f64, Violation)>, tol: f64) -> Self {
        let worst = slacks
            .into_iter()
            .min_by(|a, b| a.0.partial_cmp(&b.0).expect("finite slacks"));
        match worst {
            None => PersuasionReport {
                persuasive: true,
                worst_slack: f64::INFINITY,
                tol,
                worst: None,
            },
            Some((slack, violation)) => PersuasionReport {
                persuasive: slack >= -tol,
                worst_slack: slack,
                tol,
                worst: (slack < -tol).then_some(violation),
            },
        }
    }
}

/// Checks the private obedience constraints of a joint scheme: for every
/// `(r, c, c')`, `sum_theta sum_{s: s_r=c} mu(theta) phi(theta,s)
/// (u_r(theta,c) - u_r(theta,c')) >= -tol`.
pub fn check_persuasive_joint(
    inst: &Instance,
    scheme: &JointScheme,
    tol: f64,
) -> Result<PersuasionReport> {
    let nr = inst.num_receivers();
    let nc = inst.num_candidates();
    if scheme.num_states() != inst.num_states()
        || scheme.num_receivers != nr
        || scheme.num_candidates != nc
    {
        return Err(Error::DimensionMismatch(
            "scheme dimensions do not match the instance".to_string(),
        ));
    }
    // mass[r][c][theta]: probability that r is recommended c in state theta,
    // scaled by the prior.
    let mut mass = vec![vec![vec![0.0; inst.num_states()]; nc]; nr];
    for (theta, row) in scheme.rows.iter().enumerate() {
        for (profile, &p) in row {
            for (r, &c) in profile.iter().enumerate() {
                mass[r][c][theta] += inst.prior[theta] * p;
            }
        }
    }
    let mut slacks = Vec::new();
    for r in 0..nr {
        for c in 0..nc {
            for alt in 0..nc {
                if alt == c {
                    continue;
                }
                let slack: f64 = (0..inst.num_states())
                    .map(|theta| {
                        mass[r][c][theta]
                            * (inst.utility(r, theta, c) - inst.utility(r, theta, alt))
                    })
                    .sum();
                slacks.push((
                    slack,
                    Violation {
                        receiver: r,
                        recommended: c,
                        alternative: alt,
                        profile: None,
                    },
                ));
            }
        }
    }
    Ok(PersuasionReport::from_slacks(slacks, tol))
}

/// Checks the per-receiver obedience constraints of a marginal scheme.
pub fn check_persuasive_marginal(
    inst: &Instance,
    m: &MarginalScheme,
    tol: f64,
) -> Result<PersuasionReport> {
    let nr = inst.num_receivers();
    let nc = inst.num_candidates();
    if m.num_receivers() != nr || m.num_states() != inst.num_states() || m.num_candidates() != nc {
        return Err(Error::DimensionMismatch(
            "marginal scheme dimensions do not match the instance".to_string(),
        ));
    }
    let mut slacks = Vec::new();
    for r in 0..nr {
        for c in 0..nc {
            for alt in 0..nc {
                if alt == c {
                    continue;
                }
                let slack: f64 = (0..inst.num_states())
                    .map(|theta| {
                        inst.prior[theta]
                            * m.probs[r][theta][c]
                            * (inst.utility(r, theta, c) - inst.utility(r, theta, alt))
                    })
                    .sum();
                slacks.push((
                    slack,
                    Violation {
                        receiver: r,
                        recommended: c,
                        alternative: alt,
                        profile: None,
                    },
                ));
            }
        }
    }
    Ok(PersuasionReport::from_slacks(slacks, tol))
}

/// Checks the public obedience constraints: for every signal `s` in the
/// support, every receiver must weakly prefer its recommendation under the
/// posterior induced by `s`, i.e. for all `(s, r, c')`:
/// `sum_theta mu(theta) p(theta,s) (u_r(theta,s_r) - u_r(theta,c')) >= -tol`.
pub fn check_persuasive_public(
    inst: &Instance,
    scheme: &PublicScheme,
    tol: f64,
) -> Result<PersuasionReport> {
    let nr = inst.num_receivers();
    let nc = inst.num_candidates();
    if scheme.num_states() != inst.num_states()
        || scheme.num_receivers != nr
        || scheme.num_candidates != nc
    {
        return Err(Error::DimensionMismatch(
            "scheme dimensions do not match the instance".to_string(),
        ));
    }
    // Collect the support across states: signals are shared, so the posterior
    // of a signal aggregates over every state emitting it.
    let mut support: BTreeMap<&Profile, Vec<f64>> = BTreeMap::new();
    for (theta, row) in scheme.rows.iter().enumerate() {
        for (profile, &p) in row {
            support
                .entry(profile)
                .or_insert_with(|| vec![0.0; inst.num_states()])[theta] += inst.prior[theta] * p;
        }
    }
    let mut slacks = Vec::new();
    for (profile, weights) in support {
        for (r, &c) in profile.iter().enumerate() {
            for alt in 0..nc {
                if alt == c {
                    continue;
                }
                let slack: f64 = weights
                    .iter()
                    .enumerate()
                    .map(|(theta, &w)| {
                        w * (inst.utility(r, theta, c) - inst.utility(r, theta, alt))
                    })
                    .sum();
                slacks.push((
                    slack,
                    Violation {
                        receiver: r,
                        recommended: c,
                        alternative: alt,
                        profile: Some(profile.clone()),
                    },
                ));
            }
        }
    }
    Ok(PersuasionReport::from_slacks(slacks, tol))
}
