//! The full private-persuasion LP over joint recommendation profiles, solved
//! either exactly (dense column enumeration, desk scale) or by delayed column
//! generation driven by per-state pricing oracles.
//!
//! The master LP has one variable `x(theta, s)` per state/profile column with
//! objective `sum x(theta,s) f_theta(s)`, obedience rows
//! `sum_{theta, s: s_r=c} x(theta,s) (u_r(theta,c) - u_r(theta,c')) >= 0` for
//! every `(r, c, c')`, and mass rows `sum_s x(theta,s) = mu(theta)`. A column
//! prices out when `f_theta(s) + sum_r w_r(s_r) - d(theta) > tol`, where the
//! weights come from the restricted master's duals:
//! `w_r(c) = -sum_{c'} y_r(c,c') (u_r(theta,c) - u_r(theta,c'))`.

use std::collections::{BTreeMap, BTreeSet};

use crate::lp::{
    solve_lp, solve_lp_exact, ColumnBound, LpProblem, LpStatus, Relation, TransportationProblem,
};
use crate::model::{
    delta_counts, informative_profile, next_profile, rule_wins, validate_instance, Instance,
    JointScheme, Profile, SenderUtility, VotingRule,
};
use crate::{Error, Result};

/// Reduced-cost threshold for adding a column.
pub const PRICING_TOL: f64 = 1e-7;

/// Hard cap on column-generation rounds; exceeding it is reported as
/// [`Error::NonConvergence`], never silently truncated.
pub const MAX_ROUNDS: usize = 10_000;

/// Cap on the number of compositions [`enumerate_compositions`] materializes.
pub const COMPOSITION_GUARD: usize = 1_000_000;

/// All count vectors `(k_0, ..., k_{l})` with `sum k_i = num_receivers`,
/// in deterministic order (first coordinate descending), exactly
/// `C(num_receivers + num_candidates - 1, num_receivers)` of them.
pub fn enumerate_compositions(
    num_receivers: usize,
    num_candidates: usize,
) -> Result<Vec<Vec<usize>>> {
    if num_candidates == 0 {
        return Err(Error::BadParameter("no candidates".to_string()));
    }
    let expected = binomial(
        (num_receivers + num_candidates - 1) as u128,
        num_receivers as u128,
    )
    .ok_or_else(|| Error::BadParameter("composition count overflows".to_string()))?;
    if expected > COMPOSITION_GUARD as u128 {
        return Err(Error::SizeGuard {
            needed: usize::try_from(expected).unwrap_or(usize::MAX),
            guard: COMPOSITION_GUARD,
        });
    }
    let mut out = Vec::with_capacity(expected as usize);
    let mut current = Vec::with_capacity(num_candidates);
    fill_compositions(num_receivers, num_candidates, &mut current, &mut out);
    debug_assert_eq!(out.len() as u128, expected);
    Ok(out)
}

fn fill_compositions(
    remaining: usize,
    slots: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if slots == 1 {
        current.push(remaining);
        out.push(current.clone());
        current.pop();
        return;
    }
    for first in (0..=remaining).rev() {
        current.push(first);
        fill_compositions(remaining - first, slots - 1, current, out);
        current.pop();
    }
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    let k = k.min(n - k.min(n));
    let mut result: u128 = 1;
    for i in 0..k {
        result = result.checked_mul(n - i)?;
        result /= i + 1;
    }
    Some(result)
}

/// Per-state pricing weights derived from the restricted master's duals:
/// `d` is the state mass-row dual, `w[r][c]` the per-receiver action weight.
#[derive(Debug, Clone)]
pub struct PricingWeights {
    pub d: f64,
    pub w: Vec<Vec<f64>>,
}

/// Exact per-state profile maximization `max_s f_theta(s) + sum_r w[r][s_r]`.
pub trait PricingOracle {
    fn best_profile(&self, theta: usize, weights: &[Vec<f64>]) -> Result<(Profile, f64)>;
}

/// Oracle for the plurality win indicator.
pub struct PluralityOracle;

impl PricingOracle for PluralityOracle {
    fn best_profile(&self, _theta: usize, weights: &[Vec<f64>]) -> Result<(Profile, f64)> {
        pricing_plurality(weights)
    }
}

/// Oracle for an arbitrary anonymous sender utility.
pub struct AnonymousOracle {
    pub utility: crate::model::AnonymousUtility,
}

impl PricingOracle for AnonymousOracle {
    fn best_profile(&self, theta: usize, weights: &[Vec<f64>]) -> Result<(Profile, f64)> {
        let map = self.utility.per_state.get(theta).ok_or_else(|| {
            Error::DimensionMismatch(format!("anonymous utility missing state {theta}"))
        })?;
        pricing_anonymous(map, weights)
    }
}

/// Plurality pricing: maximizes `W(s) + sum_r w[r][s_r]` exactly.
///
/// The search splits on whether `c0` wins. Over non-winning profiles the
/// unconstrained per-receiver argmax is exact because the relaxed optimum is
/// attained by a concrete profile whose own `W` value is added back. Over
/// winning profiles, `c0` receives exactly `k` votes for some `k`, and the
/// best such profile is an integral transportation optimum with an `Exact(k)`
/// column for `c0` and `AtMost(k-1)` columns elsewhere; every `k` is tried
/// and infeasible counts are pruned by the flow solver.
pub fn pricing_plurality(weights: &[Vec<f64>]) -> Result<(Profile, f64)> {
    let nr = weights.len();
    if nr == 0 {
        return Err(Error::BadParameter("no receivers".to_string()));
    }
    let nc = weights[0].len();

    // Relaxed branch: independent argmax per receiver.
    let mut profile = Vec::with_capacity(nr);
    let mut relaxed = 0.0;
    for row in weights {
        let (mut best_c, mut best_w) = (0usize, f64::NEG_INFINITY);
        for (c, &w) in row.iter().enumerate() {
            if w > best_w {
                best_w = w;
                best_c = c;
            }
        }
        relaxed += best_w;
        profile.push(best_c);
    }
    let counts = delta_counts(&profile, nc)?;
    let mut best_value = relaxed
        + if rule_wins(&VotingRule::Plurality, &counts) {
            1.0
        } else {
            0.0
        };
    let mut best_profile = profile;

    // Winning branch: c0 gets exactly k votes, all others at most k-1.
    for k in 1..=nr {
        let columns: Vec<ColumnBound> = (0..nc)
            .map(|c| {
                if c == 0 {
                    ColumnBound::Exact(k)
                } else {
                    ColumnBound::AtMost(k.saturating_sub(1))
                }
            })
            .collect();
        let t = TransportationProblem {
            weights: weights.to_vec(),
            columns,
        };
        match crate::lp::solve_transportation(&t) {
            Ok(sol) => {
                let value = sol.value + 1.0;
                if value > best_value {
                    best_value = value;
                    best_profile = sol.assignment;
                }
            }
            Err(Error::Infeasible(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok((best_profile, best_value))
}

/// Anonymous pricing: enumerates all count vectors and solves an exact-column
/// transportation problem for each.
pub fn pricing_anonymous(
    f: &BTreeMap<Vec<usize>, f64>,
    weights: &[Vec<f64>],
) -> Result<(Profile, f64)> {
    let nr = weights.len();
    if nr == 0 {
        return Err(Error::BadParameter("no receivers".to_string()));
    }
    let nc = weights[0].len();
    let mut best: Option<(Profile, f64)> = None;
    for comp in enumerate_compositions(nr, nc)? {
        let f_val = *f.get(&comp).ok_or_else(|| {
            Error::DimensionMismatch(format!("anonymous utility missing counts {comp:?}"))
        })?;
        let columns: Vec<ColumnBound> = comp.iter().map(|&k| ColumnBound::Exact(k)).collect();
        let t = TransportationProblem {
            weights: weights.to_vec(),
            columns,
        };
        let sol = crate::lp::solve_transportation(&t)?;
        let value = f_val + sol.value;
        if best.as_ref().is_none_or(|(_, v)| value > *v) {
            best = Some((sol.assignment, value));
        }
    }
    best.ok_or_else(|| Error::BadParameter("no compositions".to_string()))
}

/// Row layout shared by the exact solver and the restricted master.
struct MasterRows {
    nr: usize,
    nc: usize,
    num_ic: usize,
}

impl MasterRows {
    fn new(inst: &Instance) -> Self {
        let nr = inst.num_receivers();
        let nc = inst.num_candidates();
        MasterRows {
            nr,
            nc,
            num_ic: nr * nc * (nc - 1),
        }
    }

    /// Row index of the obedience constraint for (receiver, recommended, alt).
    fn ic_row(&self, r: usize, c: usize, alt: usize) -> usize {
        debug_assert_ne!(c, alt);
        let alt_pos = if alt < c { alt } else { alt - 1 };
        (r * self.nc + c) * (self.nc - 1) + alt_pos
    }

    fn mass_row(&self, theta: usize) -> usize {
        self.num_ic + theta
    }
}

fn build_master(
    inst: &Instance,
    f: &SenderUtility,
    columns: &[(usize, Profile)],
) -> Result<(LpProblem, MasterRows)> {
    let rows = MasterRows::new(inst);
    let n = inst.num_states();
    let mut lp = LpProblem::new(0);
    let mut row_coeffs: Vec<Vec<(usize, f64)>> = vec![Vec::new(); rows.num_ic + n];
    for (var, (theta, profile)) in columns.iter().enumerate() {
        let obj = f.value_for_profile(*theta, profile, rows.nc)?;
        // The mass rows already cap each column at mu(theta); an explicit
        // upper bound would only add a redundant row per column.
        lp.add_var(format!("x_{theta}_{var}"), obj, 0.0, f64::INFINITY);
        row_coeffs[rows.mass_row(*theta)].push((var, 1.0));
        for (r, &c) in profile.iter().enumerate() {
            for alt in 0..rows.nc {
                if alt == c {
                    continue;
                }
                let diff = inst.utility(r, *theta, c) - inst.utility(r, *theta, alt);
                if diff != 0.0 {
                    row_coeffs[rows.ic_row(r, c, alt)].push((var, diff));
                }
            }
        }
    }
    for (i, coeffs) in row_coeffs.into_iter().enumerate() {
        if i < rows.num_ic {
            lp.add_constraint(coeffs, Relation::Ge, 0.0);
        } else {
            lp.add_constraint(coeffs, Relation::Eq, inst.prior[i - rows.num_ic]);
        }
    }
    Ok((lp, rows))
}

fn scheme_from_columns(
    inst: &Instance,
    columns: &[(usize, Profile)],
    primal: &[f64],
) -> Result<JointScheme> {
    let n = inst.num_states();
    let mut raw: Vec<BTreeMap<Profile, f64>> = vec![BTreeMap::new(); n];
    for ((theta, profile), &x) in columns.iter().zip(primal) {
        if x > 1e-12 {
            *raw[*theta].entry(profile.clone()).or_insert(0.0) += x / inst.prior[*theta];
        }
    }
    // Renormalize away LP residuals so scheme validation sees exact rows.
    for row in &mut raw {
        let sum: f64 = row.values().sum();
        if sum > 0.0 {
            for p in row.values_mut() {
                *p /= sum;
            }
        }
    }
    JointScheme::new(inst.num_receivers(), inst.num_candidates(), raw)
}

fn ensure_valid(inst: &Instance, f: &SenderUtility) -> Result<()> {
    let report = validate_instance(inst);
    if !report.passed() {
        return Err(Error::InvalidInstance(report.violations.join("; ")));
    }
    if let SenderUtility::Anonymous(anon) = f {
        if anon.per_state.len() != inst.num_states() {
            return Err(Error::DimensionMismatch(format!(
                "anonymous utility covers {} states, instance has {}",
                anon.per_state.len(),
                inst.num_states()
            )));
        }
        anon.validate(inst.num_receivers(), inst.num_candidates())?;
    }
    Ok(())
}

/// Solves the full LP by materializing every `(state, profile)` column.
/// Guarded by `n * |C|^|R| <= guard`.
pub fn solve_private_exact(
    inst: &Instance,
    f: &SenderUtility,
    guard: usize,
) -> Result<(f64, JointScheme)> {
    solve_private_exact_with(inst, f, guard, false)
}

/// As [`solve_private_exact`], optionally in exact rational arithmetic.
pub fn solve_private_exact_with(
    inst: &Instance,
    f: &SenderUtility,
    guard: usize,
    exact_arith: bool,
) -> Result<(f64, JointScheme)> {
    ensure_valid(inst, f)?;
    let profiles = inst.num_profiles().ok_or(Error::SizeGuard {
        needed: usize::MAX,
        guard,
    })?;
    let needed = profiles
        .checked_mul(inst.num_states())
        .ok_or(Error::SizeGuard {
            needed: usize::MAX,
            guard,
        })?;
    if needed > guard {
        return Err(Error::SizeGuard { needed, guard });
    }
    let mut columns = Vec::with_capacity(needed);
    for theta in 0..inst.num_states() {
        let mut profile = vec![0usize; inst.num_receivers()];
        loop {
            columns.push((theta, profile.clone()));
            if !next_profile(&mut profile, inst.num_candidates()) {
                break;
            }
        }
    }
    let (lp, _) = build_master(inst, f, &columns)?;
    let sol = if exact_arith {
        solve_lp_exact(&lp)
    } else {
        solve_lp(&lp)
    };
    if sol.status != LpStatus::Optimal {
        return Err(Error::LpFailed(sol.status));
    }
    let scheme = scheme_from_columns(inst, &columns, &sol.primal)?;
    Ok((sol.objective, scheme))
}

/// One column added during column generation, kept for diagnostics.
#[derive(Debug, Clone)]
pub struct AddedColumn {
    pub round: usize,
    pub state: usize,
    pub profile: Profile,
    /// Pricing-test value `f_theta(s) + sum_r w_r(s_r) - d(theta)` at the
    /// moment of addition; strictly above [`PRICING_TOL`] by construction.
    pub reduced_cost: f64,
}

#[derive(Debug)]
pub struct ColGenSolution {
    pub value: f64,
    pub scheme: JointScheme,
    pub rounds: usize,
    pub num_columns: usize,
    pub added: Vec<AddedColumn>,
}

/// Computes per-state pricing weights from the master duals.
fn pricing_weights(inst: &Instance, rows: &MasterRows, duals: &[f64]) -> Vec<PricingWeights> {
    let n = inst.num_states();
    let mut out = Vec::with_capacity(n);
    for theta in 0..n {
        let mut w = vec![vec![0.0; rows.nc]; rows.nr];
        for r in 0..rows.nr {
            for c in 0..rows.nc {
                let mut acc = 0.0;
                for alt in 0..rows.nc {
                    if alt == c {
                        continue;
                    }
                    let y = duals[rows.ic_row(r, c, alt)];
                    acc -= y * (inst.utility(r, theta, c) - inst.utility(r, theta, alt));
                }
                w[r][c] = acc;
            }
        }
        out.push(PricingWeights {
            d: duals[rows.mass_row(theta)],
            w,
        });
    }
    out
}

/// Delayed column generation: starts from the per-state best-response
/// profiles (always feasible), adds every column whose pricing test exceeds
/// [`PRICING_TOL`], and stops when no state prices out a new column.
pub fn solve_private_colgen(
    inst: &Instance,
    f: &SenderUtility,
    oracle: &dyn PricingOracle,
) -> Result<ColGenSolution> {
    ensure_valid(inst, f)?;
    let n = inst.num_states();
    let mut columns: Vec<(usize, Profile)> = (0..n)
        .map(|theta| (theta, informative_profile(inst, theta)))
        .collect();
    let mut seen: BTreeSet<(usize, Profile)> = columns.iter().cloned().collect();
    let mut added = Vec::new();

    for round in 0..MAX_ROUNDS {
        let (lp, rows) = build_master(inst, f, &columns)?;
        let sol = solve_lp(&lp);
        if sol.status != LpStatus::Optimal {
            return Err(Error::LpFailed(sol.status));
        }
        let weights = pricing_weights(inst, &rows, &sol.duals);
        let mut new_columns = Vec::new();
        for (theta, pw) in weights.iter().enumerate() {
            let (profile, value) = oracle.best_profile(theta, &pw.w)?;
            let reduced = value - pw.d;
            if reduced > PRICING_TOL {
                let key = (theta, profile.clone());
                if seen.insert(key.clone()) {
                    added.push(AddedColumn {
                        round,
                        state: theta,
                        profile,
                        reduced_cost: reduced,
                    });
                    new_columns.push(key);
                }
            }
        }
        if new_columns.is_empty() {
            let scheme = scheme_from_columns(inst, &columns, &sol.primal)?;
            return Ok(ColGenSolution {
                value: sol.objective,
                scheme,
                rounds: round + 1,
                num_columns: columns.len(),
                added,
            });
        }
        columns.extend(new_columns);
    }
    Err(Error::NonConvergence {
        iterations: MAX_ROUNDS,
    })
}
