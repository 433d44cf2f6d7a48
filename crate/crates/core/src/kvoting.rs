//! Polynomial-size LP for optimal private signaling under a k-voting rule.
//!
//! Variables: per state `beta_theta` (win probability in that state), per
//! receiver/state the `c0` marginal `phi_r(theta, c0)`, and per `(theta, m)`
//! with `m < k` the auxiliary triple `t`, `q`, `z` encoding "`q_{theta,m}` is
//! at most the sum of the lowest `|R| - m` values of `phi_.(theta, c0)`" as
//! the dual of the smallest-entries LP. Obedience constraints are only needed
//! for `c0` against every alternative: all non-`c0` mass sits on per-state
//! best responses, which are obedient by construction.

use crate::lp::{solve_lp, solve_lp_exact, LpProblem, LpStatus, Relation};
use crate::model::{validate_instance, Instance};
use crate::{Error, Result};

/// Index maps from the formulation's variables into the LP's variable range.
#[derive(Debug, Clone)]
pub struct KVotingLpLayout {
    /// `beta[theta]`.
    pub beta: Vec<usize>,
    /// `phi[r][theta]` = variable index of `phi_r(theta, c0)`.
    pub phi: Vec<Vec<usize>>,
    /// `t[theta][m]`, free.
    pub t: Vec<Vec<usize>>,
    /// `q[theta][m]`, free.
    pub q: Vec<Vec<usize>>,
    /// `z[theta][m][r]`, nonpositive.
    pub z: Vec<Vec<Vec<usize>>>,
}

/// Builds the LP; `n * (1 + |R| + k * (2 + |R|))` variables.
pub fn build_kvoting_lp(inst: &Instance, k: usize) -> Result<(LpProblem, KVotingLpLayout)> {
    let report = validate_instance(inst);
    if !report.passed() {
        return Err(Error::InvalidInstance(report.violations.join("; ")));
    }
    let n = inst.num_states();
    let nr = inst.num_receivers();
    let nc = inst.num_candidates();
    if k == 0 || k > nr {
        return Err(Error::BadParameter(format!(
            "k-voting threshold k={k} out of range 1..={nr}"
        )));
    }

    let mut lp = LpProblem::new(0);
    let beta: Vec<usize> = (0..n)
        .map(|theta| lp.add_var(format!("beta_{theta}"), inst.prior[theta], 0.0, 1.0))
        .collect();
    let phi: Vec<Vec<usize>> = (0..nr)
        .map(|r| {
            (0..n)
                .map(|theta| lp.add_var(format!("phi_{r}_{theta}"), 0.0, 0.0, 1.0))
                .collect()
        })
        .collect();
    let mut t = vec![vec![0usize; k]; n];
    let mut q = vec![vec![0usize; k]; n];
    let mut z = vec![vec![vec![0usize; nr]; k]; n];
    for theta in 0..n {
        for m in 0..k {
            t[theta][m] = lp.add_var(
                format!("t_{theta}_{m}"),
                0.0,
                f64::NEG_INFINITY,
                f64::INFINITY,
            );
            q[theta][m] = lp.add_var(
                format!("q_{theta}_{m}"),
                0.0,
                f64::NEG_INFINITY,
                f64::INFINITY,
            );
            for r in 0..nr {
                z[theta][m][r] =
                    lp.add_var(format!("z_{theta}_{m}_{r}"), 0.0, f64::NEG_INFINITY, 0.0);
            }
        }
    }
    debug_assert_eq!(lp.num_vars, n * (1 + nr + k * (2 + nr)));

    // Obedience for c0 against every alternative.
    for r in 0..nr {
        for alt in 1..nc {
            let coeffs: Vec<(usize, f64)> = (0..n)
                .map(|theta| {
                    (
                        phi[r][theta],
                        inst.prior[theta]
                            * (inst.utility(r, theta, 0) - inst.utility(r, theta, alt)),
                    )
                })
                .collect();
            lp.add_constraint(coeffs, Relation::Ge, 0.0);
        }
    }
    for theta in 0..n {
        for m in 0..k {
            // beta_theta <= q_{theta,m} / (k - m)
            lp.add_constraint(
                vec![(beta[theta], 1.0), (q[theta][m], -1.0 / (k - m) as f64)],
                Relation::Le,
                0.0,
            );
            // q <= (|R| - m) t + sum_r z
            let mut coeffs = vec![(q[theta][m], 1.0), (t[theta][m], -((nr - m) as f64))];
            coeffs.extend((0..nr).map(|r| (z[theta][m][r], -1.0)));
            lp.add_constraint(coeffs, Relation::Le, 0.0);
            // phi_r(theta, c0) >= t + z_r
            for r in 0..nr {
                lp.add_constraint(
                    vec![
                        (phi[r][theta], 1.0),
                        (t[theta][m], -1.0),
                        (z[theta][m][r], -1.0),
                    ],
                    Relation::Ge,
                    0.0,
                );
            }
        }
    }

    Ok((lp, KVotingLpLayout { beta, phi, t, q, z }))
}

/// Optimal value plus the extracted `c0` marginals and per-state win
/// probabilities.
#[derive(Debug, Clone)]
pub struct KVotingSolution {
    pub value: f64,
    /// `c0_marginals[r][theta] = phi_r(theta, c0)`.
    pub c0_marginals: Vec<Vec<f64>>,
    pub betas: Vec<f64>,
}

/// Solves the k-voting LP in floating point.
pub fn solve_private_kvoting(inst: &Instance, k: usize) -> Result<KVotingSolution> {
    solve_private_kvoting_with(inst, k, false)
}

/// As [`solve_private_kvoting`] with an optional exact-arithmetic backend.
pub fn solve_private_kvoting_with(
    inst: &Instance,
    k: usize,
    exact_arith: bool,
) -> Result<KVotingSolution> {
    let (lp, layout) = build_kvoting_lp(inst, k)?;
    let sol = if exact_arith {
        solve_lp_exact(&lp)
    } else {
        solve_lp(&lp)
    };
    if sol.status != LpStatus::Optimal {
        return Err(Error::LpFailed(sol.status));
    }
    let clamp = |x: f64| x.clamp(0.0, 1.0);
    let c0_marginals = layout
        .phi
        .iter()
        .map(|per_state| per_state.iter().map(|&v| clamp(sol.primal[v])).collect())
        .collect();
    let betas = layout.beta.iter().map(|&v| clamp(sol.primal[v])).collect();
    Ok(KVotingSolution {
        value: sol.objective,
        c0_marginals,
        betas,
    })
}

/// Maximum probability that at least `k` receivers play `c0` given their
/// marginal `c0` probabilities: `min(1, min_{m<k} q_m / (k - m))` where `q_m`
/// is the sum of the lowest `|R| - m` entries.
pub fn beta_from_marginals(c0slice: &[f64], k: usize) -> f64 {
    assert!(k >= 1 && k <= c0slice.len(), "k out of range");
    let mut sorted = c0slice.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite marginals"));
    let mut beta: f64 = 1.0;
    // Sum of the lowest |R| - m entries, shrinking as m grows.
    let mut q: f64 = sorted.iter().sum();
    for m in 0..k {
        beta = beta.min(q / (k - m) as f64);
        // Drop the largest remaining entry for the next m.
        q -= sorted[sorted.len() - 1 - m];
    }
    beta.max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::check_persuasive_marginal;

    #[test]
    fn variable_count_matches_formula() {
        let inst = fixtures::example1();
        let (lp, _) = build_kvoting_lp(&inst, 2).unwrap();
        assert_eq!(lp.num_vars, 42);
    }

    #[test]
    fn k_out_of_range_rejected() {
        let inst = fixtures::example1();
        assert!(matches!(
            build_kvoting_lp(&inst, 4),
            Err(Error::BadParameter(_))
        ));
        assert!(matches!(
            build_kvoting_lp(&inst, 0),
            Err(Error::BadParameter(_))
        ));
    }

    #[test]
    fn example1_k_sweep() {
        let inst = fixtures::example1();
        for (k, expected) in [(1, 1.0), (2, 1.0), (3, 5.0 / 6.0)] {
            let sol = solve_private_kvoting(&inst, k).unwrap();
            assert!(
                (sol.value - expected).abs() < 1e-7,
                "k={k}: value {} expected {expected}",
                sol.value
            );
        }
    }

    #[test]
    fn single_receiver_k1() {
        let inst = crate::model::Instance {
            states: vec!["s".into()],
            prior: vec![1.0],
            candidates: vec!["c0".into(), "c1".into()],
            receivers: vec![crate::model::Receiver {
                name: "r".into(),
                utility: vec![vec![1.0, 0.0]],
            }],
            rule: crate::model::VotingRule::KVoting { k: 1 },
            provenance: None,
        };
        let (lp, _) = build_kvoting_lp(&inst, 1).unwrap();
        // n=1, |R|=1, k=1: 1 * (1 + 1 + 1 * 3) = 5 variables.
        assert_eq!(lp.num_vars, 5);
        let sol = solve_private_kvoting(&inst, 1).unwrap();
        assert!((sol.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn beta_formula_examples() {
        assert!((beta_from_marginals(&[1.0, 5.0 / 6.0, 5.0 / 6.0], 2) - 1.0).abs() < 1e-12);
        assert_eq!(beta_from_marginals(&[0.0, 0.0, 0.0], 1), 0.0);
        assert!((beta_from_marginals(&[1.0, 5.0 / 6.0, 5.0 / 6.0], 3) - 5.0 / 6.0).abs() < 1e-12);
        assert!((beta_from_marginals(&[0.5, 0.5], 2) - 0.5).abs() < 1e-12);
        assert!((beta_from_marginals(&[0.5, 0.5], 1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lp_betas_match_formula_and_marginals_are_persuasive() {
        let inst = fixtures::example1();
        for k in 1..=3 {
            let sol = solve_private_kvoting(&inst, k).unwrap();
            for theta in 0..3 {
                let slice: Vec<f64> = (0..3).map(|r| sol.c0_marginals[r][theta]).collect();
                let beta = beta_from_marginals(&slice, k);
                assert!(
                    (beta - sol.betas[theta]).abs() < 1e-7,
                    "k={k} theta={theta}: formula {beta} vs LP {}",
                    sol.betas[theta]
                );
            }
            let completed =
                crate::composition::complete_marginals(&inst, &sol.c0_marginals).unwrap();
            let report = check_persuasive_marginal(&inst, &completed, 1e-6).unwrap();
            assert!(report.persuasive, "k={k}: worst {}", report.worst_slack);
        }
    }
}
