use std::path::Path;
use std::time::Instant;

use votesig::colgen::{
    solve_private_colgen, solve_private_exact_with, AnonymousOracle, PluralityOracle,
};
use votesig::composition::complete_marginals;
use votesig::gen::{gen_instance, gen_msi, InstanceGenConfig, MsiGenConfig, PriorKind};
use votesig::kvoting::{beta_from_marginals, solve_private_kvoting_with};
use votesig::model::{
    check_persuasive_joint, check_persuasive_marginal, check_persuasive_public, sender_value,
    sender_value_public, validate_instance, Instance, SenderUtility, VotingRule,
};
use votesig::public::{msi_reduce, pad_kv_to_plurality, solve_public_exact};
use votesig::wire::{
    instance_to_json, joint_to_wire, marginal_to_wire, msi_to_wire, public_to_wire,
    resolve_anonymous, resolve_msi, resolve_scheme, AnonymousUtilityFile, MsiFile, ResolvedScheme,
    SchemeFile,
};

use crate::report::{Report, StateBeta, Verification};
use crate::{
    read_file, write_file, CliError, GenArgs, PadArgs, ReduceMsiArgs, SolveArgs, Solver, VerifyArgs,
};

pub(crate) fn load_instance(path: &Path) -> Result<Instance, CliError> {
    let text = read_file(path)?;
    // Parse failures and validation failures carry different exit codes.
    let raw: Instance = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let report = validate_instance(&raw);
    if !report.passed() {
        return Err(CliError::Invalid(format!(
            "{}: {}",
            path.display(),
            report.violations.join("; ")
        )));
    }
    Ok(raw)
}

pub fn validate(path: &Path) -> Result<(), CliError> {
    let text = read_file(path)?;
    let raw: Instance = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let report = validate_instance(&raw);
    println!("{}", serde_json::to_string_pretty(&report).expect("report"));
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Invalid(format!(
            "{} violated invariant(s)",
            report.violations.len()
        )))
    }
}

fn rule_with_override(inst: &Instance, k: Option<usize>) -> Result<VotingRule, CliError> {
    match (k, &inst.rule) {
        (Some(k), _) => Ok(VotingRule::KVoting { k }),
        (None, rule) => Ok(rule.clone()),
    }
}

fn kvoting_threshold(inst: &Instance, k: Option<usize>) -> Result<usize, CliError> {
    match (k, &inst.rule) {
        (Some(k), _) => Ok(k),
        (None, VotingRule::KVoting { k }) => Ok(*k),
        (None, VotingRule::Plurality) => Err(CliError::Invalid(
            "instance uses plurality; pass --k to select a k-voting threshold".to_string(),
        )),
    }
}

pub fn solve(args: &SolveArgs) -> Result<(), CliError> {
    let inst = load_instance(&args.instance)?;
    let out_path = args.out.clone().unwrap_or_else(|| {
        let mut p = args.instance.clone();
        p.set_extension("scheme.json");
        p
    });

    let mut report = Report::new("solve");
    report.solver = Some(args.solver.name());
    let start = Instant::now();

    let scheme_file: SchemeFile = match args.solver {
        Solver::KvotingLp => {
            let k = kvoting_threshold(&inst, args.k)?;
            let sol = solve_private_kvoting_with(&inst, k, args.exact_arith)?;
            report.value = Some(sol.value);
            report.betas = Some(
                inst.states
                    .iter()
                    .zip(&sol.betas)
                    .map(|(state, &beta)| StateBeta {
                        state: state.clone(),
                        beta,
                    })
                    .collect(),
            );
            let marginals = complete_marginals(&inst, &sol.c0_marginals)?;
            let check = check_persuasive_marginal(&inst, &marginals, args.tol)?;
            report.verification = Some(Verification {
                persuasive: check.persuasive,
                worst_slack: check.worst_slack,
                tol: args.tol,
                recomputed_value: Some(recompute_kvoting_value(&inst, k, &marginals)),
                claimed_value: Some(sol.value),
                value_matches_claim: Some(
                    (recompute_kvoting_value(&inst, k, &marginals) - sol.value).abs() <= args.tol,
                ),
            });
            marginal_to_wire(&inst, &marginals, Some(sol.value))
        }
        Solver::ExactPrivate => {
            let rule = rule_with_override(&inst, args.k)?;
            let f = SenderUtility::RuleValue(rule);
            let (value, scheme) =
                solve_private_exact_with(&inst, &f, args.guard, args.exact_arith)?;
            report.value = Some(value);
            let check = check_persuasive_joint(&inst, &scheme, args.tol)?;
            let recomputed = sender_value(&inst, &f, &scheme)?;
            report.verification = Some(Verification {
                persuasive: check.persuasive,
                worst_slack: check.worst_slack,
                tol: args.tol,
                recomputed_value: Some(recomputed),
                claimed_value: Some(value),
                value_matches_claim: Some((recomputed - value).abs() <= args.tol),
            });
            joint_to_wire(&inst, &scheme, Some(value))
        }
        Solver::ColgenPlurality => {
            if inst.rule != VotingRule::Plurality {
                return Err(CliError::Invalid(
                    "colgen-plurality requires a plurality instance".to_string(),
                ));
            }
            let f = SenderUtility::RuleValue(VotingRule::Plurality);
            let sol = solve_private_colgen(&inst, &f, &PluralityOracle)?;
            report.value = Some(sol.value);
            report.iterations = Some(sol.rounds);
            let check = check_persuasive_joint(&inst, &sol.scheme, args.tol)?;
            let recomputed = sender_value(&inst, &f, &sol.scheme)?;
            report.verification = Some(Verification {
                persuasive: check.persuasive,
                worst_slack: check.worst_slack,
                tol: args.tol,
                recomputed_value: Some(recomputed),
                claimed_value: Some(sol.value),
                value_matches_claim: Some((recomputed - sol.value).abs() <= args.tol),
            });
            joint_to_wire(&inst, &sol.scheme, Some(sol.value))
        }
        Solver::ColgenAnonymous => {
            let anon = match &args.f {
                Some(path) => {
                    let text = read_file(path)?;
                    let file: AnonymousUtilityFile = serde_json::from_str(&text)
                        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
                    resolve_anonymous(&file, inst.num_receivers(), inst.num_candidates())?
                }
                None => votesig::model::anonymous_from_rule(
                    &inst.rule,
                    inst.num_states(),
                    inst.num_receivers(),
                    inst.num_candidates(),
                )?,
            };
            let f = SenderUtility::Anonymous(anon.clone());
            let oracle = AnonymousOracle { utility: anon };
            let sol = solve_private_colgen(&inst, &f, &oracle)?;
            report.value = Some(sol.value);
            report.iterations = Some(sol.rounds);
            let check = check_persuasive_joint(&inst, &sol.scheme, args.tol)?;
            let recomputed = sender_value(&inst, &f, &sol.scheme)?;
            report.verification = Some(Verification {
                persuasive: check.persuasive,
                worst_slack: check.worst_slack,
                tol: args.tol,
                recomputed_value: Some(recomputed),
                claimed_value: Some(sol.value),
                value_matches_claim: Some((recomputed - sol.value).abs() <= args.tol),
            });
            joint_to_wire(&inst, &sol.scheme, Some(sol.value))
        }
        Solver::ExactPublic => {
            let rule = rule_with_override(&inst, args.k)?;
            let f = SenderUtility::RuleValue(rule);
            let (value, scheme) = solve_public_exact(&inst, &f, args.guard)?;
            report.value = Some(value);
            let check = check_persuasive_public(&inst, &scheme, args.tol)?;
            let recomputed = sender_value_public(&inst, &f, &scheme)?;
            report.verification = Some(Verification {
                persuasive: check.persuasive,
                worst_slack: check.worst_slack,
                tol: args.tol,
                recomputed_value: Some(recomputed),
                claimed_value: Some(value),
                value_matches_claim: Some((recomputed - value).abs() <= args.tol),
            });
            public_to_wire(&inst, &scheme, Some(value))
        }
    };

    report.wall_time_ms = start.elapsed().as_millis();
    report.status = "optimal".to_string();
    report.scheme_file = Some(out_path.display().to_string());
    let scheme_json = serde_json::to_string_pretty(&scheme_file).expect("scheme serializes");
    write_file(&out_path, &scheme_json)?;
    let text = report.to_json();
    println!("{text}");
    if let Some(path) = &args.report {
        write_file(path, &text)?;
    }
    let verification_ok = report
        .verification
        .as_ref()
        .is_none_or(|v| v.persuasive && v.value_matches_claim.unwrap_or(true));
    if verification_ok {
        Ok(())
    } else {
        Err(CliError::Solver(
            "emitted scheme failed re-verification".to_string(),
        ))
    }
}

/// Value of the marginal scheme under a k-voting rule: per state, the optimal
/// coupling of the c0 marginals wins with the closed-form probability.
fn recompute_kvoting_value(
    inst: &Instance,
    k: usize,
    marginals: &votesig::model::MarginalScheme,
) -> f64 {
    (0..inst.num_states())
        .map(|theta| {
            let slice: Vec<f64> = (0..inst.num_receivers())
                .map(|r| marginals.probs[r][theta][0])
                .collect();
            inst.prior[theta] * beta_from_marginals(&slice, k)
        })
        .sum()
}

pub fn verify(args: &VerifyArgs) -> Result<(), CliError> {
    let inst = load_instance(&args.instance)?;
    let text = read_file(&args.scheme)?;
    let file: SchemeFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", args.scheme.display())))?;
    let claimed = args.claimed.or(file.claimed_value());
    let start = Instant::now();

    let mut report = Report::new("verify");
    let resolved = resolve_scheme(&inst, &file)?;
    let (check, recomputed) = match &resolved {
        ResolvedScheme::Joint(scheme) => {
            let f = SenderUtility::RuleValue(inst.rule.clone());
            (
                check_persuasive_joint(&inst, scheme, args.tol)?,
                Some(sender_value(&inst, &f, scheme)?),
            )
        }
        ResolvedScheme::Public(scheme) => {
            let f = SenderUtility::RuleValue(inst.rule.clone());
            (
                check_persuasive_public(&inst, scheme, args.tol)?,
                Some(sender_value_public(&inst, &f, scheme)?),
            )
        }
        ResolvedScheme::Marginal(scheme) => {
            let recomputed = match inst.rule {
                VotingRule::KVoting { k } => Some(recompute_kvoting_value(&inst, k, scheme)),
                VotingRule::Plurality => None,
            };
            (
                check_persuasive_marginal(&inst, scheme, args.tol)?,
                recomputed,
            )
        }
    };
    let value_matches_claim = match (claimed, recomputed) {
        (Some(c), Some(r)) => Some((c - r).abs() <= args.tol),
        _ => None,
    };
    let ok = check.persuasive && value_matches_claim.unwrap_or(true);
    report.status = if ok { "verified" } else { "failed" }.to_string();
    report.value = recomputed;
    report.wall_time_ms = start.elapsed().as_millis();
    report.verification = Some(Verification {
        persuasive: check.persuasive,
        worst_slack: check.worst_slack,
        tol: args.tol,
        recomputed_value: recomputed,
        claimed_value: claimed,
        value_matches_claim,
    });
    println!("{}", report.to_json());
    if ok {
        Ok(())
    } else {
        Err(CliError::Invalid("scheme failed verification".to_string()))
    }
}

fn parse_rule(text: &str) -> Result<VotingRule, CliError> {
    if text == "plurality" {
        return Ok(VotingRule::Plurality);
    }
    if let Some(k) = text.strip_prefix("kvoting:") {
        let k: usize = k
            .parse()
            .map_err(|_| CliError::Invalid(format!("bad k in rule {text:?}")))?;
        return Ok(VotingRule::KVoting { k });
    }
    Err(CliError::Invalid(format!(
        "unknown rule {text:?}; expected \"kvoting:K\" or \"plurality\""
    )))
}

pub fn gen(args: &GenArgs) -> Result<(), CliError> {
    let output = if args.msi {
        let msi = gen_msi(&MsiGenConfig {
            elements: args.elements,
            subsets: args.subsets,
            k: args.k,
            q: args.q,
            seed: args.seed,
        });
        msi.validate()?;
        serde_json::to_string_pretty(&msi_to_wire(&msi)).expect("msi serializes")
    } else {
        let prior = match args.prior.as_str() {
            "uniform" => PriorKind::Uniform,
            "random" => PriorKind::Random,
            other => {
                return Err(CliError::Invalid(format!(
                    "unknown prior {other:?}; expected \"uniform\" or \"random\""
                )))
            }
        };
        let inst = gen_instance(&InstanceGenConfig {
            states: args.states,
            receivers: args.receivers,
            candidates: args.candidates,
            rule: parse_rule(&args.rule)?,
            prior,
            seed: args.seed,
        });
        let report = validate_instance(&inst);
        if !report.passed() {
            return Err(CliError::Invalid(report.violations.join("; ")));
        }
        instance_to_json(&inst)?
    };
    match &args.out {
        Some(path) => write_file(path, &output)?,
        None => println!("{output}"),
    }
    Ok(())
}

pub fn reduce_msi(args: &ReduceMsiArgs) -> Result<(), CliError> {
    let text = read_file(&args.msi)?;
    let file: MsiFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", args.msi.display())))?;
    let msi = resolve_msi(&file)?;
    let (inst, threshold) = msi_reduce(&msi)?;
    eprintln!(
        "reduced {} subsets / {} elements into {} voters, threshold {threshold}",
        msi.subsets.len(),
        msi.elements.len(),
        inst.num_receivers()
    );
    let output = instance_to_json(&inst)?;
    match &args.out {
        Some(path) => write_file(path, &output)?,
        None => println!("{output}"),
    }
    Ok(())
}

pub fn pad(args: &PadArgs) -> Result<(), CliError> {
    let inst = load_instance(&args.instance)?;
    let padded = pad_kv_to_plurality(&inst, args.k)?;
    eprintln!(
        "padded {} voters to {} under plurality",
        inst.num_receivers(),
        padded.num_receivers()
    );
    let output = instance_to_json(&padded)?;
    match &args.out {
        Some(path) => write_file(path, &output)?,
        None => println!("{output}"),
    }
    Ok(())
}
