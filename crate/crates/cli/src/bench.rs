//! `bench`: run every applicable solver over a corpus directory and emit a
//! machine-readable CSV, including cross-solver deltas against the exact
//! private optimum. Failures are flagged per row and never abort the run.

use std::path::Path;
use std::time::Instant;

use votesig::colgen::{
    solve_private_colgen, solve_private_exact, AnonymousOracle, PluralityOracle,
};
use votesig::kvoting::solve_private_kvoting;
use votesig::model::{anonymous_from_rule, Instance, SenderUtility, VotingRule};
use votesig::public::solve_public_exact;

use crate::{commands, write_file, BenchArgs, CliError};

struct Row {
    instance: String,
    solver: &'static str,
    status: String,
    value: Option<f64>,
    iterations: Option<usize>,
    wall_ms: u128,
    delta_vs_exact: Option<f64>,
}

impl Row {
    fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}\n",
            self.instance,
            self.solver,
            self.status,
            self.value.map_or(String::new(), |v| format!("{v:.9}")),
            self.iterations.map_or(String::new(), |i| i.to_string()),
            self.wall_ms,
            self.delta_vs_exact
                .map_or(String::new(), |d| format!("{d:.3e}")),
        )
    }
}

fn timed<T>(f: impl FnOnce() -> Result<T, votesig::Error>) -> (Result<T, votesig::Error>, u128) {
    let start = Instant::now();
    let result = f();
    (result, start.elapsed().as_millis())
}

fn run_instance(name: &str, inst: &Instance, guard: usize, rows: &mut Vec<Row>) {
    let rule_f = SenderUtility::RuleValue(inst.rule.clone());

    // Exact private first: it anchors the cross-solver deltas.
    let (exact, wall) = timed(|| solve_private_exact(inst, &rule_f, guard));
    let exact_value = exact.as_ref().ok().map(|(v, _)| *v);
    rows.push(match &exact {
        Ok((value, _)) => Row {
            instance: name.to_string(),
            solver: "exact-private",
            status: "optimal".to_string(),
            value: Some(*value),
            iterations: None,
            wall_ms: wall,
            delta_vs_exact: Some(0.0),
        },
        Err(e) => Row {
            instance: name.to_string(),
            solver: "exact-private",
            status: format!("error: {e}").replace(',', ";"),
            value: None,
            iterations: None,
            wall_ms: wall,
            delta_vs_exact: None,
        },
    });

    let delta = |v: f64| exact_value.map(|e| (v - e).abs());

    if let VotingRule::KVoting { k } = inst.rule {
        let (res, wall) = timed(|| solve_private_kvoting(inst, k));
        rows.push(match res {
            Ok(sol) => Row {
                instance: name.to_string(),
                solver: "kvoting-lp",
                status: "optimal".to_string(),
                value: Some(sol.value),
                iterations: None,
                wall_ms: wall,
                delta_vs_exact: delta(sol.value),
            },
            Err(e) => Row {
                instance: name.to_string(),
                solver: "kvoting-lp",
                status: format!("error: {e}").replace(',', ";"),
                value: None,
                iterations: None,
                wall_ms: wall,
                delta_vs_exact: None,
            },
        });
    }

    if inst.rule == VotingRule::Plurality {
        let (res, wall) = timed(|| solve_private_colgen(inst, &rule_f, &PluralityOracle));
        rows.push(match res {
            Ok(sol) => Row {
                instance: name.to_string(),
                solver: "colgen-plurality",
                status: "optimal".to_string(),
                value: Some(sol.value),
                iterations: Some(sol.rounds),
                wall_ms: wall,
                delta_vs_exact: delta(sol.value),
            },
            Err(e) => Row {
                instance: name.to_string(),
                solver: "colgen-plurality",
                status: format!("error: {e}").replace(',', ";"),
                value: None,
                iterations: None,
                wall_ms: wall,
                delta_vs_exact: None,
            },
        });
    }

    // Anonymous column generation on the rule's anonymous encoding applies to
    // every voting rule.
    let (res, wall) = timed(|| {
        let anon = anonymous_from_rule(
            &inst.rule,
            inst.num_states(),
            inst.num_receivers(),
            inst.num_candidates(),
        )?;
        let f = SenderUtility::Anonymous(anon.clone());
        solve_private_colgen(inst, &f, &AnonymousOracle { utility: anon })
    });
    rows.push(match res {
        Ok(sol) => Row {
            instance: name.to_string(),
            solver: "colgen-anonymous",
            status: "optimal".to_string(),
            value: Some(sol.value),
            iterations: Some(sol.rounds),
            wall_ms: wall,
            delta_vs_exact: delta(sol.value),
        },
        Err(e) => Row {
            instance: name.to_string(),
            solver: "colgen-anonymous",
            status: format!("error: {e}").replace(',', ";"),
            value: None,
            iterations: None,
            wall_ms: wall,
            delta_vs_exact: None,
        },
    });

    let (res, wall) = timed(|| solve_public_exact(inst, &rule_f, guard));
    rows.push(match res {
        Ok((value, _)) => Row {
            instance: name.to_string(),
            solver: "exact-public",
            status: "optimal".to_string(),
            value: Some(value),
            iterations: None,
            wall_ms: wall,
            // Public is a lower bound, not an equivalence; no delta.
            delta_vs_exact: None,
        },
        Err(e) => Row {
            instance: name.to_string(),
            solver: "exact-public",
            status: format!("error: {e}").replace(',', ";"),
            value: None,
            iterations: None,
            wall_ms: wall,
            delta_vs_exact: None,
        },
    });
}

pub fn run(args: &BenchArgs) -> Result<(), CliError> {
    let mut entries: Vec<_> = std::fs::read_dir(&args.corpus)
        .map_err(|e| CliError::Io(format!("reading {}: {e}", args.corpus.display())))?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    entries.sort();

    let mut rows = Vec::new();
    for path in &entries {
        let name = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("instance")
            .to_string();
        match commands::load_instance(path) {
            Ok(inst) => run_instance(&name, &inst, args.guard, &mut rows),
            Err(e) => rows.push(Row {
                instance: name,
                solver: "-",
                status: format!("error: {}", e.message()).replace(',', ";"),
                value: None,
                iterations: None,
                wall_ms: 0,
                delta_vs_exact: None,
            }),
        }
    }
    rows.sort_by(|a, b| (&a.instance, a.solver).cmp(&(&b.instance, b.solver)));

    let mut csv = String::from("instance,solver,status,value,iterations,wall_ms,delta_vs_exact\n");
    for row in &rows {
        csv.push_str(&row.csv());
    }
    match &args.out {
        Some(path) => write_file(Path::new(path), &csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}
