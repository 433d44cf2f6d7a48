//! Self-contained linear-program solver and integral transportation solver.
//!
//! The simplex implementation is generic over the scalar type: the default
//! entry point [`solve_lp`] runs in `f64`, while [`solve_lp_exact`] re-solves
//! the same problem in arbitrary-precision rational arithmetic (every `f64`
//! converts exactly), which verification suites use to rule out float doubt
//! on small instances.
//!
//! Duals are first-class: the column-generation solver consumes them as
//! pricing weights, so [`LpSolution::duals`] carries one multiplier per
//! constraint in input order (nonnegative for `<=` rows, nonpositive for `>=`
//! rows, free for equalities, under maximization).

mod simplex;
mod transport;

pub use transport::{
    solve_transportation, ColumnBound, TransportationProblem, TransportationSolution,
};

use std::io::Write;

use num_rational::BigRational;

use simplex::{solve_generic, GenericLp, Outcome};

/// Constraint sense.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// A sparse constraint row `sum coeffs . x  <relation>  rhs`.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

/// A linear program in maximization form with per-variable bounds
/// (`f64::NEG_INFINITY` / `f64::INFINITY` mark unbounded sides).
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub num_vars: usize,
    pub objective: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub constraints: Vec<Constraint>,
    /// Optional variable names used by the debug dump.
    pub names: Vec<String>,
}

impl LpProblem {
    pub fn new(num_vars: usize) -> Self {
        LpProblem {
            num_vars,
            objective: vec![0.0; num_vars],
            lower: vec![0.0; num_vars],
            upper: vec![f64::INFINITY; num_vars],
            constraints: Vec::new(),
            names: (0..num_vars).map(|j| format!("x{j}")).collect(),
        }
    }

    /// Appends a fresh variable and returns its index.
    pub fn add_var(&mut self, name: impl Into<String>, obj: f64, lower: f64, upper: f64) -> usize {
        let j = self.num_vars;
        self.num_vars += 1;
        self.objective.push(obj);
        self.lower.push(lower);
        self.upper.push(upper);
        self.names.push(name.into());
        j
    }

    pub fn add_constraint(&mut self, coeffs: Vec<(usize, f64)>, relation: Relation, rhs: f64) {
        debug_assert!(coeffs
            .iter()
            .all(|&(j, a)| j < self.num_vars && a.is_finite()));
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    /// Writes the problem in CPLEX LP text format for cross-checking against
    /// external solvers.
    pub fn write_lp_text(&self, w: &mut impl Write) -> std::io::Result<()> {
        writeln!(w, "Maximize")?;
        write!(w, " obj:")?;
        for (j, &c) in self.objective.iter().enumerate() {
            if c != 0.0 {
                write!(w, " {} {}", fmt_signed(c), self.names[j])?;
            }
        }
        writeln!(w)?;
        writeln!(w, "Subject To")?;
        for (i, con) in self.constraints.iter().enumerate() {
            write!(w, " c{i}:")?;
            for &(j, a) in &con.coeffs {
                write!(w, " {} {}", fmt_signed(a), self.names[j])?;
            }
            let rel = match con.relation {
                Relation::Le => "<=",
                Relation::Eq => "=",
                Relation::Ge => ">=",
            };
            writeln!(w, " {rel} {}", con.rhs)?;
        }
        writeln!(w, "Bounds")?;
        for j in 0..self.num_vars {
            let (lo, hi) = (self.lower[j], self.upper[j]);
            if lo == f64::NEG_INFINITY && hi == f64::INFINITY {
                writeln!(w, " {} free", self.names[j])?;
            } else if hi == f64::INFINITY {
                writeln!(w, " {} >= {}", self.names[j], lo)?;
            } else if lo == f64::NEG_INFINITY {
                writeln!(w, " {} <= {}", self.names[j], hi)?;
            } else {
                writeln!(w, " {} <= {} <= {}", lo, self.names[j], hi)?;
            }
        }
        writeln!(w, "End")
    }
}

fn fmt_signed(x: f64) -> String {
    if x >= 0.0 {
        format!("+{x}")
    } else {
        format!("{x}")
    }
}

/// Solver verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    /// The solver detected numerical trouble (failed post-checks or hit the
    /// iteration cap) and refuses to report a possibly wrong answer.
    Numerical,
}

/// Solver result. `primal` and `duals` are meaningful only when `status` is
/// [`LpStatus::Optimal`]; `duals` has one entry per constraint.
#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub objective: f64,
    pub primal: Vec<f64>,
    pub duals: Vec<f64>,
}

impl LpSolution {
    fn non_optimal(status: LpStatus) -> Self {
        LpSolution {
            status,
            objective: 0.0,
            primal: Vec::new(),
            duals: Vec::new(),
        }
    }
}

fn to_generic_f64(p: &LpProblem) -> GenericLp<f64> {
    GenericLp {
        num_vars: p.num_vars,
        objective: p.objective.clone(),
        lower: p
            .lower
            .iter()
            .map(|&l| l.is_finite().then_some(l))
            .collect(),
        upper: p
            .upper
            .iter()
            .map(|&u| u.is_finite().then_some(u))
            .collect(),
        constraints: p
            .constraints
            .iter()
            .map(|c| (c.coeffs.clone(), c.relation, c.rhs))
            .collect(),
    }
}

fn to_generic_exact(p: &LpProblem) -> GenericLp<BigRational> {
    let conv = |x: f64| BigRational::from_float(x).expect("finite coefficient");
    GenericLp {
        num_vars: p.num_vars,
        objective: p.objective.iter().map(|&c| conv(c)).collect(),
        lower: p
            .lower
            .iter()
            .map(|&l| l.is_finite().then(|| conv(l)))
            .collect(),
        upper: p
            .upper
            .iter()
            .map(|&u| u.is_finite().then(|| conv(u)))
            .collect(),
        constraints: p
            .constraints
            .iter()
            .map(|c| {
                (
                    c.coeffs.iter().map(|&(j, a)| (j, conv(a))).collect(),
                    c.relation,
                    conv(c.rhs),
                )
            })
            .collect(),
    }
}

/// Solves in `f64` with a deterministic anti-cycling pivot rule; optimal
/// solutions are re-verified for primal feasibility before being reported.
pub fn solve_lp(p: &LpProblem) -> LpSolution {
    let outcome = solve_generic(&to_generic_f64(p));
    finish(p, outcome, |x| x, true)
}

/// Solves in exact rational arithmetic. Intended for desk-scale verification;
/// results are converted back to `f64` for reporting.
pub fn solve_lp_exact(p: &LpProblem) -> LpSolution {
    let outcome = solve_generic(&to_generic_exact(p));
    finish(
        p,
        outcome,
        |x| {
            use num_traits::ToPrimitive;
            x.to_f64().unwrap_or(f64::NAN)
        },
        false,
    )
}

fn finish<T>(
    p: &LpProblem,
    outcome: Outcome<T>,
    conv: impl Fn(T) -> f64,
    verify: bool,
) -> LpSolution {
    match outcome {
        Outcome::Infeasible => LpSolution::non_optimal(LpStatus::Infeasible),
        Outcome::Unbounded => LpSolution::non_optimal(LpStatus::Unbounded),
        Outcome::Numerical => LpSolution::non_optimal(LpStatus::Numerical),
        Outcome::Optimal {
            objective,
            primal,
            duals,
        } => {
            let sol = LpSolution {
                status: LpStatus::Optimal,
                objective: conv(objective),
                primal: primal.into_iter().map(&conv).collect(),
                duals: duals.into_iter().map(&conv).collect(),
            };
            if verify && !primal_feasible(p, &sol.primal, 1e-8) {
                return LpSolution::non_optimal(LpStatus::Numerical);
            }
            sol
        }
    }
}

/// Checks primal feasibility of `x` against every constraint and bound.
pub fn primal_feasible(p: &LpProblem, x: &[f64], tol: f64) -> bool {
    if x.len() != p.num_vars {
        return false;
    }
    for j in 0..p.num_vars {
        if x[j] < p.lower[j] - tol || x[j] > p.upper[j] + tol {
            return false;
        }
    }
    for c in &p.constraints {
        let lhs: f64 = c.coeffs.iter().map(|&(j, a)| a * x[j]).sum();
        let ok = match c.relation {
            Relation::Le => lhs <= c.rhs + tol,
            Relation::Ge => lhs >= c.rhs - tol,
            Relation::Eq => (lhs - c.rhs).abs() <= tol,
        };
        if !ok {
            return false;
        }
    }
    true
}

/// Lagrangian dual objective for a maximization problem: `y.b` plus, per
/// variable, the bound contribution of its reduced cost. Reduced costs with
/// magnitude below `rc_tol` are treated as zero so that float noise does not
/// multiply an infinite bound. At a true optimum this equals the primal
/// objective (weak duality certificate).
pub fn dual_objective(p: &LpProblem, duals: &[f64], rc_tol: f64) -> f64 {
    let mut reduced = p.objective.clone();
    let mut total = 0.0;
    for (c, &y) in p.constraints.iter().zip(duals) {
        total += y * c.rhs;
        for &(j, a) in &c.coeffs {
            reduced[j] -= y * a;
        }
    }
    for j in 0..p.num_vars {
        let rc = reduced[j];
        if rc > rc_tol {
            total += rc * p.upper[j];
        } else if rc < -rc_tol {
            total += rc * p.lower[j];
        }
    }
    total
}
