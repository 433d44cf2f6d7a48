//! Dense two-phase primal simplex, generic over the scalar type.
//!
//! The pivot rule is Dantzig's (most negative reduced cost, lowest index on
//! ties) with a deterministic switch to Bland's rule after a run of
//! degenerate pivots, which guarantees termination and keeps runs
//! reproducible. Bounded variables are handled by shifting/mirroring onto
//! `x >= 0` (finite two-sided bounds become an extra row) and free variables
//! by splitting.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Relation;

/// Scalar operations the tableau needs. `tol()` is the comparison tolerance:
/// strictly positive for floats, exactly zero for rationals.
pub(crate) trait Scalar:
    Clone
    + PartialOrd
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn tol() -> Self;
    fn is_zero_val(&self) -> bool;
}

impl Scalar for f64 {
    fn zero() -> f64 {
        0.0
    }
    fn one() -> f64 {
        1.0
    }
    fn tol() -> f64 {
        1e-9
    }
    fn is_zero_val(&self) -> bool {
        *self == 0.0
    }
}

impl Scalar for BigRational {
    fn zero() -> BigRational {
        Zero::zero()
    }
    fn one() -> BigRational {
        One::one()
    }
    fn tol() -> BigRational {
        Zero::zero()
    }
    fn is_zero_val(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Sparse row, relation, and right-hand side.
pub(crate) type GenericRow<T> = (Vec<(usize, T)>, Relation, T);

/// Maximization LP over scalars of type `T`; `None` bounds are infinite.
pub(crate) struct GenericLp<T> {
    pub num_vars: usize,
    pub objective: Vec<T>,
    pub lower: Vec<Option<T>>,
    pub upper: Vec<Option<T>>,
    pub constraints: Vec<GenericRow<T>>,
}

pub(crate) enum Outcome<T> {
    Optimal {
        objective: T,
        primal: Vec<T>,
        duals: Vec<T>,
    },
    Infeasible,
    Unbounded,
    Numerical,
}

#[derive(Clone)]
enum VarMap<T> {
    /// `x = offset + col`, `col >= 0`.
    Shift { col: usize, offset: T },
    /// `x = offset - col`, `col >= 0`.
    Mirror { col: usize, offset: T },
    /// `x = pos - neg`.
    Split { pos: usize, neg: usize },
}

const MAX_PIVOTS: usize = 200_000;
const DEGENERATE_SWITCH: usize = 100;

struct Tableau<T> {
    /// `rows[i]` has `width` coefficient entries followed by the rhs.
    rows: Vec<Vec<T>>,
    width: usize,
    basis: Vec<usize>,
}

impl<T: Scalar> Tableau<T> {
    fn rhs(&self, i: usize) -> &T {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let pivot = self.rows[row][col].clone();
        for entry in self.rows[row].iter_mut() {
            *entry = entry.clone() / pivot.clone();
        }
        for i in 0..self.rows.len() {
            if i == row {
                continue;
            }
            let factor = self.rows[i][col].clone();
            if factor.is_zero_val() {
                continue;
            }
            for j in 0..=self.width {
                let delta = factor.clone() * self.rows[row][j].clone();
                self.rows[i][j] = self.rows[i][j].clone() - delta;
            }
        }
        self.basis[row] = col;
    }
}

/// Reduced-cost row `z_j - c_j` for the given cost vector, recomputed from
/// scratch: `sum_i c_basis[i] * tab[i][j] - c_j`.
fn reduced_costs<T: Scalar>(tab: &Tableau<T>, costs: &[T]) -> Vec<T> {
    let mut z = vec![T::zero(); tab.width + 1];
    for (i, row) in tab.rows.iter().enumerate() {
        let cb = costs[tab.basis[i]].clone();
        if cb.is_zero_val() {
            continue;
        }
        for j in 0..=tab.width {
            z[j] = z[j].clone() + cb.clone() * row[j].clone();
        }
    }
    for j in 0..tab.width {
        z[j] = z[j].clone() - costs[j].clone();
    }
    z
}

enum PhaseEnd {
    Optimal,
    Unbounded,
    PivotCap,
}

/// Runs primal simplex to optimality for the given costs. `barred` columns
/// never enter the basis.
fn run_phase<T: Scalar>(tab: &mut Tableau<T>, costs: &[T], barred: &[bool]) -> (PhaseEnd, Vec<T>) {
    let mut z = reduced_costs(tab, costs);
    let tol = T::tol();
    let mut degenerate_run = 0usize;
    for _ in 0..MAX_PIVOTS {
        let bland = degenerate_run >= DEGENERATE_SWITCH;
        // Entering column.
        let mut entering: Option<usize> = None;
        for j in 0..tab.width {
            if barred[j] {
                continue;
            }
            if z[j].clone() + tol.clone() < T::zero() {
                match entering {
                    None => entering = Some(j),
                    Some(best) => {
                        if !bland && z[j] < z[best] {
                            entering = Some(j);
                        }
                    }
                }
                if bland {
                    break;
                }
            }
        }
        let Some(col) = entering else {
            return (PhaseEnd::Optimal, z);
        };
        // Ratio test; ties broken by the lowest basis variable index (Bland).
        let mut leaving: Option<(usize, T)> = None;
        for i in 0..tab.rows.len() {
            let a = tab.rows[i][col].clone();
            if a <= tol {
                continue;
            }
            let ratio = tab.rhs(i).clone() / a;
            match &leaving {
                None => leaving = Some((i, ratio)),
                Some((best_i, best_ratio)) => {
                    if ratio < *best_ratio
                        || (ratio == *best_ratio && tab.basis[i] < tab.basis[*best_i])
                    {
                        leaving = Some((i, ratio));
                    }
                }
            }
        }
        let Some((row, ratio)) = leaving else {
            return (PhaseEnd::Unbounded, z);
        };
        if ratio <= tol {
            degenerate_run += 1;
        } else {
            degenerate_run = 0;
        }
        tab.pivot(row, col);
        // Incremental z-row update: subtract z[col] times the pivot row.
        let factor = z[col].clone();
        if !factor.is_zero_val() {
            for j in 0..=tab.width {
                let delta = factor.clone() * tab.rows[row][j].clone();
                z[j] = z[j].clone() - delta;
            }
        }
    }
    (PhaseEnd::PivotCap, z)
}

pub(crate) fn solve_generic<T: Scalar>(lp: &GenericLp<T>) -> Outcome<T> {
    let tol = T::tol();

    // Map every variable onto nonnegative columns.
    let mut maps: Vec<VarMap<T>> = Vec::with_capacity(lp.num_vars);
    let mut num_cols = 0usize;
    // Extra `col <= span` rows from two-sided bounds.
    let mut bound_rows: Vec<(usize, T)> = Vec::new();
    for j in 0..lp.num_vars {
        match (&lp.lower[j], &lp.upper[j]) {
            (Some(l), Some(u)) => {
                if u < l {
                    return Outcome::Infeasible;
                }
                maps.push(VarMap::Shift {
                    col: num_cols,
                    offset: l.clone(),
                });
                bound_rows.push((num_cols, u.clone() - l.clone()));
                num_cols += 1;
            }
            (Some(l), None) => {
                maps.push(VarMap::Shift {
                    col: num_cols,
                    offset: l.clone(),
                });
                num_cols += 1;
            }
            (None, Some(u)) => {
                maps.push(VarMap::Mirror {
                    col: num_cols,
                    offset: u.clone(),
                });
                num_cols += 1;
            }
            (None, None) => {
                maps.push(VarMap::Split {
                    pos: num_cols,
                    neg: num_cols + 1,
                });
                num_cols += 2;
            }
        }
    }

    // Transform objective.
    let mut obj = vec![T::zero(); num_cols];
    let mut obj_base = T::zero();
    for j in 0..lp.num_vars {
        let c = lp.objective[j].clone();
        match &maps[j] {
            VarMap::Shift { col, offset } => {
                obj[*col] = obj[*col].clone() + c.clone();
                obj_base = obj_base + c * offset.clone();
            }
            VarMap::Mirror { col, offset } => {
                obj[*col] = obj[*col].clone() - c.clone();
                obj_base = obj_base + c * offset.clone();
            }
            VarMap::Split { pos, neg } => {
                obj[*pos] = obj[*pos].clone() + c.clone();
                obj[*neg] = obj[*neg].clone() - c;
            }
        }
    }

    // Transform rows: user constraints first, then internal bound rows.
    let num_user = lp.constraints.len();
    let mut rows: Vec<(Vec<T>, Relation, T)> = Vec::with_capacity(num_user + bound_rows.len());
    for (coeffs, rel, rhs) in &lp.constraints {
        let mut dense = vec![T::zero(); num_cols];
        let mut b = rhs.clone();
        for (j, a) in coeffs {
            match &maps[*j] {
                VarMap::Shift { col, offset } => {
                    dense[*col] = dense[*col].clone() + a.clone();
                    b = b - a.clone() * offset.clone();
                }
                VarMap::Mirror { col, offset } => {
                    dense[*col] = dense[*col].clone() - a.clone();
                    b = b - a.clone() * offset.clone();
                }
                VarMap::Split { pos, neg } => {
                    dense[*pos] = dense[*pos].clone() + a.clone();
                    dense[*neg] = dense[*neg].clone() - a.clone();
                }
            }
        }
        rows.push((dense, *rel, b));
    }
    for (col, span) in &bound_rows {
        let mut dense = vec![T::zero(); num_cols];
        dense[*col] = T::one();
        rows.push((dense, Relation::Le, span.clone()));
    }

    // Normalize to nonnegative rhs, remembering dual sign flips.
    let mut flipped = vec![false; rows.len()];
    for (i, (dense, rel, b)) in rows.iter_mut().enumerate() {
        if *b < T::zero() {
            for entry in dense.iter_mut() {
                *entry = -entry.clone();
            }
            *b = -b.clone();
            *rel = match *rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
            flipped[i] = true;
        }
    }

    // Column layout: structural, then one slack/surplus per inequality row,
    // then one artificial per Ge/Eq row.
    let m = rows.len();
    let mut slack_col = vec![usize::MAX; m];
    let mut art_col = vec![usize::MAX; m];
    let mut next = num_cols;
    for (i, (_, rel, _)) in rows.iter().enumerate() {
        if matches!(rel, Relation::Le | Relation::Ge) {
            slack_col[i] = next;
            next += 1;
        }
    }
    let art_start = next;
    for (i, (_, rel, _)) in rows.iter().enumerate() {
        if matches!(rel, Relation::Ge | Relation::Eq) {
            art_col[i] = next;
            next += 1;
        }
    }
    let width = next;
    let has_artificials = width > art_start;

    let mut tab = Tableau {
        rows: Vec::with_capacity(m),
        width,
        basis: vec![0; m],
    };
    for (i, (dense, rel, b)) in rows.iter().enumerate() {
        let mut full = vec![T::zero(); width + 1];
        full[..num_cols].clone_from_slice(dense);
        match rel {
            Relation::Le => {
                full[slack_col[i]] = T::one();
                tab.basis[i] = slack_col[i];
            }
            Relation::Ge => {
                full[slack_col[i]] = -T::one();
                full[art_col[i]] = T::one();
                tab.basis[i] = art_col[i];
            }
            Relation::Eq => {
                full[art_col[i]] = T::one();
                tab.basis[i] = art_col[i];
            }
        }
        full[width] = b.clone();
        tab.rows.push(full);
    }

    let barred_none = vec![false; width];
    let mut barred_art = vec![false; width];
    for j in art_start..width {
        barred_art[j] = true;
    }

    // Phase 1: maximize minus the sum of artificials.
    if has_artificials {
        let mut costs1 = vec![T::zero(); width];
        for j in art_start..width {
            costs1[j] = -T::one();
        }
        let (end, z) = run_phase(&mut tab, &costs1, &barred_none);
        match end {
            PhaseEnd::Optimal => {}
            // Phase 1 is bounded above by zero; anything else is numerics.
            PhaseEnd::Unbounded | PhaseEnd::PivotCap => return Outcome::Numerical,
        }
        // Objective value = -sum of artificial values = z[rhs] here. The
        // infeasibility threshold scales with the rhs magnitude so float
        // noise on large systems is not mistaken for infeasibility.
        let mut b_scale = T::one();
        for row in &rows {
            let b = row.2.clone();
            b_scale = b_scale + if b < T::zero() { -b } else { b };
        }
        let artificial_sum = -z[width].clone();
        if artificial_sum > tol.clone() * b_scale {
            return Outcome::Infeasible;
        }
        // Drive leftover artificials out of the basis where possible; rows
        // where no structural pivot exists are redundant and stay put at zero.
        for i in 0..m {
            if tab.basis[i] < art_start {
                continue;
            }
            let col = (0..art_start).find(|&j| {
                let a = tab.rows[i][j].clone();
                a.clone() > tol.clone() || a < -tol.clone()
            });
            if let Some(j) = col {
                tab.pivot(i, j);
            }
        }
    }

    // Phase 2 with the real objective; artificial columns may not re-enter.
    let mut costs2 = vec![T::zero(); width];
    costs2[..num_cols].clone_from_slice(&obj);
    let (end, _) = run_phase(&mut tab, &costs2, &barred_art);
    match end {
        PhaseEnd::Optimal => {}
        PhaseEnd::Unbounded => return Outcome::Unbounded,
        PhaseEnd::PivotCap => return Outcome::Numerical,
    }
    let z = reduced_costs(&tab, &costs2);

    // Primal values of the transformed columns.
    let mut col_val = vec![T::zero(); width];
    for (i, &b) in tab.basis.iter().enumerate() {
        col_val[b] = tab.rhs(i).clone();
    }
    let mut primal = Vec::with_capacity(lp.num_vars);
    for map in &maps {
        let x = match map {
            VarMap::Shift { col, offset } => offset.clone() + col_val[*col].clone(),
            VarMap::Mirror { col, offset } => offset.clone() - col_val[*col].clone(),
            VarMap::Split { pos, neg } => col_val[*pos].clone() - col_val[*neg].clone(),
        };
        primal.push(x);
    }
    let mut objective = obj_base;
    for j in 0..num_cols {
        objective = objective + obj[j].clone() * col_val[j].clone();
    }

    // Duals of the user rows, read off the reduced costs of each row's unit
    // column (slack for Le, artificial for Ge/Eq — all carry zero cost in
    // phase 2, so z_j - c_j = y_i there).
    let mut duals = Vec::with_capacity(num_user);
    for i in 0..num_user {
        let unit = match rows[i].1 {
            Relation::Le => slack_col[i],
            Relation::Ge | Relation::Eq => art_col[i],
        };
        let mut y = z[unit].clone();
        if flipped[i] {
            y = -y;
        }
        duals.push(y);
    }

    Outcome::Optimal {
        objective,
        primal,
        duals,
    }
}
