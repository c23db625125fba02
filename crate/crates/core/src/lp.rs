//! Dense two-phase simplex over free variables.
//!
//! Every geometric predicate in the crate ends up here: membership in a
//! convex hull, nonemptiness of `A ∩ D`, support values of H-polyhedra and the
//! strict margin of a system of linear forms. Problems are tiny (a handful of
//! variables and constraints), so the solver keeps an explicit tableau and
//! uses Bland's rule for both entering and leaving variables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::eps;
use crate::vector::{check_dim, Vector};

/// Pivot elements and reduced costs below this magnitude are treated as zero.
const PIVOT_TOL: f64 = 1e-11;
const MAX_PIVOTS: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptSense {
    Minimize,
    Maximize,
}

/// `⟨normal, x⟩ (sense) offset`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearConstraint {
    pub normal: Vector,
    pub offset: f64,
    pub sense: Sense,
}

impl LinearConstraint {
    pub fn new(normal: impl Into<Vector>, sense: Sense, offset: f64) -> Self {
        Self {
            normal: normal.into(),
            offset,
            sense,
        }
    }

    pub fn le(normal: impl Into<Vector>, offset: f64) -> Self {
        Self::new(normal, Sense::Le, offset)
    }

    pub fn ge(normal: impl Into<Vector>, offset: f64) -> Self {
        Self::new(normal, Sense::Ge, offset)
    }

    pub fn eq(normal: impl Into<Vector>, offset: f64) -> Self {
        Self::new(normal, Sense::Eq, offset)
    }

    /// Amount by which `x` violates the constraint (0 when satisfied).
    pub fn violation(&self, x: &Vector) -> f64 {
        let lhs = self.normal.dot(x);
        match self.sense {
            Sense::Le => (lhs - self.offset).max(0.0),
            Sense::Ge => (self.offset - lhs).max(0.0),
            Sense::Eq => (lhs - self.offset).abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { point: Vector, value: f64 },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn point(&self) -> Option<&Vector> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(*value),
            _ => None,
        }
    }
}

struct Tableau {
    /// Row-major `rows × (cols + 1)`; the last column is the right-hand side.
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, row: usize) -> f64 {
        self.rows[row][self.cols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col];
        for v in self.rows[row].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.rows[row].clone();
        for (r, other) in self.rows.iter_mut().enumerate() {
            if r == row {
                continue;
            }
            let factor = other[col];
            if factor != 0.0 {
                for (v, pv) in other.iter_mut().zip(&pivot_row) {
                    *v -= factor * pv;
                }
                other[col] = 0.0;
            }
        }
        self.basis[row] = col;
    }

    /// Minimizes `cost · z` over the current basis using Bland's rule.
    /// Columns with `allowed[j] == false` never enter.
    fn minimize(&mut self, cost: &[f64], allowed: &[bool]) -> Result<bool> {
        for _ in 0..MAX_PIVOTS {
            let entering = (0..self.cols).find(|&j| {
                allowed[j] && !self.basis.contains(&j) && self.reduced_cost(cost, j) < -PIVOT_TOL
            });
            let Some(col) = entering else {
                return Ok(true);
            };
            let mut leaving: Option<(usize, f64)> = None;
            for r in 0..self.rows.len() {
                let a = self.rows[r][col];
                if a > PIVOT_TOL {
                    let ratio = self.rhs(r) / a;
                    leaving = match leaving {
                        None => Some((r, ratio)),
                        Some((best, best_ratio)) => {
                            if ratio < best_ratio - PIVOT_TOL
                                || (ratio <= best_ratio + PIVOT_TOL
                                    && self.basis[r] < self.basis[best])
                            {
                                Some((r, ratio.min(best_ratio)))
                            } else {
                                Some((best, best_ratio))
                            }
                        }
                    };
                }
            }
            match leaving {
                None => return Ok(false),
                Some((row, _)) => self.pivot(row, col),
            }
        }
        Err(Error::IterationLimit)
    }

    fn reduced_cost(&self, cost: &[f64], col: usize) -> f64 {
        cost[col]
            - self
                .rows
                .iter()
                .zip(&self.basis)
                .map(|(row, &b)| cost[b] * row[col])
                .sum::<f64>()
    }

    fn objective(&self, cost: &[f64]) -> f64 {
        self.rows
            .iter()
            .zip(&self.basis)
            .map(|(row, &b)| cost[b] * row[self.cols])
            .sum()
    }
}

/// Optimizes `⟨objective, x⟩` over `x ∈ ℝⁿ` subject to `constraints`.
///
/// Infeasibility is declared when the phase-one optimum exceeds [`eps`].
pub fn lp_solve(
    objective: &Vector,
    constraints: &[LinearConstraint],
    sense: OptSense,
) -> Result<LpOutcome> {
    let n = objective.dim();
    for c in constraints {
        check_dim(n, c.normal.dim())?;
    }

    // Free variables split as x = u - v; columns: u (n), v (n), slack/surplus, artificial.
    let m = constraints.len();
    let slack_count = constraints.iter().filter(|c| c.sense != Sense::Eq).count();
    let slack_start = 2 * n;
    let art_start = slack_start + slack_count;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut art_cols = Vec::new();
    let mut next_slack = slack_start;
    let mut next_art = art_start;
    // Upper bound on artificial count is m; columns are finalised afterwards.
    // (row coefficients, slack column and sign, needs artificial, rhs)
    type PendingRow = (Vec<f64>, Option<(usize, f64)>, bool, f64);
    let mut pending: Vec<PendingRow> = Vec::with_capacity(m);
    for c in constraints {
        let flip = c.offset < 0.0;
        let sign = if flip { -1.0 } else { 1.0 };
        let mut coeffs = vec![0.0; 2 * n];
        for (j, &a) in c.normal.iter().enumerate() {
            coeffs[j] = sign * a;
            coeffs[n + j] = -sign * a;
        }
        let sense = match (c.sense, flip) {
            (Sense::Eq, _) => Sense::Eq,
            (Sense::Le, false) | (Sense::Ge, true) => Sense::Le,
            (Sense::Ge, false) | (Sense::Le, true) => Sense::Ge,
        };
        let slack = match sense {
            Sense::Le => {
                let s = next_slack;
                next_slack += 1;
                Some((s, 1.0))
            }
            Sense::Ge => {
                let s = next_slack;
                next_slack += 1;
                Some((s, -1.0))
            }
            Sense::Eq => None,
        };
        let needs_art = sense != Sense::Le;
        pending.push((coeffs, slack, needs_art, sign * c.offset));
    }
    let art_count = pending.iter().filter(|p| p.2).count();
    let cols = art_start + art_count;
    for (coeffs, slack, needs_art, rhs) in pending {
        let mut row = vec![0.0; cols + 1];
        row[..2 * n].copy_from_slice(&coeffs);
        if let Some((s, v)) = slack {
            row[s] = v;
        }
        if needs_art {
            row[next_art] = 1.0;
            basis.push(next_art);
            art_cols.push(next_art);
            next_art += 1;
        } else {
            basis.push(slack.expect("<= rows carry a slack").0);
        }
        row[cols] = rhs;
        rows.push(row);
    }

    let mut tab = Tableau { rows, basis, cols };

    if art_count > 0 {
        let mut phase1 = vec![0.0; cols];
        for &a in &art_cols {
            phase1[a] = 1.0;
        }
        let allowed = vec![true; cols];
        tab.minimize(&phase1, &allowed)?;
        if tab.objective(&phase1) > eps() {
            return Ok(LpOutcome::Infeasible);
        }
        // Drive remaining (zero-level) artificials out of the basis.
        let mut r = 0;
        while r < tab.rows.len() {
            if tab.basis[r] >= art_start {
                let replacement = (0..art_start).find(|&j| tab.rows[r][j].abs() > PIVOT_TOL);
                match replacement {
                    Some(j) => {
                        tab.pivot(r, j);
                        r += 1;
                    }
                    None => {
                        tab.rows.remove(r);
                        tab.basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
    }

    let sign = match sense {
        OptSense::Minimize => 1.0,
        OptSense::Maximize => -1.0,
    };
    let mut cost = vec![0.0; cols];
    for j in 0..n {
        cost[j] = sign * objective[j];
        cost[n + j] = -sign * objective[j];
    }
    let allowed: Vec<bool> = (0..cols).map(|j| j < art_start).collect();
    if !tab.minimize(&cost, &allowed)? {
        return Ok(LpOutcome::Unbounded);
    }

    let mut z = vec![0.0; cols];
    for (r, &b) in tab.basis.iter().enumerate() {
        z[b] = tab.rhs(r);
    }
    let point = Vector::from((0..n).map(|j| z[j] - z[n + j]).collect::<Vec<_>>());
    let value = objective.dot(&point);
    Ok(LpOutcome::Optimal { point, value })
}

/// Returns a point satisfying every constraint, or `None` if the system is
/// infeasible. `dim` fixes the ambient dimension (needed for empty systems).
pub fn lp_feasible(dim: usize, constraints: &[LinearConstraint]) -> Result<Option<Vector>> {
    let outcome = lp_solve(&Vector::zeros(dim), constraints, OptSense::Minimize)?;
    Ok(outcome.point().cloned())
}

/// Result of [`strict_margin`].
#[derive(Debug, Clone, PartialEq)]
pub struct Margin {
    pub value: f64,
    pub point: Vector,
}

/// `t* = max_{‖x‖∞ ≤ 1} min_j ⟨x, d_j⟩`.
///
/// The open system `{x : ⟨x, d_j⟩ > 0 ∀j}` is solvable iff `t* > eps()`; the
/// returned point is a maximizer.
pub fn strict_margin(forms: &[Vector]) -> Result<Margin> {
    let Some(first) = forms.first() else {
        return Err(Error::EmptyFamily);
    };
    let n = first.dim();
    // Variables (x, t); maximize t.
    let mut constraints = Vec::with_capacity(forms.len() + 2 * n);
    for d in forms {
        check_dim(n, d.dim())?;
        let mut row = d.as_slice().to_vec();
        row.push(-1.0);
        constraints.push(LinearConstraint::ge(row, 0.0));
    }
    for i in 0..n {
        let e = Vector::unit(n + 1, i);
        constraints.push(LinearConstraint::le(e.clone(), 1.0));
        constraints.push(LinearConstraint::ge(e, -1.0));
    }
    let objective = Vector::unit(n + 1, n);
    match lp_solve(&objective, &constraints, OptSense::Maximize)? {
        LpOutcome::Optimal { point, value } => Ok(Margin {
            value,
            point: Vector::from(point.as_slice()[..n].to_vec()),
        }),
        // The box keeps the problem feasible (x = 0, t = min ⟨0,d⟩) and bounded.
        other => unreachable!("strict margin LP returned {other:?}"),
    }
}

type Row = (Vec<(usize, f64)>, Sense, f64);

/// Builder for LPs with auxiliary variables: terms are `(column, coefficient)`.
#[derive(Debug, Default)]
pub(crate) struct Program {
    cols: usize,
    rows: Vec<Row>,
}

impl Program {
    pub(crate) fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    /// Appends `count` fresh columns and returns the index of the first.
    pub(crate) fn add_vars(&mut self, count: usize) -> usize {
        let start = self.cols;
        self.cols += count;
        start
    }

    pub(crate) fn add(&mut self, terms: Vec<(usize, f64)>, sense: Sense, rhs: f64) {
        self.rows.push((terms, sense, rhs));
    }

    pub(crate) fn nonnegative(&mut self, start: usize, count: usize) {
        for j in start..start + count {
            self.add(vec![(j, 1.0)], Sense::Ge, 0.0);
        }
    }

    pub(crate) fn solve(&self, objective: &[(usize, f64)], sense: OptSense) -> Result<LpOutcome> {
        let dense = |terms: &[(usize, f64)]| {
            let mut v = vec![0.0; self.cols];
            for &(j, c) in terms {
                v[j] += c;
            }
            Vector::from(v)
        };
        let constraints: Vec<LinearConstraint> = self
            .rows
            .iter()
            .map(|(terms, sense, rhs)| LinearConstraint::new(dense(terms), *sense, *rhs))
            .collect();
        lp_solve(&dense(objective), &constraints, sense)
    }

    pub(crate) fn feasible_point(&self) -> Result<Option<Vector>> {
        Ok(self.solve(&[], OptSense::Minimize)?.point().cloned())
    }
}
