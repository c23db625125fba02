//! Necessary conditions for `h(g) ≤ 0` on `Γ = ⋃ A` for a lower exhauster.
//!
//! With `K(A) = {w : ⟨w,v⟩ ≥ 0 ∀v ∈ A}` the statement
//! `0 ∈ C + K(A)` for every member `C` and every cone `A` of the
//! decomposition is equivalent to `(-C) ∩ K(A) ≠ ∅`. Both forms are computed
//! here by different routes and compared.

use serde::Serialize;

use crate::body::Body;
use crate::cone::{intersect_nonempty, Cone};
use crate::error::{Error, Result};
use crate::lp::{OptSense, Program, Sense};
use crate::tolerance::eps;
use crate::vector::{check_dim, Vector};

use super::{Exhauster, Kind};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairCondition {
    pub member: usize,
    pub cone: usize,
    /// `(-C) ∩ K(A) ≠ ∅`.
    pub cond_ii: bool,
    /// `0 ∈ C + K(A)`.
    pub cond_iii: bool,
    /// A point `v ∈ C` with `-v ∈ K(A)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vector>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimalityReport {
    pub per_pair: Vec<PairCondition>,
    pub cond_iv: bool,
    /// Whether both computations agreed on every pair.
    pub consistent: bool,
}

/// `v ∈ C`, `w ∈ K(A)`, `v + w = 0` as one feasibility program.
fn zero_in_sum(member: &Body, a: &Cone, dual: &Cone) -> Result<Option<Vector>> {
    let n = member.dim();
    if let Body::Ball { center, radius } = member {
        // Moreau: -c = proj_K(-c) + proj_{K°}(-c) with K° = -cl cone(A), so
        // dist(-c, K) = ‖proj_A(c)‖ and v = c - proj_A(c) is the closest point.
        let p = a.project(center)?;
        return Ok((p.norm() <= radius + eps()).then(|| center - &p));
    }
    let mut prog = Program::new(2 * n);
    member.add_membership(&mut prog, 0)?;
    dual.add_membership(&mut prog, n);
    for i in 0..n {
        prog.add(vec![(i, 1.0), (n + i, 1.0)], Sense::Eq, 0.0);
    }
    let out = prog.solve(&[], OptSense::Minimize)?;
    Ok(out
        .point()
        .map(|p| Vector::from(p.as_slice()[..n].to_vec())))
}

/// Checks the conditions for each member against each cone of the
/// decomposition of `Γ`. Whether the cones cover `Γ` is the caller's concern.
pub fn optimality_check(e: &Exhauster, decomposition: &[Cone]) -> Result<OptimalityReport> {
    if e.kind() != Kind::Lower {
        return Err(Error::WrongKind { expected: "lower" });
    }
    if decomposition.is_empty() {
        return Err(Error::EmptyFamily);
    }
    for a in decomposition {
        check_dim(e.dim(), a.dim())?;
    }
    let mut per_pair = Vec::new();
    for (ci, member) in e.members().iter().enumerate() {
        let minus = member.negated();
        for (ai, a) in decomposition.iter().enumerate() {
            let dual = a.positive_dual();
            let ii = intersect_nonempty(&minus, &dual, false).map_err(|err| err.in_pair(ci, ai))?;
            let iii = zero_in_sum(member, a, &dual).map_err(|err| err.in_pair(ci, ai))?;
            per_pair.push(PairCondition {
                member: ci,
                cone: ai,
                cond_ii: ii.is_some(),
                cond_iii: iii.is_some(),
                witness: iii.or(ii.map(|p| -&p)),
            });
        }
    }
    let cond_iv = per_pair.iter().all(|p| p.cond_iii);
    let consistent = per_pair.iter().all(|p| p.cond_ii == p.cond_iii);
    Ok(OptimalityReport {
        per_pair,
        cond_iv,
        consistent,
    })
}
