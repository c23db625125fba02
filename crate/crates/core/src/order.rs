//! Set order relations `≼m1_D` and `≼m2_D` and extremal subfamilies.
//!
//! `A ≼m1_D B` iff `(B -̇ A) ∩ D ≠ ∅`, and `A ≼m2_D B` iff
//! `(A -̇ B) ∩ (-D) ≠ ∅`. Both are partial orders on bounded sets when `D` is
//! pointed. For non-pointed cones antisymmetry can fail: members of a cycle
//! dominate each other, and the extremal family may then be empty.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::body::{minkowski_diff, Body};
use crate::cone::{intersect_nonempty, Cone};
use crate::error::{Error, Result};
use crate::vector::{check_dim, Vector};

/// Verdict of an order check with the point certifying the nonempty
/// intersection.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderCheck {
    pub witness: Option<Vector>,
}

impl OrderCheck {
    pub fn holds(&self) -> bool {
        self.witness.is_some()
    }
}

/// Indices into a member list.
pub type FamilyIndexSet = BTreeSet<usize>;

fn require_bounded(body: &Body) -> Result<()> {
    if body.is_bounded()? {
        Ok(())
    } else {
        Err(Error::UnboundedOperand)
    }
}

/// `A ≼m1_D B`.
pub fn precedes_m1(a: &Body, b: &Body, cone: &Cone) -> Result<OrderCheck> {
    check_dim(a.dim(), b.dim())?;
    check_dim(a.dim(), cone.dim())?;
    require_bounded(a)?;
    require_bounded(b)?;
    let diff = minkowski_diff(b, a)?;
    Ok(OrderCheck {
        witness: intersect_nonempty(&diff, cone, false)?,
    })
}

/// `A ≼m2_D B`.
pub fn precedes_m2(a: &Body, b: &Body, cone: &Cone) -> Result<OrderCheck> {
    check_dim(a.dim(), b.dim())?;
    check_dim(a.dim(), cone.dim())?;
    require_bounded(a)?;
    require_bounded(b)?;
    let diff = minkowski_diff(a, b)?;
    Ok(OrderCheck {
        witness: intersect_nonempty(&diff, &cone.negated(), false)?,
    })
}

/// For one member, the first distinct member that dominates it together
/// with the order witness.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Domination {
    pub by: usize,
    pub witness: Vector,
}

/// For each member `i`, the smallest index `j` of a member with
/// `relation(i, j)` holding and `C_j ≠ C_i` as sets.
pub(crate) fn dominators(
    members: &[Body],
    relation: impl Fn(usize, usize) -> Result<OrderCheck>,
) -> Result<Vec<Option<Domination>>> {
    let n = members.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut found = None;
        for j in 0..n {
            if i == j {
                continue;
            }
            let check = relation(i, j).map_err(|e| e.in_pair(i, j))?;
            if let Some(witness) = check.witness {
                if !members[i]
                    .set_eq(&members[j])
                    .map_err(|e| e.in_pair(i, j))?
                {
                    found = Some(Domination { by: j, witness });
                    break;
                }
            }
        }
        out.push(found);
    }
    Ok(out)
}

pub(crate) fn m1_dominators(members: &[Body], cone: &Cone) -> Result<Vec<Option<Domination>>> {
    // i is dominated when some j satisfies C_j ≼m1 C_i.
    dominators(members, |i, j| precedes_m1(&members[j], &members[i], cone))
}

pub(crate) fn m2_dominators(members: &[Body], cone: &Cone) -> Result<Vec<Option<Domination>>> {
    // i is dominated when C_i ≼m2 C_j for some j.
    dominators(members, |i, j| precedes_m2(&members[i], &members[j], cone))
}

/// Members not preceded in `≼m1_D` by any distinct member.
pub fn m1_minimal_family(members: &[Body], cone: &Cone) -> Result<FamilyIndexSet> {
    Ok(m1_dominators(members, cone)?
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_none())
        .map(|(i, _)| i)
        .collect())
}

/// Members not strictly below any distinct member in `≼m2_D`.
pub fn m2_maximal_family(members: &[Body], cone: &Cone) -> Result<FamilyIndexSet> {
    Ok(m2_dominators(members, cone)?
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_none())
        .map(|(i, _)| i)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::from(c.to_vec())
    }

    fn ball(c: &[f64], r: f64) -> Body {
        Body::ball(v(c), r).unwrap()
    }

    fn wedge_k() -> Cone {
        Cone::from_normals(2, vec![v(&[1.0, 1.0]), v(&[1.0, -1.0])]).unwrap()
    }

    #[test]
    fn shifted_pair() {
        let a = ball(&[0.0, 0.0], 1.0);
        let b = ball(&[1.0, 0.0], 1.0);
        let check = precedes_m1(&b, &a, &wedge_k()).unwrap();
        assert!(check.holds());
        assert!(check.witness.unwrap().approx_eq(&v(&[-1.0, 0.0]), 1e-12));
        assert!(!precedes_m1(&a, &b, &wedge_k()).unwrap().holds());
    }

    #[test]
    fn reflexive() {
        let a = ball(&[2.0, -3.0], 1.5);
        let w = precedes_m1(&a, &a, &wedge_k()).unwrap().witness.unwrap();
        assert!(w.is_zero(1e-12));
        assert!(precedes_m2(&a, &a, &wedge_k()).unwrap().holds());
    }

    #[test]
    fn duality_on_shifted_balls() {
        let a = ball(&[0.0, 0.0], 1.0);
        let b = ball(&[1.0, 0.0], 1.0);
        let k = wedge_k();
        let m1 = precedes_m1(&b, &a, &k).unwrap().holds();
        let m2 = precedes_m2(&a.negated(), &b.negated(), &k).unwrap().holds();
        assert!(m1 && m2);
    }

    #[test]
    fn distant_balls_in_the_negative_orthant() {
        let d = Cone::orthant(2).negated();
        let a = ball(&[0.0, 0.0], 1.0);
        let b = ball(&[5.0, 7.0], 1.0);
        // -D is the positive orthant; A -̇ B = {(-5,-7)} misses it.
        assert!(!precedes_m2(&a, &b, &d).unwrap().holds());
        assert!(precedes_m2(&b, &a, &d).unwrap().holds());
    }

    #[test]
    fn empty_difference_never_holds() {
        let small = ball(&[0.0, 0.0], 1.0);
        let big = ball(&[0.0, 0.0], 2.0);
        assert!(!precedes_m1(&big, &small, &Cone::full(2)).unwrap().holds());
        assert!(precedes_m1(&small, &big, &Cone::full(2)).unwrap().holds());
    }

    #[test]
    fn unbounded_operands_rejected() {
        let half = Body::hpolyhedron(2, vec![crate::Halfspace::new(v(&[1.0, 0.0]), 0.0)]).unwrap();
        assert_eq!(
            precedes_m1(&half, &ball(&[0.0, 0.0], 1.0), &Cone::full(2)),
            Err(Error::UnboundedOperand)
        );
    }

    #[test]
    fn two_member_family_minimal() {
        let family = [ball(&[0.0, 0.0], 1.0), ball(&[1.0, 0.0], 1.0)];
        assert_eq!(
            m1_minimal_family(&family, &wedge_k()).unwrap(),
            BTreeSet::from([1])
        );
        assert_eq!(
            m1_minimal_family(&family[..1], &wedge_k()).unwrap(),
            BTreeSet::from([0])
        );
        let negated: Vec<Body> = family.iter().map(Body::negated).collect();
        assert_eq!(
            m2_maximal_family(&negated, &wedge_k()).unwrap(),
            BTreeSet::from([1])
        );
    }

    #[test]
    fn chain_of_three_against_brute_force() {
        let family = [
            ball(&[0.0, 0.0], 1.0),
            ball(&[-1.0, 0.0], 1.0),
            ball(&[-2.0, 0.0], 1.0),
        ];
        let k = wedge_k();
        // Oracle: equal radii, so C_j ≼m1 C_i iff c_i - c_j ∈ K = {x₁ ≤ -|x₂|}.
        let centers = [[0.0, 0.0], [-1.0, 0.0], [-2.0, 0.0]];
        let in_k = |x: [f64; 2]| x[0] <= -x[1].abs();
        let oracle: BTreeSet<usize> = (0..3)
            .filter(|&i| {
                !(0..3).any(|j| {
                    j != i && in_k([centers[i][0] - centers[j][0], centers[i][1] - centers[j][1]])
                })
            })
            .collect();
        assert_eq!(oracle, BTreeSet::from([0]));
        assert_eq!(m1_minimal_family(&family, &k).unwrap(), oracle);
        let negated: Vec<Body> = family.iter().map(Body::negated).collect();
        assert_eq!(m2_maximal_family(&negated, &k).unwrap(), oracle);
    }

    #[test]
    fn equal_members_are_both_kept() {
        let family = [ball(&[0.0, 0.0], 1.0), ball(&[0.0, 0.0], 1.0)];
        assert_eq!(
            m1_minimal_family(&family, &Cone::full(2)).unwrap(),
            BTreeSet::from([0, 1])
        );
    }

    #[test]
    fn unsupported_pair_names_members() {
        let family = [Body::cube(2, 0.0, 1.0), ball(&[0.0, 0.0], 3.0)];
        let err = m1_minimal_family(&family, &Cone::full(2)).unwrap_err();
        assert!(matches!(err, Error::InPair { .. }));
        assert!(matches!(err.root(), Error::UnsupportedPair { .. }));
    }
}
