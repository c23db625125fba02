//! Closed convex polyhedral cones.
//!
//! A cone is stored either by generators, `cone(r₁, …, r_k)`, or by
//! homogeneous halfspaces, `{x : ⟨a_i, x⟩ ≤ 0}`. Polar duality swaps the two
//! representations without any conversion, which is all the order checks
//! need. When explicit generators of a halfspace cone are required they are
//! read off the vertices of the cone cut with the unit box.

use serde::{Deserialize, Serialize};

use crate::body::{tol_for, Body, Halfspace};
use crate::error::{Error, Result};
use crate::hull;
use crate::lp::{OptSense, Program, Sense};
use crate::tolerance::eps;
use crate::vector::{check_dim, for_each_subset, project_onto_span, Vector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Cone {
    /// `{Σ λ_i r_i : λ ≥ 0}`; no rays means `{0}`.
    Generators { dim: usize, rays: Vec<Vector> },
    /// `{x : ⟨a, x⟩ ≤ 0 ∀a}`; no normals means ℝⁿ.
    Halfspaces { dim: usize, normals: Vec<Vector> },
}

impl Cone {
    pub fn generated(dim: usize, rays: Vec<Vector>) -> Result<Self> {
        for r in &rays {
            check_dim(dim, r.dim())?;
        }
        Ok(Cone::Generators { dim, rays })
    }

    pub fn from_normals(dim: usize, normals: Vec<Vector>) -> Result<Self> {
        for a in &normals {
            check_dim(dim, a.dim())?;
        }
        Ok(Cone::Halfspaces { dim, normals })
    }

    pub fn full(dim: usize) -> Self {
        Cone::Halfspaces {
            dim,
            normals: Vec::new(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Cone::Generators {
            dim,
            rays: Vec::new(),
        }
    }

    /// The nonnegative orthant.
    pub fn orthant(dim: usize) -> Self {
        Cone::Generators {
            dim,
            rays: (0..dim).map(|i| Vector::unit(dim, i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Cone::Generators { dim, .. } | Cone::Halfspaces { dim, .. } => *dim,
        }
    }

    /// `N(C) = {y : ⟨y, x⟩ ≤ 0 ∀x ∈ C}`.
    pub fn negative_dual(&self) -> Cone {
        match self {
            Cone::Generators { dim, rays } => Cone::Halfspaces {
                dim: *dim,
                normals: rays.clone(),
            },
            Cone::Halfspaces { dim, normals } => Cone::Generators {
                dim: *dim,
                rays: normals.clone(),
            },
        }
    }

    /// `K(C) = {w : ⟨w, v⟩ ≥ 0 ∀v ∈ C}`.
    pub fn positive_dual(&self) -> Cone {
        self.negated().negative_dual()
    }

    /// `-C`.
    pub fn negated(&self) -> Cone {
        match self {
            Cone::Generators { dim, rays } => Cone::Generators {
                dim: *dim,
                rays: rays.iter().map(|r| -r).collect(),
            },
            Cone::Halfspaces { dim, normals } => Cone::Halfspaces {
                dim: *dim,
                normals: normals.iter().map(|a| -a).collect(),
            },
        }
    }

    pub fn contains(&self, x: &Vector) -> Result<bool> {
        check_dim(self.dim(), x.dim())?;
        match self {
            Cone::Halfspaces { normals, .. } => {
                let scale = x.norm().max(1.0);
                Ok(normals.iter().all(|a| a.dot(x) <= tol_for(a) * scale))
            }
            Cone::Generators { .. } => {
                let mut prog = Program::new(x.dim());
                for i in 0..x.dim() {
                    prog.add(vec![(i, 1.0)], Sense::Eq, x[i]);
                }
                self.add_membership(&mut prog, 0);
                Ok(prog.feasible_point()?.is_some())
            }
        }
    }

    /// Adds `x ∈ self` to `prog` for `x` at columns `x_start..x_start + dim`.
    pub(crate) fn add_membership(&self, prog: &mut Program, x_start: usize) {
        match self {
            Cone::Halfspaces { normals, .. } => {
                for a in normals {
                    let terms = a
                        .iter()
                        .enumerate()
                        .map(|(i, &c)| (x_start + i, c))
                        .collect();
                    prog.add(terms, Sense::Le, 0.0);
                }
            }
            Cone::Generators { dim, rays } => {
                let lambda = prog.add_vars(rays.len());
                prog.nonnegative(lambda, rays.len());
                for i in 0..*dim {
                    let mut terms = vec![(x_start + i, 1.0)];
                    terms.extend(rays.iter().enumerate().map(|(k, r)| (lambda + k, -r[i])));
                    prog.add(terms, Sense::Eq, 0.0);
                }
            }
        }
    }

    /// A finite generating set. Halfspace cones are converted through the
    /// vertices of `C ∩ [-1, 1]ⁿ`.
    pub fn generators(&self) -> Result<Vec<Vector>> {
        match self {
            Cone::Generators { rays, .. } => Ok(rays.clone()),
            Cone::Halfspaces { dim, normals } => {
                let mut halfspaces: Vec<Halfspace> = normals
                    .iter()
                    .map(|a| Halfspace::new(a.clone(), 0.0))
                    .collect();
                if let Body::HPolyhedron {
                    halfspaces: cube, ..
                } = Body::cube(*dim, -1.0, 1.0)
                {
                    halfspaces.extend(cube);
                }
                let vertices = hull::enumerate_vertices(*dim, &halfspaces, eps())?;
                Ok(vertices.into_iter().filter(|v| !v.is_zero(eps())).collect())
            }
        }
    }

    /// True when the cone is `{0}`.
    pub fn is_zero(&self) -> Result<bool> {
        let dim = self.dim();
        for i in 0..dim {
            for sign in [1.0, -1.0] {
                let mut prog = Program::new(dim);
                self.add_membership(&mut prog, 0);
                for j in 0..dim {
                    prog.add(vec![(j, 1.0)], Sense::Le, 1.0);
                    prog.add(vec![(j, 1.0)], Sense::Ge, -1.0);
                }
                let out = prog.solve(&[(i, sign)], OptSense::Maximize)?;
                if out.value().is_some_and(|v| v > eps()) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True when the cone is all of ℝⁿ.
    pub fn is_full(&self) -> Result<bool> {
        self.negative_dual().is_zero()
    }

    /// `self ⊆ other`, checked on a generating set of `self`.
    pub fn is_subset_of(&self, other: &Cone) -> Result<bool> {
        check_dim(self.dim(), other.dim())?;
        for r in self.generators()? {
            if !other.contains(&r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_set(&self, other: &Cone) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    /// A nonzero member with `‖x‖∞ ≤ 1`, if the cone is not `{0}`.
    pub(crate) fn nonzero_member(&self) -> Result<Option<Vector>> {
        if let Cone::Generators { rays, .. } = self {
            return Ok(rays.iter().find(|r| !r.is_zero(eps())).cloned());
        }
        let dim = self.dim();
        for i in 0..dim {
            for sign in [1.0, -1.0] {
                let mut prog = Program::new(dim);
                self.add_membership(&mut prog, 0);
                for j in 0..dim {
                    prog.add(vec![(j, 1.0)], Sense::Le, 1.0);
                    prog.add(vec![(j, 1.0)], Sense::Ge, -1.0);
                }
                let out = prog.solve(&[(i, sign)], OptSense::Maximize)?;
                if let Some(p) = out.point() {
                    if out.value().unwrap_or(0.0) > eps() {
                        return Ok(Some(Vector::from(p.as_slice()[..dim].to_vec())));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Euclidean projection of `point` onto the cone by active-set
    /// enumeration. Exact; limited to dimensions ≤ 3.
    pub(crate) fn project(&self, point: &Vector) -> Result<Vector> {
        let dim = self.dim();
        check_dim(dim, point.dim())?;
        if dim > 3 {
            return Err(Error::UnsupportedPair {
                op: "cone projection",
                left: "ball",
                right: "cone (dimension > 3)",
            });
        }
        let mut best: Option<(f64, Vector)> = None;
        let mut consider = |candidate: Vector| {
            let d = candidate.distance(point);
            if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                best = Some((d, candidate));
            }
        };
        match self {
            Cone::Generators { rays, .. } => {
                // The projection lies in the span of a linearly independent
                // subset of rays with nonnegative least-squares coefficients.
                consider(Vector::zeros(dim));
                for k in 1..=dim.min(rays.len()) {
                    for_each_subset(rays.len(), k, |s| {
                        let basis: Vec<&Vector> = s.iter().map(|&i| &rays[i]).collect();
                        if let Some((coeffs, p)) = project_onto_span(&basis, point) {
                            if coeffs.iter().all(|&c| c >= -1e-12) {
                                consider(p);
                            }
                        }
                    });
                }
            }
            Cone::Halfspaces { normals, .. } => {
                // The projection is the projection onto the null space of the
                // normals active at it; enumerate independent active sets.
                for k in 0..=dim.min(normals.len()) {
                    for_each_subset(normals.len(), k, |s| {
                        let basis: Vec<&Vector> = s.iter().map(|&i| &normals[i]).collect();
                        if let Some((_, p)) = project_onto_span(&basis, point) {
                            let candidate = point - &p;
                            let scale = candidate.norm().max(1.0);
                            if normals
                                .iter()
                                .all(|a| a.dot(&candidate) <= 1e-12 * a.norm() * scale)
                            {
                                consider(candidate);
                            }
                        }
                    });
                }
            }
        }
        Ok(best
            .expect("the origin or the unconstrained point is always a candidate")
            .1)
    }
}

/// Contingent cone of the polyhedron `S` at `xbar`: the halfspace cone of the
/// constraints active at `xbar`.
pub fn contingent_cone(set: &Body, xbar: &Vector) -> Result<Cone> {
    let Body::HPolyhedron { dim, halfspaces } = set else {
        return Err(Error::UnsupportedPair {
            op: "contingent_cone",
            left: set.variant_name(),
            right: "point",
        });
    };
    check_dim(*dim, xbar.dim())?;
    let violation = halfspaces
        .iter()
        .map(|h| -h.slack(xbar) / h.normal.norm().max(1.0))
        .fold(0.0_f64, f64::max);
    if violation > eps() {
        return Err(Error::PointNotInSet { violation });
    }
    let normals = halfspaces
        .iter()
        .filter(|h| h.slack(xbar).abs() <= tol_for(&h.normal))
        .map(|h| h.normal.clone())
        .collect();
    Ok(Cone::Halfspaces { dim: *dim, normals })
}

/// A point of `A ∩ C`, if any. With `exclude_zero`, a nonzero point is
/// sought instead (`None` when `A ∩ C ⊆ {0}`).
///
/// Singletons are a membership test, polytopes and H-polyhedra an LP, and
/// balls of positive radius are decided by projecting the center onto the
/// cone (dimension ≤ 3 unless the center itself lies in the cone).
pub fn intersect_nonempty(body: &Body, cone: &Cone, exclude_zero: bool) -> Result<Option<Vector>> {
    let dim = body.dim();
    check_dim(dim, cone.dim())?;
    if body.is_empty()? {
        return Ok(None);
    }
    if let Some(p) = body.singleton() {
        let hit = cone.contains(&p)? && !(exclude_zero && p.is_zero(eps()));
        return Ok(hit.then_some(p));
    }
    match body {
        Body::Ball { center, radius } => {
            if cone.contains(center)? && !(exclude_zero && center.is_zero(eps())) {
                return Ok(Some(center.clone()));
            }
            let p = cone.project(center)?;
            let gap = p.distance(center);
            if gap > radius + eps() {
                return Ok(None);
            }
            if !exclude_zero || !p.is_zero(eps()) {
                return Ok(Some(p));
            }
            // The origin is the nearest cone point. A nonzero witness exists
            // iff the origin is interior to the ball and the cone is not {0}.
            let slack = radius - center.norm();
            if slack <= eps() {
                return Ok(None);
            }
            Ok(cone
                .nonzero_member()?
                .map(|y| y.scaled(slack / y.norm().max(f64::MIN_POSITIVE))))
        }
        _ => {
            let mut prog = Program::new(dim);
            body.add_membership(&mut prog, 0)?;
            cone.add_membership(&mut prog, 0);
            let Some(p) = prog.feasible_point()? else {
                return Ok(None);
            };
            let p = Vector::from(p.as_slice()[..dim].to_vec());
            if !exclude_zero || !p.is_zero(eps()) {
                return Ok(Some(p));
            }
            for i in 0..dim {
                for sign in [1.0, -1.0] {
                    let out = prog.solve(&[(i, sign)], OptSense::Maximize)?;
                    let far = match out.point() {
                        Some(q) if out.value().unwrap_or(0.0) > eps() => Some(q.clone()),
                        Some(_) => None,
                        // Unbounded: move along the improving direction from the
                        // feasible point; use a box-capped solve instead.
                        None => {
                            let mut capped = Program::new(dim);
                            body.add_membership(&mut capped, 0)?;
                            cone.add_membership(&mut capped, 0);
                            capped.add(vec![(i, sign)], Sense::Le, 1.0);
                            capped
                                .solve(&[(i, sign)], OptSense::Maximize)?
                                .point()
                                .cloned()
                        }
                    };
                    if let Some(q) = far {
                        return Ok(Some(Vector::from(q.as_slice()[..dim].to_vec())));
                    }
                }
            }
            Ok(None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::from(c.to_vec())
    }

    fn wedge_t() -> Cone {
        Cone::generated(2, vec![v(&[1.0, 1.0]), v(&[1.0, -1.0])]).unwrap()
    }

    #[test]
    fn negative_dual_of_two_rays() {
        let k = wedge_t().negative_dual();
        assert_eq!(
            k,
            Cone::Halfspaces {
                dim: 2,
                normals: vec![v(&[1.0, 1.0]), v(&[1.0, -1.0])]
            }
        );
        // {x₁ ≤ 0, |x₂| ≤ -x₁}
        assert!(k.contains(&v(&[-1.0, 0.0])).unwrap());
        assert!(k.contains(&v(&[-2.0, 2.0])).unwrap());
        assert!(!k.contains(&v(&[-1.0, 1.5])).unwrap());
        assert!(!k.contains(&v(&[1.0, 0.0])).unwrap());
    }

    #[test]
    fn dual_of_whole_space_is_origin() {
        let d = Cone::full(3).negative_dual();
        assert_eq!(d, Cone::zero(3));
        assert!(d.is_zero().unwrap());
        let plane = Cone::generated(
            2,
            vec![
                v(&[1.0, 0.0]),
                v(&[0.0, 1.0]),
                v(&[-1.0, 0.0]),
                v(&[0.0, -1.0]),
            ],
        )
        .unwrap();
        assert!(plane.is_full().unwrap());
        // Feasibility oracle: only 0 satisfies all four ≤ 0 constraints.
        let dual = plane.negative_dual();
        assert!(dual.is_zero().unwrap());
        assert!(dual.contains(&v(&[0.0, 0.0])).unwrap());
        assert!(!dual.contains(&v(&[1e-3, 0.0])).unwrap());
    }

    #[test]
    fn positive_dual_examples() {
        let t = wedge_t();
        let k = t.positive_dual();
        // Self-dual: both inclusions by ray membership.
        assert!(k.same_set(&t).unwrap());
        assert!(Cone::zero(2).positive_dual().is_full().unwrap());
        let ray = Cone::generated(2, vec![v(&[1.0, 0.0])])
            .unwrap()
            .positive_dual();
        assert!(ray.contains(&v(&[0.0, 5.0])).unwrap());
        assert!(ray.contains(&v(&[2.0, -5.0])).unwrap());
        assert!(!ray.contains(&v(&[-0.1, 0.0])).unwrap());
    }

    #[test]
    fn contingent_cone_of_the_wedge_is_itself() {
        let s = Body::hpolyhedron(
            2,
            vec![
                Halfspace::new(v(&[-1.0, 0.0]), 0.0),
                Halfspace::new(v(&[-1.0, 1.0]), 0.0),
                Halfspace::new(v(&[-1.0, -1.0]), 0.0),
            ],
        )
        .unwrap();
        let t = contingent_cone(&s, &v(&[0.0, 0.0])).unwrap();
        assert!(t.same_set(&wedge_t()).unwrap());
        let interior = contingent_cone(&Body::cube(2, -1.0, 1.0), &v(&[0.2, 0.3])).unwrap();
        assert!(interior.is_full().unwrap());
        assert!(matches!(
            contingent_cone(&Body::cube(2, -1.0, 1.0), &v(&[2.0, 0.0])),
            Err(Error::PointNotInSet { .. })
        ));
    }

    #[test]
    fn contingent_cone_on_a_face_matches_sequences() {
        let square = Body::cube(2, -1.0, 1.0);
        let xbar = v(&[1.0, 0.0]);
        let t = contingent_cone(&square, &xbar).unwrap();
        // Oracle: y is tangent iff xbar + d·y ∈ S for a sequence d → 0⁺.
        for k in 0..72 {
            let a = k as f64 * std::f64::consts::TAU / 72.0;
            let y = v(&[a.cos(), a.sin()]);
            if y[0].abs() < 1e-9 {
                assert!(t.contains(&y).unwrap());
                continue;
            }
            let tangent = (1..=8).all(|n| {
                let d = 10f64.powi(-n);
                square.contains_point(&(&xbar + &y.scaled(d))).unwrap()
            });
            assert_eq!(t.contains(&y).unwrap(), tangent, "direction {y:?}");
        }
    }

    #[test]
    fn intersection_examples() {
        let k = wedge_t().negative_dual();
        let w = intersect_nonempty(&Body::point(v(&[-1.0, 0.0])), &k, false).unwrap();
        assert_eq!(w, Some(v(&[-1.0, 0.0])));
        let w = intersect_nonempty(
            &Body::ball(v(&[0.0, 0.0]), 1.0).unwrap(),
            &Cone::full(2),
            false,
        );
        assert_eq!(w.unwrap(), Some(v(&[0.0, 0.0])));
        let left = Cone::from_normals(2, vec![v(&[1.0, 0.0])]).unwrap();
        let far = Body::ball(v(&[5.0, 0.0]), 1.0).unwrap();
        assert_eq!(intersect_nonempty(&far, &left, false).unwrap(), None);
        // Distance from (5,0) to {x₁ ≤ 0} is 5: touching at radius 5.
        let touching = Body::ball(v(&[5.0, 0.0]), 5.0).unwrap();
        let w = intersect_nonempty(&touching, &left, false)
            .unwrap()
            .unwrap();
        assert!(w.approx_eq(&v(&[0.0, 0.0]), 1e-12));
    }

    #[test]
    fn ball_intersections_match_a_sampling_oracle() {
        let cone = Cone::generated(2, vec![v(&[1.0, 2.0]), v(&[3.0, -1.0])]).unwrap();
        let halfspace_form =
            Cone::from_normals(2, vec![v(&[-2.0, 1.0]), v(&[-1.0, -3.0])]).unwrap();
        assert!(cone.same_set(&halfspace_form).unwrap());
        for i in 0..15 {
            for j in 0..15 {
                let c = v(&[-3.5 + i as f64 * 0.5, -3.5 + j as f64 * 0.5]);
                let r = 0.75;
                // Oracle: dense sampling of the ball for a cone member.
                let mut hit = false;
                for a in 0..48 {
                    for s in 0..=8 {
                        let t = a as f64 * std::f64::consts::TAU / 48.0;
                        let p = &c + &v(&[t.cos(), t.sin()]).scaled(r * s as f64 / 8.0);
                        if cone.contains(&p).unwrap() {
                            hit = true;
                        }
                    }
                }
                let ball = Body::ball(c.clone(), r).unwrap();
                let a = intersect_nonempty(&ball, &cone, false).unwrap();
                let b = intersect_nonempty(&ball, &halfspace_form, false).unwrap();
                assert_eq!(a.is_some(), b.is_some());
                if hit {
                    assert!(a.is_some(), "sampling found a point for center {c:?}");
                }
                if let Some(w) = a {
                    assert!(ball.contains_point(&w).unwrap() && cone.contains(&w).unwrap());
                }
            }
        }
    }

    #[test]
    fn nonzero_witnesses() {
        let k = wedge_t();
        let ball = Body::ball(v(&[-0.1, 0.0]), 1.0).unwrap();
        let w = intersect_nonempty(&ball, &k, true).unwrap().unwrap();
        assert!(!w.is_zero(1e-12) && k.contains(&w).unwrap() && ball.contains_point(&w).unwrap());
        let touching = Body::ball(v(&[-1.0, 0.0]), 1.0).unwrap();
        assert_eq!(intersect_nonempty(&touching, &k, true).unwrap(), None);
        assert!(intersect_nonempty(&touching, &k, false).unwrap().is_some());
        let sq = Body::cube(2, -1.0, 0.0);
        assert_eq!(intersect_nonempty(&sq, &k, true).unwrap(), None);
        let w = intersect_nonempty(&Body::cube(2, -1.0, 1.0), &k, true)
            .unwrap()
            .unwrap();
        assert!(!w.is_zero(1e-9) && k.contains(&w).unwrap());
    }

    #[test]
    fn generators_of_halfspace_cones() {
        let k = wedge_t().negative_dual();
        let gens = k.generators().unwrap();
        let back = Cone::generated(2, gens).unwrap();
        assert!(back.same_set(&k).unwrap());
        let half = Cone::from_normals(2, vec![v(&[1.0, 0.0])]).unwrap();
        let back = Cone::generated(2, half.generators().unwrap()).unwrap();
        assert!(back.contains(&v(&[0.0, -7.0])).unwrap());
        assert!(back.contains(&v(&[-1.0, 3.0])).unwrap());
        assert!(!back.contains(&v(&[0.5, 0.0])).unwrap());
    }
}
