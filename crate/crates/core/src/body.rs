//! Closed convex sets: balls, V-polytopes, H-polyhedra and the empty set.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hull;
use crate::lp::{lp_feasible, lp_solve, LinearConstraint, LpOutcome, OptSense, Program, Sense};
use crate::tolerance::eps;
use crate::vector::{check_dim, Vector};

/// `⟨normal, x⟩ ≤ offset`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Halfspace {
    pub normal: Vector,
    pub offset: f64,
}

impl Halfspace {
    pub fn new(normal: impl Into<Vector>, offset: f64) -> Self {
        Self {
            normal: normal.into(),
            offset,
        }
    }

    /// `offset - ⟨normal, x⟩`; negative when `x` violates the halfspace.
    pub fn slack(&self, x: &Vector) -> f64 {
        self.offset - self.normal.dot(x)
    }

    /// Membership with the global tolerance, scaled by the normal's length.
    pub fn holds(&self, x: &Vector) -> bool {
        self.slack(x) >= -tol_for(&self.normal)
    }

    pub fn to_constraint(&self) -> LinearConstraint {
        LinearConstraint::le(self.normal.clone(), self.offset)
    }
}

/// Tolerance used when comparing `⟨a, x⟩` against an offset.
pub(crate) fn tol_for(normal: &Vector) -> f64 {
    eps() * normal.norm().max(1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Body {
    Ball {
        center: Vector,
        radius: f64,
    },
    VPolytope {
        vertices: Vec<Vector>,
    },
    /// Intersection of halfspaces; may be unbounded. No halfspaces means ℝⁿ.
    HPolyhedron {
        dim: usize,
        halfspaces: Vec<Halfspace>,
    },
    Empty {
        dim: usize,
    },
}

impl Body {
    pub fn ball(center: impl Into<Vector>, radius: f64) -> Result<Self> {
        let center = center.into();
        if !radius.is_finite() || radius < 0.0 {
            return Err(Error::NegativeRadius(radius));
        }
        Ok(Body::Ball { center, radius })
    }

    pub fn vpolytope(vertices: Vec<Vector>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::NoVertices);
        };
        let dim = first.dim();
        for v in &vertices {
            check_dim(dim, v.dim())?;
        }
        Ok(Body::VPolytope { vertices })
    }

    pub fn hpolyhedron(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self> {
        for h in &halfspaces {
            check_dim(dim, h.normal.dim())?;
        }
        Ok(Body::HPolyhedron { dim, halfspaces })
    }

    pub fn point(p: impl Into<Vector>) -> Self {
        Body::Ball {
            center: p.into(),
            radius: 0.0,
        }
    }

    /// The axis-aligned box `[lo, hi]ⁿ` as an H-polyhedron.
    pub fn cube(dim: usize, lo: f64, hi: f64) -> Self {
        let mut halfspaces = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            halfspaces.push(Halfspace::new(Vector::unit(dim, i), hi));
            halfspaces.push(Halfspace::new(-&Vector::unit(dim, i), -lo));
        }
        Body::HPolyhedron { dim, halfspaces }
    }

    pub fn dim(&self) -> usize {
        match self {
            Body::Ball { center, .. } => center.dim(),
            Body::VPolytope { vertices } => vertices[0].dim(),
            Body::HPolyhedron { dim, .. } | Body::Empty { dim } => *dim,
        }
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            Body::Ball { .. } => "ball",
            Body::VPolytope { .. } => "vpolytope",
            Body::HPolyhedron { .. } => "hpolyhedron",
            Body::Empty { .. } => "empty",
        }
    }

    /// The single point of a zero-radius ball or a one-point V-polytope.
    pub fn singleton(&self) -> Option<Vector> {
        match self {
            Body::Ball { center, radius } if *radius <= eps() => Some(center.clone()),
            Body::VPolytope { vertices } => {
                let first = &vertices[0];
                vertices
                    .iter()
                    .all(|v| v.approx_eq(first, eps()))
                    .then(|| first.clone())
            }
            _ => None,
        }
    }

    /// `-A = {-x : x ∈ A}`.
    pub fn negated(&self) -> Body {
        match self {
            Body::Ball { center, radius } => Body::Ball {
                center: -center,
                radius: *radius,
            },
            Body::VPolytope { vertices } => Body::VPolytope {
                vertices: vertices.iter().map(|v| -v).collect(),
            },
            Body::HPolyhedron { dim, halfspaces } => Body::HPolyhedron {
                dim: *dim,
                halfspaces: halfspaces
                    .iter()
                    .map(|h| Halfspace::new(-&h.normal, h.offset))
                    .collect(),
            },
            Body::Empty { dim } => Body::Empty { dim: *dim },
        }
    }

    /// `A + t`.
    pub fn translated(&self, t: &Vector) -> Body {
        match self {
            Body::Ball { center, radius } => Body::Ball {
                center: center + t,
                radius: *radius,
            },
            Body::VPolytope { vertices } => Body::VPolytope {
                vertices: vertices.iter().map(|v| v + t).collect(),
            },
            Body::HPolyhedron { dim, halfspaces } => Body::HPolyhedron {
                dim: *dim,
                halfspaces: halfspaces
                    .iter()
                    .map(|h| Halfspace::new(h.normal.clone(), h.offset + h.normal.dot(t)))
                    .collect(),
            },
            Body::Empty { dim } => Body::Empty { dim: *dim },
        }
    }

    /// Support function `sup_{v∈A} ⟨v, a⟩`; `-∞` for the empty set and `+∞`
    /// for directions in which an H-polyhedron is unbounded.
    pub fn support(&self, direction: &Vector) -> Result<f64> {
        check_dim(self.dim(), direction.dim())?;
        Ok(match self {
            Body::Ball { center, radius } => center.dot(direction) + radius * direction.norm(),
            Body::VPolytope { vertices } => vertices
                .iter()
                .map(|v| v.dot(direction))
                .fold(f64::NEG_INFINITY, f64::max),
            Body::HPolyhedron { halfspaces, .. } => {
                let constraints: Vec<_> = halfspaces.iter().map(Halfspace::to_constraint).collect();
                match lp_solve(direction, &constraints, OptSense::Maximize)? {
                    LpOutcome::Optimal { value, .. } => value,
                    LpOutcome::Infeasible => f64::NEG_INFINITY,
                    LpOutcome::Unbounded => f64::INFINITY,
                }
            }
            Body::Empty { .. } => f64::NEG_INFINITY,
        })
    }

    /// `inf_{v∈A} ⟨v, g⟩ = -support(A, -g)`.
    pub fn inf_support(&self, direction: &Vector) -> Result<f64> {
        Ok(-self.support(&-direction)?)
    }

    pub fn contains_point(&self, x: &Vector) -> Result<bool> {
        check_dim(self.dim(), x.dim())?;
        Ok(match self {
            Body::Ball { center, radius } => x.distance(center) <= radius + eps(),
            Body::VPolytope { vertices } => {
                if let Some(p) = self.singleton() {
                    x.approx_eq(&p, eps())
                } else {
                    let mut prog = Program::new(0);
                    let mu = prog.add_vars(vertices.len());
                    prog.nonnegative(mu, vertices.len());
                    prog.add(
                        (mu..mu + vertices.len()).map(|j| (j, 1.0)).collect(),
                        Sense::Eq,
                        1.0,
                    );
                    for i in 0..x.dim() {
                        let terms = vertices
                            .iter()
                            .enumerate()
                            .map(|(k, v)| (mu + k, v[i]))
                            .collect();
                        prog.add(terms, Sense::Eq, x[i]);
                    }
                    prog.feasible_point()?.is_some()
                }
            }
            Body::HPolyhedron { halfspaces, .. } => halfspaces.iter().all(|h| h.holds(x)),
            Body::Empty { .. } => false,
        })
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(match self {
            Body::Empty { .. } => true,
            Body::Ball { .. } | Body::VPolytope { .. } => false,
            Body::HPolyhedron { dim, halfspaces } => {
                let constraints: Vec<_> = halfspaces.iter().map(Halfspace::to_constraint).collect();
                lp_feasible(*dim, &constraints)?.is_none()
            }
        })
    }

    pub fn is_bounded(&self) -> Result<bool> {
        match self {
            Body::HPolyhedron { dim, .. } => {
                if self.is_empty()? {
                    return Ok(true);
                }
                for i in 0..*dim {
                    let e = Vector::unit(*dim, i);
                    if self.support(&e)?.is_infinite() || self.support(&-&e)?.is_infinite() {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            _ => Ok(true),
        }
    }

    /// H-representation. V-polytopes are converted through a convex hull
    /// (dimensions 1–3); a singleton ball is pinned by opposing halfspaces.
    pub fn to_hrep(&self) -> Result<Body> {
        match self {
            Body::VPolytope { vertices } => Ok(Body::HPolyhedron {
                dim: self.dim(),
                halfspaces: hull::vertices_to_halfspaces(vertices, eps())?,
            }),
            Body::Ball { center, .. } => match self.singleton() {
                Some(_) => Ok(Body::HPolyhedron {
                    dim: center.dim(),
                    halfspaces: hull::vertices_to_halfspaces(std::slice::from_ref(center), eps())?,
                }),
                None => Err(Error::UnsupportedPair {
                    op: "to_hrep",
                    left: "ball",
                    right: "-",
                }),
            },
            _ => Ok(self.clone()),
        }
    }

    /// Vertices of a polytopal body (singletons, V-polytopes, bounded
    /// H-polyhedra). `None` for balls of positive radius and unbounded sets.
    pub fn polytope_vertices(&self) -> Result<Option<Vec<Vector>>> {
        if let Some(p) = self.singleton() {
            return Ok(Some(vec![p]));
        }
        match self {
            Body::VPolytope { vertices } => Ok(Some(vertices.clone())),
            Body::HPolyhedron { dim, halfspaces } => {
                if !self.is_bounded()? {
                    return Ok(None);
                }
                Ok(Some(hull::enumerate_vertices(*dim, halfspaces, eps())?))
            }
            Body::Empty { .. } => Ok(Some(Vec::new())),
            Body::Ball { .. } => Ok(None),
        }
    }

    /// Adds the constraints `x ∈ self` to `prog`, where `x` occupies columns
    /// `x_start..x_start + dim`. Balls of positive radius are not linear.
    pub(crate) fn add_membership(&self, prog: &mut Program, x_start: usize) -> Result<()> {
        let dim = self.dim();
        if let Some(p) = self.singleton() {
            for i in 0..dim {
                prog.add(vec![(x_start + i, 1.0)], Sense::Eq, p[i]);
            }
            return Ok(());
        }
        match self {
            Body::HPolyhedron { halfspaces, .. } => {
                for h in halfspaces {
                    let terms = h
                        .normal
                        .iter()
                        .enumerate()
                        .map(|(i, &a)| (x_start + i, a))
                        .collect();
                    prog.add(terms, Sense::Le, h.offset);
                }
            }
            Body::VPolytope { vertices } => {
                let mu = prog.add_vars(vertices.len());
                prog.nonnegative(mu, vertices.len());
                prog.add(
                    (mu..mu + vertices.len()).map(|j| (j, 1.0)).collect(),
                    Sense::Eq,
                    1.0,
                );
                for i in 0..dim {
                    let mut terms = vec![(x_start + i, 1.0)];
                    terms.extend(vertices.iter().enumerate().map(|(k, v)| (mu + k, -v[i])));
                    prog.add(terms, Sense::Eq, 0.0);
                }
            }
            Body::Empty { .. } => prog.add(Vec::new(), Sense::Le, -1.0),
            Body::Ball { .. } => {
                return Err(Error::UnsupportedPair {
                    op: "linear membership",
                    left: "ball",
                    right: "-",
                })
            }
        }
        Ok(())
    }

    /// Set equality within tolerance: mutual containment.
    pub fn set_eq(&self, other: &Body) -> Result<bool> {
        Ok(contains(self, other)? && contains(other, self)?)
    }
}

fn unsupported(op: &'static str, a: &Body, b: &Body) -> Error {
    Error::UnsupportedPair {
        op,
        left: a.variant_name(),
        right: b.variant_name(),
    }
}

/// Minkowski (Pontryagin) difference `A -̇ B = {x : x + B ⊆ A}`.
///
/// Supported pairs: ball/ball in closed form; any left operand against a
/// singleton (a translation); H-polyhedra against anything by tightening each
/// halfspace with the support of `B`; V-polytopes through their
/// H-representation (dimension ≤ 3). A ball of positive radius minus a
/// non-singleton polytope is rejected: the result is an intersection of
/// balls.
pub fn minkowski_diff(a: &Body, b: &Body) -> Result<Body> {
    let dim = a.dim();
    check_dim(dim, b.dim())?;
    if b.is_empty()? {
        return Ok(Body::HPolyhedron {
            dim,
            halfspaces: Vec::new(),
        });
    }
    if a.is_empty()? {
        return Ok(Body::Empty { dim });
    }
    if let Some(p) = b.singleton() {
        return Ok(a.translated(&-&p));
    }
    match (a, b) {
        (
            Body::Ball {
                center: ca,
                radius: ra,
            },
            Body::Ball {
                center: cb,
                radius: rb,
            },
        ) => {
            let r = ra - rb;
            if r < -eps() {
                Ok(Body::Empty { dim })
            } else {
                Ok(Body::Ball {
                    center: ca - cb,
                    radius: r.max(0.0),
                })
            }
        }
        (Body::Ball { .. }, _) => Err(unsupported("minkowski_diff", a, b)),
        (Body::VPolytope { .. }, _) => minkowski_diff(&a.to_hrep()?, b),
        (Body::HPolyhedron { halfspaces, .. }, _) => {
            let mut tightened = Vec::with_capacity(halfspaces.len());
            for h in halfspaces {
                let s = b.support(&h.normal)?;
                if s == f64::INFINITY {
                    return Ok(Body::Empty { dim });
                }
                tightened.push(Halfspace::new(h.normal.clone(), h.offset - s));
            }
            let out = Body::HPolyhedron {
                dim,
                halfspaces: tightened,
            };
            if out.is_empty()? {
                Ok(Body::Empty { dim })
            } else {
                Ok(out)
            }
        }
        (Body::Empty { .. }, _) => Ok(Body::Empty { dim }),
    }
}

/// `B ⊆ A` within tolerance.
pub fn contains(a: &Body, b: &Body) -> Result<bool> {
    check_dim(a.dim(), b.dim())?;
    if b.is_empty()? {
        return Ok(true);
    }
    if a.is_empty()? {
        return Ok(false);
    }
    if let Some(p) = b.singleton() {
        return a.contains_point(&p);
    }
    match b {
        Body::VPolytope { vertices } => {
            for v in vertices {
                if !a.contains_point(v)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Body::Ball {
            center: cb,
            radius: rb,
        } => match a {
            Body::Ball {
                center: ca,
                radius: ra,
            } => Ok(cb.distance(ca) + rb <= ra + eps()),
            Body::HPolyhedron { .. } => halfspaces_contain(a, b),
            Body::VPolytope { .. } => halfspaces_contain(&a.to_hrep()?, b),
            Body::Empty { .. } => Ok(false),
        },
        Body::HPolyhedron { .. } => match a {
            Body::HPolyhedron { .. } => halfspaces_contain(a, b),
            Body::VPolytope { .. } => halfspaces_contain(&a.to_hrep()?, b),
            Body::Ball { .. } => {
                // An unbounded set never fits in a ball; a bounded one fits
                // iff its vertices do.
                match b.polytope_vertices()? {
                    None => Ok(false),
                    Some(vertices) => {
                        for v in &vertices {
                            if !a.contains_point(v)? {
                                return Ok(false);
                            }
                        }
                        Ok(true)
                    }
                }
            }
            Body::Empty { .. } => Ok(false),
        },
        Body::Empty { .. } => Ok(true),
    }
}

/// `B ⊆ A` for an H-polyhedron `A`: every halfspace bounds the support of `B`.
fn halfspaces_contain(a: &Body, b: &Body) -> Result<bool> {
    let Body::HPolyhedron { halfspaces, .. } = a else {
        unreachable!("caller passes an H-polyhedron");
    };
    for h in halfspaces {
        if b.support(&h.normal)? > h.offset + tol_for(&h.normal) {
            return Ok(false);
        }
    }
    Ok(true)
}
