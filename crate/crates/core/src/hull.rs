//! Convex hulls in dimensions 1–3 and vertex enumeration of H-polytopes.

use crate::body::Halfspace;
use crate::error::{Error, Result};
use crate::vector::{binomial, for_each_subset, solve_square, Vector};

const ENUMERATION_LIMIT: u128 = 2_000_000;

/// Orthonormal basis of the affine hull directions of `points`, built by
/// Gram-Schmidt on differences from the first point.
fn affine_basis(points: &[Vector], tol: f64) -> Vec<Vector> {
    let origin = &points[0];
    let scale = points
        .iter()
        .map(|p| p.distance(origin))
        .fold(0.0_f64, f64::max)
        .max(1.0);
    let mut basis: Vec<Vector> = Vec::new();
    for p in &points[1..] {
        let mut d = p - origin;
        for b in &basis {
            d = &d - &b.scaled(b.dot(&d));
        }
        let norm = d.norm();
        if norm > tol * scale {
            basis.push(d.scaled(1.0 / norm));
        }
    }
    basis
}

/// Completes an orthonormal set to a basis of ℝⁿ using coordinate axes.
fn orthogonal_complement(basis: &[Vector], dim: usize) -> Vec<Vector> {
    let mut all: Vec<Vector> = basis.to_vec();
    let mut extra = Vec::new();
    for axis in 0..dim {
        let mut d = Vector::unit(dim, axis);
        for b in &all {
            d = &d - &b.scaled(b.dot(&d));
        }
        let norm = d.norm();
        if norm > 1e-6 {
            let d = d.scaled(1.0 / norm);
            all.push(d.clone());
            extra.push(d);
        }
    }
    extra
}

fn cross2(o: &[f64; 2], a: &[f64; 2], b: &[f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Andrew's monotone chain; returns hull vertices counter-clockwise.
fn hull_2d(points: &[[f64; 2]], tol: f64) -> Vec<[f64; 2]> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup_by(|a, b| (a[0] - b[0]).abs() <= tol && (a[1] - b[1]).abs() <= tol);
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<[f64; 2]> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross2(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= tol
        {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<[f64; 2]> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross2(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= tol
        {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn push_unique(out: &mut Vec<Halfspace>, h: Halfspace, tol: f64) {
    let duplicate = out
        .iter()
        .any(|g| g.normal.approx_eq(&h.normal, tol) && (g.offset - h.offset).abs() <= tol);
    if !duplicate {
        out.push(h);
    }
}

/// H-representation of the convex hull of `points` (dimension 1–3).
///
/// Lower-dimensional hulls are pinned to their affine hull with pairs of
/// opposing halfspaces; the remaining halfspaces describe the hull inside it.
pub(crate) fn vertices_to_halfspaces(points: &[Vector], tol: f64) -> Result<Vec<Halfspace>> {
    let Some(first) = points.first() else {
        return Err(Error::NoVertices);
    };
    let dim = first.dim();
    if !(1..=3).contains(&dim) {
        return Err(Error::ConversionUnavailable(dim));
    }
    let basis = affine_basis(points, tol);
    let mut out = Vec::new();

    for w in orthogonal_complement(&basis, dim) {
        let level = w.dot(first);
        push_unique(&mut out, Halfspace::new(w.clone(), level), tol);
        push_unique(&mut out, Halfspace::new(-&w, -level), tol);
    }

    // Coordinates of the points inside the affine hull.
    let local: Vec<Vec<f64>> = points
        .iter()
        .map(|p| {
            let d = p - first;
            basis.iter().map(|b| b.dot(&d)).collect()
        })
        .collect();
    let lift = |coeffs: &[f64]| -> Vector {
        let mut n = Vector::zeros(dim);
        for (c, b) in coeffs.iter().zip(&basis) {
            n = &n + &b.scaled(*c);
        }
        n
    };

    match basis.len() {
        0 => {}
        1 => {
            let (lo, hi) = local
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), c| {
                    (lo.min(c[0]), hi.max(c[0]))
                });
            let u = &basis[0];
            let base = u.dot(first);
            push_unique(&mut out, Halfspace::new(u.clone(), base + hi), tol);
            push_unique(&mut out, Halfspace::new(-u, -(base + lo)), tol);
        }
        2 => {
            let pts: Vec<[f64; 2]> = local.iter().map(|c| [c[0], c[1]]).collect();
            let hull = hull_2d(&pts, tol);
            for k in 0..hull.len() {
                let a = hull[k];
                let b = hull[(k + 1) % hull.len()];
                // Outward normal of a counter-clockwise edge.
                let (nx, ny) = (b[1] - a[1], a[0] - b[0]);
                let len = nx.hypot(ny);
                let normal = lift(&[nx / len, ny / len]);
                let offset = normal.dot(&lift(&a)) + normal.dot(first);
                push_unique(&mut out, Halfspace::new(normal, offset), tol);
            }
        }
        _ => {
            // Full-dimensional 3-D hull: a plane through three points is a
            // facet plane iff all points lie on one side of it.
            let n = points.len();
            for_each_subset(n, 3, |s| {
                let (p, q, r) = (&local[s[0]], &local[s[1]], &local[s[2]]);
                let u = [q[0] - p[0], q[1] - p[1], q[2] - p[2]];
                let v = [r[0] - p[0], r[1] - p[1], r[2] - p[2]];
                let c = [
                    u[1] * v[2] - u[2] * v[1],
                    u[2] * v[0] - u[0] * v[2],
                    u[0] * v[1] - u[1] * v[0],
                ];
                let len = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
                if len <= tol {
                    return;
                }
                let c = [c[0] / len, c[1] / len, c[2] / len];
                let level = c[0] * p[0] + c[1] * p[1] + c[2] * p[2];
                let side = |x: &Vec<f64>| c[0] * x[0] + c[1] * x[1] + c[2] * x[2] - level;
                let above = local.iter().any(|x| side(x) > tol);
                let below = local.iter().any(|x| side(x) < -tol);
                let (normal, off) = match (above, below) {
                    (false, _) => (c, level),
                    (true, false) => ([-c[0], -c[1], -c[2]], -level),
                    (true, true) => return,
                };
                let lifted = lift(&normal);
                let offset = off + lifted.dot(first);
                push_unique(&mut out, Halfspace::new(lifted, offset), tol);
            });
        }
    }
    Ok(out)
}

/// Vertices of a bounded H-polyhedron by brute force over `dim`-subsets of
/// constraints. Callers must ensure boundedness.
pub(crate) fn enumerate_vertices(
    dim: usize,
    halfspaces: &[Halfspace],
    tol: f64,
) -> Result<Vec<Vector>> {
    let count = binomial(halfspaces.len(), dim);
    if count > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge(count));
    }
    let mut vertices: Vec<Vector> = Vec::new();
    for_each_subset(halfspaces.len(), dim, |s| {
        let m: Vec<Vec<f64>> = s
            .iter()
            .map(|&i| halfspaces[i].normal.as_slice().to_vec())
            .collect();
        let rhs: Vec<f64> = s.iter().map(|&i| halfspaces[i].offset).collect();
        let Some(x) = solve_square(&m, &rhs) else {
            return;
        };
        let x = Vector::from(x);
        let feasible = halfspaces
            .iter()
            .all(|h| h.slack(&x) >= -tol * h.normal.norm().max(1.0));
        if feasible
            && !vertices
                .iter()
                .any(|v| v.approx_eq(&x, tol.max(1e-9) * (1.0 + x.norm_inf())))
        {
            vertices.push(x);
        }
    });
    Ok(vertices)
}
