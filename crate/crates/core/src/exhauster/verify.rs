//! Sampling check that two exhausters represent the same function on their
//! common domain.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::vector::{check_dim, Vector};

use super::Exhauster;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapReport {
    pub max_abs_gap: f64,
    pub worst_g: Vector,
    /// Number of directions evaluated, deterministic ones included.
    pub samples: usize,
}

const SPHERE_ATTEMPTS: usize = 64;

fn normalized(v: Vector) -> Vector {
    let n = v.norm();
    if n > 0.0 {
        v.scaled(1.0 / n)
    } else {
        v
    }
}

/// Sample `index` of the random stream: a uniform direction on the sphere
/// that lies in the domain, or a random conic combination of its generators
/// when rejection keeps failing (thin cones).
fn random_direction(e: &Exhauster, generators: &[Vector], seed: u64, index: u64) -> Result<Vector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let dim = e.dim();
    for _ in 0..SPHERE_ATTEMPTS {
        let raw: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let g = normalized(Vector::from(raw));
        if e.in_domain(&g)? {
            return Ok(g);
        }
    }
    let mut g = Vector::zeros(dim);
    for r in generators {
        g = &g + &r.scaled(rng.random::<f64>());
    }
    Ok(normalized(g))
}

fn gap(a: f64, b: f64) -> f64 {
    if a == b {
        // Also covers equal infinities.
        0.0
    } else {
        (a - b).abs()
    }
}

/// Largest `|h₁(g) - h₂(g)|` over the coordinate axes and generators lying in
/// the domain plus `samples` seeded random directions of the domain. The
/// result does not depend on the thread schedule.
pub fn verify_equivalence(
    e1: &Exhauster,
    e2: &Exhauster,
    samples: usize,
    seed: u64,
) -> Result<GapReport> {
    if e1.kind() != e2.kind() {
        return Err(Error::KindMismatch);
    }
    check_dim(e1.dim(), e2.dim())?;
    if !e1.domain().same_set(e2.domain())? {
        return Err(Error::DomainMismatch);
    }
    let dim = e1.dim();
    let generators = e1.domain().generators()?;
    let mut fixed = Vec::new();
    for i in 0..dim {
        let axis = Vector::unit(dim, i);
        for g in [-&axis, axis] {
            if e1.in_domain(&g)? {
                fixed.push(g);
            }
        }
    }
    fixed.extend(
        generators
            .iter()
            .filter(|r| r.norm() > 0.0)
            .cloned()
            .map(normalized),
    );

    let total = fixed.len() + samples;
    let best = (0..total)
        .into_par_iter()
        .map(|i| -> Result<(f64, usize, Vector)> {
            let g = match fixed.get(i) {
                Some(g) => g.clone(),
                None => random_direction(e1, &generators, seed, (i - fixed.len()) as u64)?,
            };
            let d = gap(e1.value_at(&g)?, e2.value_at(&g)?);
            Ok((d, i, g))
        })
        .try_reduce_with(|a, b| {
            // Larger gap wins, ties go to the smaller index; NaN ranks highest.
            let a_wins = match (a.0.is_nan(), b.0.is_nan()) {
                (true, false) => true,
                (false, true) => false,
                _ => a.0 > b.0 || (a.0 == b.0 || a.0.is_nan()) && a.1 < b.1,
            };
            Ok(if a_wins { a } else { b })
        });
    match best {
        Some(result) => {
            let (max_abs_gap, _, worst_g) = result?;
            Ok(GapReport {
                max_abs_gap,
                worst_g,
                samples: total,
            })
        }
        None => Ok(GapReport {
            max_abs_gap: 0.0,
            worst_g: Vector::zeros(dim),
            samples: 0,
        }),
    }
}
