//! Removing redundant members.
//!
//! Two independent rules:
//! - pairwise: in a lower exhauster, a member `C₂` with `C₁ ≼m1_K C₂` for
//!   another member `C₁` can be dropped (dually for upper exhausters and
//!   `≼m2_K`, where the smaller member is dropped). `K` is the negative dual
//!   of the domain cone.
//! - sharp cover (unconstrained lower exhausters): `A` can be dropped when the
//!   sharp sets `(A -̇ B_i)^#` of some other members cover ℝⁿ.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::body::{contains, minkowski_diff, Body};
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::lp::strict_margin;
use crate::order::{precedes_m1, precedes_m2, FamilyIndexSet, OrderCheck};
use crate::tolerance::eps;
use crate::vector::Vector;

use super::{Exhauster, Kind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    PairwiseM1,
    PairwiseM2,
    SharpCover,
    SubsetFastpath,
}

/// One removed member with the data that justifies it: the dominating member
/// and order witness for pairwise rules, the covering members otherwise.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Removal {
    pub index: usize,
    pub rule: Rule,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dominated_by: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionReport {
    pub removed: Vec<Removal>,
    pub survivors: FamilyIndexSet,
    pub minimal_by_inclusion_hint: bool,
}

impl ReductionReport {
    fn unchanged(len: usize) -> Self {
        Self {
            removed: Vec::new(),
            survivors: (0..len).collect(),
            minimal_by_inclusion_hint: len == 1,
        }
    }

    /// Rewrites indices through `map` (position in a subfamily → original index).
    fn remap(mut self, map: &[usize]) -> Self {
        for r in &mut self.removed {
            r.index = map[r.index];
            r.dominated_by = r.dominated_by.map(|j| map[j]);
            if let Some(cover) = &mut r.cover {
                for j in cover.iter_mut() {
                    *j = map[*j];
                }
            }
        }
        self.survivors = self.survivors.iter().map(|&i| map[i]).collect();
        self
    }
}

fn require_bounded_members(e: &Exhauster) -> Result<()> {
    for (i, m) in e.members().iter().enumerate() {
        if !m.is_bounded()? {
            return Err(Error::UnboundedOperand.in_pair(i, i));
        }
    }
    Ok(())
}

/// Whether member `j` licenses removing member `i`.
fn dominates(e: &Exhauster, cone: &Cone, j: usize, i: usize) -> Result<OrderCheck> {
    let m = e.members();
    let check = match e.kind() {
        Kind::Lower => precedes_m1(&m[j], &m[i], cone),
        Kind::Upper => precedes_m2(&m[i], &m[j], cone),
    };
    check.map_err(|err| err.in_pair(j, i))
}

/// Pairwise reduction by `≼m1_K` (lower) or `≼m2_K` (upper).
///
/// Members are visited in index order and removed when some other member
/// still present dominates them and differs from them as a set. For a pointed
/// `K` the survivors are exactly the m1-minimal (m2-maximal) members; for a
/// non-pointed `K` every step is still a single valid removal.
pub fn reduce_pairwise(e: &Exhauster, cone: &Cone) -> Result<(Exhauster, ReductionReport)> {
    require_bounded_members(e)?;
    let n = e.members().len();
    let rule = match e.kind() {
        Kind::Lower => Rule::PairwiseM1,
        Kind::Upper => Rule::PairwiseM2,
    };
    let mut alive = vec![true; n];
    let mut removed = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !alive[j] {
                continue;
            }
            let check = dominates(e, cone, j, i)?;
            let Some(witness) = check.witness else {
                continue;
            };
            if e.members()[i]
                .set_eq(&e.members()[j])
                .map_err(|err| err.in_pair(j, i))?
            {
                continue;
            }
            alive[i] = false;
            removed.push(Removal {
                index: i,
                rule,
                dominated_by: Some(j),
                witness: Some(witness),
                cover: None,
            });
            break;
        }
    }
    let survivors: FamilyIndexSet = (0..n).filter(|&i| alive[i]).collect();
    let hint =
        survivors.len() == 1 && strongly_extremal(e, cone)?.is_some_and(|s| survivors.contains(&s));
    let reduced = e.subfamily(survivors.iter().copied())?;
    Ok((
        reduced,
        ReductionReport {
            removed,
            survivors,
            minimal_by_inclusion_hint: hint,
        },
    ))
}

/// A member below (lower) / above (upper) every other member, if any.
pub fn strongly_extremal(e: &Exhauster, cone: &Cone) -> Result<Option<usize>> {
    require_bounded_members(e)?;
    let n = e.members().len();
    'candidates: for i in 0..n {
        for j in 0..n {
            if i != j && !dominates(e, cone, i, j)?.holds() {
                continue 'candidates;
            }
        }
        return Ok(Some(i));
    }
    Ok(None)
}

/// Why a member was found removable by the covering test.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "via", rename_all = "snake_case")]
pub enum CoverProof {
    /// `B ⊆ A` for this member `B`, so `(A -̇ B)^#` is already ℝⁿ.
    Subset { member: usize },
    /// The sharp sets of these members cover ℝⁿ.
    Sharp { members: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CoverVerdict {
    Covered {
        proof: CoverProof,
    },
    /// `witness` lies outside every sharp set.
    NotCovered {
        witness: Vector,
    },
    /// Ball-shaped differences were approximated and no exact witness was found.
    Unknown,
}

/// Points on the sphere of radius `radius` around `center`; their hull is
/// inscribed in the ball. Exact in dimension 1.
fn inscribed_points(center: &Vector, radius: f64) -> Vec<Vector> {
    let dim = center.dim();
    let directions: Vec<Vector> = match dim {
        1 => vec![Vector::from([1.0]), Vector::from([-1.0])],
        2 => (0..64)
            .map(|k| {
                let t = k as f64 * std::f64::consts::TAU / 64.0;
                Vector::from([t.cos(), t.sin()])
            })
            .collect(),
        3 => {
            // Fibonacci lattice on the unit sphere.
            let count = 162;
            let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
            (0..count)
                .map(|k| {
                    let z = 1.0 - 2.0 * (k as f64 + 0.5) / count as f64;
                    let rho = (1.0 - z * z).sqrt();
                    let t = golden * k as f64;
                    Vector::from([rho * t.cos(), rho * t.sin(), z])
                })
                .collect()
        }
        _ => (0..dim)
            .flat_map(|i| {
                let e = Vector::unit(dim, i);
                [e.clone(), -&e]
            })
            .collect(),
    };
    directions
        .iter()
        .map(|d| center + &d.scaled(radius))
        .collect()
}

/// `min_{d ∈ D} ⟨x, d⟩` evaluated exactly.
fn min_form(diff: &Body, x: &Vector) -> Result<f64> {
    diff.inf_support(x)
}

/// Decides whether member `a_idx` can be dropped from an unconstrained lower
/// exhauster because `⋃_i (A -̇ B_i)^# = ℝⁿ` over the given candidates.
pub fn sharp_cover_removable(
    e: &Exhauster,
    a_idx: usize,
    candidates: &[usize],
) -> Result<CoverVerdict> {
    if e.kind() != Kind::Lower {
        return Err(Error::WrongKind { expected: "lower" });
    }
    if !e.domain().is_full()? {
        return Err(Error::DomainNotFullSpace);
    }
    let n = e.members().len();
    if a_idx >= n {
        return Err(Error::InvalidIndex(a_idx));
    }
    let distinct: BTreeSet<usize> = candidates.iter().copied().collect();
    if candidates.is_empty() || distinct.len() != candidates.len() || distinct.contains(&a_idx) {
        return Err(Error::InvalidCandidates);
    }
    if let Some(&bad) = candidates.iter().find(|&&j| j >= n) {
        return Err(Error::InvalidIndex(bad));
    }
    let a = &e.members()[a_idx];
    for &j in candidates {
        if contains(a, &e.members()[j]).map_err(|err| err.in_pair(a_idx, j))? {
            return Ok(CoverVerdict::Covered {
                proof: CoverProof::Subset { member: j },
            });
        }
    }

    let mut diffs = Vec::new();
    let mut forms = Vec::new();
    let mut approximated = false;
    for &j in candidates {
        let d = minkowski_diff(a, &e.members()[j]).map_err(|err| err.in_pair(a_idx, j))?;
        if d.is_empty()? {
            continue;
        }
        match d.polytope_vertices()? {
            Some(vertices) => forms.extend(vertices),
            None => match &d {
                Body::Ball { center, radius } => {
                    approximated = true;
                    forms.extend(inscribed_points(center, *radius));
                }
                _ => return Err(Error::UnboundedOperand.in_pair(a_idx, j)),
            },
        }
        diffs.push(d);
    }
    if forms.is_empty() {
        // Every difference is empty: the union of sharp sets is empty.
        return Ok(CoverVerdict::NotCovered {
            witness: Vector::unit(e.dim(), 0),
        });
    }
    let margin = strict_margin(&forms)?;
    if margin.value <= eps() {
        return Ok(CoverVerdict::Covered {
            proof: CoverProof::Sharp {
                members: candidates.to_vec(),
            },
        });
    }
    let x = margin.point;
    if !approximated {
        return Ok(CoverVerdict::NotCovered { witness: x });
    }
    for d in &diffs {
        if min_form(d, &x)? <= eps() {
            return Ok(CoverVerdict::Unknown);
        }
    }
    Ok(CoverVerdict::NotCovered { witness: x })
}

/// Repeatedly drops members whose sharp sets against the remaining members
/// cover ℝⁿ, visiting members in index order.
pub fn reduce_by_cover(e: &Exhauster) -> Result<(Exhauster, ReductionReport)> {
    if e.kind() != Kind::Lower {
        return Err(Error::WrongKind { expected: "lower" });
    }
    if !e.domain().is_full()? {
        return Err(Error::DomainNotFullSpace);
    }
    let n = e.members().len();
    let mut alive = vec![true; n];
    let mut removed = Vec::new();
    for a in 0..n {
        let candidates: Vec<usize> = (0..n).filter(|&j| j != a && alive[j]).collect();
        if candidates.is_empty() {
            continue;
        }
        if let CoverVerdict::Covered { proof } = sharp_cover_removable(e, a, &candidates)? {
            alive[a] = false;
            removed.push(match proof {
                CoverProof::Subset { member } => Removal {
                    index: a,
                    rule: Rule::SubsetFastpath,
                    dominated_by: None,
                    witness: None,
                    cover: Some(vec![member]),
                },
                CoverProof::Sharp { members } => Removal {
                    index: a,
                    rule: Rule::SharpCover,
                    dominated_by: None,
                    witness: None,
                    cover: Some(members),
                },
            });
        }
    }
    let survivors: FamilyIndexSet = (0..n).filter(|&i| alive[i]).collect();
    let reduced = e.subfamily(survivors.iter().copied())?;
    let hint = survivors.len() == 1;
    Ok((
        reduced,
        ReductionReport {
            removed,
            survivors,
            minimal_by_inclusion_hint: hint,
        },
    ))
}

/// Pairwise reduction (when a cone is given) followed by covering reduction
/// (when the exhauster is an unconstrained lower exhauster). Report indices
/// refer to the input family.
pub fn reduce_auto(e: &Exhauster, cone: Option<&Cone>) -> Result<(Exhauster, ReductionReport)> {
    let n = e.members().len();
    let (mut current, mut report) = match cone {
        Some(k) => reduce_pairwise(e, k)?,
        None => (e.clone(), ReductionReport::unchanged(n)),
    };
    if e.kind() == Kind::Lower && e.domain().is_full()? {
        let map: Vec<usize> = report.survivors.iter().copied().collect();
        let (reduced, cover_report) = reduce_by_cover(&current)?;
        let cover_report = cover_report.remap(&map);
        report.removed.extend(cover_report.removed);
        report.survivors = cover_report.survivors;
        report.minimal_by_inclusion_hint |= cover_report.minimal_by_inclusion_hint;
        current = reduced;
    }
    Ok((current, report))
}

/// The three equivalent statements about compact convex `A`, `B`:
/// `(A -̇ B)^# = ℝⁿ`, `0 ∈ A -̇ B`, `B ⊆ A`, each computed independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lemma41 {
    pub sharp_full: bool,
    pub zero_in_diff: bool,
    pub subset: bool,
}

impl Lemma41 {
    pub fn agree(&self) -> bool {
        self.sharp_full == self.zero_in_diff && self.zero_in_diff == self.subset
    }
}

pub fn lemma41_check(a: &Body, b: &Body) -> Result<Lemma41> {
    if !a.is_bounded()? || !b.is_bounded()? {
        return Err(Error::UnboundedOperand);
    }
    let diff = minkowski_diff(a, b)?;
    let origin = Vector::zeros(a.dim());
    let zero_in_diff = diff.contains_point(&origin)?;
    let subset = contains(a, b)?;
    let sharp_full = if diff.is_empty()? {
        false
    } else {
        match (&diff, diff.polytope_vertices()?) {
            (_, Some(vertices)) => strict_margin(&vertices)?.value <= eps(),
            // {x : ⟨c,x⟩ - r‖x‖ > 0} is empty iff ‖c‖ ≤ r.
            (Body::Ball { center, radius }, None) => center.norm() <= radius + eps(),
            _ => return Err(Error::UnboundedOperand),
        }
    };
    Ok(Lemma41 {
        sharp_full,
        zero_in_diff,
        subset,
    })
}
