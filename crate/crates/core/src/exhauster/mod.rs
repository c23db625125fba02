//! Finite (generalized) upper and lower exhausters.
//!
//! A lower exhauster `E_*` represents `h(g) = max_{C ∈ E_*} min_{v ∈ C} ⟨v, g⟩`
//! and an upper exhauster `E^*` represents `h(g) = min_{C ∈ E^*} max_{v ∈ C} ⟨v, g⟩`,
//! for every `g` in the domain cone `T` (the whole space for ordinary
//! exhausters). Families here are finite, so the sup/inf are attained.

mod optimality;
mod reduce;
mod verify;

use serde::{Deserialize, Serialize};

use crate::body::Body;
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::vector::{check_dim, Vector};

pub use optimality::{optimality_check, OptimalityReport, PairCondition};
pub use reduce::{
    lemma41_check, reduce_auto, reduce_by_cover, reduce_pairwise, sharp_cover_removable,
    strongly_extremal, CoverProof, CoverVerdict, Lemma41, ReductionReport, Removal, Rule,
};
pub use verify::{verify_equivalence, GapReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Exhauster {
    kind: Kind,
    members: Vec<Body>,
    domain: Cone,
}

impl Exhauster {
    pub fn new(kind: Kind, members: Vec<Body>, domain: Cone) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::EmptyFamily);
        };
        let dim = first.dim();
        for m in &members {
            check_dim(dim, m.dim())?;
        }
        check_dim(dim, domain.dim())?;
        Ok(Self {
            kind,
            members,
            domain,
        })
    }

    /// An ordinary lower exhauster (domain ℝⁿ).
    pub fn lower(members: Vec<Body>) -> Result<Self> {
        let dim = members.first().ok_or(Error::EmptyFamily)?.dim();
        Self::new(Kind::Lower, members, Cone::full(dim))
    }

    /// An ordinary upper exhauster (domain ℝⁿ).
    pub fn upper(members: Vec<Body>) -> Result<Self> {
        let dim = members.first().ok_or(Error::EmptyFamily)?.dim();
        Self::new(Kind::Upper, members, Cone::full(dim))
    }

    pub fn with_domain(self, domain: Cone) -> Result<Self> {
        Self::new(self.kind, self.members, domain)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn members(&self) -> &[Body] {
        &self.members
    }

    pub fn domain(&self) -> &Cone {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    /// Subfamily with the given member indices, same kind and domain.
    pub fn subfamily(&self, indices: impl IntoIterator<Item = usize>) -> Result<Exhauster> {
        let mut members = Vec::new();
        for i in indices {
            members.push(self.members.get(i).ok_or(Error::InvalidIndex(i))?.clone());
        }
        Exhauster::new(self.kind, members, self.domain.clone())
    }

    pub fn in_domain(&self, g: &Vector) -> Result<bool> {
        self.domain.contains(g)
    }

    /// `h(g)`. Directions outside the domain cone are still evaluated; the
    /// representation is only guaranteed on the domain, so a warning is
    /// logged.
    pub fn evaluate(&self, g: &Vector) -> Result<f64> {
        check_dim(self.dim(), g.dim())?;
        if !self.in_domain(g)? {
            log::warn!("direction {g} lies outside the domain cone");
        }
        self.value_at(g)
    }

    pub(crate) fn value_at(&self, g: &Vector) -> Result<f64> {
        match self.kind {
            Kind::Lower => {
                let mut best = f64::NEG_INFINITY;
                for c in &self.members {
                    best = best.max(c.inf_support(g)?);
                }
                Ok(best)
            }
            Kind::Upper => {
                let mut best = f64::INFINITY;
                for c in &self.members {
                    best = best.min(c.support(g)?);
                }
                Ok(best)
            }
        }
    }
}
