//! Chow–Künneth projector sets: construction, orthogonalization and exact
//! verification.

mod construct;
mod motive;
mod verify;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::correspondences::{diagonal, CorrespondenceClass};
use crate::error::{Error, Result};
use crate::graded_ring::{same_ring, GradedBasisRing};

pub use construct::{
    algebraic_projectors, chow_kunneth_projectors, gram_schmidt_orthogonalize, hypersurface_projectors,
    product_projectors, remainder_projector,
};
pub use motive::{is_morphism, tate_twist, tensor, MotiveObject};
pub use verify::{verify_ck, verify_ck_with, CheckResult, VerificationReport, VerifyOptions};

/// The "middle" projector `Δ - Σ π_i`, acting on the degrees no member covers.
#[derive(Clone, Debug, PartialEq)]
pub struct Remainder {
    pub degrees: BTreeSet<u32>,
    pub class: CorrespondenceClass,
}

/// A member of a projector set together with the degrees it should fix.
#[derive(Clone, Debug, PartialEq)]
pub struct Member<'a> {
    pub name: String,
    pub degrees: BTreeSet<u32>,
    pub class: &'a CorrespondenceClass,
}

/// Indexed family `{π_i}` of degree-zero self-correspondences of one ring.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectorSet {
    ring: Arc<GradedBasisRing>,
    projectors: BTreeMap<u32, CorrespondenceClass>,
    remainder: Option<Remainder>,
    complete: bool,
}

impl ProjectorSet {
    pub fn new(
        ring: &Arc<GradedBasisRing>,
        projectors: BTreeMap<u32, CorrespondenceClass>,
        remainder: Option<Remainder>,
        complete: bool,
    ) -> Result<Self> {
        let top = ring.top_degree();
        let check = |c: &CorrespondenceClass, what: &str| -> Result<()> {
            if !same_ring(c.source(), ring) || !same_ring(c.target(), ring) {
                return Err(Error::RingMismatch(format!("{what} is not a self-correspondence of the ring")));
            }
            if c.shift() != 0 {
                return Err(Error::RingMismatch(format!("{what} has degree shift {}", c.shift())));
            }
            Ok(())
        };
        for (i, c) in &projectors {
            if *i > top {
                return Err(Error::DegreeOutOfRange { degree: *i, top });
            }
            check(c, &format!("projector {i}"))?;
        }
        if let Some(r) = &remainder {
            check(&r.class, "remainder")?;
            if let Some(&d) = r.degrees.iter().find(|&&d| d > top) {
                return Err(Error::DegreeOutOfRange { degree: d, top });
            }
        }
        Ok(ProjectorSet { ring: ring.clone(), projectors, remainder, complete })
    }

    pub fn ring(&self) -> &Arc<GradedBasisRing> {
        &self.ring
    }

    pub fn projectors(&self) -> &BTreeMap<u32, CorrespondenceClass> {
        &self.projectors
    }

    pub fn get(&self, i: u32) -> Option<&CorrespondenceClass> {
        self.projectors.get(&i)
    }

    pub fn remainder(&self) -> Option<&Remainder> {
        self.remainder.as_ref()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Indexed projectors in order, then the remainder.
    pub fn members(&self) -> Vec<Member<'_>> {
        let mut out: Vec<Member<'_>> = self
            .projectors
            .iter()
            .map(|(i, c)| Member { name: i.to_string(), degrees: [*i].into(), class: c })
            .collect();
        if let Some(r) = &self.remainder {
            out.push(Member { name: "remainder".into(), degrees: r.degrees.clone(), class: &r.class });
        }
        out
    }

    /// Degrees covered by some member.
    pub fn covered_degrees(&self) -> BTreeSet<u32> {
        self.members().into_iter().flat_map(|m| m.degrees).collect()
    }

    /// Sum of all members.
    pub fn sum(&self) -> Result<CorrespondenceClass> {
        self.members()
            .iter()
            .try_fold(CorrespondenceClass::zero(&self.ring, &self.ring, 0), |acc, m| acc.add(m.class))
    }

    /// Replaces projector `i`.
    pub fn with_projector(&self, i: u32, c: CorrespondenceClass) -> Result<Self> {
        let mut projectors = self.projectors.clone();
        projectors.insert(i, c);
        Self::new(&self.ring, projectors, self.remainder.clone(), self.complete)
    }

    /// Drops projector `i`, keeping the completeness claim.
    pub fn without_projector(&self, i: u32) -> Self {
        let mut out = self.clone();
        out.projectors.remove(&i);
        out
    }

    /// Adds `Δ - Σ π_i` on the uncovered degrees of nonzero rank and claims
    /// completeness.
    pub fn with_remainder(&self) -> Result<Self> {
        if self.remainder.is_some() {
            return Err(Error::PreconditionViolated("the set already has a remainder".into()));
        }
        let class = remainder_projector(self)?;
        let covered = self.covered_degrees();
        let degrees: BTreeSet<u32> = (0..=self.ring.top_degree())
            .filter(|d| !covered.contains(d) && !self.ring.basis_of_degree(*d).is_empty())
            .collect();
        let remainder = (!degrees.is_empty() || !class.is_zero()).then_some(Remainder { degrees, class });
        Self::new(&self.ring, self.projectors.clone(), remainder, true)
    }

    /// Whether the members add up to the diagonal.
    pub fn sums_to_diagonal(&self) -> Result<bool> {
        Ok(self.sum()? == diagonal(&self.ring)?)
    }
}
