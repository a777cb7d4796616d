use std::sync::Arc;

use crate::correspondences::{compose, diagonal, exterior_product, CorrespondenceClass};
use crate::error::{Error, Result};
use crate::graded_ring::{same_ring, GradedBasisRing};
use crate::spaces::{projective_space, tensor_product};

/// A Chow motive `(X, p, m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MotiveObject {
    ring: Arc<GradedBasisRing>,
    projector: CorrespondenceClass,
    twist: i32,
}

impl MotiveObject {
    /// Checks that `p` is an idempotent degree-zero self-correspondence of `ring`.
    pub fn new(ring: &Arc<GradedBasisRing>, projector: CorrespondenceClass, twist: i32) -> Result<Self> {
        if !same_ring(projector.source(), ring) || !same_ring(projector.target(), ring) || projector.shift() != 0 {
            return Err(Error::RingMismatch("projector is not a degree-0 self-correspondence".into()));
        }
        if compose(&projector, &projector)? != projector {
            return Err(Error::NotIdempotent { index: 0 });
        }
        Ok(MotiveObject { ring: ring.clone(), projector, twist })
    }

    /// `h(X) = (X, Δ, 0)`.
    pub fn of(ring: &Arc<GradedBasisRing>) -> Result<Self> {
        Self::new(ring, diagonal(ring)?, 0)
    }

    /// The unit `(point, id, 0)`.
    pub fn unit() -> Self {
        Self::of(&Arc::new(projective_space(0))).expect("the point is nondegenerate")
    }

    /// The Lefschetz motive `(point, id, -1)`.
    pub fn lefschetz() -> Self {
        tate_twist(&Self::unit(), -1)
    }

    pub fn ring(&self) -> &Arc<GradedBasisRing> {
        &self.ring
    }

    pub fn projector(&self) -> &CorrespondenceClass {
        &self.projector
    }

    pub fn twist(&self) -> i32 {
        self.twist
    }
}

/// `(X × Y, p ⊗ q, m + n)`.
pub fn tensor(a: &MotiveObject, b: &MotiveObject) -> Result<MotiveObject> {
    let xy = Arc::new(tensor_product(&a.ring, &b.ring)?);
    let p = exterior_product(&a.projector, &b.projector, &xy, &xy)?;
    MotiveObject::new(&xy, p, a.twist + b.twist)
}

/// `(X, p, m + r)`.
pub fn tate_twist(m: &MotiveObject, r: i32) -> MotiveObject {
    MotiveObject { twist: m.twist + r, ..m.clone() }
}

/// Whether `f ∈ Corr^{n-m}(X, Y)` is a morphism `(X, p, m) → (Y, q, n)`,
/// i.e. `f ∘ p = q ∘ f = f`.
pub fn is_morphism(f: &CorrespondenceClass, source: &MotiveObject, target: &MotiveObject) -> Result<bool> {
    if !same_ring(f.source(), &source.ring) || !same_ring(f.target(), &target.ring) {
        return Ok(false);
    }
    if f.shift() != target.twist - source.twist {
        return Ok(false);
    }
    Ok(compose(&source.projector, f)? == *f && compose(f, &target.projector)? == *f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kunneth::algebraic_projectors;
    use crate::rational::q;

    #[test]
    fn unit_is_neutral_for_tensor() {
        let p2 = Arc::new(projective_space(2));
        let m = MotiveObject::of(&p2).unwrap();
        let t = tensor(&m, &MotiveObject::unit()).unwrap();
        assert_eq!(t.ring().betti_numbers(), p2.betti_numbers());
        // X × point has the same indexing as X
        assert_eq!(t.projector().coeffs(), m.projector().coeffs());
        assert_eq!(tate_twist(&m, 0), m);
        assert_eq!(MotiveObject::lefschetz().twist(), -1);
    }

    #[test]
    fn projectors_are_endomorphisms() {
        let p2 = Arc::new(projective_space(2));
        let set = algebraic_projectors(&p2, 4, None).unwrap();
        let pi2 = set.get(2).unwrap().clone();
        let m = MotiveObject::new(&p2, pi2.clone(), 0).unwrap();
        assert!(is_morphism(&pi2, &m, &m).unwrap());
        let pi0 = set.get(0).unwrap();
        assert!(!is_morphism(pi0, &m, &m).unwrap());
        assert!(!is_morphism(&pi2, &m, &tate_twist(&m, 1)).unwrap());
        assert!(matches!(MotiveObject::new(&p2, pi2.scale(&q(2)), 0), Err(Error::NotIdempotent { .. })));
    }
}
