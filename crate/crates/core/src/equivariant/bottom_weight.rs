use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::correspondences::{diagonal, CorrespondenceClass};
use crate::error::{Error, Result};
use crate::graded_ring::{same_ring, ClassVector, GradedBasisRing};
use crate::kunneth::{ProjectorSet, Remainder};
use crate::linalg;
use crate::rational::{one, zero, Q};
use crate::spaces::CiModel;

/// Degree-preserving surjection of graded rings, given by the images of the
/// source basis. Multiplicativity is only required on pairs whose images
/// are both nonzero: the target pairing may be degenerate on the kernel.
#[derive(Clone, Debug)]
pub struct RingSurjection {
    source: Arc<GradedBasisRing>,
    target: Arc<GradedBasisRing>,
    images: Vec<Vec<Q>>,
}

impl RingSurjection {
    pub fn new(source: &Arc<GradedBasisRing>, target: &Arc<GradedBasisRing>, images: Vec<Vec<Q>>) -> Result<Self> {
        if images.len() != source.rank() || images.iter().any(|v| v.len() != target.rank()) {
            return Err(Error::NotRingMap("one image per source basis element, over the target basis".into()));
        }
        for (i, v) in images.iter().enumerate() {
            if let Some((j, _)) = v.iter().enumerate().find(|(j, c)| !c.is_zero() && target.degree_of(*j) != source.degree_of(i)) {
                return Err(Error::NotRingMap(format!(
                    "{} has degree {} but its image involves {} of degree {}",
                    source.label(i),
                    source.degree_of(i),
                    target.label(j),
                    target.degree_of(j)
                )));
            }
        }
        if linalg::rank(&images) != target.rank() {
            return Err(Error::NotRingMap("the map is not surjective".into()));
        }
        let map = RingSurjection { source: source.clone(), target: target.clone(), images };
        let unit = map.apply_dense(&ClassVector::unit(source).to_dense());
        if unit != ClassVector::unit(target).to_dense() {
            return Err(Error::NotRingMap("the unit is not sent to the unit".into()));
        }
        for i in 0..source.rank() {
            for j in 0..source.rank() {
                let (a, b) = (&map.images[i], &map.images[j]);
                if a.iter().all(Zero::is_zero) || b.iter().all(Zero::is_zero) {
                    continue;
                }
                let mut prod = vec![zero(); source.rank()];
                for (k, c) in source.product(i, j) {
                    prod[*k] = c.clone();
                }
                if map.apply_dense(&prod) != target.multiply_dense(a, b) {
                    return Err(Error::NotRingMap(format!(
                        "q({} * {}) differs from q({}) * q({})",
                        source.label(i),
                        source.label(j),
                        source.label(i),
                        source.label(j)
                    )));
                }
            }
        }
        Ok(map)
    }

    pub fn identity(ring: &Arc<GradedBasisRing>) -> Self {
        let images = linalg::identity(ring.rank());
        RingSurjection { source: ring.clone(), target: ring.clone(), images }
    }

    /// `X → X_alg` sending the primitive middle placeholders of a model to
    /// zero and every other basis element to its namesake.
    pub fn kill_primitive(model: &CiModel) -> Result<(Self, CiModel)> {
        let alg = model.algebraic_part()?;
        let (source, target) = (model.ring(), alg.ring());
        let primitive = model.primitive_indices();
        let mut images = Vec::with_capacity(source.rank());
        for i in 0..source.rank() {
            let mut v = vec![zero(); target.rank()];
            if !primitive.contains(&i) {
                v[target.index_of(source.label(i))?] = one();
            }
            images.push(v);
        }
        Ok((Self::new(source, target, images)?, alg))
    }

    pub fn source(&self) -> &Arc<GradedBasisRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedBasisRing> {
        &self.target
    }

    pub fn image(&self, i: usize) -> &[Q] {
        &self.images[i]
    }

    fn apply_dense(&self, v: &[Q]) -> Vec<Q> {
        let mut out = vec![zero(); self.target.rank()];
        for (c, img) in v.iter().zip(&self.images).filter(|(c, _)| !c.is_zero()) {
            for (o, x) in out.iter_mut().zip(img) {
                *o += c * x;
            }
        }
        out
    }

    /// `(q ⊗ q)(Γ)` for a self-correspondence of the source.
    pub fn push(&self, gamma: &CorrespondenceClass) -> Result<CorrespondenceClass> {
        if !same_ring(gamma.source(), &self.source) || !same_ring(gamma.target(), &self.source) {
            return Err(Error::RingMismatch("correspondence is not on the source of the surjection".into()));
        }
        let n = self.target.rank();
        let mut m = linalg::zeros(n, n);
        for (&(a, b), c) in gamma.coeffs() {
            for (x, qa) in self.images[a].iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (y, qb) in self.images[b].iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    m[x][y] += c * qa * qb;
                }
            }
        }
        CorrespondenceClass::from_matrix(&self.target, &self.target, gamma.shift(), &m)
    }
}

/// Image of a projector set along `q`. Completeness is claimed when the set
/// is complete and `q ⊗ q` carries the diagonal to the diagonal.
pub fn bottom_weight_restriction(q: &RingSurjection, set: &ProjectorSet) -> Result<ProjectorSet> {
    if !same_ring(set.ring(), &q.source) {
        return Err(Error::RingMismatch("the projector set does not live on the source of the surjection".into()));
    }
    let mut projectors = BTreeMap::new();
    for (i, c) in set.projectors() {
        projectors.insert(*i, q.push(c)?);
    }
    let remainder = match set.remainder() {
        Some(r) => Some(Remainder { degrees: r.degrees.clone(), class: q.push(&r.class)? }),
        None => None,
    };
    let complete = set.is_complete()
        && match (diagonal(&q.source), diagonal(&q.target)) {
            (Ok(d), Ok(d2)) => q.push(&d)? == d2,
            _ => false,
        };
    ProjectorSet::new(&q.target, projectors, remainder, complete)
}
