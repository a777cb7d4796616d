use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Zero;

use crate::correspondences::{compose, diagonal, exterior_product, transpose, CorrespondenceClass};
use crate::error::{Error, Result};
use crate::graded_ring::{dual_basis, same_ring, ClassVector, GradedBasisRing};
use crate::linalg::{self, Matrix};
use crate::rational::{frac, one, Q};
use crate::spaces::{tensor_product, CiModel, SpaceSpec};

use super::verify::verify_ck;
use super::{ProjectorSet, Remainder};

/// Rows of `V` with `V M Vᵀ` diagonal and nonzero on the diagonal, for a
/// symmetric nondegenerate `M`. Only rational row operations are used.
fn congruence_diagonalize(m: &Matrix) -> Option<(Matrix, Vec<Q>)> {
    let n = m.len();
    let mut v = linalg::identity(n);
    let gram = |v: &Matrix| linalg::mul(&linalg::mul(v, m), &linalg::transpose(v));
    for k in 0..n {
        let g = gram(&v);
        if let Some(i) = (k..n).find(|&i| !g[i][i].is_zero()) {
            v.swap(k, i);
        } else {
            let (i, j) = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .find(|&(i, j)| !g[i][j].is_zero())?;
            // G_ii = G_jj = 0, so (v_i + v_j)² = 2 G_ij ≠ 0
            let vj = v[j].clone();
            for (a, b) in v[i].iter_mut().zip(vj) {
                *a += b;
            }
            v.swap(k, i);
        }
        let g = gram(&v);
        let pivot = g[k][k].clone();
        for l in k + 1..n {
            let f = &g[l][k] / &pivot;
            if f.is_zero() {
                continue;
            }
            let vk = v[k].clone();
            for (a, b) in v[l].iter_mut().zip(vk) {
                *a -= &f * b;
            }
        }
    }
    let g = gram(&v);
    let diag: Vec<Q> = (0..n).map(|i| g[i][i].clone()).collect();
    diag.iter().all(|x| !x.is_zero()).then_some((v, diag))
}

fn sum_of_exteriors(pairs: &[(ClassVector, ClassVector, Q)], ring: &Arc<GradedBasisRing>) -> Result<CorrespondenceClass> {
    let mut acc = CorrespondenceClass::zero(ring, ring, 0);
    for (a, b, c) in pairs {
        acc = acc.add(&CorrespondenceClass::exterior(a, b)?.scale(c))?;
    }
    Ok(acc)
}

/// `π_{2p}` and `π_{2d-2p}` for every even `2p ≤ m` (restricted to
/// `algebraic_degrees` when given), built from dual bases off the middle and
/// a congruence-diagonalized pairing in the middle.
pub fn algebraic_projectors(
    x: &Arc<GradedBasisRing>,
    m: u32,
    algebraic_degrees: Option<&BTreeSet<u32>>,
) -> Result<ProjectorSet> {
    let d = x.dim();
    let top = x.top_degree();
    for i in (1..=m.min(top)).step_by(2) {
        let rank = x.basis_of_degree(i).len();
        if rank > 0 {
            return Err(Error::OddRankObstruction { degree: i, rank });
        }
    }
    diagonal(x)?;
    let mut projectors = BTreeMap::new();
    for p2 in (0..=m.min(d)).step_by(2) {
        let basis = x.basis_of_degree(p2);
        if basis.is_empty() || algebraic_degrees.is_some_and(|s| !s.contains(&p2)) {
            continue;
        }
        if p2 < d {
            let duals = dual_basis(x, p2)?;
            let terms: Vec<_> = basis
                .iter()
                .zip(duals)
                .map(|(&e, dual)| (dual, ClassVector::basis(x, e), one()))
                .collect();
            let pi = sum_of_exteriors(&terms, x)?;
            projectors.insert(top - p2, transpose(&pi));
            projectors.insert(p2, pi);
        } else {
            let block = x.pairing_block(p2);
            let (v, diag) = congruence_diagonalize(&block)
                .ok_or(Error::DegeneratePairing { degree: p2, complement: top - p2 })?;
            let terms: Vec<_> = v
                .into_iter()
                .zip(diag)
                .map(|(row, g)| {
                    let c = ClassVector::from_coeffs(x, p2, row)?;
                    Ok((c.clone(), c, one() / g))
                })
                .collect::<Result<_>>()?;
            projectors.insert(p2, sum_of_exteriors(&terms, x)?);
        }
    }
    let (indices, list): (Vec<u32>, Vec<CorrespondenceClass>) = projectors.into_iter().unzip();
    let orthogonal = gram_schmidt_orthogonalize(&list)?;
    let projectors: BTreeMap<u32, CorrespondenceClass> = indices.into_iter().zip(orthogonal).collect();
    let complete = (0..=top).all(|i| x.basis_of_degree(i).is_empty() || projectors.contains_key(&i));
    ProjectorSet::new(x, projectors, None, complete)
}

/// Algebraic projectors below and above the middle plus the remainder
/// `Δ - Σ π_i` for the middle degree.
pub fn chow_kunneth_projectors(x: &Arc<GradedBasisRing>) -> Result<ProjectorSet> {
    let partial = if x.dim() == 0 {
        ProjectorSet::new(x, BTreeMap::new(), None, false)?
    } else {
        algebraic_projectors(x, x.dim() - 1, None)?
    };
    if partial.is_complete() {
        return Ok(partial);
    }
    partial.with_remainder()
}

/// `Δ - Σ π_i` for a verified partial set.
pub fn remainder_projector(partial: &ProjectorSet) -> Result<CorrespondenceClass> {
    let ring = partial.ring();
    let loose = ProjectorSet::new(ring, partial.projectors().clone(), partial.remainder().cloned(), false)?;
    let report = verify_ck(&loose);
    if let Some(bad) = report.failures().next() {
        return Err(Error::PreconditionViolated(format!(
            "partial set fails {} at [{}]",
            bad.check,
            bad.indices.join(", ")
        )));
    }
    diagonal(ring)?.sub(&loose.sum()?)
}

/// Closed-form projectors of a degree-`d` hypersurface in `P^n`:
/// `π_{2r} = (1/d) H^{n-1-r} × H^r` off the middle, remainder in the middle.
pub fn hypersurface_projectors(n: u32, d: u32, middle_rank: u32) -> Result<ProjectorSet> {
    if n < 2 || d == 0 {
        return Err(Error::InvalidSpec("hypersurface projectors need n ≥ 2 and d ≥ 1".into()));
    }
    let model = CiModel::from_spec(&SpaceSpec::hypersurface(n, d, middle_rank))?;
    let ring = model.ring();
    let amb = model.ambient();
    let power = |k: u32| -> Result<ClassVector> {
        let label = match k {
            0 => "1".to_string(),
            1 => "h".to_string(),
            _ => format!("h^{k}"),
        };
        model.restrict(&ClassVector::basis(amb, amb.index_of(&label)?))
    };
    let dim = n - 1;
    let mut projectors = BTreeMap::new();
    for r in 0..=dim {
        if 2 * r == dim {
            continue;
        }
        let pi = CorrespondenceClass::exterior(&power(dim - r)?, &power(r)?)?.scale(&frac(1, d as i64));
        projectors.insert(2 * r, pi);
    }
    ProjectorSet::new(ring, projectors, None, false)?.with_remainder()
}

/// `π^{X×Y}_i = Σ_{p+q=i} π^X_p × π^Y_q` for complete sets.
pub fn product_projectors(px: &ProjectorSet, py: &ProjectorSet) -> Result<ProjectorSet> {
    for (name, s) in [("first", px), ("second", py)] {
        if !s.is_complete() || !s.sums_to_diagonal()? {
            return Err(Error::IncompleteInput(format!("the {name} set does not sum to the diagonal")));
        }
    }
    let (x, y) = (px.ring(), py.ring());
    let mut ring = tensor_product(x, y)?;
    if let (Some(sx), Some(sy)) = (x.spec(), y.spec()) {
        ring = ring.with_spec(SpaceSpec::product(vec![sx.clone(), sy.clone()]));
    }
    let xy = Arc::new(ring);
    let mut projectors: BTreeMap<u32, CorrespondenceClass> = BTreeMap::new();
    let mut rest: Option<Remainder> = None;
    for mx in px.members() {
        for my in py.members() {
            let ext = exterior_product(mx.class, my.class, &xy, &xy)?;
            let degrees: BTreeSet<u32> =
                mx.degrees.iter().flat_map(|p| my.degrees.iter().map(move |q| p + q)).collect();
            if mx.degrees.len() == 1 && my.degrees.len() == 1 {
                let i = *degrees.iter().next().expect("one degree");
                let acc = projectors.remove(&i).unwrap_or_else(|| CorrespondenceClass::zero(&xy, &xy, 0));
                projectors.insert(i, acc.add(&ext)?);
            } else {
                rest = Some(match rest {
                    None => Remainder { degrees, class: ext },
                    Some(r) => Remainder {
                        degrees: r.degrees.union(&degrees).copied().collect(),
                        class: r.class.add(&ext)?,
                    },
                });
            }
        }
    }
    if let Some(r) = &rest {
        if let Some(d) = r.degrees.iter().find(|d| projectors.contains_key(d)) {
            return Err(Error::PreconditionViolated(format!(
                "degree {d} is split between an indexed projector and the remainder"
            )));
        }
    }
    projectors.retain(|_, c| !c.is_zero());
    ProjectorSet::new(&xy, projectors, rest, true)
}

fn pairing_matrix_full(x: &GradedBasisRing) -> Matrix {
    let n = x.rank();
    let mut p = linalg::zeros(n, n);
    for (i, row) in p.iter_mut().enumerate() {
        for (j, c) in x.pairing_row(i) {
            row[*j] = c.clone();
        }
    }
    p
}

/// Successive two-sided correction `π'_j = F((Δ - P_j) ∘ π_j ∘ (Δ - P_j))`
/// with `P_j = Σ_{i<j} π'_i`, where `F` replaces a correspondence by the
/// idempotent of its Fitting decomposition. `F` fixes idempotents, so inputs
/// that are already orthogonal come back unchanged.
pub fn gram_schmidt_orthogonalize(list: &[CorrespondenceClass]) -> Result<Vec<CorrespondenceClass>> {
    let Some(first) = list.first() else {
        return Ok(Vec::new());
    };
    let ring = first.source().clone();
    for (i, c) in list.iter().enumerate() {
        if !same_ring(c.source(), &ring) || !same_ring(c.target(), &ring) || c.shift() != 0 {
            return Err(Error::RingMismatch(format!("entry {i} is not a degree-0 self-correspondence")));
        }
        if compose(c, c)? != *c {
            return Err(Error::NotIdempotent { index: i as u32 });
        }
    }
    // Endomorphism form E(Γ) = P·Γ turns composition into matrix product.
    let p = pairing_matrix_full(&ring);
    let delta = diagonal(&ring)?.to_matrix();
    let n = ring.rank();
    let mut taken = linalg::zeros(n, n);
    let mut out = Vec::with_capacity(list.len());
    for c in list {
        let e = linalg::mul(&p, &c.to_matrix());
        let q = linalg::sub(&linalg::identity(n), &taken);
        let x = linalg::mul(&linalg::mul(&q, &e), &q);
        let f = if x == e { e } else { linalg::fitting_idempotent(&x) };
        taken = taken.iter().zip(&f).map(|(a, b)| a.iter().zip(b).map(|(s, t)| s + t).collect()).collect();
        out.push(CorrespondenceClass::from_matrix(&ring, &ring, 0, &linalg::mul(&delta, &f))?);
    }
    Ok(out)
}
