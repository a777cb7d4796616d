//! Lefschetz-truncated models of complete intersections.
//!
//! Below the middle degree the basis is the ambient basis. The middle degree
//! holds the restricted ambient classes followed by `middle_rank` primitive
//! placeholders `m1, m2, …`. Above the middle the basis is dual to the lower
//! classes: `dual[a]` pairs to one with `a` and to zero with the other lower
//! classes of that degree.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded_ring::{finish_sparse, push_sparse, BasisElement, ClassVector, GradedBasisRing, SparseVec};
use crate::linalg::{self, Matrix};
use crate::rational::{one, q, sign, zero, Coefficient, Q};

use super::{coefficient_matrix, eval_dense, product_space, projective_space, ClassExpr, SpaceSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    /// Restriction of an ambient basis class (degree ≤ middle).
    Ambient(usize),
    /// Primitive middle placeholder, by position.
    Primitive(usize),
    /// Dual of a lower class, by its index in the model.
    Dual(usize),
}

/// A complete-intersection model together with its ambient data.
pub struct CiModel {
    ring: Arc<GradedBasisRing>,
    ambient: Arc<GradedBasisRing>,
    xi: Vec<Q>,
    kinds: Vec<Kind>,
    spec: Option<SpaceSpec>,
}

struct Layout<'a> {
    ambient: &'a GradedBasisRing,
    xi: &'a [Q],
    dim: u32,
    kinds: Vec<Kind>,
    of_ambient: HashMap<usize, usize>,
    dual_of: HashMap<usize, usize>,
}

impl Layout<'_> {
    /// `∫_A a · c · ξ` for an ambient basis index and a dense ambient class.
    fn triple(&self, a: usize, c: &[Q]) -> Q {
        let mut e = vec![zero(); self.ambient.rank()];
        e[a] = one();
        let ac = self.ambient.multiply_dense(&e, c);
        self.ambient.integrate_dense(&self.ambient.multiply_dense(&ac, self.xi))
    }

    /// Restriction of a homogeneous dense ambient class of degree `k`.
    fn restrict(&self, c: &[Q], k: u32) -> SparseVec {
        let mut out = HashMap::new();
        if k <= self.dim {
            for (a, x) in c.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                push_sparse(&mut out, self.of_ambient[&a], x.clone());
            }
        } else if k <= 2 * self.dim {
            for &l in self.ambient.basis_of_degree(2 * self.dim - k) {
                let v = self.triple(l, c);
                push_sparse(&mut out, self.dual_of[&self.of_ambient[&l]], v);
            }
        }
        finish_sparse(out)
    }
}

impl CiModel {
    pub fn from_spec(spec: &SpaceSpec) -> Result<Self> {
        let model = match spec {
            SpaceSpec::CiModel { ambient, fundamental_class_expr, middle_rank, middle_pairing } => {
                let amb = ambient.build()?;
                let xi = super::eval_class_expr(&amb, fundamental_class_expr)?;
                let pairing = middle_pairing.as_deref().map(coefficient_matrix);
                ci_model(&amb, &xi, *middle_rank, pairing)?
            }
            SpaceSpec::PlaneCurveFamily { d, middle_rank } => plane_curve_family(*d, middle_rank.unwrap_or(0))?,
            other => return Err(Error::InvalidSpec(format!("not a complete-intersection spec: {other:?}"))),
        };
        Ok(model.tagged(spec.clone()))
    }

    fn tagged(self, spec: SpaceSpec) -> Self {
        let ring = Arc::new(clone_with_spec(&self.ring, spec.clone()));
        CiModel { ring, spec: Some(spec), ..self }
    }

    pub fn ring(&self) -> &Arc<GradedBasisRing> {
        &self.ring
    }

    pub fn ambient(&self) -> &Arc<GradedBasisRing> {
        &self.ambient
    }

    /// Indices of the primitive middle placeholders.
    pub fn primitive_indices(&self) -> Vec<usize> {
        self.kinds
            .iter()
            .enumerate()
            .filter(|(_, k)| matches!(k, Kind::Primitive(_)))
            .map(|(i, _)| i)
            .collect()
    }

    /// Pulls an ambient class back to the model.
    pub fn restrict(&self, class: &ClassVector) -> Result<ClassVector> {
        if !crate::graded_ring::same_ring(class.ring(), &self.ambient) {
            return Err(Error::RingMismatch("class is not on the ambient ring".into()));
        }
        let layout = self.layout();
        let sparse = layout.restrict(&class.to_dense(), class.degree());
        let mut dense = vec![zero(); self.ring.rank()];
        for (i, c) in sparse {
            dense[i] = c;
        }
        if dense.iter().all(Zero::is_zero) {
            return Ok(ClassVector::zero(&self.ring, class.degree()));
        }
        ClassVector::from_dense(&self.ring, &dense)
    }

    fn layout(&self) -> Layout<'_> {
        let mut of_ambient = HashMap::new();
        let mut dual_of = HashMap::new();
        for (i, k) in self.kinds.iter().enumerate() {
            match k {
                Kind::Ambient(a) => {
                    of_ambient.insert(*a, i);
                }
                Kind::Dual(x) => {
                    dual_of.insert(*x, i);
                }
                Kind::Primitive(_) => {}
            }
        }
        Layout {
            ambient: &self.ambient,
            xi: &self.xi,
            dim: self.ring.dim(),
            kinds: self.kinds.clone(),
            of_ambient,
            dual_of,
        }
    }

    /// The same model without primitive placeholders.
    pub fn algebraic_part(&self) -> Result<CiModel> {
        let xi = ClassVector::from_dense(&self.ambient, &self.xi)?;
        let model = ci_model(&self.ambient, &xi, 0, None)?;
        Ok(match &self.spec {
            Some(SpaceSpec::CiModel { ambient, fundamental_class_expr, .. }) => model.tagged(SpaceSpec::CiModel {
                ambient: ambient.clone(),
                fundamental_class_expr: fundamental_class_expr.clone(),
                middle_rank: 0,
                middle_pairing: None,
            }),
            Some(SpaceSpec::PlaneCurveFamily { d, .. }) => {
                model.tagged(SpaceSpec::PlaneCurveFamily { d: *d, middle_rank: Some(0) })
            }
            _ => model,
        })
    }
}

fn clone_with_spec(r: &GradedBasisRing, spec: SpaceSpec) -> GradedBasisRing {
    GradedBasisRing::new(r.dim(), r.basis().to_vec(), |i, j| Ok(r.product(i, j).clone()), r.integration().clone())
        .expect("copy of a valid ring")
        .with_spec(spec)
}

fn default_pairing(rank: usize, odd: bool) -> Result<Matrix> {
    if !odd {
        return Ok(linalg::identity(rank));
    }
    if rank % 2 == 1 {
        return Err(Error::InvalidSpec(format!("odd middle degree needs an even middle_rank, got {rank}")));
    }
    let mut m = linalg::zeros(rank, rank);
    for b in 0..rank / 2 {
        m[2 * b][2 * b + 1] = one();
        m[2 * b + 1][2 * b] = -one();
    }
    Ok(m)
}

/// Model of the zero locus of `ξ` in `ambient`.
pub fn ci_model(
    ambient: &Arc<GradedBasisRing>,
    xi: &ClassVector,
    middle_rank: u32,
    middle_pairing: Option<Matrix>,
) -> Result<CiModel> {
    if !crate::graded_ring::same_ring(xi.ring(), ambient) {
        return Err(Error::RingMismatch("fundamental class is not on the ambient ring".into()));
    }
    if xi.is_zero() || xi.degree() == 0 || xi.degree() % 2 == 1 {
        return Err(Error::InvalidSpec("fundamental class must be nonzero of positive even degree".into()));
    }
    let codim = xi.degree() / 2;
    if codim > ambient.dim() {
        return Err(Error::InvalidSpec("fundamental class degree exceeds the ambient dimension".into()));
    }
    let dim = ambient.dim() - codim;
    let rank = middle_rank as usize;
    if dim == 0 && rank > 0 {
        return Err(Error::InvalidSpec("zero-dimensional models carry no primitive classes".into()));
    }
    let odd_middle = dim % 2 == 1;
    let pairing = match middle_pairing {
        Some(m) => {
            if m.len() != rank || m.iter().any(|r| r.len() != rank) {
                return Err(Error::InvalidSpec(format!("middle_pairing must be {rank}x{rank}")));
            }
            let s = sign(odd_middle);
            for i in 0..rank {
                for j in 0..rank {
                    if m[i][j] != &s * &m[j][i] {
                        return Err(Error::InvalidSpec(
                            "middle_pairing must be symmetric (even middle) or antisymmetric (odd middle)".into(),
                        ));
                    }
                }
            }
            m
        }
        None => default_pairing(rank, odd_middle)?,
    };

    let xi_dense = xi.to_dense();
    let mut basis = Vec::new();
    let mut kinds = Vec::new();
    for deg in 0..=dim {
        for &a in ambient.basis_of_degree(deg) {
            basis.push(BasisElement::new(ambient.label(a), deg));
            kinds.push(Kind::Ambient(a));
        }
    }
    for m in 0..rank {
        basis.push(BasisElement::new(format!("m{}", m + 1), dim));
        kinds.push(Kind::Primitive(m));
    }
    for deg in dim + 1..=2 * dim {
        let lower = 2 * dim - deg;
        for (x, kind) in kinds.clone().iter().enumerate() {
            if let Kind::Ambient(a) = kind {
                if ambient.degree_of(*a) == lower {
                    basis.push(BasisElement::new(format!("dual[{}]", ambient.label(*a)), deg));
                    kinds.push(Kind::Dual(x));
                }
            }
        }
    }

    let mut layout = Layout {
        ambient,
        xi: &xi_dense,
        dim,
        kinds: kinds.clone(),
        of_ambient: HashMap::new(),
        dual_of: HashMap::new(),
    };
    for (i, k) in kinds.iter().enumerate() {
        match k {
            Kind::Ambient(a) => {
                layout.of_ambient.insert(*a, i);
            }
            Kind::Dual(x) => {
                layout.dual_of.insert(*x, i);
            }
            Kind::Primitive(_) => {}
        }
    }

    // Lefschetz range: lower classes must stay independent under ∫ a·b·ξ.
    for deg in 0..=dim {
        let rows = ambient.basis_of_degree(deg);
        if rows.is_empty() {
            continue;
        }
        let cols = ambient.basis_of_degree(2 * dim - deg);
        let gram: Matrix = rows
            .iter()
            .map(|&a| {
                cols.iter()
                    .map(|&b| {
                        let mut e = vec![zero(); ambient.rank()];
                        e[b] = one();
                        layout.triple(a, &e)
                    })
                    .collect()
            })
            .collect();
        let ok = if deg == dim { linalg::inverse(&gram).is_some() } else { linalg::rank(&gram) == rows.len() };
        if !ok {
            return Err(Error::NonLefschetzRange { degree: deg });
        }
    }

    let unit = ambient.basis_of_degree(0)[0];
    let point = if dim > 0 { Some(layout.dual_of[&layout.of_ambient[&unit]]) } else { None };
    let degree_of = |i: usize| basis[i].degree;

    let product = |x: usize, y: usize| -> Result<SparseVec> {
        let kx = layout.kinds[x];
        let ky = layout.kinds[y];
        Ok(match (kx, ky) {
            (Kind::Ambient(a), Kind::Ambient(b)) => {
                let k = ambient.degree_of(a) + ambient.degree_of(b);
                let mut ea = vec![zero(); ambient.rank()];
                ea[a] = one();
                let mut eb = vec![zero(); ambient.rank()];
                eb[b] = one();
                layout.restrict(&ambient.multiply_dense(&ea, &eb), k)
            }
            (Kind::Ambient(a), Kind::Primitive(_)) if a == unit => vec![(y, one())],
            (Kind::Primitive(_), Kind::Ambient(b)) if b == unit => vec![(x, one())],
            (Kind::Primitive(i), Kind::Primitive(j)) => match point {
                Some(p) if !pairing[i][j].is_zero() => vec![(p, pairing[i][j].clone())],
                _ => Vec::new(),
            },
            (Kind::Ambient(a), Kind::Dual(xb)) => ambient_times_dual(&layout, a, xb),
            (Kind::Dual(xb), Kind::Ambient(a)) => {
                let s = sign(ambient.degree_of(a) * degree_of(x) % 2 == 1);
                ambient_times_dual(&layout, a, xb).into_iter().map(|(i, c)| (i, c * &s)).collect()
            }
            _ => Vec::new(),
        })
    };

    let integration = match point {
        Some(p) => vec![(p, one())],
        None => ambient
            .basis_of_degree(0)
            .iter()
            .map(|&a| {
                let mut e = vec![zero(); ambient.rank()];
                e[a] = one();
                (layout.of_ambient[&a], ambient.integrate_dense(&ambient.multiply_dense(&e, &xi_dense)))
            })
            .collect(),
    };

    let ring = GradedBasisRing::new(dim, basis.clone(), product, integration)?;
    Ok(CiModel { ring: Arc::new(ring), ambient: ambient.clone(), xi: xi_dense, kinds, spec: None })
}

/// `a · dual[b]`: pairs with a lower class `c` to the coefficient of `b` in `c·a`.
fn ambient_times_dual(layout: &Layout<'_>, a: usize, xb: usize) -> SparseVec {
    let amb = layout.ambient;
    let Kind::Ambient(b) = layout.kinds[xb] else { unreachable!("duals are of lower ambient classes") };
    let (da, db) = (amb.degree_of(a), amb.degree_of(b));
    if da > db {
        return Vec::new();
    }
    let mut out = HashMap::new();
    for &c in amb.basis_of_degree(db - da) {
        let coef = amb
            .product(c, a)
            .iter()
            .find(|(k, _)| *k == b)
            .map_or_else(zero, |(_, v)| v.clone());
        push_sparse(&mut out, layout.dual_of[&layout.of_ambient[&c]], coef);
    }
    finish_sparse(out)
}

/// The universal plane curve of degree `d`, a hypersurface of bidegree
/// `(d, 1)` in `P^2 × P^N` with `N = d(d+3)/2`.
pub fn plane_curve_family(d: u32, middle_rank: u32) -> Result<CiModel> {
    if d == 0 {
        return Err(Error::InvalidSpec("plane curve degree must be at least 1".into()));
    }
    let n = d * (d + 3) / 2;
    let ambient = Arc::new(
        product_space(&[Arc::new(projective_space(2)), Arc::new(projective_space(n))])?
            .with_spec(SpaceSpec::product(vec![SpaceSpec::projective(2), SpaceSpec::projective(n)])),
    );
    let mut expr = ClassExpr::new();
    expr.insert("h x 1".into(), Coefficient(q(d as i64)));
    expr.insert("1 x h".into(), Coefficient(one()));
    let xi = ClassVector::from_dense(&ambient, &eval_dense(&ambient, &expr)?)?;
    Ok(ci_model(&ambient, &xi, middle_rank, None)?
        .tagged(SpaceSpec::PlaneCurveFamily { d, middle_rank: Some(middle_rank) }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_ring::integrate;

    fn hypersurface(n: u32, d: u32, rank: u32) -> CiModel {
        CiModel::from_spec(&SpaceSpec::hypersurface(n, d, rank)).unwrap()
    }

    #[test]
    fn cubic_surface_ranks() {
        let m = hypersurface(3, 3, 7);
        assert_eq!(m.ring().betti_numbers(), vec![1, 0, 8, 0, 1]);
        assert!(m.ring().check_invariants().is_empty());
    }

    #[test]
    fn degree_of_hypersurface() {
        // ∫_X h^{n-1} = d
        for (n, d) in [(3, 3), (4, 2), (2, 5)] {
            let m = hypersurface(n, d, 0);
            let amb = m.ambient().clone();
            let h = amb.class(&[("h", one())]).unwrap();
            let mut hp = ClassVector::unit(&amb);
            for _ in 0..n - 1 {
                hp = crate::graded_ring::multiply(&amb, &hp, &h).unwrap();
            }
            let r = m.restrict(&hp).unwrap();
            assert_eq!(integrate(m.ring(), &r).unwrap(), q(d as i64));
        }
    }

    #[test]
    fn plane_cubic_is_genus_one() {
        let g = (3 - 1) * (3 - 2) / 2;
        let m = ci_model(
            &Arc::new(projective_space(2)),
            &Arc::new(projective_space(2)).class(&[("h", q(3))]).unwrap(),
            2 * g,
            None,
        );
        // the class lives on a different but equal ring
        let m = m.unwrap();
        assert_eq!(m.ring().betti_numbers(), vec![1, 2, 1]);
        assert!(m.ring().check_invariants().is_empty());
    }

    #[test]
    fn odd_middle_needs_even_rank() {
        let r = CiModel::from_spec(&SpaceSpec::CiModel {
            ambient: Box::new(SpaceSpec::projective(2)),
            fundamental_class_expr: [("h".to_string(), Coefficient(q(3)))].into_iter().collect(),
            middle_rank: 3,
            middle_pairing: None,
        });
        assert!(matches!(r, Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn hyperplane_section_is_projective_space() {
        let m = hypersurface(4, 1, 0);
        assert_eq!(m.ring().betti_numbers(), projective_space(3).betti_numbers());
        let hyp0 = hypersurface(1, 1, 0);
        assert_eq!(hyp0.ring().betti_numbers(), vec![1]);
        assert_eq!(hyp0.ring().integration(), &vec![(0, one())]);
    }

    #[test]
    fn non_lefschetz_is_detected() {
        // ξ = h x 1 on P^1 x P^2 cuts out a fiber, where `h x 1` restricts to zero.
        let spec = SpaceSpec::CiModel {
            ambient: Box::new(SpaceSpec::product(vec![SpaceSpec::projective(1), SpaceSpec::projective(2)])),
            fundamental_class_expr: [("h x 1".to_string(), Coefficient(one()))].into_iter().collect(),
            middle_rank: 0,
            middle_pairing: None,
        };
        assert!(matches!(CiModel::from_spec(&spec), Err(Error::NonLefschetzRange { .. })));
    }

    #[test]
    fn plane_curve_family_dims() {
        let f = plane_curve_family(1, 0).unwrap();
        assert_eq!(f.ring().dim(), 3);
        assert_eq!(f.ring().betti_numbers(), vec![1, 0, 2, 0, 2, 0, 1]);
        assert!(f.ring().check_invariants().is_empty());
        assert_eq!(plane_curve_family(3, 0).unwrap().ring().dim(), 10);
    }
}
