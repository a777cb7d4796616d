//! Finite graded-commutative rings with Poincaré duality, presented by a
//! labeled basis and exact rational structure constants.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{format_rational, sign, zero, Q};
use crate::spaces::SpaceSpec;

/// Sparse vector over the full basis, sorted by index, no explicit zeros.
pub type SparseVec = Vec<(usize, Q)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub degree: u32,
}

impl BasisElement {
    pub fn new(label: impl Into<String>, degree: u32) -> Self {
        BasisElement { label: label.into(), degree }
    }
}

pub(crate) fn push_sparse(v: &mut HashMap<usize, Q>, i: usize, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(i).or_insert_with(zero);
    *e += c;
}

pub(crate) fn finish_sparse(v: HashMap<usize, Q>) -> SparseVec {
    let mut out: SparseVec = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort_by_key(|(i, _)| *i);
    out
}

/// The cohomology model of a variety: basis, cup product and integration.
pub struct GradedBasisRing {
    dim: u32,
    basis: Vec<BasisElement>,
    by_degree: Vec<Vec<usize>>,
    position: Vec<usize>,
    index: HashMap<String, usize>,
    products: Vec<SparseVec>,
    integration: SparseVec,
    odd: bool,
    spec: Option<SpaceSpec>,
    pairing_rows: Vec<SparseVec>,
    pairing_inverse: OnceLock<Result<Vec<SparseVec>>>,
}

impl fmt::Debug for GradedBasisRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedBasisRing")
            .field("dim", &self.dim)
            .field("ranks", &self.betti_numbers())
            .finish()
    }
}

impl PartialEq for GradedBasisRing {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.basis == other.basis
            && self.products == other.products
            && self.integration == other.integration
    }
}

impl GradedBasisRing {
    /// Builds a ring from a basis, a product rule on basis pairs and the
    /// integration functional.
    ///
    /// Structural checks only (labels, degrees, homogeneity); the algebraic
    /// invariants are reported by [`GradedBasisRing::check_invariants`].
    pub fn new<F>(
        dim: u32,
        basis: Vec<BasisElement>,
        mut product: F,
        integration: SparseVec,
    ) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<SparseVec>,
    {
        let top = 2 * dim;
        let n = basis.len();
        let mut index = HashMap::with_capacity(n);
        let mut by_degree = vec![Vec::new(); top as usize + 1];
        let mut position = Vec::with_capacity(n);
        for (i, b) in basis.iter().enumerate() {
            if b.degree > top {
                return Err(Error::DegreeOutOfRange { degree: b.degree, top });
            }
            if index.insert(b.label.clone(), i).is_some() {
                return Err(Error::InvalidSpec(format!("duplicate basis label `{}`", b.label)));
            }
            position.push(by_degree[b.degree as usize].len());
            by_degree[b.degree as usize].push(i);
        }
        let mut products = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = product(i, j)?;
                let deg = basis[i].degree + basis[j].degree;
                if let Some((k, _)) = v.iter().find(|(k, c)| !c.is_zero() && basis[*k].degree != deg) {
                    return Err(Error::Inhomogeneous(format!(
                        "{} * {} has a component on {}",
                        basis[i].label, basis[j].label, basis[*k].label
                    )));
                }
                let mut v: SparseVec = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                v.sort_by_key(|(k, _)| *k);
                products.push(v);
            }
        }
        for (k, c) in &integration {
            if basis[*k].degree != top && !c.is_zero() {
                return Err(Error::Inhomogeneous(format!(
                    "integration is nonzero on {} of degree {}",
                    basis[*k].label, basis[*k].degree
                )));
            }
        }
        let odd = basis.iter().any(|b| b.degree % 2 == 1);
        let mut ring = GradedBasisRing {
            dim,
            basis,
            by_degree,
            position,
            index,
            products,
            integration,
            odd,
            spec: None,
            pairing_rows: Vec::new(),
            pairing_inverse: OnceLock::new(),
        };
        ring.pairing_rows = (0..n)
            .map(|i| {
                (0..n)
                    .filter_map(|j| {
                        let v = ring.integrate_sparse(ring.product(i, j));
                        (!v.is_zero()).then_some((j, v))
                    })
                    .collect()
            })
            .collect();
        Ok(ring)
    }

    pub(crate) fn with_spec(mut self, spec: SpaceSpec) -> Self {
        self.spec = Some(spec);
        self
    }

    pub fn spec(&self) -> Option<&SpaceSpec> {
        self.spec.as_ref()
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn top_degree(&self) -> u32 {
        2 * self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn has_odd_classes(&self) -> bool {
        self.odd
    }

    pub fn degree_of(&self, i: usize) -> u32 {
        self.basis[i].degree
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Basis indices of degree `p` (empty outside `0..=2d`).
    pub fn basis_of_degree(&self, p: u32) -> &[usize] {
        self.by_degree.get(p as usize).map_or(&[], Vec::as_slice)
    }

    pub(crate) fn position_in_degree(&self, i: usize) -> usize {
        self.position[i]
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.by_degree.iter().map(Vec::len).collect()
    }

    /// Product of two basis elements.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i * self.basis.len() + j]
    }

    pub fn integration(&self) -> &SparseVec {
        &self.integration
    }

    pub(crate) fn integrate_sparse(&self, v: &SparseVec) -> Q {
        let mut acc = zero();
        for (k, c) in v {
            if let Ok(pos) = self.integration.binary_search_by_key(k, |(i, _)| *i) {
                acc += c * &self.integration[pos].1;
            }
        }
        acc
    }

    /// `∫ e_i · e_j`.
    pub fn pairing(&self, i: usize, j: usize) -> Q {
        self.pairing_rows[i]
            .binary_search_by_key(&j, |(k, _)| *k)
            .map_or_else(|_| zero(), |p| self.pairing_rows[i][p].1.clone())
    }

    /// Nonzero entries of row `i` of the full pairing matrix.
    pub fn pairing_row(&self, i: usize) -> &SparseVec {
        &self.pairing_rows[i]
    }

    /// Product of two dense full-basis vectors.
    pub fn multiply_dense(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let mut out = vec![zero(); self.rank()];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (k, c) in self.product(i, j) {
                    out[*k] += &xy * c;
                }
            }
        }
        out
    }

    pub fn integrate_dense(&self, a: &[Q]) -> Q {
        self.integration.iter().map(|(k, c)| &a[*k] * c).sum()
    }

    /// Block of the pairing between degree `p` and degree `2d - p`.
    pub(crate) fn pairing_block(&self, p: u32) -> Matrix {
        let rows = self.basis_of_degree(p);
        let cols = self.basis_of_degree(self.top_degree().saturating_sub(p));
        if p > self.top_degree() {
            return Vec::new();
        }
        rows.iter()
            .map(|&i| cols.iter().map(|&j| self.pairing(i, j)).collect())
            .collect()
    }

    /// Full inverse of the pairing matrix, row-sparse. Row `b` holds the
    /// coefficients of the Künneth diagonal `Σ Δ_{bc} e_b × e_c`.
    pub(crate) fn pairing_inverse(&self) -> Result<&Vec<SparseVec>> {
        self.pairing_inverse
            .get_or_init(|| {
                let n = self.rank();
                let mut rows = vec![Vec::new(); n];
                for p in 0..=self.top_degree() {
                    let src = self.basis_of_degree(p);
                    let dst = self.basis_of_degree(self.top_degree() - p);
                    if src.len() != dst.len() {
                        return Err(Error::DegeneratePairing { degree: p, complement: self.top_degree() - p });
                    }
                    if src.is_empty() {
                        continue;
                    }
                    let inv = linalg::inverse(&self.pairing_block(p))
                        .ok_or(Error::DegeneratePairing { degree: p, complement: self.top_degree() - p })?;
                    // inv is (deg 2d-p) x (deg p)
                    for (r, &b) in dst.iter().enumerate() {
                        for (c, &a) in src.iter().enumerate() {
                            if !inv[r][c].is_zero() {
                                rows[b].push((a, inv[r][c].clone()));
                            }
                        }
                    }
                }
                for row in rows.iter_mut() {
                    row.sort_by_key(|(k, _)| *k);
                }
                Ok(rows)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.pairing_inverse().is_ok()
    }

    /// All violated ring invariants, as human-readable lines. Empty means
    /// the ring is a valid Poincaré duality algebra.
    pub fn check_invariants(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let n = self.rank();
        let units = self.basis_of_degree(0);
        if units.len() != 1 {
            bad.push(format!("degree 0 has rank {}", units.len()));
        } else {
            let u = units[0];
            for i in 0..n {
                let expect: SparseVec = vec![(i, crate::rational::one())];
                if self.product(u, i) != &expect || self.product(i, u) != &expect {
                    bad.push(format!("unit is not an identity on {}", self.label(i)));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let s = sign(self.degree_of(i) * self.degree_of(j) % 2 == 1);
                let lhs = self.product(i, j);
                let rhs: SparseVec = self.product(j, i).iter().map(|(k, c)| (*k, c * &s)).collect();
                if lhs != &rhs {
                    bad.push(format!("graded commutativity fails for {} , {}", self.label(i), self.label(j)));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.product(i, j);
                for k in 0..n {
                    let mut left = HashMap::new();
                    for (m, c) in ij {
                        for (t, d) in self.product(*m, k) {
                            push_sparse(&mut left, *t, c * d);
                        }
                    }
                    let mut right = HashMap::new();
                    for (m, c) in self.product(j, k) {
                        for (t, d) in self.product(i, *m) {
                            push_sparse(&mut right, *t, c * d);
                        }
                    }
                    if finish_sparse(left) != finish_sparse(right) {
                        bad.push(format!(
                            "associativity fails for ({}, {}, {})",
                            self.label(i),
                            self.label(j),
                            self.label(k)
                        ));
                    }
                }
            }
        }
        if let Err(e) = self.pairing_inverse() {
            bad.push(e.to_string());
        }
        bad
    }

    pub fn class(self: &Arc<Self>, terms: &[(&str, Q)]) -> Result<ClassVector> {
        ClassVector::from_terms(self, terms)
    }
}

pub(crate) fn same_ring(a: &Arc<GradedBasisRing>, b: &Arc<GradedBasisRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A homogeneous class, with coefficients over the basis of its degree.
#[derive(Clone)]
pub struct ClassVector {
    ring: Arc<GradedBasisRing>,
    degree: u32,
    coeffs: Vec<Q>,
}

impl fmt::Debug for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassVector(deg {}: {})", self.degree, self)
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|(l, c)| format!("{}*{}", format_rational(c), l))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl PartialEq for ClassVector {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring)
            && ((self.degree == other.degree && self.coeffs == other.coeffs)
                || (self.is_zero() && other.is_zero()))
    }
}

impl ClassVector {
    pub fn zero(ring: &Arc<GradedBasisRing>, degree: u32) -> Self {
        let n = ring.basis_of_degree(degree).len();
        ClassVector { ring: ring.clone(), degree, coeffs: vec![zero(); n] }
    }

    pub fn basis(ring: &Arc<GradedBasisRing>, index: usize) -> Self {
        let degree = ring.degree_of(index);
        let mut v = Self::zero(ring, degree);
        v.coeffs[ring.position_in_degree(index)] = crate::rational::one();
        v
    }

    pub fn unit(ring: &Arc<GradedBasisRing>) -> Self {
        Self::basis(ring, ring.basis_of_degree(0)[0])
    }

    pub fn from_coeffs(ring: &Arc<GradedBasisRing>, degree: u32, coeffs: Vec<Q>) -> Result<Self> {
        if coeffs.len() != ring.basis_of_degree(degree).len() {
            return Err(Error::RingMismatch(format!(
                "degree {degree} has rank {}, got {} coefficients",
                ring.basis_of_degree(degree).len(),
                coeffs.len()
            )));
        }
        Ok(ClassVector { ring: ring.clone(), degree, coeffs })
    }

    /// Homogeneous class from `(label, coefficient)` pairs.
    pub fn from_terms(ring: &Arc<GradedBasisRing>, terms: &[(&str, Q)]) -> Result<Self> {
        let mut dense = vec![zero(); ring.rank()];
        for (label, c) in terms {
            dense[ring.index_of(label)?] += c;
        }
        Self::from_dense(ring, &dense)
    }

    /// Homogeneous class from a full-basis dense vector. The zero vector is
    /// placed in degree 0.
    pub fn from_dense(ring: &Arc<GradedBasisRing>, dense: &[Q]) -> Result<Self> {
        let mut degree = None;
        for (i, c) in dense.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match degree {
                None => degree = Some(ring.degree_of(i)),
                Some(d) if d != ring.degree_of(i) => {
                    return Err(Error::Inhomogeneous(format!(
                        "components in degrees {d} and {}",
                        ring.degree_of(i)
                    )))
                }
                _ => {}
            }
        }
        let degree = degree.unwrap_or(0);
        let coeffs = ring.basis_of_degree(degree).iter().map(|&i| dense[i].clone()).collect();
        Ok(ClassVector { ring: ring.clone(), degree, coeffs })
    }

    pub fn ring(&self) -> &Arc<GradedBasisRing> {
        &self.ring
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn to_dense(&self) -> Vec<Q> {
        let mut v = vec![zero(); self.ring.rank()];
        for (&i, c) in self.ring.basis_of_degree(self.degree).iter().zip(&self.coeffs) {
            v[i] = c.clone();
        }
        v
    }

    pub fn coeff(&self, label: &str) -> Result<Q> {
        let i = self.ring.index_of(label)?;
        if self.ring.degree_of(i) != self.degree {
            return Ok(zero());
        }
        Ok(self.coeffs[self.ring.position_in_degree(i)].clone())
    }

    /// Nonzero `(label, coefficient)` pairs in basis order.
    pub fn terms(&self) -> Vec<(String, Q)> {
        self.ring
            .basis_of_degree(self.degree)
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&i, c)| (self.ring.label(i).to_string(), c.clone()))
            .collect()
    }

    pub fn add(&self, other: &ClassVector) -> Result<ClassVector> {
        check_same(&self.ring, &other.ring)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::Inhomogeneous(format!("sum of degrees {} and {}", self.degree, other.degree)));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(ClassVector { ring: self.ring.clone(), degree: self.degree, coeffs })
    }

    pub fn scale(&self, c: &Q) -> ClassVector {
        ClassVector {
            ring: self.ring.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }
}

fn check_same(a: &Arc<GradedBasisRing>, b: &Arc<GradedBasisRing>) -> Result<()> {
    if same_ring(a, b) {
        Ok(())
    } else {
        Err(Error::RingMismatch("classes belong to different rings".into()))
    }
}

/// Cup product with Koszul signs; degrees add, products above `2d` vanish.
pub fn multiply(ring: &Arc<GradedBasisRing>, a: &ClassVector, b: &ClassVector) -> Result<ClassVector> {
    check_same(ring, &a.ring)?;
    check_same(ring, &b.ring)?;
    let degree = a.degree + b.degree;
    let dense = ring.multiply_dense(&a.to_dense(), &b.to_dense());
    let coeffs = ring.basis_of_degree(degree).iter().map(|&i| dense[i].clone()).collect();
    Ok(ClassVector { ring: ring.clone(), degree, coeffs })
}

/// `∫_X a`; classes not of top degree integrate to zero.
pub fn integrate(ring: &Arc<GradedBasisRing>, a: &ClassVector) -> Result<Q> {
    check_same(ring, &a.ring)?;
    if a.degree != ring.top_degree() {
        return Ok(zero());
    }
    Ok(ring.integrate_dense(&a.to_dense()))
}

/// `M_ij = ⟨basis(p)_i, basis(2d-p)_j⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingMatrix {
    pub degree: u32,
    pub matrix: Matrix,
}

pub fn pairing_matrix(ring: &GradedBasisRing, p: u32) -> Result<PairingMatrix> {
    let top = ring.top_degree();
    if p > top {
        return Err(Error::DegreeOutOfRange { degree: p, top });
    }
    let matrix = ring.pairing_block(p);
    let square = ring.basis_of_degree(p).len() == ring.basis_of_degree(top - p).len();
    if !square || linalg::inverse(&matrix).is_none() {
        return Err(Error::DegeneratePairing { degree: p, complement: top - p });
    }
    Ok(PairingMatrix { degree: p, matrix })
}

/// The basis `{e^k}` of degree `2d - p` with `⟨e_i, e^k⟩ = δ_ik`.
pub fn dual_basis(ring: &Arc<GradedBasisRing>, p: u32) -> Result<Vec<ClassVector>> {
    let family: Vec<ClassVector> =
        ring.basis_of_degree(p).iter().map(|&i| ClassVector::basis(ring, i)).collect();
    if p > ring.top_degree() {
        return Err(Error::DegreeOutOfRange { degree: p, top: ring.top_degree() });
    }
    dual_family(ring, p, &family)
}

/// Dual of an arbitrary basis `family` of degree `p`.
pub fn dual_family(ring: &Arc<GradedBasisRing>, p: u32, family: &[ClassVector]) -> Result<Vec<ClassVector>> {
    let top = ring.top_degree();
    if p > top {
        return Err(Error::DegreeOutOfRange { degree: p, top });
    }
    let q = top - p;
    let targets = ring.basis_of_degree(q);
    let degenerate = Error::DegeneratePairing { degree: p, complement: q };
    if family.len() != targets.len() || family.len() != ring.basis_of_degree(p).len() {
        return Err(degenerate);
    }
    // M_ij = ⟨family_i, f_j⟩
    let m: Matrix = family
        .iter()
        .map(|c| {
            let dense = c.to_dense();
            targets
                .iter()
                .map(|&j| dense.iter().enumerate().map(|(i, x)| x * ring.pairing(i, j)).sum())
                .collect()
        })
        .collect();
    let inv = linalg::inverse(&m).ok_or(degenerate)?;
    let x = linalg::transpose(&inv);
    x.into_iter()
        .map(|row| ClassVector::from_coeffs(ring, q, row))
        .collect()
}
