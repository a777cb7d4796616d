//! Correspondences `Corr^r(X, Y) ⊂ H^{2(d_X + r)}(X × Y)`.
//!
//! A correspondence is stored by its coefficients `F[a][b]` on the Künneth
//! basis `e_a × f_b`. With `P` the full pairing matrix of the middle factor,
//! composition is `F · P_Y · G`, the action is `α ↦ αᵀ · P_X · F`, and the
//! diagonal is `P_X⁻¹`. These are exact consequences of pulling back to the
//! triple product and integrating out the middle factor.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded_ring::{same_ring, ClassVector, GradedBasisRing};
use crate::linalg::Matrix;
use crate::rational::{format_rational, sign, zero, Q};
use crate::spaces::tensor_product;

/// Sparse coefficients keyed by `(source basis index, target basis index)`.
pub type Coeffs = BTreeMap<(usize, usize), Q>;

#[derive(Clone)]
pub struct CorrespondenceClass {
    source: Arc<GradedBasisRing>,
    target: Arc<GradedBasisRing>,
    r: i32,
    coeffs: Coeffs,
    product: Arc<OnceLock<Arc<GradedBasisRing>>>,
}

impl fmt::Debug for CorrespondenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Corr^{}({})", self.r, self)
    }
}

impl fmt::Display for CorrespondenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&(a, b), c)| {
                format!("{}*{} x {}", format_rational(c), self.source.label(a), self.target.label(b))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl PartialEq for CorrespondenceClass {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.source, &other.source)
            && same_ring(&self.target, &other.target)
            && self.r == other.r
            && self.coeffs == other.coeffs
    }
}

fn add_to(map: &mut Coeffs, key: (usize, usize), c: Q) {
    if c.is_zero() {
        return;
    }
    let e = map.entry(key).or_insert_with(zero);
    *e += c;
    if e.is_zero() {
        map.remove(&key);
    }
}

impl CorrespondenceClass {
    /// Builds a correspondence, checking that every term has degree
    /// `2(d_X + r)`.
    pub fn new(
        source: &Arc<GradedBasisRing>,
        target: &Arc<GradedBasisRing>,
        r: i32,
        coeffs: impl IntoIterator<Item = ((usize, usize), Q)>,
    ) -> Result<Self> {
        let want = 2 * (source.dim() as i64 + r as i64);
        let mut map = Coeffs::new();
        for ((a, b), c) in coeffs {
            if a >= source.rank() || b >= target.rank() {
                return Err(Error::RingMismatch(format!("basis index ({a}, {b}) out of range")));
            }
            if c.is_zero() {
                continue;
            }
            let deg = (source.degree_of(a) + target.degree_of(b)) as i64;
            if deg != want {
                return Err(Error::Inhomogeneous(format!(
                    "{} x {} has degree {deg}, a degree-{r} correspondence needs {want}",
                    source.label(a),
                    target.label(b)
                )));
            }
            add_to(&mut map, (a, b), c);
        }
        Ok(Self::from_parts(source, target, r, map))
    }

    fn from_parts(source: &Arc<GradedBasisRing>, target: &Arc<GradedBasisRing>, r: i32, coeffs: Coeffs) -> Self {
        CorrespondenceClass {
            source: source.clone(),
            target: target.clone(),
            r,
            coeffs,
            product: Arc::new(OnceLock::new()),
        }
    }

    /// Builds a correspondence from `(source label, target label, coefficient)`.
    pub fn from_terms(
        source: &Arc<GradedBasisRing>,
        target: &Arc<GradedBasisRing>,
        r: i32,
        terms: &[(&str, &str, Q)],
    ) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(terms.len());
        for (a, b, c) in terms {
            coeffs.push(((source.index_of(a)?, target.index_of(b)?), c.clone()));
        }
        Self::new(source, target, r, coeffs)
    }

    pub fn zero(source: &Arc<GradedBasisRing>, target: &Arc<GradedBasisRing>, r: i32) -> Self {
        Self::from_parts(source, target, r, Coeffs::new())
    }

    /// `a × b` for homogeneous classes; the shift is read off the degrees.
    pub fn exterior(a: &ClassVector, b: &ClassVector) -> Result<Self> {
        let total = (a.degree() + b.degree()) as i64;
        if total % 2 == 1 {
            return Err(Error::Inhomogeneous("an exterior product of odd total degree is not a correspondence".into()));
        }
        let r = (total / 2 - a.ring().dim() as i64) as i32;
        let mut coeffs = Vec::new();
        for (&i, x) in a.ring().basis_of_degree(a.degree()).iter().zip(a.coeffs()) {
            for (&j, y) in b.ring().basis_of_degree(b.degree()).iter().zip(b.coeffs()) {
                coeffs.push(((i, j), x * y));
            }
        }
        Self::new(a.ring(), b.ring(), r, coeffs)
    }

    pub fn source(&self) -> &Arc<GradedBasisRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedBasisRing> {
        &self.target
    }

    pub fn shift(&self) -> i32 {
        self.r
    }

    pub fn coeffs(&self) -> &Coeffs {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, a: &str, b: &str) -> Result<Q> {
        let key = (self.source.index_of(a)?, self.target.index_of(b)?);
        Ok(self.coeffs.get(&key).cloned().unwrap_or_else(zero))
    }

    /// Nonzero `(source label, target label, coefficient)` triples in index order.
    pub fn terms(&self) -> Vec<(String, String, Q)> {
        self.coeffs
            .iter()
            .map(|(&(a, b), c)| (self.source.label(a).to_string(), self.target.label(b).to_string(), c.clone()))
            .collect()
    }

    /// The product ring `X × Y`, built on first use.
    pub fn product_ring(&self) -> Result<Arc<GradedBasisRing>> {
        if let Some(r) = self.product.get() {
            return Ok(r.clone());
        }
        let ring = Arc::new(tensor_product(&self.source, &self.target)?);
        Ok(self.product.get_or_init(|| ring).clone())
    }

    /// The underlying class on `X × Y`.
    pub fn as_class(&self) -> Result<ClassVector> {
        let ring = self.product_ring()?;
        let ny = self.target.rank();
        let degree = (2 * (self.source.dim() as i64 + self.r as i64)).max(0) as u32;
        if self.coeffs.is_empty() {
            return Ok(ClassVector::zero(&ring, degree.min(ring.top_degree())));
        }
        let mut dense = vec![zero(); ring.rank()];
        for (&(a, b), c) in &self.coeffs {
            dense[a * ny + b] = c.clone();
        }
        ClassVector::from_dense(&ring, &dense)
    }

    fn check_same_type(&self, other: &Self) -> Result<()> {
        if !same_ring(&self.source, &other.source) || !same_ring(&self.target, &other.target) {
            return Err(Error::RingMismatch("correspondences between different spaces".into()));
        }
        if self.r != other.r {
            return Err(Error::RingMismatch(format!("degree shifts {} and {} differ", self.r, other.r)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_type(other)?;
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &other.coeffs {
            add_to(&mut coeffs, *k, c.clone());
        }
        Ok(Self::from_parts(&self.source, &self.target, self.r, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-crate::rational::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let coeffs = if c.is_zero() {
            Coeffs::new()
        } else {
            self.coeffs.iter().map(|(k, x)| (*k, x * c)).collect()
        };
        Self::from_parts(&self.source, &self.target, self.r, coeffs)
    }

    /// Dense `rank X × rank Y` coefficient matrix.
    pub fn to_matrix(&self) -> Matrix {
        let mut m = vec![vec![zero(); self.target.rank()]; self.source.rank()];
        for (&(a, b), c) in &self.coeffs {
            m[a][b] = c.clone();
        }
        m
    }

    pub(crate) fn from_matrix(
        source: &Arc<GradedBasisRing>,
        target: &Arc<GradedBasisRing>,
        r: i32,
        m: &Matrix,
    ) -> Result<Self> {
        let entries = m
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().enumerate().map(move |(b, c)| ((a, b), c.clone())));
        Self::new(source, target, r, entries)
    }
}

/// The Künneth diagonal `Δ_X ∈ Corr^0(X, X)`, the two-sided identity.
pub fn diagonal(x: &Arc<GradedBasisRing>) -> Result<CorrespondenceClass> {
    let rows = x.pairing_inverse()?;
    let mut coeffs = Coeffs::new();
    for (b, row) in rows.iter().enumerate() {
        for (c, v) in row {
            coeffs.insert((b, *c), v.clone());
        }
    }
    Ok(CorrespondenceClass::from_parts(x, x, 0, coeffs))
}

/// `g ∘ f` for `f ∈ Corr^r(X, Y)` and `g ∈ Corr^e(Y, Z)`.
pub fn compose(f: &CorrespondenceClass, g: &CorrespondenceClass) -> Result<CorrespondenceClass> {
    if !same_ring(&f.target, &g.source) {
        return Err(Error::RingMismatch("target of the first correspondence is not the source of the second".into()));
    }
    let y = &f.target;
    let mut out = Coeffs::new();
    for (&(a, b), fc) in &f.coeffs {
        for (c, p) in y.pairing_row(b) {
            let fp = fc * p;
            for (&(_, d), gc) in g.coeffs.range((*c, 0)..(*c + 1, 0)) {
                add_to(&mut out, (a, d), &fp * gc);
            }
        }
    }
    Ok(CorrespondenceClass::from_parts(&f.source, &g.target, f.r + g.r, out))
}

/// `γ_*(α) = p_{Y*}(p_X^*α · γ)`.
pub fn act(gamma: &CorrespondenceClass, alpha: &ClassVector) -> Result<ClassVector> {
    if !same_ring(&gamma.source, alpha.ring()) {
        return Err(Error::RingMismatch("class does not live on the source of the correspondence".into()));
    }
    let x = &gamma.source;
    let y = &gamma.target;
    let target_degree = alpha.degree() as i64 + 2 * gamma.r as i64;
    // w_a = ⟨α, e_a⟩
    let mut w = vec![zero(); x.rank()];
    for (&i, c) in x.basis_of_degree(alpha.degree()).iter().zip(alpha.coeffs()) {
        if c.is_zero() {
            continue;
        }
        for (a, p) in x.pairing_row(i) {
            w[*a] += c * p;
        }
    }
    let mut dense = vec![zero(); y.rank()];
    for (&(a, b), c) in &gamma.coeffs {
        if !w[a].is_zero() {
            dense[b] += &w[a] * c;
        }
    }
    if target_degree < 0 || target_degree > y.top_degree() as i64 {
        return Ok(ClassVector::zero(y, 0));
    }
    let degree = target_degree as u32;
    let coeffs = y.basis_of_degree(degree).iter().map(|&i| dense[i].clone()).collect();
    ClassVector::from_coeffs(y, degree, coeffs)
}

/// `ᵗf ∈ Corr^{r + d_X - d_Y}(Y, X)`, swapping factors with the Koszul sign.
pub fn transpose(f: &CorrespondenceClass) -> CorrespondenceClass {
    let coeffs = f
        .coeffs
        .iter()
        .map(|(&(a, b), c)| {
            let s = sign(f.source.degree_of(a) * f.target.degree_of(b) % 2 == 1);
            ((b, a), c * s)
        })
        .collect();
    let r = f.r + f.source.dim() as i32 - f.target.dim() as i32;
    CorrespondenceClass::from_parts(&f.target, &f.source, r, coeffs)
}

/// Exterior product `f × g ∈ Corr(X × X', Y × Y')` on the product rings
/// `xx = X × X'` and `yy = Y × Y'` built by [`tensor_product`].
pub fn exterior_product(
    f: &CorrespondenceClass,
    g: &CorrespondenceClass,
    xx: &Arc<GradedBasisRing>,
    yy: &Arc<GradedBasisRing>,
) -> Result<CorrespondenceClass> {
    let (nx2, ny2) = (g.source.rank(), g.target.rank());
    if xx.rank() != f.source.rank() * nx2 || yy.rank() != f.target.rank() * ny2 {
        return Err(Error::RingMismatch("product rings do not match the factors".into()));
    }
    let mut out = Coeffs::new();
    for (&(a, a2), fc) in &f.coeffs {
        for (&(b, b2), gc) in &g.coeffs {
            // (a × a2) × (b × b2) reordered from a × a2 × b × b2 to a × b × a2 × b2
            let s = sign(f.target.degree_of(a2) * g.source.degree_of(b) % 2 == 1);
            add_to(&mut out, (a * nx2 + b, a2 * ny2 + b2), fc * gc * s);
        }
    }
    CorrespondenceClass::new(xx, yy, f.r + g.r, out)
}
