use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded_ring::{same_ring, GradedBasisRing};
use crate::rational::{one, q, Q};
use crate::spaces::{projective_space, SpaceSpec};

use super::{bg_ring, is_zero_poly, BgRing, GroupSpec, SPoly};

/// `{"base": …, "group": …, "N": …, "weights"?: […]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivariantModelSpec {
    pub base: SpaceSpec,
    pub group: GroupSpec,
    #[serde(rename = "N")]
    pub truncation: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<i64>>,
}

impl EquivariantModelSpec {
    pub fn build(&self) -> Result<EquivariantModel> {
        let model = match &self.weights {
            None => equivariant_trivial_action(&self.base.build()?, &self.group, self.truncation)?,
            Some(w) => {
                if self.group != GroupSpec::torus(1) {
                    return Err(Error::UnsupportedAction(format!(
                        "weighted actions are modeled for a rank-1 torus only, not {:?}",
                        self.group
                    )));
                }
                let expected = SpaceSpec::projective(w.len().saturating_sub(1) as u32);
                if self.base != expected {
                    return Err(Error::UnsupportedAction(format!(
                        "{} weights act on P^{}, not on the given base",
                        w.len(),
                        w.len().saturating_sub(1)
                    )));
                }
                equivariant_projective_torus(w, self.truncation)?
            }
        };
        Ok(EquivariantModel { spec: Some(self.clone()), ..model })
    }

    pub fn with_truncation(&self, n: u32) -> Self {
        EquivariantModelSpec { truncation: n, ..self.clone() }
    }
}

/// Free `S_{≤N}`-module on the basis of a base ring, with `S`-valued
/// structure constants and integration.
#[derive(Clone, Debug)]
pub struct EquivariantModel {
    base: Arc<GradedBasisRing>,
    bg: Arc<BgRing>,
    weights: Option<Vec<i64>>,
    /// `products[i * n + j]` = `e_i e_j` as `(basis index, coefficient)` pairs.
    products: Vec<Vec<(usize, SPoly)>>,
    integration: Vec<SPoly>,
    spec: Option<EquivariantModelSpec>,
}

impl PartialEq for EquivariantModel {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.base, &other.base)
            && self.bg == other.bg
            && self.products == other.products
            && self.integration == other.integration
    }
}

/// `R_G = X ⊗ S_{≤N}` with constant structure constants.
pub fn equivariant_trivial_action(x: &Arc<GradedBasisRing>, group: &GroupSpec, n: u32) -> Result<EquivariantModel> {
    let bg = Arc::new(bg_ring(group, n)?);
    let r = x.rank();
    let mut products = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            products.push(x.product(i, j).iter().map(|(k, c)| (*k, bg.constant(c.clone()))).collect());
        }
    }
    let mut integration = vec![bg.zero(); r];
    for (k, c) in x.integration() {
        integration[*k] = bg.constant(c.clone());
    }
    Ok(EquivariantModel { base: x.clone(), bg, weights: None, products, integration, spec: None })
}

/// Elementary symmetric polynomials `e_0 .. e_m` of integer weights.
fn elementary(weights: &[i64]) -> Vec<Q> {
    let mut e = vec![one()];
    for &w in weights {
        let mut next = e.clone();
        next.push(Q::zero());
        for i in 1..next.len() {
            next[i] += &e[i - 1] * q(w);
        }
        e = next;
    }
    e
}

/// `H_T(P^{m-1})` for a rank-1 torus acting with weights `χ`:
/// `S[h] / Π (h + χ_i t)`, truncated in `t`-degree.
pub fn equivariant_projective_torus(weights: &[i64], n: u32) -> Result<EquivariantModel> {
    let m = weights.len();
    if m == 0 {
        return Err(Error::InvalidSpec("at least one weight is needed".into()));
    }
    let base = Arc::new(projective_space(m as u32 - 1));
    let bg = Arc::new(bg_ring(&GroupSpec::torus(1), n)?);
    let e = elementary(weights);
    // normal[k] = h^k as an element over the basis 1, h, …, h^{m-1}
    let mut normal: Vec<Vec<SPoly>> = Vec::with_capacity(2 * m);
    for k in 0..2 * m - 1 {
        if k < m {
            let mut v = vec![bg.zero(); m];
            v[k] = bg.constant(one());
            normal.push(v);
            continue;
        }
        // h^k = -Σ_{i=1}^{m} e_i t^i h^{k-i}
        let mut v = vec![bg.zero(); m];
        for i in 1..=m {
            let coef = bg.monomial(&[i as u32], -e[i].clone());
            if is_zero_poly(&coef) {
                continue;
            }
            for (a, s) in normal[k - i].iter().enumerate() {
                let prod = bg.mul(&coef, s);
                for (x, y) in v[a].iter_mut().zip(prod) {
                    *x += y;
                }
            }
        }
        normal.push(v);
    }
    let mut products = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            products.push(
                normal[i + j]
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| !is_zero_poly(s))
                    .map(|(k, s)| (k, s.clone()))
                    .collect(),
            );
        }
    }
    let mut integration = vec![bg.zero(); m];
    integration[m - 1] = bg.constant(one());
    Ok(EquivariantModel { base, bg, weights: Some(weights.to_vec()), products, integration, spec: None })
}

impl EquivariantModel {
    pub fn base(&self) -> &Arc<GradedBasisRing> {
        &self.base
    }

    pub fn bg(&self) -> &Arc<BgRing> {
        &self.bg
    }

    pub fn truncation(&self) -> u32 {
        self.bg.truncation()
    }

    pub fn weights(&self) -> Option<&[i64]> {
        self.weights.as_deref()
    }

    pub fn spec(&self) -> Option<&EquivariantModelSpec> {
        self.spec.as_ref()
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, SPoly)] {
        &self.products[i * self.rank() + j]
    }

    pub fn integration(&self, i: usize) -> &SPoly {
        &self.integration[i]
    }

    /// `∫_G e_i e_j`.
    pub fn pairing(&self, i: usize, j: usize) -> SPoly {
        let mut out = self.bg.zero();
        for (k, s) in self.product(i, j) {
            let v = self.bg.mul(s, &self.integration[*k]);
            for (x, y) in out.iter_mut().zip(v) {
                *x += y;
            }
        }
        out
    }

    /// Product of two elements given as `S`-coefficient vectors over the base basis.
    pub fn multiply(&self, a: &[SPoly], b: &[SPoly]) -> Vec<SPoly> {
        let mut out = vec![self.bg.zero(); self.rank()];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !is_zero_poly(x)) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !is_zero_poly(y)) {
                let xy = self.bg.mul(x, y);
                for (k, s) in self.product(i, j) {
                    let v = self.bg.mul(&xy, s);
                    for (o, w) in out[*k].iter_mut().zip(v) {
                        *o += w;
                    }
                }
            }
        }
        out
    }

    /// Number of elements `m · e` of total degree `p`, for `p = 0..=N + 2d`.
    pub fn ranks_by_degree(&self) -> Vec<usize> {
        let top = (self.truncation() + self.base.top_degree()) as usize;
        let mut out = vec![0; top + 1];
        for s in 0..self.bg.rank() {
            for e in 0..self.rank() {
                out[(self.bg.degree(s) + self.base.degree_of(e)) as usize] += 1;
            }
        }
        out
    }

    /// Violations of associativity and graded commutativity, for tests.
    pub fn check_invariants(&self) -> Vec<String> {
        let n = self.rank();
        let basis = |i: usize| {
            let mut v = vec![self.bg.zero(); n];
            v[i] = self.bg.constant(one());
            v
        };
        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let ij = self.multiply(&basis(i), &basis(j));
                let ji = self.multiply(&basis(j), &basis(i));
                let odd = self.base.degree_of(i) * self.base.degree_of(j) % 2 == 1;
                let ji: Vec<SPoly> =
                    if odd { ji.into_iter().map(|s| s.into_iter().map(|x| -x).collect()).collect() } else { ji };
                if ij != ji {
                    bad.push(format!("commutativity fails for {}, {}", self.base.label(i), self.base.label(j)));
                }
                for k in 0..n {
                    let left = self.multiply(&ij, &basis(k));
                    let right = self.multiply(&basis(i), &self.multiply(&basis(j), &basis(k)));
                    if left != right {
                        bad.push(format!(
                            "associativity fails for {}, {}, {}",
                            self.base.label(i),
                            self.base.label(j),
                            self.base.label(k)
                        ));
                    }
                }
            }
        }
        bad
    }
}
