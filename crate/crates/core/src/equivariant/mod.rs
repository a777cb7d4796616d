//! Bounded-degree equivariant models.
//!
//! `BG` is replaced by the truncation `S_{≤N}` of its cohomology ring
//! (polynomials in degree-2 generators for a torus, in Chern classes for
//! `GL_n`). An equivariant model is a free `S_{≤N}`-module on the basis of the
//! base ring with `S`-valued structure constants and integration. Every
//! identity is exact modulo `S`-degree above `N`.

mod bottom_weight;
mod lift;
mod model;

use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, one, zero, Q};

pub use bottom_weight::{bottom_weight_restriction, RingSurjection};
pub use lift::{
    lift_projectors, lifted_agree, stabilization_check, verify_equivariant, EqCorr, EqMember, EqProjectorSet,
};
pub use model::{equivariant_projective_torus, equivariant_trivial_action, EquivariantModel, EquivariantModelSpec};

/// Truncated polynomial over the monomial basis of a [`BgRing`].
pub type SPoly = Vec<Q>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    MultiplicativeTorus { rank: u32 },
    GeneralLinear { n: u32 },
}

impl GroupSpec {
    pub fn torus(rank: u32) -> Self {
        GroupSpec::MultiplicativeTorus { rank }
    }

    pub fn general_linear(n: u32) -> Self {
        GroupSpec::GeneralLinear { n }
    }

    /// Generator names and degrees.
    fn generators(&self) -> Result<Vec<(String, u32)>> {
        match *self {
            GroupSpec::MultiplicativeTorus { rank: 0 } | GroupSpec::GeneralLinear { n: 0 } => {
                Err(Error::InvalidSpec("group rank must be at least 1".into()))
            }
            GroupSpec::MultiplicativeTorus { rank: 1 } => Ok(vec![("t".into(), 2)]),
            GroupSpec::MultiplicativeTorus { rank } => Ok((1..=rank).map(|i| (format!("t{i}"), 2)).collect()),
            GroupSpec::GeneralLinear { n } => Ok((1..=n).map(|i| (format!("c{i}"), 2 * i)).collect()),
        }
    }
}

/// `H^*(BG)` truncated to monomials of degree at most `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BgRing {
    group: GroupSpec,
    truncation: u32,
    generators: Vec<(String, u32)>,
    monomials: Vec<Vec<u32>>,
    degrees: Vec<u32>,
    index: HashMap<Vec<u32>, usize>,
    times: Vec<Option<usize>>,
}

fn enumerate(gens: &[(String, u32)], budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() == gens.len() {
        out.push(prefix.clone());
        return;
    }
    let deg = gens[prefix.len()].1;
    for e in 0..=budget / deg {
        prefix.push(e);
        enumerate(gens, budget - e * deg, prefix, out);
        prefix.pop();
    }
}

/// Truncated `H^*(BG)` with all monomials of degree `≤ n`.
pub fn bg_ring(group: &GroupSpec, n: u32) -> Result<BgRing> {
    if n % 2 == 1 {
        return Err(Error::InvalidSpec(format!("truncation degree must be even, got {n}")));
    }
    let generators = group.generators()?;
    let mut monomials = Vec::new();
    enumerate(&generators, n, &mut Vec::new(), &mut monomials);
    let degree = |m: &[u32]| m.iter().zip(&generators).map(|(e, (_, d))| e * d).sum::<u32>();
    monomials.sort_by(|a, b| degree(a).cmp(&degree(b)).then_with(|| b.cmp(a)));
    let degrees: Vec<u32> = monomials.iter().map(|m| degree(m)).collect();
    let index: HashMap<Vec<u32>, usize> = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let r = monomials.len();
    let mut times = vec![None; r * r];
    for i in 0..r {
        for j in 0..r {
            let sum: Vec<u32> = monomials[i].iter().zip(&monomials[j]).map(|(a, b)| a + b).collect();
            times[i * r + j] = index.get(&sum).copied();
        }
    }
    Ok(BgRing { group: group.clone(), truncation: n, generators, monomials, degrees, index, times })
}

impl BgRing {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn rank(&self) -> usize {
        self.monomials.len()
    }

    pub fn exponents(&self, i: usize) -> &[u32] {
        &self.monomials[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn index_of_exponents(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn label(&self, i: usize) -> String {
        let parts: Vec<String> = self.monomials[i]
            .iter()
            .zip(&self.generators)
            .filter(|(e, _)| **e > 0)
            .map(|(e, (g, _))| if *e == 1 { g.clone() } else { format!("{g}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        (0..self.rank())
            .find(|&i| self.label(i) == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Number of monomials in each degree `0..=N`.
    pub fn ranks_by_degree(&self) -> Vec<usize> {
        let mut out = vec![0; self.truncation as usize + 1];
        for &d in &self.degrees {
            out[d as usize] += 1;
        }
        out
    }

    /// Index of the product of two monomials, `None` past the truncation.
    pub fn times(&self, i: usize, j: usize) -> Option<usize> {
        self.times[i * self.rank() + j]
    }

    pub fn zero(&self) -> SPoly {
        vec![zero(); self.rank()]
    }

    pub fn constant(&self, c: Q) -> SPoly {
        let mut v = self.zero();
        v[0] = c;
        v
    }

    /// `c · m` for the monomial with exponents `e`, zero past the truncation.
    pub fn monomial(&self, e: &[u32], c: Q) -> SPoly {
        let mut v = self.zero();
        if let Some(i) = self.index_of_exponents(e) {
            v[i] = c;
        }
        v
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> SPoly {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                if let Some(k) = self.times(i, j) {
                    out[k] += x * y;
                }
            }
        }
        out
    }

    /// Inverse of a polynomial with invertible constant term; the positive
    /// part is nilpotent so the geometric series terminates.
    pub fn inverse(&self, a: &[Q]) -> Option<SPoly> {
        if a[0].is_zero() {
            return None;
        }
        let c = one() / &a[0];
        let mut n: SPoly = a.iter().map(|x| -(x * &c)).collect();
        n[0] = zero();
        let mut term = self.constant(one());
        let mut sum = self.constant(one());
        loop {
            term = self.mul(&term, &n);
            if term.iter().all(Zero::is_zero) {
                break;
            }
            for (s, t) in sum.iter_mut().zip(&term) {
                *s += t;
            }
        }
        Some(sum.into_iter().map(|x| x * &c).collect())
    }

    pub fn format(&self, a: &[Q]) -> String {
        let parts: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if i == 0 { format_rational(c) } else { format!("{}*{}", format_rational(c), self.label(i)) })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

pub(crate) fn is_zero_poly(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}
