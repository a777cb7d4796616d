use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Zero;

use crate::correspondences::CorrespondenceClass;
use crate::error::{Error, Result};
use crate::graded_ring::same_ring;
use crate::kunneth::{CheckResult, ProjectorSet, Remainder, VerificationReport};
use crate::linalg::{self, Matrix};
use crate::rational::{format_rational, one, Q};

use super::{is_zero_poly, BgRing, EquivariantModel, EquivariantModelSpec, SPoly};

/// Square matrix with entries in the truncated `S`.
type SMatrix = Vec<Vec<SPoly>>;

fn s_zeros(bg: &BgRing, n: usize) -> SMatrix {
    vec![vec![bg.zero(); n]; n]
}

fn s_identity(bg: &BgRing, n: usize) -> SMatrix {
    let mut m = s_zeros(bg, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = bg.constant(one());
    }
    m
}

fn s_constant(bg: &BgRing, m: &Matrix) -> SMatrix {
    m.iter().map(|row| row.iter().map(|c| bg.constant(c.clone())).collect()).collect()
}

fn s_mul(bg: &BgRing, a: &SMatrix, b: &SMatrix) -> SMatrix {
    let n = a.len();
    let mut out = s_zeros(bg, n);
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if is_zero_poly(aik) {
                continue;
            }
            for j in 0..n {
                if is_zero_poly(&b[k][j]) {
                    continue;
                }
                for (o, x) in out[i][j].iter_mut().zip(bg.mul(aik, &b[k][j])) {
                    *o += x;
                }
            }
        }
    }
    out
}

fn s_combine(a: &SMatrix, b: &SMatrix, f: impl Fn(&Q, &Q) -> Q) -> SMatrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.iter().zip(y).map(|(s, t)| f(s, t)).collect()).collect())
        .collect()
}

fn s_add(a: &SMatrix, b: &SMatrix) -> SMatrix {
    s_combine(a, b, |s, t| s + t)
}

fn s_sub(a: &SMatrix, b: &SMatrix) -> SMatrix {
    s_combine(a, b, |s, t| s - t)
}

fn s_scale(a: &SMatrix, c: &Q) -> SMatrix {
    a.iter().map(|r| r.iter().map(|x| x.iter().map(|s| s * c).collect()).collect()).collect()
}

fn constant_part(a: &SMatrix) -> Matrix {
    a.iter().map(|r| r.iter().map(|x| x[0].clone()).collect()).collect()
}

/// Inverse of a matrix whose constant part is invertible: `A = A₀(I + N)`
/// with `N` nilpotent in `S`, so the Neumann series terminates.
fn s_inverse(bg: &BgRing, a: &SMatrix) -> Option<SMatrix> {
    let n = a.len();
    let inv0 = s_constant(bg, &linalg::inverse(&constant_part(a))?);
    let nil = s_sub(&s_mul(bg, &inv0, a), &s_identity(bg, n));
    let mut term = s_identity(bg, n);
    let mut sum = s_identity(bg, n);
    let mut odd = false;
    loop {
        term = s_mul(bg, &term, &nil);
        odd = !odd;
        if term.iter().flatten().all(|x| is_zero_poly(x)) {
            break;
        }
        sum = if odd { s_sub(&sum, &term) } else { s_add(&sum, &term) };
    }
    Some(s_mul(bg, &sum, &inv0))
}

/// An equivariant self-correspondence: the coefficient of `e_a × e_b` is an
/// element of the truncated `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqCorr {
    entries: SMatrix,
}

impl EqCorr {
    pub fn entry(&self, a: usize, b: usize) -> &SPoly {
        &self.entries[a][b]
    }

    /// The image under `S → Q` sending every generator to zero.
    pub fn restrict(&self, model: &EquivariantModel) -> Result<CorrespondenceClass> {
        CorrespondenceClass::from_matrix(model.base(), model.base(), 0, &constant_part(&self.entries))
    }

    /// Nonzero coefficients as `(label, label, S-monomial, coefficient)`.
    pub fn terms(&self, model: &EquivariantModel) -> Vec<(String, String, String, Q)> {
        let base = model.base();
        let bg = model.bg();
        let mut out = Vec::new();
        for (a, row) in self.entries.iter().enumerate() {
            for (b, s) in row.iter().enumerate() {
                for (m, c) in s.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    out.push((base.label(a).to_string(), base.label(b).to_string(), bg.label(m), c.clone()));
                }
            }
        }
        out
    }

    fn describe(&self, model: &EquivariantModel) -> String {
        let terms: Vec<String> = self
            .terms(model)
            .into_iter()
            .map(|(a, b, m, c)| format!("{}*{m}*{a} x {b}", format_rational(&c)))
            .collect();
        terms.join(" + ")
    }

    fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|x| is_zero_poly(x))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqMember {
    pub name: String,
    pub degrees: BTreeSet<u32>,
    pub class: EqCorr,
}

/// Lifted projector family on an equivariant model.
#[derive(Clone, Debug)]
pub struct EqProjectorSet {
    model: Arc<EquivariantModel>,
    members: Vec<EqMember>,
    complete: bool,
}

/// The equivariant pairing `P_T[i][j] = ∫_G e_i e_j`.
fn pairing(model: &EquivariantModel) -> SMatrix {
    let n = model.rank();
    (0..n).map(|i| (0..n).map(|j| model.pairing(i, j)).collect()).collect()
}

/// Newton iteration `e ← 3e² - 2e³` towards the idempotent lifting the
/// constant part. Each step doubles the `S`-order of `e² - e`.
fn newton_idempotent(bg: &BgRing, mut e: SMatrix) -> SMatrix {
    let three = Q::from_integer(3.into());
    let two = Q::from_integer(2.into());
    loop {
        let e2 = s_mul(bg, &e, &e);
        if e2 == e {
            return e;
        }
        let e3 = s_mul(bg, &e2, &e);
        e = s_sub(&s_scale(&e2, &three), &s_scale(&e3, &two));
    }
}

impl EqProjectorSet {
    pub fn model(&self) -> &Arc<EquivariantModel> {
        &self.model
    }

    pub fn members(&self) -> &[EqMember] {
        &self.members
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn get(&self, name: &str) -> Option<&EqMember> {
        self.members.iter().find(|m| m.name == name)
    }

    /// `g ∘ f = F · P_T · G`.
    pub fn compose(&self, f: &EqCorr, g: &EqCorr) -> EqCorr {
        let bg = self.model.bg();
        EqCorr { entries: s_mul(bg, &s_mul(bg, &f.entries, &pairing(&self.model)), &g.entries) }
    }

    /// The equivariant diagonal `P_T⁻¹`.
    pub fn diagonal(&self) -> Result<EqCorr> {
        s_inverse(self.model.bg(), &pairing(&self.model))
            .map(|entries| EqCorr { entries })
            .ok_or_else(|| Error::DegeneratePairing { degree: 0, complement: self.model.base().top_degree() })
    }

    /// Restriction to the base ring, sending every generator of `S` to zero.
    pub fn restrict(&self) -> Result<ProjectorSet> {
        let ring = self.model.base();
        let mut projectors = BTreeMap::new();
        let mut remainder = None;
        for m in &self.members {
            let class = m.class.restrict(&self.model)?;
            match m.name.parse::<u32>() {
                Ok(i) => {
                    projectors.insert(i, class);
                }
                Err(_) => remainder = Some(Remainder { degrees: m.degrees.clone(), class }),
            }
        }
        ProjectorSet::new(ring, projectors, remainder, self.complete)
    }
}

/// Lifts every member of `set` to the model: the constant lift `π ⊗ 1` is
/// corrected to an idempotent and orthogonalized against the members before
/// it, all in the endomorphism form `P_T · Γ`. For a trivial action the
/// corrections vanish and the lift is `π ⊗ 1` on the nose.
pub fn lift_projectors(set: &ProjectorSet, model: &Arc<EquivariantModel>) -> Result<EqProjectorSet> {
    if !same_ring(set.ring(), model.base()) {
        return Err(Error::RingMismatch("the projector set does not live on the base of the model".into()));
    }
    let bg = model.bg();
    let n = model.rank();
    let p = pairing(model);
    let delta = s_inverse(bg, &p).ok_or_else(|| Error::DegeneratePairing { degree: 0, complement: 0 })?;
    let mut taken = s_zeros(bg, n);
    let mut members = Vec::new();
    for m in set.members() {
        let e = s_mul(bg, &p, &s_constant(bg, &m.class.to_matrix()));
        let e = newton_idempotent(bg, e);
        let q = s_sub(&s_identity(bg, n), &taken);
        let x = s_mul(bg, &s_mul(bg, &q, &e), &q);
        let f = if x == e { e } else { newton_idempotent(bg, x) };
        taken = s_add(&taken, &f);
        members.push(EqMember {
            name: m.name.clone(),
            degrees: m.degrees.clone(),
            class: EqCorr { entries: s_mul(bg, &delta, &f) },
        });
    }
    Ok(EqProjectorSet { model: model.clone(), members, complete: set.is_complete() })
}

fn eq_check(check: &str, indices: Vec<String>, diff: &EqCorr, model: &EquivariantModel) -> CheckResult {
    CheckResult {
        check: check.into(),
        indices,
        pass: diff.is_zero(),
        residual_class: None,
        detail: (!diff.is_zero()).then(|| format!("residual: {}", diff.describe(model))),
    }
}

/// Idempotence, orthogonality and (when claimed) completeness, exactly in
/// every `S`-degree up to the truncation.
pub fn verify_equivariant(set: &EqProjectorSet) -> VerificationReport {
    let model = &set.model;
    let mut checks = Vec::new();
    for m in &set.members {
        let sq = set.compose(&m.class, &m.class);
        let diff = EqCorr { entries: s_sub(&sq.entries, &m.class.entries) };
        checks.push(eq_check("idempotence", vec![m.name.clone()], &diff, model));
    }
    for a in &set.members {
        for b in &set.members {
            if a.name != b.name {
                let c = set.compose(&a.class, &b.class);
                checks.push(eq_check("orthogonality", vec![a.name.clone(), b.name.clone()], &c, model));
            }
        }
    }
    if set.complete {
        let names = set.members.iter().map(|m| m.name.clone()).collect();
        match set.diagonal() {
            Ok(d) => {
                let sum = set.members.iter().fold(d.entries.clone(), |acc, m| s_sub(&acc, &m.class.entries));
                checks.push(eq_check("completeness", names, &EqCorr { entries: sum }, model));
            }
            Err(e) => checks.push(CheckResult {
                check: "completeness".into(),
                indices: names,
                pass: false,
                residual_class: None,
                detail: Some(e.to_string()),
            }),
        }
    }
    let all_pass = checks.iter().all(|c| c.pass);
    VerificationReport { all_pass, checks }
}

/// Whether two lifts agree in every coefficient of `S`-degree at most `d`.
/// Monomials are matched by exponent vector, so the truncations may differ.
pub fn lifted_agree(a: &EqProjectorSet, b: &EqProjectorSet, d: u32) -> bool {
    let (ba, bb) = (a.model.bg(), b.model.bg());
    if ba.group() != bb.group() || !same_ring(a.model.base(), b.model.base()) || a.members.len() != b.members.len() {
        return false;
    }
    let low = |bg: &BgRing, s: &SPoly| -> BTreeMap<Vec<u32>, Q> {
        s.iter()
            .enumerate()
            .filter(|(i, c)| bg.degree(*i) <= d && !c.is_zero())
            .map(|(i, c)| (bg.exponents(i).to_vec(), c.clone()))
            .collect()
    };
    a.members.iter().zip(&b.members).all(|(x, y)| {
        x.name == y.name
            && x.class.entries.iter().flatten().zip(y.class.entries.iter().flatten()).all(|(s, t)| low(ba, s) == low(bb, t))
    })
}

/// Lifts `set` at truncations `n1 < n2` and compares coefficients of
/// `S`-degree at most `d`.
pub fn stabilization_check(set: &ProjectorSet, spec: &EquivariantModelSpec, d: u32, n1: u32, n2: u32) -> Result<bool> {
    if d > n1 || n1 >= n2 {
        return Err(Error::PreconditionViolated(format!("need D <= N1 < N2, got D={d}, N1={n1}, N2={n2}")));
    }
    let a = lift_projectors(set, &Arc::new(spec.with_truncation(n1).build()?))?;
    let b = lift_projectors(set, &Arc::new(spec.with_truncation(n2).build()?))?;
    Ok(lifted_agree(&a, &b, d))
}
