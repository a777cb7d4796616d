//! Blow-up of a base along a smooth center of codimension `c`.
//!
//! With `E = P(N)` the exceptional divisor, `p: E → Z`, `j: E → Bl` and
//! `u = j^*E`, the new classes are `B(z, k) = j_*(p^*z · u^{k-1})` for
//! `1 ≤ k ≤ c-1`. Everything else follows from
//! `j^*j_*y = y·u`, `u^c = -Σ (-1)^i c_i(N) u^{c-i}` and the key formula
//! `π^*i_*z = j_*(p^*z · c_{c-1}(p^*N / O(-1)))`.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded_ring::{BasisElement, GradedBasisRing, SparseVec};
use crate::linalg::{self, Matrix};
use crate::rational::{one, sign, zero, Q};

struct Blowup<'a> {
    base: &'a GradedBasisRing,
    center: &'a GradedBasisRing,
    codim: u32,
    pushforward: &'a [Vec<Q>],
    /// `c_1 .. c_c` of the normal bundle.
    chern: Vec<Vec<Q>>,
}

/// An element of the blow-up, split into pulled-back and exceptional parts.
struct Element {
    base: Vec<Q>,
    exceptional: Vec<Vec<Q>>,
}

fn axpy(acc: &mut [Q], c: &Q, v: &[Q]) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

fn degree_of_dense(ring: &GradedBasisRing, v: &[Q]) -> Option<Option<u32>> {
    let mut deg = None;
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        match deg {
            None => deg = Some(ring.degree_of(i)),
            Some(d) if d != ring.degree_of(i) => return None,
            _ => {}
        }
    }
    Some(deg)
}

impl Blowup<'_> {
    fn push_center(&self, y: &[Q]) -> Vec<Q> {
        let mut out = vec![zero(); self.base.rank()];
        for (z, c) in y.iter().enumerate() {
            axpy(&mut out, c, &self.pushforward[z]);
        }
        out
    }

    /// `j_*(p^*y · u^k)` added to `acc` with coefficient `coef`.
    fn push_exceptional(&self, acc: &mut Element, y: &[Q], k: u32, coef: &Q) {
        if y.iter().all(Zero::is_zero) || coef.is_zero() {
            return;
        }
        let c = self.codim;
        if k + 2 <= c {
            axpy(&mut acc.exceptional[k as usize], coef, y);
            return;
        }
        if k == c - 1 {
            let s = coef * sign((c - 1) % 2 == 1);
            axpy(&mut acc.base, &s, &self.push_center(y));
        }
        // The u^c relation for k ≥ c, the key formula's tail for k = c - 1.
        let top = if k == c - 1 { c - 1 } else { c };
        for i in 1..=top {
            let yc = self.center.multiply_dense(y, &self.chern[i as usize - 1]);
            let s = -(coef * sign(i % 2 == 1));
            self.push_exceptional(acc, &yc, k - i, &s);
        }
    }
}

/// Pullback `i^*` as a base-rank list of dense center vectors, solved from
/// `∫_Z i^*x · w = ∫_X x · i_*w`.
fn pullback(base: &GradedBasisRing, center: &GradedBasisRing, pushforward: &[Vec<Q>]) -> Result<Vec<Vec<Q>>> {
    let nz = center.rank();
    let pz: Matrix = (0..nz).map(|v| (0..nz).map(|w| center.pairing(v, w)).collect()).collect();
    let inv = linalg::inverse(&pz).ok_or_else(|| Error::InvalidSpec("center has a degenerate pairing".into()))?;
    Ok((0..base.rank())
        .map(|x| {
            let mut ex = vec![zero(); base.rank()];
            ex[x] = one();
            let b: Vec<Q> = (0..nz)
                .map(|w| base.integrate_dense(&base.multiply_dense(&ex, &pushforward[w])))
                .collect();
            (0..nz).map(|v| (0..nz).map(|w| &b[w] * &inv[w][v]).sum()).collect()
        })
        .collect())
}

/// Cohomology ring of the blow-up of `base` along `center`.
///
/// `pushforward[z]` is `i_*` of the `z`-th center basis class as a dense base
/// vector; `chern` lists `c_1 .. c_{c-1}` of the normal bundle as dense center
/// vectors (missing entries are zero). `c_c` is forced to `i^*i_*1`.
pub fn blowup(
    base: &Arc<GradedBasisRing>,
    center: &Arc<GradedBasisRing>,
    codim: u32,
    pushforward: &[Vec<Q>],
    chern: &[Vec<Q>],
) -> Result<GradedBasisRing> {
    if codim == 0 {
        return Err(Error::InvalidSpec("blow-up codimension must be positive".into()));
    }
    if center.dim() + codim != base.dim() {
        return Err(Error::InvalidSpec(format!(
            "center of dimension {} cannot have codimension {codim} in a base of dimension {}",
            center.dim(),
            base.dim()
        )));
    }
    let (nx, nz) = (base.rank(), center.rank());
    if pushforward.len() != nz || pushforward.iter().any(|v| v.len() != nx) {
        return Err(Error::MalformedPushforward("one base class is needed per center basis class".into()));
    }
    for (z, v) in pushforward.iter().enumerate() {
        let want = center.degree_of(z) + 2 * codim;
        match degree_of_dense(base, v) {
            Some(Some(d)) if d == want => {}
            Some(None) => {}
            _ => {
                return Err(Error::MalformedPushforward(format!(
                    "pushforward of `{}` must be homogeneous of degree {want}",
                    center.label(z)
                )))
            }
        }
    }
    if chern.len() >= codim as usize {
        return Err(Error::InvalidSpec(format!("at most {} normal Chern classes may be given", codim - 1)));
    }
    for (i, v) in chern.iter().enumerate() {
        let want = 2 * (i as u32 + 1);
        let ok = v.len() == nz
            && match degree_of_dense(center, v) {
                Some(None) => true,
                Some(Some(d)) => d == want,
                None => false,
            };
        if !ok {
            return Err(Error::InvalidSpec(format!("normal Chern class c_{} must have degree {want}", i + 1)));
        }
    }

    let pull = pullback(base, center, pushforward)?;
    for x in 0..nx {
        let mut ex = vec![zero(); nx];
        ex[x] = one();
        for z in 0..nz {
            let mut ez = vec![zero(); nz];
            ez[z] = one();
            let restricted = center.multiply_dense(&pull[x], &ez);
            let mut lhs = vec![zero(); nx];
            for (w, c) in restricted.iter().enumerate() {
                axpy(&mut lhs, c, &pushforward[w]);
            }
            let rhs = base.multiply_dense(&ex, &pushforward[z]);
            if lhs != rhs {
                return Err(Error::MalformedPushforward(format!(
                    "projection formula fails for {} and {}",
                    base.label(x),
                    center.label(z)
                )));
            }
        }
    }
    if codim == 1 {
        return Ok(copy(base));
    }

    let mut chern_full: Vec<Vec<Q>> = chern.to_vec();
    chern_full.resize(codim as usize - 1, vec![zero(); nz]);
    chern_full.push(pullback_of(&pull, &pushforward[center.basis_of_degree(0)[0]]));

    let bl = Blowup { base, center, codim, pushforward, chern: chern_full };
    let extra = codim as usize - 1;
    let mut basis: Vec<BasisElement> = base.basis().to_vec();
    for k in 1..=extra {
        for z in 0..nz {
            basis.push(BasisElement::new(
                format!("E^{k}[{}]", center.label(z)),
                center.degree_of(z) + 2 * k as u32,
            ));
        }
    }
    let split = |i: usize| -> std::result::Result<usize, (usize, u32)> {
        if i < nx {
            Ok(i)
        } else {
            Err(((i - nx) % nz, ((i - nx) / nz) as u32 + 1))
        }
    };
    let unit_vec = |n: usize, i: usize| {
        let mut v = vec![zero(); n];
        v[i] = one();
        v
    };
    let product = |i: usize, j: usize| -> Result<SparseVec> {
        let mut acc = Element { base: vec![zero(); nx], exceptional: vec![vec![zero(); nz]; extra] };
        match (split(i), split(j)) {
            (Ok(a), Ok(b)) => return Ok(base.product(a, b).clone()),
            (Ok(x), Err((z, k))) => {
                let y = center.multiply_dense(&pull[x], &unit_vec(nz, z));
                bl.push_exceptional(&mut acc, &y, k - 1, &one());
            }
            (Err((z, k)), Ok(x)) => {
                let y = center.multiply_dense(&unit_vec(nz, z), &pull[x]);
                bl.push_exceptional(&mut acc, &y, k - 1, &one());
            }
            (Err((z, k)), Err((w, l))) => {
                let y = center.multiply_dense(&unit_vec(nz, z), &unit_vec(nz, w));
                bl.push_exceptional(&mut acc, &y, k + l - 1, &one());
            }
        }
        let mut out: SparseVec = acc.base.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for (k, row) in acc.exceptional.into_iter().enumerate() {
            for (z, c) in row.into_iter().enumerate() {
                if !c.is_zero() {
                    out.push((nx + k * nz + z, c));
                }
            }
        }
        Ok(out)
    };
    GradedBasisRing::new(base.dim(), basis, product, base.integration().clone())
}

/// `i^*` applied to a dense base vector.
fn pullback_of(pull: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    let mut out = vec![zero(); pull.first().map_or(0, Vec::len)];
    for (x, c) in v.iter().enumerate() {
        axpy(&mut out, c, &pull[x]);
    }
    out
}

fn copy(r: &GradedBasisRing) -> GradedBasisRing {
    GradedBasisRing::new(r.dim(), r.basis().to_vec(), |i, j| Ok(r.product(i, j).clone()), r.integration().clone())
        .expect("copy of a valid ring")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_ring::{integrate, multiply, ClassVector};
    use crate::rational::q;
    use crate::spaces::{projective_space, SpaceSpec};

    fn dense(n: usize, entries: &[(usize, i64)]) -> Vec<Q> {
        let mut v = vec![zero(); n];
        for &(i, c) in entries {
            v[i] = q(c);
        }
        v
    }

    #[test]
    fn blowup_of_a_point_in_the_plane() {
        let p2 = Arc::new(projective_space(2));
        let pt = Arc::new(projective_space(0));
        let bl = Arc::new(blowup(&p2, &pt, 2, &[dense(3, &[(2, 1)])], &[]).unwrap());
        assert_eq!(bl.betti_numbers(), vec![1, 0, 2, 0, 1]);
        assert!(bl.check_invariants().is_empty());
        let e = bl.class(&[("E^1[1]", one())]).unwrap();
        assert_eq!(integrate(&bl, &multiply(&bl, &e, &e).unwrap()).unwrap(), q(-1));
    }

    #[test]
    fn blowup_of_a_line_in_space() {
        let p3 = Arc::new(projective_space(3));
        let p1 = Arc::new(projective_space(1));
        let push = [dense(4, &[(2, 1)]), dense(4, &[(3, 1)])];
        let bl = Arc::new(blowup(&p3, &p1, 2, &push, &[dense(2, &[(1, 2)])]).unwrap());
        assert_eq!(bl.betti_numbers(), vec![1, 0, 2, 0, 2, 0, 1]);
        assert!(bl.check_invariants().is_empty());
        let e = bl.class(&[("E^1[1]", one())]).unwrap();
        let e3 = multiply(&bl, &multiply(&bl, &e, &e).unwrap(), &e).unwrap();
        // E^3 = -deg N_{L/P^3}
        assert_eq!(integrate(&bl, &e3).unwrap(), q(-2));
    }

    #[test]
    fn codimension_one_changes_nothing() {
        let p2 = Arc::new(projective_space(2));
        let p1 = Arc::new(projective_space(1));
        let bl = blowup(&p2, &p1, 1, &[dense(3, &[(1, 1)]), dense(3, &[(2, 1)])], &[]).unwrap();
        assert_eq!(bl, *p2);
    }

    #[test]
    fn malformed_pushforwards() {
        let p2 = Arc::new(projective_space(2));
        let pt = Arc::new(projective_space(0));
        let r = blowup(&p2, &pt, 2, &[dense(3, &[(1, 1)])], &[]);
        assert!(matches!(r, Err(Error::MalformedPushforward(_))));
        // wrong degree of i_*h for a line in P^3
        let p3 = Arc::new(projective_space(3));
        let p1 = Arc::new(projective_space(1));
        let r = blowup(&p3, &p1, 2, &[dense(4, &[(2, 1)]), dense(4, &[(2, 1)])], &[]);
        assert!(matches!(r, Err(Error::MalformedPushforward(_))));
        // a line whose point class pushes forward to twice a point
        let r = blowup(&p3, &p1, 2, &[dense(4, &[(2, 1)]), dense(4, &[(3, 2)])], &[]);
        assert!(matches!(r, Err(Error::MalformedPushforward(_))));
    }

    #[test]
    fn spec_round_trip() {
        let spec = SpaceSpec::from_json(
            r#"{"kind":"blowup","base":{"kind":"projective_space","n":3},
                "center":{"kind":"projective_space","n":1},"codim":2,
                "center_pushforward_expr":{"1":{"h^2":1},"h":{"h^3":1}},
                "normal_chern_classes":[{"h":2}]}"#,
        )
        .unwrap();
        let r = spec.build().unwrap();
        assert_eq!(r.spec(), Some(&spec));
        assert_eq!(r.betti_numbers(), vec![1, 0, 2, 0, 2, 0, 1]);
        let _ = ClassVector::unit(&r);
    }
}
