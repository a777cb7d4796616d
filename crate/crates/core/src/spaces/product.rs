use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded_ring::{BasisElement, GradedBasisRing};
use crate::rational::sign;

/// `X × Y` with basis `a x b` (index `a * |Y| + b`), the Koszul rule
/// `(a×b)(c×d) = (-1)^{|b||c|} (ac)×(bd)` and `∫(a×b) = ∫a · ∫b`.
pub fn tensor_product(x: &GradedBasisRing, y: &GradedBasisRing) -> Result<GradedBasisRing> {
    let ny = y.rank();
    let basis = x
        .basis()
        .iter()
        .flat_map(|a| {
            y.basis()
                .iter()
                .map(move |b| BasisElement::new(format!("{} x {}", a.label, b.label), a.degree + b.degree))
        })
        .collect();
    let mut integration = Vec::new();
    for (a, ca) in x.integration() {
        for (b, cb) in y.integration() {
            integration.push((a * ny + b, ca * cb));
        }
    }
    integration.sort_by_key(|(k, _)| *k);
    GradedBasisRing::new(
        x.dim() + y.dim(),
        basis,
        |i, j| {
            let (a, b) = (i / ny, i % ny);
            let (c, d) = (j / ny, j % ny);
            let s = sign(y.degree_of(b) * x.degree_of(c) % 2 == 1);
            let mut out = Vec::new();
            for (ac, u) in x.product(a, c) {
                for (bd, v) in y.product(b, d) {
                    out.push((ac * ny + bd, &s * u * v));
                }
            }
            Ok(out)
        },
        integration,
    )
}

/// Product of one or more factors, associated to the left.
pub fn product_space(factors: &[Arc<GradedBasisRing>]) -> Result<GradedBasisRing> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::InvalidSpec("a product needs at least one factor".into()))?;
    let mut acc: Option<GradedBasisRing> = None;
    for f in rest {
        let left: &GradedBasisRing = acc.as_ref().unwrap_or(first);
        acc = Some(tensor_product(left, f)?);
    }
    Ok(acc.unwrap_or_else(|| clone_ring(first)))
}

fn clone_ring(r: &GradedBasisRing) -> GradedBasisRing {
    GradedBasisRing::new(
        r.dim(),
        r.basis().to_vec(),
        |i, j| Ok(r.product(i, j).clone()),
        r.integration().clone(),
    )
    .expect("copy of a valid ring")
}
