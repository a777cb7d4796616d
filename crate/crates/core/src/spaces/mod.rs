//! Constructors realizing concrete varieties as [`GradedBasisRing`]s, and the
//! closed-form dimension formulas.

mod blowup;
mod ci_model;
mod formulas;
mod product;
mod schubert;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded_ring::{BasisElement, ClassVector, GradedBasisRing, SparseVec};
use crate::linalg::Matrix;
use crate::rational::{one, zero, Coefficient, Q};

pub use blowup::blowup;
pub use ci_model::{ci_model, plane_curve_family, CiModel};
pub use formulas::{barth_range, fano_delta, rep_variety_dim, FanoDelta};
pub use product::{product_space, tensor_product};
pub use schubert::{grassmannian, lr_oracle, pieri_product, Partition};

/// A class written as `label -> coefficient`.
pub type ClassExpr = BTreeMap<String, Coefficient>;

/// Recursive description of how a ring is built. Serialized as JSON with a
/// `kind` tag, e.g. `{"kind":"grassmannian","k":2,"n":4}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpaceSpec {
    ProjectiveSpace {
        n: u32,
    },
    Grassmannian {
        k: u32,
        n: u32,
    },
    Product {
        factors: Vec<SpaceSpec>,
    },
    CiModel {
        ambient: Box<SpaceSpec>,
        fundamental_class_expr: ClassExpr,
        middle_rank: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        middle_pairing: Option<Vec<Vec<Coefficient>>>,
    },
    Blowup {
        base: Box<SpaceSpec>,
        center: Box<SpaceSpec>,
        codim: u32,
        /// Center basis label -> class of its pushforward in the base.
        center_pushforward_expr: BTreeMap<String, ClassExpr>,
        /// `c_1 .. c_{codim-1}` of the normal bundle, as center classes.
        /// The top class is forced to `i^* i_* 1`. Defaults to zero.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        normal_chern_classes: Option<Vec<ClassExpr>>,
    },
    PlaneCurveFamily {
        d: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        middle_rank: Option<u32>,
    },
}

impl SpaceSpec {
    pub fn projective(n: u32) -> Self {
        SpaceSpec::ProjectiveSpace { n }
    }

    pub fn grassmannian(k: u32, n: u32) -> Self {
        SpaceSpec::Grassmannian { k, n }
    }

    pub fn product(factors: Vec<SpaceSpec>) -> Self {
        SpaceSpec::Product { factors }
    }

    /// Degree-`d` hypersurface in `P^n` with `middle_rank` primitive classes.
    pub fn hypersurface(n: u32, d: u32, middle_rank: u32) -> Self {
        let mut xi = ClassExpr::new();
        xi.insert("h".into(), Coefficient::from(d as i64));
        SpaceSpec::CiModel {
            ambient: Box::new(SpaceSpec::projective(n)),
            fundamental_class_expr: xi,
            middle_rank,
            middle_pairing: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("space specs always serialize")
    }

    /// Builds the ring, tagging it with this spec.
    pub fn build(&self) -> Result<Arc<GradedBasisRing>> {
        let ring = match self {
            SpaceSpec::ProjectiveSpace { n } => projective_space(*n),
            SpaceSpec::Grassmannian { k, n } => grassmannian(*k, *n)?,
            SpaceSpec::Product { factors } => {
                let rings = factors.iter().map(SpaceSpec::build).collect::<Result<Vec<_>>>()?;
                product_space(&rings)?
            }
            SpaceSpec::CiModel { .. } | SpaceSpec::PlaneCurveFamily { .. } => {
                return Ok(CiModel::from_spec(self)?.ring().clone());
            }
            SpaceSpec::Blowup { base, center, codim, center_pushforward_expr, normal_chern_classes } => {
                let base_ring = base.build()?;
                let center_ring = center.build()?;
                let mut pushforward = Vec::with_capacity(center_ring.rank());
                for z in 0..center_ring.rank() {
                    let label = center_ring.label(z);
                    let expr = center_pushforward_expr.get(label).ok_or_else(|| {
                        Error::MalformedPushforward(format!("no pushforward given for center class `{label}`"))
                    })?;
                    pushforward.push(eval_dense(&base_ring, expr).map_err(|e| {
                        Error::MalformedPushforward(format!("pushforward of `{label}`: {e}"))
                    })?);
                }
                for key in center_pushforward_expr.keys() {
                    center_ring
                        .index_of(key)
                        .map_err(|_| Error::MalformedPushforward(format!("`{key}` is not a center class")))?;
                }
                let chern = normal_chern_classes
                    .iter()
                    .flatten()
                    .map(|e| eval_dense(&center_ring, e))
                    .collect::<Result<Vec<_>>>()?;
                blowup(&base_ring, &center_ring, *codim, &pushforward, &chern)?
            }
        };
        Ok(Arc::new(ring.with_spec(self.clone())))
    }
}

pub(crate) fn eval_dense(ring: &GradedBasisRing, expr: &ClassExpr) -> Result<Vec<Q>> {
    let mut v = vec![zero(); ring.rank()];
    for (label, c) in expr {
        v[ring.index_of(label)?] += &c.0;
    }
    let mut degree = None;
    for (i, c) in v.iter().enumerate() {
        if num_traits::Zero::is_zero(c) {
            continue;
        }
        let d = ring.degree_of(i);
        if degree.is_some_and(|e| e != d) {
            return Err(Error::Inhomogeneous(format!("expression mixes degrees {} and {d}", degree.unwrap())));
        }
        degree = Some(d);
    }
    Ok(v)
}

/// Evaluates a `label -> coefficient` expression as a homogeneous class.
pub fn eval_class_expr(ring: &Arc<GradedBasisRing>, expr: &ClassExpr) -> Result<ClassVector> {
    let dense = eval_dense(ring, expr)?;
    ClassVector::from_dense(ring, &dense)
}

pub(crate) fn coefficient_matrix(m: &[Vec<Coefficient>]) -> Matrix {
    m.iter().map(|r| r.iter().map(|c| c.0.clone()).collect()).collect()
}

/// `P^n` with basis `1, h, …, h^n` and `∫ h^n = 1`.
pub fn projective_space(n: u32) -> GradedBasisRing {
    let basis = (0..=n)
        .map(|i| {
            let label = match i {
                0 => "1".to_string(),
                1 => "h".to_string(),
                _ => format!("h^{i}"),
            };
            BasisElement::new(label, 2 * i)
        })
        .collect();
    let n = n as usize;
    GradedBasisRing::new(
        n as u32,
        basis,
        |i, j| Ok(if i + j <= n { vec![(i + j, one())] } else { SparseVec::new() }),
        vec![(n, one())],
    )
    .expect("projective space is well formed")
    .with_spec(SpaceSpec::projective(n as u32))
}
