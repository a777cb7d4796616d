//! JSON documents for rings, correspondences, projector sets and lifts.
//! Rationals are written as canonical `"p/q"` strings, so writing is
//! deterministic and reading back gives an equal value.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::correspondences::CorrespondenceClass;
use crate::equivariant::{EqProjectorSet, EquivariantModelSpec};
use crate::error::{Error, Result};
use crate::graded_ring::{finish_sparse, push_sparse, BasisElement, GradedBasisRing};
use crate::kunneth::{ProjectorSet, Remainder};
use crate::rational::Coefficient;
use crate::spaces::SpaceSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub label: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub value: Vec<(String, Coefficient)>,
}

/// A ring written out in full.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<SpaceSpec>,
    pub dim: u32,
    pub basis: Vec<BasisEntry>,
    /// Nonzero products only.
    pub products: Vec<ProductEntry>,
    pub integration: Vec<(String, Coefficient)>,
}

/// A ring given either by its construction or in full.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingRef {
    Spec(SpaceSpec),
    Explicit(Box<RingFile>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceFile {
    pub source: RingRef,
    pub target: RingRef,
    pub r: i32,
    pub terms: Vec<(String, String, Coefficient)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedTerms {
    pub index: u32,
    pub terms: Vec<(String, String, Coefficient)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemainderFile {
    pub degrees: BTreeSet<u32>,
    pub terms: Vec<(String, String, Coefficient)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectorFile {
    pub space: RingRef,
    pub complete: bool,
    pub projectors: Vec<IndexedTerms>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub remainder: Option<RemainderFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedMember {
    pub name: String,
    pub degrees: BTreeSet<u32>,
    /// `(label, label, S-monomial, coefficient)`.
    pub terms: Vec<(String, String, String, Coefficient)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftFile {
    pub model: Option<EquivariantModelSpec>,
    pub complete: bool,
    pub members: Vec<LiftedMember>,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents always serialize")
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))
}

pub fn ring_file(ring: &GradedBasisRing) -> RingFile {
    let label = |i: usize| ring.label(i).to_string();
    let mut products = Vec::new();
    for i in 0..ring.rank() {
        for j in 0..ring.rank() {
            let v = ring.product(i, j);
            if !v.is_empty() {
                products.push(ProductEntry {
                    left: label(i),
                    right: label(j),
                    value: v.iter().map(|(k, c)| (label(*k), Coefficient(c.clone()))).collect(),
                });
            }
        }
    }
    RingFile {
        spec: ring.spec().cloned(),
        dim: ring.dim(),
        basis: ring.basis().iter().map(|b| BasisEntry { label: b.label.clone(), degree: b.degree }).collect(),
        products,
        integration: ring.integration().iter().map(|(k, c)| (label(*k), Coefficient(c.clone()))).collect(),
    }
}

pub fn ring_from_file(file: &RingFile) -> Result<Arc<GradedBasisRing>> {
    let index: HashMap<&str, usize> = file.basis.iter().enumerate().map(|(i, b)| (b.label.as_str(), i)).collect();
    let lookup = |l: &str| index.get(l).copied().ok_or_else(|| Error::UnknownLabel(l.to_string()));
    let mut table: HashMap<(usize, usize), Vec<(usize, Coefficient)>> = HashMap::new();
    for p in &file.products {
        let key = (lookup(&p.left)?, lookup(&p.right)?);
        let value = p.value.iter().map(|(l, c)| Ok((lookup(l)?, c.clone()))).collect::<Result<Vec<_>>>()?;
        if table.insert(key, value).is_some() {
            return Err(Error::Serialization(format!("product {} * {} is given twice", p.left, p.right)));
        }
    }
    let mut integration = HashMap::new();
    for (l, c) in &file.integration {
        push_sparse(&mut integration, lookup(l)?, c.0.clone());
    }
    let basis = file.basis.iter().map(|b| BasisElement::new(b.label.clone(), b.degree)).collect();
    let ring = GradedBasisRing::new(
        file.dim,
        basis,
        |i, j| {
            let mut v = HashMap::new();
            for (k, c) in table.get(&(i, j)).into_iter().flatten() {
                push_sparse(&mut v, *k, c.0.clone());
            }
            Ok(finish_sparse(v))
        },
        finish_sparse(integration),
    )?;
    Ok(Arc::new(match &file.spec {
        Some(s) => ring.with_spec(s.clone()),
        None => ring,
    }))
}

/// By construction when the ring remembers one, otherwise in full.
pub fn ring_ref(ring: &GradedBasisRing) -> RingRef {
    match ring.spec() {
        Some(s) => RingRef::Spec(s.clone()),
        None => RingRef::Explicit(Box::new(ring_file(ring))),
    }
}

pub fn resolve(r: &RingRef) -> Result<Arc<GradedBasisRing>> {
    match r {
        RingRef::Spec(s) => s.build(),
        RingRef::Explicit(f) => ring_from_file(f),
    }
}

fn terms(c: &CorrespondenceClass) -> Vec<(String, String, Coefficient)> {
    c.terms().into_iter().map(|(a, b, x)| (a, b, Coefficient(x))).collect()
}

fn class_from_terms(
    source: &Arc<GradedBasisRing>,
    target: &Arc<GradedBasisRing>,
    r: i32,
    terms: &[(String, String, Coefficient)],
) -> Result<CorrespondenceClass> {
    let borrowed: Vec<(&str, &str, crate::Q)> =
        terms.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.0.clone())).collect();
    CorrespondenceClass::from_terms(source, target, r, &borrowed)
}

pub fn correspondence_file(c: &CorrespondenceClass) -> CorrespondenceFile {
    CorrespondenceFile { source: ring_ref(c.source()), target: ring_ref(c.target()), r: c.shift(), terms: terms(c) }
}

pub fn correspondence_from_file(file: &CorrespondenceFile) -> Result<CorrespondenceClass> {
    let source = resolve(&file.source)?;
    let target = if file.target == file.source { source.clone() } else { resolve(&file.target)? };
    class_from_terms(&source, &target, file.r, &file.terms)
}

pub fn projector_file(set: &ProjectorSet) -> ProjectorFile {
    ProjectorFile {
        space: ring_ref(set.ring()),
        complete: set.is_complete(),
        projectors: set.projectors().iter().map(|(i, c)| IndexedTerms { index: *i, terms: terms(c) }).collect(),
        remainder: set.remainder().map(|r| RemainderFile { degrees: r.degrees.clone(), terms: terms(&r.class) }),
    }
}

pub fn projectors_from_file(file: &ProjectorFile) -> Result<ProjectorSet> {
    let ring = resolve(&file.space)?;
    let mut projectors = BTreeMap::new();
    for p in &file.projectors {
        let c = class_from_terms(&ring, &ring, 0, &p.terms)?;
        if projectors.insert(p.index, c).is_some() {
            return Err(Error::Serialization(format!("projector {} is given twice", p.index)));
        }
    }
    let remainder = match &file.remainder {
        Some(r) => Some(Remainder { degrees: r.degrees.clone(), class: class_from_terms(&ring, &ring, 0, &r.terms)? }),
        None => None,
    };
    ProjectorSet::new(&ring, projectors, remainder, file.complete)
}

pub fn lift_file(set: &EqProjectorSet) -> LiftFile {
    let model = set.model();
    LiftFile {
        model: model.spec().cloned(),
        complete: set.is_complete(),
        members: set
            .members()
            .iter()
            .map(|m| LiftedMember {
                name: m.name.clone(),
                degrees: m.degrees.clone(),
                terms: m.class.terms(model).into_iter().map(|(a, b, s, c)| (a, b, s, Coefficient(c))).collect(),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondences::diagonal;
    use crate::kunneth::chow_kunneth_projectors;
    use crate::spaces::{grassmannian, projective_space};

    #[test]
    fn ring_round_trip() {
        for ring in [Arc::new(grassmannian(2, 4).unwrap()), SpaceSpec::hypersurface(3, 3, 6).build().unwrap()] {
            let text = to_json(&ring_file(&ring));
            let back = ring_from_file(&from_json(&text).unwrap()).unwrap();
            assert_eq!(*back, *ring);
            assert_eq!(to_json(&ring_file(&back)), text);
        }
    }

    #[test]
    fn correspondence_round_trip() {
        let p2 = SpaceSpec::projective(2).build().unwrap();
        let d = diagonal(&p2).unwrap();
        let text = to_json(&correspondence_file(&d));
        assert!(text.contains("\"kind\": \"projective_space\""));
        assert_eq!(correspondence_from_file(&from_json(&text).unwrap()).unwrap(), d);
        // explicit rings survive too
        let bare = Arc::new(projective_space(1));
        let d = diagonal(&bare).unwrap();
        let text = to_json(&correspondence_file(&d));
        assert_eq!(correspondence_from_file(&from_json(&text).unwrap()).unwrap(), d);
    }

    #[test]
    fn projector_round_trip() {
        let ring = SpaceSpec::hypersurface(3, 2, 0).build().unwrap();
        let set = chow_kunneth_projectors(&ring).unwrap();
        let text = to_json(&projector_file(&set));
        let back = projectors_from_file(&from_json(&text).unwrap()).unwrap();
        assert_eq!(back, set);
        assert_eq!(to_json(&projector_file(&back)), text);
    }

    #[test]
    fn bad_documents() {
        assert!(matches!(from_json::<ProjectorFile>("{"), Err(Error::Serialization(_))));
        let text = r#"{"space":{"kind":"projective_space","n":1},"complete":false,
            "projectors":[{"index":0,"terms":[["h","q","1"]]}]}"#;
        assert!(matches!(projectors_from_file(&from_json(text).unwrap()), Err(Error::UnknownLabel(_))));
        let text = r#"{"space":{"kind":"projective_space","n":1},"complete":false,
            "projectors":[{"index":0,"terms":[["h","1","1/0"]]}]}"#;
        assert!(from_json::<ProjectorFile>(text).is_err());
    }
}
