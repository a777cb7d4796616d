mod common;

use std::sync::Arc;

use chow_kunneth::correspondences::{act, compose, diagonal};
use chow_kunneth::graded_ring::multiply;
use chow_kunneth::kunneth::{
    algebraic_projectors, gram_schmidt_orthogonalize, hypersurface_projectors, product_projectors, verify_ck,
};
use chow_kunneth::rational::frac;
use chow_kunneth::{ClassVector, CorrespondenceClass, GradedBasisRing, SpaceSpec};

/// `H^k` on the model, by repeated multiplication in the model's own ring.
/// On a curve `H` is `d` times the point class.
fn h_power(ring: &Arc<GradedBasisRing>, d: u32, k: u32) -> ClassVector {
    let h = ring
        .class(&[("h", frac(1, 1))])
        .or_else(|_| ring.class(&[("dual[1]", frac(d as i64, 1))]))
        .unwrap();
    (0..k).fold(ClassVector::unit(ring), |acc, _| multiply(ring, &acc, &h).unwrap())
}

#[test]
fn hypersurface_closed_form() {
    for (n, d, rank) in [(3, 3, 6), (3, 3, 7), (3, 2, 1), (4, 2, 0), (4, 3, 10), (2, 3, 2), (5, 2, 1)] {
        let set = hypersurface_projectors(n, d, rank).unwrap();
        let ring = set.ring();
        let dim = n - 1;
        for r in (0..=dim).filter(|r| 2 * r != dim) {
            let expected = CorrespondenceClass::exterior(&h_power(ring, d, dim - r), &h_power(ring, d, r))
                .unwrap()
                .scale(&frac(1, d as i64));
            assert_eq!(set.get(2 * r).unwrap(), &expected, "n={n} d={d} r={r}");
        }
        let report = verify_ck(&set);
        assert!(report.all_pass, "n={n} d={d}:\n{}", report.to_text());
        if ring.basis_of_degree(dim).is_empty() {
            assert!(set.remainder().is_none());
            continue;
        }
        let rem = set.remainder().expect("middle remainder");
        assert_eq!(rem.degrees, [dim].into());
        assert_eq!(compose(&rem.class, &rem.class).unwrap(), rem.class);
    }
}

#[test]
fn cubic_surface_spec_example_ranks() {
    // the documented example counts 7 primitive classes; geometry gives 6
    let ring = SpaceSpec::hypersurface(3, 3, 7).build().unwrap();
    assert_eq!(ring.betti_numbers(), vec![1, 0, 8, 0, 1]);
    let ring = SpaceSpec::hypersurface(3, 3, common::hypersurface_primitive_rank(3, 3)).build().unwrap();
    assert_eq!(ring.betti_numbers()[2] as u32, common::hypersurface_middle_betti(3, 3));
}

#[test]
fn product_cross_validation() {
    let p1 = SpaceSpec::projective(1).build().unwrap();
    let p2 = SpaceSpec::projective(2).build().unwrap();
    let prod = product_projectors(&algebraic_projectors(&p1, 2, None).unwrap(), &algebraic_projectors(&p2, 4, None).unwrap())
        .unwrap();
    let direct_ring = SpaceSpec::product(vec![SpaceSpec::projective(1), SpaceSpec::projective(2)]).build().unwrap();
    assert_eq!(**prod.ring(), *direct_ring);
    let direct = algebraic_projectors(&direct_ring, direct_ring.top_degree(), None).unwrap();
    assert!(verify_ck(&prod).all_pass);
    assert!(verify_ck(&direct).all_pass);
    assert_eq!(prod.covered_degrees(), direct.covered_degrees());
    for i in 0..direct_ring.rank() {
        for (k, pi) in direct.projectors() {
            let a = act(pi, &ClassVector::basis(&direct_ring, i)).unwrap();
            let b = act(prod.get(*k).unwrap(), &ClassVector::basis(prod.ring(), i)).unwrap();
            assert_eq!(a.to_dense(), b.to_dense(), "π_{k} on {}", direct_ring.label(i));
        }
    }
}

#[test]
fn gram_schmidt_families() {
    let families = common::gram_schmidt_families();
    assert!(families.len() >= 5);
    for (name, list) in families {
        let ring = list[0].source().clone();
        assert!(ring.rank() <= 4, "{name}");
        let orthogonal_before = list
            .iter()
            .enumerate()
            .all(|(i, a)| list.iter().enumerate().all(|(j, b)| i == j || compose(a, b).unwrap().is_zero()));
        assert!(!orthogonal_before, "{name} is already orthogonal");
        let out = gram_schmidt_orthogonalize(&list).unwrap();
        for (i, a) in out.iter().enumerate() {
            assert_eq!(&compose(a, a).unwrap(), a, "{name}: output {i} is not idempotent");
            for (j, b) in out.iter().enumerate() {
                if i != j {
                    assert!(compose(a, b).unwrap().is_zero(), "{name}: outputs {i}, {j} are not orthogonal");
                }
            }
        }
        // the first member is kept
        assert_eq!(out[0], list[0], "{name}");
        // orthogonal output is a fixed point
        assert_eq!(gram_schmidt_orthogonalize(&out).unwrap(), out, "{name}");
    }
}

#[test]
fn gram_schmidt_keeps_projector_sets() {
    for (name, spec) in common::corpus() {
        let ring = common::build(&spec);
        let set = chow_kunneth::kunneth::chow_kunneth_projectors(&ring).unwrap();
        let list: Vec<CorrespondenceClass> = set.members().iter().map(|m| m.class.clone()).collect();
        assert_eq!(gram_schmidt_orthogonalize(&list).unwrap(), list, "{name}");
        let sum = list.iter().skip(1).fold(list[0].clone(), |a, b| a.add(b).unwrap());
        assert_eq!(sum, diagonal(&ring).unwrap(), "{name}");
    }
}
