mod common;

use std::sync::Arc;

use chow_kunneth::equivariant::{
    bg_ring, bottom_weight_restriction, equivariant_projective_torus, equivariant_trivial_action, lift_projectors,
    lifted_agree, stabilization_check, verify_equivariant, EquivariantModelSpec, GroupSpec, RingSurjection,
};
use chow_kunneth::kunneth::{chow_kunneth_projectors, verify_ck};
use chow_kunneth::spaces::{grassmannian, CiModel};
use chow_kunneth::SpaceSpec;

fn trivial_spec(base: SpaceSpec, group: GroupSpec) -> EquivariantModelSpec {
    EquivariantModelSpec { base, group, truncation: 0, weights: None }
}

#[test]
fn p2_lifts_for_torus_and_gl2() {
    let p2 = common::build(&SpaceSpec::projective(2));
    let set = chow_kunneth_projectors(&p2).unwrap();
    for group in [GroupSpec::torus(1), GroupSpec::general_linear(2), GroupSpec::torus(2)] {
        let model = Arc::new(equivariant_trivial_action(&p2, &group, 8).unwrap());
        let lifted = lift_projectors(&set, &model).unwrap();
        let report = verify_equivariant(&lifted);
        assert!(report.all_pass, "{group:?}:\n{}", report.to_text());
        assert_eq!(lifted.restrict().unwrap(), set);
    }
    for weights in [[0, 1, 2], [3, -1, 7], [0, 0, 5]] {
        let model = Arc::new(equivariant_projective_torus(&weights, 8).unwrap());
        let lifted = lift_projectors(&set, &model).unwrap();
        assert!(verify_equivariant(&lifted).all_pass, "{weights:?}");
        assert_eq!(lifted.restrict().unwrap(), set);
    }
}

#[test]
fn gl_truncation_matches_grassmannian_oracle() {
    // H^*(BGL_2) agrees with H^*(G(2, 2 + N/2)) in degrees ≤ N
    for big_n in [2u32, 4, 6, 8] {
        let bg = bg_ring(&GroupSpec::general_linear(2), big_n).unwrap();
        let g = grassmannian(2, 2 + big_n / 2 + 1).unwrap();
        assert_eq!(bg.ranks_by_degree(), g.betti_numbers()[..=big_n as usize].to_vec());
    }
}

#[test]
fn stabilization_over_corpus() {
    for (name, spec) in common::corpus() {
        let ring = common::build(&spec);
        let set = chow_kunneth_projectors(&ring).unwrap();
        let model = trivial_spec(spec.clone(), GroupSpec::torus(1));
        for d in [0, 2, 4] {
            assert!(stabilization_check(&set, &model, d, 4, 6).unwrap(), "{name} D={d}");
        }
    }
    for n in 1..=3u32 {
        let ring = common::build(&SpaceSpec::projective(n));
        let set = chow_kunneth_projectors(&ring).unwrap();
        let weights: Vec<i64> = (0..=n as i64).map(|i| i * i - 1).collect();
        let spec = EquivariantModelSpec {
            base: SpaceSpec::projective(n),
            group: GroupSpec::torus(1),
            truncation: 0,
            weights: Some(weights),
        };
        for d in (0..=6).step_by(2) {
            assert!(stabilization_check(&set, &spec, d, 6, 10).unwrap(), "P^{n} D={d}");
        }
    }
}

#[test]
fn stabilization_negative_control() {
    let ring = common::build(&SpaceSpec::projective(2));
    let set = chow_kunneth_projectors(&ring).unwrap();
    let good = Arc::new(equivariant_projective_torus(&[0, 1, 2], 6).unwrap());
    let bad = Arc::new(equivariant_projective_torus(&[0, 1, 3], 10).unwrap());
    let a = lift_projectors(&set, &good).unwrap();
    let b = lift_projectors(&set, &bad).unwrap();
    assert!(!lifted_agree(&a, &b, 4));
    // agreement in degree 0 is unaffected by the weights
    assert!(lifted_agree(&a, &b, 0));
}

#[test]
fn bottom_weight_images_verify() {
    for (name, spec) in common::corpus() {
        let ring = common::build(&spec);
        let set = chow_kunneth_projectors(&ring).unwrap();
        let image = bottom_weight_restriction(&RingSurjection::identity(&ring), &set).unwrap();
        assert_eq!(image, set, "{name}");
        if let Ok(model) = CiModel::from_spec(&spec) {
            let (q, _) = RingSurjection::kill_primitive(&model).unwrap();
            let image = bottom_weight_restriction(&q, &set).unwrap();
            assert!(image.is_complete(), "{name}");
            let report = verify_ck(&image);
            assert!(report.all_pass, "{name}:\n{}", report.to_text());
        }
    }
}
