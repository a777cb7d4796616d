mod common;

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use chow_kunneth::correspondences::{act, compose, diagonal, transpose};
use chow_kunneth::rational::q;
use chow_kunneth::{ClassVector, CorrespondenceClass, GradedBasisRing, SpaceSpec};

fn pool() -> &'static Vec<Arc<GradedBasisRing>> {
    static POOL: OnceLock<Vec<Arc<GradedBasisRing>>> = OnceLock::new();
    POOL.get_or_init(|| {
        [
            SpaceSpec::projective(1),
            SpaceSpec::projective(2),
            SpaceSpec::product(vec![SpaceSpec::projective(1), SpaceSpec::projective(1)]),
            common::blowup_point_in_p2(),
            SpaceSpec::hypersurface(2, 3, 2),
            SpaceSpec::grassmannian(2, 4),
            SpaceSpec::hypersurface(3, 2, 1),
        ]
        .iter()
        .map(common::build)
        .collect()
    })
}

/// A homogeneous correspondence of shift `r` with coefficients drawn
/// cyclically from `seed`.
fn corr(x: &Arc<GradedBasisRing>, y: &Arc<GradedBasisRing>, r: i32, seed: &[i8]) -> CorrespondenceClass {
    let total = 2 * (x.dim() as i32 + r);
    let mut entries = Vec::new();
    let mut k = 0;
    for a in 0..x.rank() {
        for b in 0..y.rank() {
            if (x.degree_of(a) + y.degree_of(b)) as i32 == total {
                entries.push(((a, b), q(seed[k % seed.len()] as i64)));
                k += 1;
            }
        }
    }
    CorrespondenceClass::new(x, y, r, entries).unwrap()
}

fn shift_range(x: &GradedBasisRing, y: &GradedBasisRing) -> std::ops::RangeInclusive<i32> {
    -(x.dim() as i32)..=y.dim() as i32
}

fn pick_shift(x: &GradedBasisRing, y: &GradedBasisRing, s: u8) -> i32 {
    let r = shift_range(x, y);
    let len = (r.end() - r.start() + 1) as u8;
    r.start() + (s % len) as i32
}

fn seeds() -> impl Strategy<Value = Vec<i8>> {
    prop::collection::vec(-3i8..=3, 1..24)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn composition_is_associative(
        idx in prop::array::uniform4(0usize..7),
        shifts in prop::array::uniform3(any::<u8>()),
        s1 in seeds(), s2 in seeds(), s3 in seeds(),
    ) {
        let p = pool();
        let (x, y, z, w) = (&p[idx[0]], &p[idx[1]], &p[idx[2]], &p[idx[3]]);
        let f = corr(x, y, pick_shift(x, y, shifts[0]), &s1);
        let g = corr(y, z, pick_shift(y, z, shifts[1]), &s2);
        let h = corr(z, w, pick_shift(z, w, shifts[2]), &s3);
        let left = compose(&compose(&f, &g).unwrap(), &h).unwrap();
        let right = compose(&f, &compose(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn transpose_reverses_composition(
        idx in prop::array::uniform3(0usize..7),
        shifts in prop::array::uniform2(any::<u8>()),
        s1 in seeds(), s2 in seeds(),
    ) {
        let p = pool();
        let (x, y, z) = (&p[idx[0]], &p[idx[1]], &p[idx[2]]);
        let f = corr(x, y, pick_shift(x, y, shifts[0]), &s1);
        let g = corr(y, z, pick_shift(y, z, shifts[1]), &s2);
        let lhs = transpose(&compose(&f, &g).unwrap());
        let rhs = compose(&transpose(&g), &transpose(&f)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(transpose(&transpose(&f)), f);
    }

    #[test]
    fn action_is_functorial(
        idx in prop::array::uniform3(0usize..7),
        shifts in prop::array::uniform2(any::<u8>()),
        s1 in seeds(), s2 in seeds(),
        basis in any::<prop::sample::Index>(),
    ) {
        let p = pool();
        let (x, y, z) = (&p[idx[0]], &p[idx[1]], &p[idx[2]]);
        let f = corr(x, y, pick_shift(x, y, shifts[0]), &s1);
        let g = corr(y, z, pick_shift(y, z, shifts[1]), &s2);
        let alpha = ClassVector::basis(x, basis.index(x.rank()));
        let once = act(&compose(&f, &g).unwrap(), &alpha).unwrap();
        let twice = act(&g, &act(&f, &alpha).unwrap()).unwrap();
        prop_assert_eq!(once.to_dense(), twice.to_dense());
    }

    #[test]
    fn diagonal_is_the_identity(
        idx in prop::array::uniform2(0usize..7),
        shift in any::<u8>(),
        s in seeds(),
    ) {
        let p = pool();
        let (x, y) = (&p[idx[0]], &p[idx[1]]);
        let f = corr(x, y, pick_shift(x, y, shift), &s);
        prop_assert_eq!(compose(&diagonal(x).unwrap(), &f).unwrap(), f.clone());
        prop_assert_eq!(compose(&f, &diagonal(y).unwrap()).unwrap(), f);
    }

    #[test]
    fn composition_is_bilinear(
        idx in prop::array::uniform3(0usize..7),
        shifts in prop::array::uniform2(any::<u8>()),
        s1 in seeds(), s2 in seeds(), s3 in seeds(),
        c in -5i64..=5,
    ) {
        let p = pool();
        let (x, y, z) = (&p[idx[0]], &p[idx[1]], &p[idx[2]]);
        let r = pick_shift(x, y, shifts[0]);
        let (f1, f2) = (corr(x, y, r, &s1), corr(x, y, r, &s2));
        let g = corr(y, z, pick_shift(y, z, shifts[1]), &s3);
        let lhs = compose(&f1.add(&f2.scale(&q(c))).unwrap(), &g).unwrap();
        let rhs = compose(&f1, &g).unwrap().add(&compose(&f2, &g).unwrap().scale(&q(c))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
