//! Shared corpus for integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use chow_kunneth::correspondences::{compose, diagonal};
use chow_kunneth::kunneth::chow_kunneth_projectors;
use chow_kunneth::{CorrespondenceClass, GradedBasisRing, SpaceSpec, Q};

/// Middle Betti number of a smooth degree-`d` hypersurface in `P^n`, from
/// `χ = ((1-d)^{n+1} - 1)/d + n + 1` minus the other (rank one) degrees.
pub fn hypersurface_middle_betti(n: u32, d: u32) -> u32 {
    let (n, d) = (n as i64, d as i64);
    let chi = ((1 - d).pow(n as u32 + 1) - 1) / d + n + 1;
    let dim = n - 1;
    let others = (0..=2 * dim).filter(|i| i % 2 == 0 && *i != dim).count() as i64;
    let middle = if dim % 2 == 0 { chi - others } else { others - chi };
    middle as u32
}

/// Primitive middle rank: the middle Betti number minus the restricted `h^{dim/2}`.
pub fn hypersurface_primitive_rank(n: u32, d: u32) -> u32 {
    hypersurface_middle_betti(n, d) - u32::from((n - 1) % 2 == 0)
}

pub fn blowup_line_in_p3() -> SpaceSpec {
    SpaceSpec::from_json(
        r#"{"kind":"blowup","base":{"kind":"projective_space","n":3},
            "center":{"kind":"projective_space","n":1},"codim":2,
            "center_pushforward_expr":{"1":{"h^2":1},"h":{"h^3":1}},
            "normal_chern_classes":[{"h":2}]}"#,
    )
    .unwrap()
}

pub fn blowup_point_in_p2() -> SpaceSpec {
    SpaceSpec::from_json(
        r#"{"kind":"blowup","base":{"kind":"projective_space","n":2},
            "center":{"kind":"projective_space","n":0},"codim":2,
            "center_pushforward_expr":{"1":{"h^2":1}}}"#,
    )
    .unwrap()
}

/// Every space whose full projector set must verify.
pub fn corpus() -> Vec<(String, SpaceSpec)> {
    let mut out = Vec::new();
    for n in 0..=5 {
        out.push((format!("P^{n}"), SpaceSpec::projective(n)));
    }
    out.push(("G(2,4)".into(), SpaceSpec::grassmannian(2, 4)));
    out.push(("G(2,5)".into(), SpaceSpec::grassmannian(2, 5)));
    out.push(("Bl_L P^3".into(), blowup_line_in_p3()));
    out.push(("Bl_pt P^2".into(), blowup_point_in_p2()));
    out.push((
        "P^1 x P^2".into(),
        SpaceSpec::product(vec![SpaceSpec::projective(1), SpaceSpec::projective(2)]),
    ));
    for (n, d) in [(3, 1), (3, 2), (3, 3), (4, 2)] {
        out.push((
            format!("hypersurface n={n} d={d}"),
            SpaceSpec::hypersurface(n, d, hypersurface_primitive_rank(n, d)),
        ));
    }
    for d in 1..=3 {
        out.push((format!("plane curve family d={d}"), SpaceSpec::PlaneCurveFamily { d, middle_rank: None }));
    }
    out
}

pub fn build(spec: &SpaceSpec) -> Arc<GradedBasisRing> {
    spec.build().unwrap()
}

/// Semistandard tableaux of shape `lambda` with entries `< k`, as exponent vectors.
fn ssyt_monomials(lambda: &[u32], k: usize) -> Vec<Vec<u32>> {
    let cells: Vec<(usize, usize)> =
        lambda.iter().enumerate().flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c))).collect();
    let mut grid: Vec<Vec<usize>> = lambda.iter().map(|&l| vec![0; l as usize]).collect();
    let mut out = Vec::new();
    fn go(i: usize, cells: &[(usize, usize)], k: usize, grid: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<u32>>) {
        if i == cells.len() {
            let mut e = vec![0u32; k];
            grid.iter().flatten().for_each(|&v| e[v] += 1);
            out.push(e);
            return;
        }
        let (r, c) = cells[i];
        let lo_row = if c > 0 { grid[r][c - 1] } else { 0 };
        let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..k {
            grid[r][c] = v;
            go(i + 1, cells, k, grid, out);
        }
    }
    go(0, &cells, k, &mut grid, &mut out);
    out
}

/// `σ_λ σ_μ` in `G(k, n)` from symmetric functions in `k` variables:
/// `c^ν_{λμ}` is the coefficient of `x^{ν+δ}` in `s_λ · a_{μ+δ}`, read off
/// from semistandard tableaux and the alternant. Shapes outside the box are
/// dropped. Independent of both Pieri rules and LR tableaux.
pub fn bialternant_product(lambda: &[u32], mu: &[u32], k: usize, n: usize) -> BTreeMap<Vec<u32>, i64> {
    let pad = |p: &[u32]| -> Vec<i64> { (0..k).map(|i| p.get(i).copied().unwrap_or(0) as i64).collect() };
    let mu_delta: Vec<i64> = pad(mu).iter().enumerate().map(|(i, m)| m + (k - 1 - i) as i64).collect();
    let mut out = BTreeMap::new();
    for perm in permutations(k) {
        let sign = if inversions(&perm) % 2 == 0 { 1 } else { -1 };
        for e in ssyt_monomials(lambda, k) {
            let exps: Vec<i64> = (0..k).map(|i| e[i] as i64 + mu_delta[perm[i]]).collect();
            // only strictly decreasing exponent vectors are leading terms x^{ν+δ}
            if exps.windows(2).any(|w| w[0] <= w[1]) {
                continue;
            }
            let nu: Vec<u32> = exps.iter().enumerate().map(|(i, x)| (x - (k - 1 - i) as i64) as u32).collect();
            if nu[0] as usize > n - k {
                continue;
            }
            let nu: Vec<u32> = nu.into_iter().filter(|&p| p > 0).collect();
            *out.entry(nu).or_insert(0) += sign;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count()
}

/// Parses `1` or `s[2,1]`.
pub fn partition_of(label: &str) -> Vec<u32> {
    if label == "1" {
        return Vec::new();
    }
    label.trim_start_matches("s[").trim_end_matches(']').split(',').map(|p| p.parse().unwrap()).collect()
}

/// `Γ / c` where `Γ ∘ Γ = c Γ`, so that a rank-one `a × b` becomes idempotent.
pub fn normalize(gamma: CorrespondenceClass) -> CorrespondenceClass {
    let sq = compose(&gamma, &gamma).unwrap();
    let (key, c) = gamma.coeffs().iter().next().expect("nonzero class");
    let ratio = sq.coeffs().get(key).cloned().expect("Γ∘Γ is a multiple of Γ") / c;
    let out = gamma.scale(&(Q::from_integer(1.into()) / ratio));
    assert_eq!(compose(&out, &out).unwrap(), out);
    out
}

/// `a × b` for integer combinations of basis labels, normalized to an idempotent.
pub fn rank_one(ring: &Arc<GradedBasisRing>, a: &[(&str, i64)], b: &[(&str, i64)]) -> CorrespondenceClass {
    let class = |terms: &[(&str, i64)]| {
        let t: Vec<(&str, Q)> = terms.iter().map(|(l, c)| (*l, Q::from_integer((*c).into()))).collect();
        ring.class(&t).unwrap()
    };
    normalize(CorrespondenceClass::exterior(&class(a), &class(b)).unwrap())
}

/// Synthetic families of idempotents that are not mutually orthogonal, on
/// rings of rank at most four.
pub fn gram_schmidt_families() -> Vec<(String, Vec<CorrespondenceClass>)> {
    let p1p1 = build(&SpaceSpec::product(vec![SpaceSpec::projective(1), SpaceSpec::projective(1)]));
    let bl = build(&blowup_point_in_p2());
    let p3 = build(&SpaceSpec::projective(3));
    let cubic = build(&SpaceSpec::hypersurface(2, 3, 2));
    // i-th basis label in degree p
    let l = |r: &Arc<GradedBasisRing>, p: u32, i: usize| r.label(r.basis_of_degree(p)[i]).to_string();
    let (h1, h2) = (l(&p1p1, 2, 0), l(&p1p1, 2, 1));
    let (bh, be) = (l(&bl, 2, 0), l(&bl, 2, 1));
    let (m1, m2) = (l(&cubic, 1, 0), l(&cubic, 1, 1));
    let sum = |a: &CorrespondenceClass, b: &CorrespondenceClass| a.add(b).unwrap();
    let p3_set = chow_kunneth_projectors(&p3).unwrap();
    let pi = |i: u32| p3_set.get(i).unwrap().clone();
    vec![
        (
            "P1xP1 two skew lines in degree 2".into(),
            vec![rank_one(&p1p1, &[(&h1, 1)], &[(&h2, 1)]), rank_one(&p1p1, &[(&h1, 1), (&h2, 1)], &[(&h2, 1)])],
        ),
        (
            "Bl_pt P2 hyperplane and mixed class".into(),
            vec![
                rank_one(&bl, &[(&bh, 1)], &[(&bh, 1)]),
                rank_one(&bl, &[(&bh, 1), (&be, 1)], &[(&bh, 1), (&be, -2)]),
                rank_one(&bl, &[(&bh, 2), (&be, 1)], &[(&bh, 1), (&be, 1)]),
            ],
        ),
        (
            "plane cubic odd degree".into(),
            vec![rank_one(&cubic, &[(&m1, 1)], &[(&m2, 1)]), rank_one(&cubic, &[(&m1, 1), (&m2, 1)], &[(&m2, 1)])],
        ),
        (
            "P1xP1 diagonal first".into(),
            vec![
                diagonal(&p1p1).unwrap(),
                rank_one(&p1p1, &[(&l(&p1p1, 0, 0), 1)], &[(&l(&p1p1, 4, 0), 1)]),
                rank_one(&p1p1, &[(&h1, 1), (&h2, 3)], &[(&h1, 1), (&h2, 1)]),
            ],
        ),
        ("P3 overlapping sums".into(), vec![sum(&pi(0), &pi(2)), pi(2), sum(&pi(2), &pi(4)), pi(6)]),
        (
            "Bl_pt P2 exceptional then hyperplane".into(),
            vec![
                rank_one(&bl, &[(&be, 1)], &[(&be, 1)]),
                rank_one(&bl, &[(&bh, 1), (&be, 1)], &[(&bh, 1)]),
                rank_one(&bl, &[(&l(&bl, 0, 0), 1)], &[(&l(&bl, 4, 0), 1)]),
            ],
        ),
    ]
}
