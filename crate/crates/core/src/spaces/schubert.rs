//! Schubert calculus on `G(k, n)`.
//!
//! Multiplication goes through Jacobi–Trudi and repeated Pieri steps, with
//! truncation to the `k × (n-k)` box at every step (the span of the Schur
//! functions outside the box is an ideal, so this is harmless). The
//! Littlewood–Richardson tableau count in [`lr_oracle`] is an independent
//! check and is not used to build rings.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graded_ring::{BasisElement, GradedBasisRing};
use crate::rational::{one, q, Q};

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::InvalidSpec(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn fits(&self, rows: u32, cols: u32) -> bool {
        self.0.len() as u32 <= rows && self.0.first().is_none_or(|&p| p <= cols)
    }

    /// Basis label in the Grassmannian ring: `1` or `s[2,1]`.
    pub fn label(&self) -> String {
        if self.0.is_empty() {
            "1".to_string()
        } else {
            let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
            format!("s[{}]", parts.join(","))
        }
    }

    fn padded(&self, k: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.resize(k, 0);
        v
    }

    fn from_padded(v: &[u32]) -> Self {
        Partition(v.iter().copied().filter(|&x| x > 0).collect())
    }

    /// Complement in the `rows × cols` box.
    pub fn complement(&self, rows: u32, cols: u32) -> Self {
        let p = self.padded(rows as usize);
        Partition::from_padded(&p.iter().rev().map(|&x| cols - x).collect::<Vec<_>>())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Partitions in the `rows × cols` box, by size and then lexicographically
/// descending.
pub(crate) fn box_partitions(rows: u32, cols: u32) -> Vec<Partition> {
    fn go(rows: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(prefix.clone());
        if prefix.len() as u32 == rows {
            return;
        }
        for p in (1..=max).rev() {
            prefix.push(p);
            go(rows, p, prefix, out);
            prefix.pop();
        }
    }
    let mut all = Vec::new();
    go(rows, cols, &mut Vec::new(), &mut all);
    let mut parts: Vec<Partition> = all.into_iter().map(Partition).collect();
    parts.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.0.cmp(&a.0)));
    parts
}

/// `h_r · s_λ` restricted to `k` rows and `cols` columns.
fn pieri(lambda: &[u32], r: u32, cols: u32) -> Vec<Vec<u32>> {
    fn go(lambda: &[u32], i: usize, left: u32, cols: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == lambda.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let upper = if i == 0 { cols } else { lambda[i - 1] };
        let max_add = upper.saturating_sub(lambda[i]).min(left);
        for add in 0..=max_add {
            cur.push(lambda[i] + add);
            go(lambda, i + 1, left - add, cols, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(lambda, 0, r, cols, &mut Vec::with_capacity(lambda.len()), &mut out);
    out
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out.into_iter()
        .map(|p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let s = if inversions % 2 == 0 { 1 } else { -1 };
            (p, s)
        })
        .collect()
}

/// `σ_λ · σ_μ` in `H^*(G(k, n))` via Jacobi–Trudi and Pieri.
pub fn pieri_product(lambda: &Partition, mu: &Partition, k: u32, n: u32) -> BTreeMap<Partition, i64> {
    let cols = n - k;
    let rows = k as usize;
    let mut total: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    if !lambda.fits(k, cols) || !mu.fits(k, cols) {
        return BTreeMap::new();
    }
    let l = mu.0.len();
    for (perm, s) in permutations(l) {
        // Π_i h_{μ_i - i + w(i)}
        let mut indices = Vec::with_capacity(l);
        let mut vanishes = false;
        for i in 0..l {
            let r = mu.0[i] as i64 - i as i64 + perm[i] as i64;
            if r < 0 {
                vanishes = true;
                break;
            }
            indices.push(r as u32);
        }
        if vanishes {
            continue;
        }
        let mut state: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
        state.insert(lambda.padded(rows), 1);
        for r in indices {
            if r == 0 {
                continue;
            }
            let mut next = BTreeMap::new();
            for (p, c) in &state {
                for nu in pieri(p, r, cols) {
                    *next.entry(nu).or_insert(0) += c;
                }
            }
            state = next;
        }
        for (p, c) in state {
            *total.entry(p).or_insert(0) += s * c;
        }
    }
    total
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(p, c)| (Partition::from_padded(&p), c))
        .collect()
}

/// Schubert basis of `G(k, n)`; `∫ σ_{full box} = 1`.
pub fn grassmannian(k: u32, n: u32) -> Result<GradedBasisRing> {
    if k == 0 || k >= n {
        return Err(Error::InvalidSpec(format!("grassmannian needs 0 < k < n, got k={k}, n={n}")));
    }
    let cols = n - k;
    let parts = box_partitions(k, cols);
    let index: BTreeMap<Partition, usize> = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let basis = parts.iter().map(|p| BasisElement::new(p.label(), 2 * p.size())).collect();
    let top = parts.len() - 1;
    GradedBasisRing::new(
        k * cols,
        basis,
        |i, j| {
            Ok(pieri_product(&parts[i], &parts[j], k, n)
                .into_iter()
                .map(|(p, c)| (index[&p], q(c)))
                .collect())
        },
        vec![(top, one())],
    )
}

/// Number of Littlewood–Richardson tableaux of shape `ν/λ` and content `μ`,
/// by direct enumeration.
fn lr_count(lambda: &[u32], mu: &[u32], nu: &[u32]) -> u64 {
    let rows = nu.len();
    let lam: Vec<u32> = (0..rows).map(|i| lambda.get(i).copied().unwrap_or(0)).collect();
    if lambda.len() > rows || (0..rows).any(|i| lam[i] > nu[i]) {
        return 0;
    }
    // cells filled row by row, right to left: this is the reverse reading word
    let cells: Vec<(usize, u32)> = (0..rows).flat_map(|r| (lam[r]..nu[r]).rev().map(move |c| (r, c))).collect();
    let width = nu.first().copied().unwrap_or(0) as usize;
    let mut grid = vec![vec![0u32; width]; rows];
    let mut counts = vec![0u32; mu.len() + 1];

    fn fill(
        idx: usize,
        cells: &[(usize, u32)],
        lam: &[u32],
        nu: &[u32],
        mu: &[u32],
        grid: &mut Vec<Vec<u32>>,
        counts: &mut Vec<u32>,
    ) -> u64 {
        if idx == cells.len() {
            return u64::from((1..counts.len()).all(|v| counts[v] == mu[v - 1]));
        }
        let (r, c) = cells[idx];
        let c = c as usize;
        let mut total = 0;
        for v in 1..=mu.len() as u32 {
            let vi = v as usize;
            if counts[vi] >= mu[vi - 1] {
                continue;
            }
            if c + 1 < nu[r] as usize && v > grid[r][c + 1] {
                continue;
            }
            if r > 0 && c >= lam[r - 1] as usize && v <= grid[r - 1][c] {
                continue;
            }
            if vi > 1 && counts[vi] + 1 > counts[vi - 1] {
                continue;
            }
            grid[r][c] = v;
            counts[vi] += 1;
            total += fill(idx + 1, cells, lam, nu, mu, grid, counts);
            counts[vi] -= 1;
            grid[r][c] = 0;
        }
        total
    }

    fill(0, &cells, &lam, nu, mu, &mut grid, &mut counts)
}

/// Brute-force Littlewood–Richardson expansion of `σ_λ · σ_μ` in `G(k, n)`.
///
/// Independent of [`pieri_product`]; used to cross-check it.
pub fn lr_oracle(lambda: &Partition, mu: &Partition, k: u32, n: u32) -> Vec<(Partition, Q)> {
    let cols = n - k;
    let size = lambda.size() + mu.size();
    box_partitions(k, cols)
        .into_iter()
        .filter(|nu| nu.size() == size)
        .filter_map(|nu| {
            let c = lr_count(&lambda.0, &mu.0, &nu.0);
            (c > 0).then(|| (nu, q(c as i64)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn box_counts() {
        assert_eq!(box_partitions(2, 2).len(), 6);
        assert_eq!(box_partitions(3, 3).len(), 20);
        let labels: Vec<String> = box_partitions(2, 2).iter().map(Partition::label).collect();
        assert_eq!(labels, ["1", "s[1]", "s[2]", "s[1,1]", "s[2,1]", "s[2,2]"]);
    }

    #[test]
    fn g24_products() {
        let s11 = pieri_product(&p(&[1]), &p(&[1]), 2, 4);
        assert_eq!(s11.into_iter().collect::<Vec<_>>(), vec![(p(&[1, 1]), 1), (p(&[2]), 1)]);
        let s = pieri_product(&p(&[1]), &p(&[2, 1]), 2, 4);
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![(p(&[2, 2]), 1)]);
        let s = pieri_product(&p(&[2]), &p(&[1, 1]), 2, 4);
        assert!(s.is_empty());
    }

    #[test]
    fn oracle_matches_known_values() {
        assert_eq!(lr_oracle(&p(&[1]), &p(&[1]), 2, 4), vec![(p(&[2]), q(1)), (p(&[1, 1]), q(1))]);
        assert_eq!(lr_oracle(&p(&[2]), &p(&[2]), 2, 4), vec![(p(&[2, 2]), q(1))]);
        assert_eq!(lr_oracle(&Partition::empty(), &p(&[2, 1]), 2, 4), vec![(p(&[2, 1]), q(1))]);
        // c^{321}_{21,21} = 2
        let v = lr_oracle(&p(&[2, 1]), &p(&[2, 1]), 3, 6);
        assert!(v.contains(&(p(&[3, 2, 1]), q(2))));
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(p(&[2, 1, 0]).parts(), &[2, 1]);
        assert_eq!(p(&[2]).complement(2, 2), p(&[2]));
        assert_eq!(p(&[1]).complement(2, 2), p(&[2, 1]));
    }

    #[test]
    fn invalid_grassmannian() {
        assert!(grassmannian(0, 3).is_err());
        assert!(grassmannian(3, 3).is_err());
    }
}
