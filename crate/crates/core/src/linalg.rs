//! Dense exact linear algebra over the rationals.
//!
//! Matrices are small (at most a few dozen rows), so everything here is plain
//! Gaussian elimination on `Vec<Vec<Q>>`.

use num_traits::Zero;

use crate::rational::{one, zero, Q};

pub type Matrix = Vec<Vec<Q>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = one();
    }
    m
}

pub fn cols(m: &Matrix) -> usize {
    m.first().map_or(0, Vec::len)
}

pub fn transpose(m: &Matrix) -> Matrix {
    let (r, c) = (m.len(), cols(m));
    let mut t = zeros(c, r);
    for i in 0..r {
        for j in 0..c {
            t[j][i] = m[i][j].clone();
        }
    }
    t
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let (r, k, c) = (a.len(), cols(a), cols(b));
    let mut out = zeros(r, c);
    for i in 0..r {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..c {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

pub fn sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect())
        .collect()
}

pub fn is_zero(m: &Matrix) -> bool {
    m.iter().all(|row| row.iter().all(Zero::is_zero))
}

/// Row-reduces in place; returns the pivot columns.
fn rref(m: &mut Matrix) -> Vec<usize> {
    let (r, c) = (m.len(), cols(m));
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..c {
        if row == r {
            break;
        }
        let Some(p) = (row..r).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = one() / &m[row][col];
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..r {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..c {
                    let delta = &f * &m[row][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    if cols(m) != n {
        return None;
    }
    let mut aug: Matrix = m
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Basis of `{x : m x = 0}` as column vectors.
pub fn kernel(m: &Matrix) -> Vec<Vec<Q>> {
    let c = cols(m);
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..c).filter(|j| !pivots.contains(j)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![zero(); c];
            v[f] = one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// Basis of the column space of `m`.
pub fn column_space(m: &Matrix) -> Vec<Vec<Q>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    pivots
        .iter()
        .map(|&j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// The Fitting idempotent of `x`: projection onto `im(x^n)` along `ker(x^n)`.
///
/// It is a polynomial in `x` without constant term, so it commutes with `x`
/// and with anything `x` is sandwiched between.
pub fn fitting_idempotent(x: &Matrix) -> Matrix {
    let n = x.len();
    if n == 0 {
        return Vec::new();
    }
    let mut power = x.clone();
    for _ in 1..n {
        power = mul(&power, x);
    }
    let image = column_space(&power);
    if image.is_empty() {
        return zeros(n, n);
    }
    let ker = kernel(&power);
    let k = image.len();
    let mut basis = zeros(n, n);
    for (j, v) in image.iter().chain(ker.iter()).enumerate() {
        for i in 0..n {
            basis[i][j] = v[i].clone();
        }
    }
    let inv = inverse(&basis).expect("image and kernel of x^n are complementary");
    let mut diag = zeros(n, n);
    for (i, row) in diag.iter_mut().enumerate().take(k) {
        row[i] = one();
    }
    mul(&mul(&basis, &diag), &inv)
}

/// Solves `m x = b` for square invertible `m`.
pub fn solve(m: &Matrix, b: &[Q]) -> Option<Vec<Q>> {
    let inv = inverse(m)?;
    Some(
        inv.iter()
            .map(|row| row.iter().zip(b).map(|(a, y)| a * y).sum())
            .collect(),
    )
}
