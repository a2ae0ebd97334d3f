//! Test-side oracles, written independently of the library's elimination code.
#![allow(dead_code)]

use curvrank::exactlin::{Matrix, Rational, SignatureSpace};
use num_traits::{One, Zero};

pub fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn e(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| r(x)).collect()
}

/// Rank by plain row reduction over the rationals.
pub fn oracle_rank(m: &Matrix) -> usize {
    let mut rows = m.to_rows();
    let cols = m.cols();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for k in 0..cols {
                    let t = &f * &rows[rank][k];
                    rows[i][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn inner(space: &SignatureSpace, a: &[Rational], b: &[Rational]) -> Rational {
    let g = space.gram();
    let mut acc = Rational::zero();
    for i in 0..a.len() {
        for j in 0..b.len() {
            acc += &a[i] * &g[(i, j)] * &b[j];
        }
    }
    acc
}

pub fn mat_vec(m: &Matrix, v: &[Rational]) -> Vec<Rational> {
    (0..m.rows())
        .map(|i| (0..m.cols()).fold(Rational::zero(), |acc, j| acc + &m[(i, j)] * &v[j]))
        .collect()
}

/// `<φy,z><φx,w> - <φx,z><φy,w>` evaluated directly.
pub fn oracle_r_phi(
    space: &SignatureSpace,
    phi: &Matrix,
    x: &[Rational],
    y: &[Rational],
    z: &[Rational],
    w: &[Rational],
) -> Rational {
    let px = mat_vec(phi, x);
    let py = mat_vec(phi, y);
    inner(space, &py, z) * inner(space, &px, w) - inner(space, &px, z) * inner(space, &py, w)
}
