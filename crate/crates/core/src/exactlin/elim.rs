//! Elimination routines: reduced echelon form, fraction-free rank, kernels,
//! inertia by congruence and solving inside a span.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Matrix, Rational, Subspace};
use crate::error::{Error, Result};

/// Reduced row echelon form together with the pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = a[(r, col)].recip();
        for j in col..cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i == r || a[(i, col)].is_zero() {
                continue;
            }
            let f = a[(i, col)].clone();
            for j in col..cols {
                if a[(r, j)].is_zero() {
                    continue;
                }
                let t = &f * &a[(r, j)];
                a[(i, j)] -= t;
            }
        }
        pivots.push(col);
        r += 1;
    }
    (a, pivots)
}

/// Clears denominators row by row so that every row is an integer vector.
fn integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect()
}

/// Exact rank by fraction-free (Bareiss) elimination on the denominator-cleared matrix.
pub fn rank(m: &Matrix) -> usize {
    let mut a = integer_rows(m);
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..cols {
                let v = &pivot_row[col] * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot_row[col].clone();
        r += 1;
    }
    r
}

/// Canonical basis of the null space `{v : m v = 0}`.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let (red, pivots) = rref(m);
    let cols = m.cols();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -&red[(r, free)];
        }
        basis.push(v);
    }
    Subspace::span(cols, &basis).expect("kernel vectors have the ambient length")
}

/// Inertia of a symmetric form: counts of positive, negative and zero squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Inertia by Lagrange reduction (symmetric elimination under congruence).
pub fn signature_of_symmetric(m: &Matrix) -> Result<Inertia> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let diag = congruence_diagonalize(m).0;
    let mut out = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    for d in diag {
        if d.is_zero() {
            out.zero += 1;
        } else if d.is_positive() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
    }
    Ok(out)
}

/// Congruence diagonalization of a symmetric matrix.
///
/// Returns `(d, c)` with `cᵀ m c = diag(d)` and `c` invertible. The caller
/// guarantees symmetry.
pub fn congruence_diagonalize(m: &Matrix) -> (Vec<Rational>, Matrix) {
    let n = m.rows();
    let mut a = m.clone();
    // Columns of `c` are the new basis vectors.
    let mut c = Matrix::identity(n);
    for k in 0..n {
        if a[(k, k)].is_zero() {
            if let Some(p) = (k + 1..n).find(|&i| !a[(i, i)].is_zero()) {
                swap_sym(&mut a, &mut c, k, p);
            } else if let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) {
                // a_kk = a_jj = 0, a_kj != 0: replace e_k by e_k + e_j.
                add_sym(&mut a, &mut c, k, j);
            } else if let Some((i, j)) = (k + 1..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_zero())
            {
                add_sym(&mut a, &mut c, i, j);
                swap_sym(&mut a, &mut c, k, i);
            } else {
                continue;
            }
        }
        let pivot = a[(k, k)].clone();
        if pivot.is_zero() {
            continue;
        }
        for i in k + 1..n {
            if a[(k, i)].is_zero() {
                continue;
            }
            let f = &a[(k, i)] / &pivot;
            // e_i <- e_i - f e_k
            for r in 0..n {
                let t = &f * &c[(r, k)];
                c[(r, i)] -= t;
            }
            for j in 0..n {
                let t = &f * &a[(k, j)];
                a[(i, j)] -= t;
            }
            for j in 0..n {
                let t = &f * &a[(j, k)];
                a[(j, i)] -= t;
            }
        }
    }
    let d = (0..n).map(|i| a[(i, i)].clone()).collect();
    (d, c)
}

fn swap_sym(a: &mut Matrix, c: &mut Matrix, i: usize, j: usize) {
    let n = a.rows();
    a.swap_rows(i, j);
    for r in 0..n {
        let t = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = t;
        let t = c[(r, i)].clone();
        c[(r, i)] = c[(r, j)].clone();
        c[(r, j)] = t;
    }
}

/// Replaces basis vector `i` by `e_i + e_j` and updates the form accordingly.
fn add_sym(a: &mut Matrix, c: &mut Matrix, i: usize, j: usize) {
    let n = a.rows();
    for r in 0..n {
        let t = c[(r, j)].clone();
        c[(r, i)] += t;
    }
    for col in 0..n {
        let t = a[(j, col)].clone();
        a[(i, col)] += t;
    }
    for row in 0..n {
        let t = a[(row, j)].clone();
        a[(row, i)] += t;
    }
}

/// Solves `target = Σ cᵢ basisᵢ`; `Ok(None)` when the target is outside the span.
pub fn solve_in_span(target: &[Rational], basis: &[Vec<Rational>]) -> Result<Option<Vec<Rational>>> {
    let n = target.len();
    if let Some(b) = basis.iter().find(|b| b.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let k = basis.len();
    let cols = Matrix::from_columns(n, basis);
    if rank(&cols) != k {
        return Err(Error::DependentBasis);
    }
    let mut aug = Matrix::zeros(n, k + 1);
    for i in 0..n {
        for j in 0..k {
            aug[(i, j)] = basis[j][i].clone();
        }
        aug[(i, k)] = target[i].clone();
    }
    let (red, pivots) = rref(&aug);
    if pivots.contains(&k) {
        return Ok(None);
    }
    Ok(Some((0..k).map(|j| red[(j, k)].clone()).collect()))
}
