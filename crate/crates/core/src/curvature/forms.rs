use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Rational, SignatureSpace};

/// The 2-form `ω(b1, b2) = <t b1, b2>` of a skew operator, as its Gram-style matrix.
pub fn omega(t: &Matrix, space: &SignatureSpace) -> Result<Matrix> {
    if t.rows() != space.dim() || t.cols() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: t.rows().max(t.cols()),
        });
    }
    let w = &t.transpose() * space.gram();
    if !w.is_antisymmetric() {
        return Err(Error::NotSkew);
    }
    Ok(w)
}

/// Components `(ω∧ω)(i,j,k,l)` for `i<j<k<l`, each `2(ω_ij ω_kl - ω_ik ω_jl + ω_il ω_jk)`.
///
/// The full array is alternating, so these determine it.
pub fn wedge_square(w: &Matrix) -> Vec<([usize; 4], Rational)> {
    let n = w.rows();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let v = &w[(i, j)] * &w[(k, l)] - &w[(i, k)] * &w[(j, l)]
                        + &w[(i, l)] * &w[(j, k)];
                    out.push(([i, j, k, l], v * Rational::from_integer(2.into())));
                }
            }
        }
    }
    out
}

pub fn wedge_square_zero(w: &Matrix) -> bool {
    wedge_square(w).iter().all(|(_, v)| v.is_zero())
}
