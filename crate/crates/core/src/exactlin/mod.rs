//! Exact rational linear algebra over inner-product spaces of arbitrary signature.
//!
//! Everything here works over `BigRational`; no floating point is ever involved,
//! so rank, nilpotency and sign questions are decided exactly.

mod elim;
mod linmap;
mod matrix;
mod subspace;

pub use elim::{
    congruence_diagonalize, kernel_basis, rank, rref, signature_of_symmetric, solve_in_span,
    Inertia,
};
pub use linmap::LinearMap;
pub use matrix::Matrix;
pub use subspace::Subspace;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn vec_i64(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale_vec(c: &Rational, v: &[Rational]) -> Vec<Rational> {
    v.iter().map(|x| c * x).collect()
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
}

/// A real vector space with a non-degenerate symmetric inner product of signature `(p, q)`.
///
/// `p` counts timelike (negative) directions and `q` spacelike (positive) ones.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignatureSpace {
    p: usize,
    q: usize,
    gram: Matrix,
    gram_inv: Matrix,
}

impl SignatureSpace {
    /// `R^(p,q)` with Gram matrix `diag(-1 × p, +1 × q)`.
    pub fn standard(p: usize, q: usize) -> Self {
        let diag: Vec<Rational> = (0..p + q)
            .map(|i| if i < p { -Rational::one() } else { Rational::one() })
            .collect();
        let gram = Matrix::diagonal(&diag);
        SignatureSpace {
            p,
            q,
            gram_inv: gram.clone(),
            gram,
        }
    }

    /// Space with an arbitrary symmetric non-degenerate Gram matrix.
    pub fn from_gram(gram: Matrix) -> Result<Self> {
        let inertia = signature_of_symmetric(&gram)?;
        if inertia.zero != 0 {
            return Err(Error::DegenerateGram);
        }
        let gram_inv = gram.inverse().ok_or(Error::DegenerateGram)?;
        Ok(SignatureSpace {
            p: inertia.negative,
            q: inertia.positive,
            gram,
            gram_inv,
        })
    }

    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn gram_inv(&self) -> &Matrix {
        &self.gram_inv
    }

    pub fn is_standard(&self) -> bool {
        *self == SignatureSpace::standard(self.p, self.q)
    }

    pub fn check_vector(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `v1ᵀ · gram · v2`.
    pub fn inner(&self, v1: &[Rational], v2: &[Rational]) -> Result<Rational> {
        self.check_vector(v1)?;
        self.check_vector(v2)?;
        Ok(dot(v1, &self.gram.apply(v2)))
    }

    /// Gram determinant `<v1,v1><v2,v2> - <v1,v2>^2` of a pair.
    pub fn plane_gram_det(&self, v1: &[Rational], v2: &[Rational]) -> Result<Rational> {
        let a = self.inner(v1, v1)?;
        let b = self.inner(v2, v2)?;
        let c = self.inner(v1, v2)?;
        Ok(a * b - &c * &c)
    }

    /// True when the pair spans a 2-plane on which the form is positive definite.
    pub fn is_spacelike_plane(&self, v1: &[Rational], v2: &[Rational]) -> Result<bool> {
        Ok(self.inner(v1, v1)?.is_positive() && self.plane_gram_det(v1, v2)?.is_positive())
    }

    /// Standard basis vector `e_i`.
    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    /// Gram matrix of the form restricted to the span of the given columns.
    pub fn restricted_gram(&self, basis: &Matrix) -> Matrix {
        &(&basis.transpose() * &self.gram) * basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vec<Rational> {
        SignatureSpace::standard(0, n).basis_vector(i)
    }

    #[test]
    fn inner_product_examples() {
        let s04 = SignatureSpace::standard(0, 4);
        assert_eq!(s04.inner(&e(4, 0), &e(4, 0)).unwrap(), rat(1));
        let s14 = SignatureSpace::standard(1, 4);
        let em = s14.basis_vector(0);
        assert_eq!(s14.inner(&em, &em).unwrap(), rat(-1));
        let v = vec_i64(&[1, 2, 0, 0, 0]);
        assert_eq!(s14.inner(&v, &v).unwrap(), rat(3));
        assert!(matches!(
            s14.inner(&v, &e(4, 0)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::zeros(4, 4)), 0);
        assert_eq!(rank(&Matrix::identity(5)), 5);
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m), 2);
        let frac = Matrix::from_fn(2, 2, |i, j| ratio(1 + i as i64, 2 + j as i64));
        assert_eq!(rank(&frac), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Matrix::identity(4)).is_zero());
        assert_eq!(kernel_basis(&Matrix::zeros(3, 3)), Subspace::full(3));
        let m = Matrix::from_i64(&[&[1, 1, 0], &[0, 0, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k, Subspace::span(3, &[vec_i64(&[1, -1, 0])]).unwrap());
    }

    #[test]
    fn intersect_examples() {
        let s1 = Subspace::span(3, &[e(3, 0), e(3, 1)]).unwrap();
        let s2 = Subspace::span(3, &[e(3, 1), e(3, 2)]).unwrap();
        assert_eq!(s1.intersect(&s2).unwrap(), Subspace::span(3, &[e(3, 1)]).unwrap());
        assert_eq!(s1.intersect(&s1).unwrap(), s1);
        assert_eq!(s1.intersect(&Subspace::full(3)).unwrap(), s1);
        assert!(matches!(
            s1.intersect(&Subspace::full(4)),
            Err(Error::AmbientMismatch(3, 4))
        ));
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let a = Subspace::span(3, &[vec_i64(&[1, 1, 0]), vec_i64(&[0, 1, 1])]).unwrap();
        let b = Subspace::span(3, &[vec_i64(&[1, 2, 1]), vec_i64(&[2, 1, -1])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn inertia_examples() {
        let g = SignatureSpace::standard(2, 3);
        assert_eq!(
            signature_of_symmetric(g.gram()).unwrap(),
            Inertia {
                positive: 3,
                negative: 2,
                zero: 0
            }
        );
        assert_eq!(
            signature_of_symmetric(&Matrix::zeros(4, 4)).unwrap(),
            Inertia {
                positive: 0,
                negative: 0,
                zero: 4
            }
        );
        // hyperbolic plane: zero diagonal
        let h = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        let i = signature_of_symmetric(&h).unwrap();
        assert_eq!((i.positive, i.negative, i.zero), (1, 1, 0));
        let ns = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(signature_of_symmetric(&ns), Err(Error::NotSymmetric));
    }

    #[test]
    fn congruence_diagonalize_is_a_congruence() {
        let m = Matrix::from_i64(&[&[0, 2, 1], &[2, 0, 3], &[1, 3, 0]]);
        let (d, c) = congruence_diagonalize(&m);
        let lhs = &(&c.transpose() * &m) * &c;
        assert_eq!(lhs, Matrix::diagonal(&d));
        assert_eq!(rank(&c), 3);
    }

    #[test]
    fn solve_in_span_examples() {
        let b = vec![e(3, 0), e(3, 1)];
        assert_eq!(
            solve_in_span(&vec_i64(&[1, 1, 0]), &b).unwrap(),
            Some(vec![rat(1), rat(1)])
        );
        assert_eq!(solve_in_span(&e(3, 2), &b).unwrap(), None);
        let target = vec![ratio(3, 2), rat(0)];
        assert_eq!(
            solve_in_span(&target, &[vec_i64(&[3, 0])]).unwrap(),
            Some(vec![ratio(1, 2)])
        );
        assert_eq!(
            solve_in_span(&e(3, 0), &[e(3, 0), vec_i64(&[2, 0, 0])]),
            Err(Error::DependentBasis)
        );
    }

    #[test]
    fn from_gram_reads_signature() {
        let g = Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 2]]);
        let s = SignatureSpace::from_gram(g).unwrap();
        assert_eq!((s.p(), s.q()), (1, 2));
        assert!(!s.is_standard());
        assert_eq!(
            SignatureSpace::from_gram(Matrix::from_i64(&[&[1, 1], &[1, 1]])),
            Err(Error::DegenerateGram)
        );
    }

    #[test]
    fn perfect_square_roots() {
        assert_eq!(rational_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rational_sqrt(&rat(2)), None);
        assert_eq!(rational_sqrt(&rat(-4)), None);
    }
}
