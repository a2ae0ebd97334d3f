use super::elim::kernel_basis;
use super::{Matrix, Rational, SignatureSpace, Subspace};
use crate::error::{Error, Result};

/// A linear map between two inner-product spaces, stored as a
/// `codomain.dim() × domain.dim()` matrix acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearMap {
    domain: SignatureSpace,
    codomain: SignatureSpace,
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(domain: SignatureSpace, codomain: SignatureSpace, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != codomain.dim() {
            return Err(Error::DimensionMismatch {
                expected: codomain.dim(),
                found: matrix.rows(),
            });
        }
        if matrix.cols() != domain.dim() {
            return Err(Error::DimensionMismatch {
                expected: domain.dim(),
                found: matrix.cols(),
            });
        }
        Ok(LinearMap {
            domain,
            codomain,
            matrix,
        })
    }

    /// Endomorphism of a single space.
    pub fn endo(space: SignatureSpace, matrix: Matrix) -> Result<Self> {
        LinearMap::new(space.clone(), space, matrix)
    }

    pub fn identity(space: SignatureSpace) -> Self {
        let n = space.dim();
        LinearMap::endo(space, Matrix::identity(n)).expect("square identity")
    }

    pub fn domain(&self) -> &SignatureSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &SignatureSpace {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        self.domain.check_vector(v)?;
        Ok(self.matrix.apply(v))
    }

    pub fn scale(&self, c: &Rational) -> LinearMap {
        LinearMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.scale(c),
        }
    }

    /// Pulls the codomain form back along the map: the matrix of `<φ v1, φ v2>`.
    pub fn pullback_gram(&self) -> Matrix {
        &(&self.matrix.transpose() * self.codomain.gram()) * &self.matrix
    }

    /// Matrix `L` with `L[i][k] = <φ e_i, e_k>`; only meaningful for endomorphisms.
    pub fn twisted_gram(&self) -> Matrix {
        &self.matrix.transpose() * self.codomain.gram()
    }

    pub fn kernel(&self) -> Subspace {
        kernel_basis(&self.matrix)
    }

    /// Same matrix read against different spaces of equal dimension.
    pub fn with_spaces(&self, domain: SignatureSpace, codomain: SignatureSpace) -> Result<Self> {
        LinearMap::new(domain, codomain, self.matrix.clone())
    }

    /// `ψ ∘ φ` for an endomorphism `ψ` of the codomain.
    pub fn post_compose(&self, psi: &Matrix) -> Result<Self> {
        LinearMap::new(
            self.domain.clone(),
            self.codomain.clone(),
            psi.try_mul(&self.matrix)?,
        )
    }
}
