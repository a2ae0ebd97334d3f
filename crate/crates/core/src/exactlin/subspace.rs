use num_traits::Zero;

use super::elim::{kernel_basis, rank, rref};
use super::{Matrix, Rational};
use crate::error::{Error, Result};

/// A linear subspace of `Q^n`, stored by its reduced row echelon basis.
///
/// The echelon basis is unique, so two subspaces are equal exactly when
/// their stored bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient_dim];
                v[i] = Rational::from_integer(1.into());
                v
            })
            .collect();
        Subspace { ambient_dim, basis }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: v.len(),
            });
        }
        if vectors.is_empty() {
            return Ok(Subspace::zero(ambient_dim));
        }
        let m = Matrix::from_rows(vectors.to_vec())?;
        let (red, pivots) = rref(&m);
        let basis = (0..pivots.len()).map(|i| red.row(i).to_vec()).collect();
        Ok(Subspace { ambient_dim, basis })
    }

    /// Column space of a matrix.
    pub fn column_space(m: &Matrix) -> Self {
        let cols: Vec<Vec<Rational>> = (0..m.cols()).map(|j| m.column(j)).collect();
        Subspace::span(m.rows(), &cols).expect("columns have the row count as length")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Basis vectors as matrix columns (`ambient_dim × dim`).
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient_dim, &self.basis)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank(&Matrix::from_rows(rows).expect("uniform lengths")) == self.dim()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, &all)
    }

    /// Intersection, checked against `dim(s1) + dim(s2) = dim(s1 + s2) + dim(s1 ∩ s2)`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient_dim;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(n));
        }
        let (a, b) = (self.dim(), other.dim());
        // Solve Σ xᵢ uᵢ − Σ yⱼ wⱼ = 0.
        let m = Matrix::from_fn(n, a + b, |i, j| {
            if j < a {
                self.basis[j][i].clone()
            } else {
                -&other.basis[j - a][i]
            }
        });
        let relations = kernel_basis(&m);
        let vectors: Vec<Vec<Rational>> = relations
            .basis()
            .iter()
            .map(|coeffs| {
                let mut v = vec![Rational::zero(); n];
                for (x, u) in coeffs[..a].iter().zip(&self.basis) {
                    if x.is_zero() {
                        continue;
                    }
                    for (vi, ui) in v.iter_mut().zip(u) {
                        *vi += x * ui;
                    }
                }
                v
            })
            .collect();
        let out = Subspace::span(n, &vectors)?;
        let sum = self.sum(other)?;
        assert_eq!(
            a + b,
            sum.dim() + out.dim(),
            "intersection violates the dimension identity"
        );
        Ok(out)
    }

    /// Any nonzero vector when the subspace is a line.
    pub fn line_representative(&self) -> Option<&[Rational]> {
        (self.dim() == 1).then(|| self.basis[0].as_slice())
    }
}
