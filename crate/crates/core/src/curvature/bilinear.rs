use num_traits::Zero;

use super::CurvatureTensor4;
use crate::error::{Error, Result};
use crate::exactlin::{LinearMap, Matrix, Rational, SignatureSpace};

/// An alternating bilinear map `T: A ⊗ A → so(B)`, stored as one operator
/// block `T(a_i, a_j)` per ordered pair of domain basis vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BilinearSkewMap {
    domain: SignatureSpace,
    codomain: SignatureSpace,
    blocks: Vec<Matrix>,
}

/// An alternating bilinear map `χ: A ⊗ A → B`, one vector per ordered basis pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlternatingMap {
    domain: SignatureSpace,
    codomain: SignatureSpace,
    values: Vec<Vec<Rational>>,
}

/// Operator `b ↦ <u, b> v - <v, b> u` on `B`.
fn wedge_operator(space: &SignatureSpace, u: &[Rational], v: &[Rational]) -> Matrix {
    let gu = space.gram().apply(u);
    let gv = space.gram().apply(v);
    let n = space.dim();
    Matrix::from_fn(n, n, |r, c| &v[r] * &gu[c] - &u[r] * &gv[c])
}

impl BilinearSkewMap {
    pub fn zero(domain: SignatureSpace, codomain: SignatureSpace) -> Self {
        let (na, nb) = (domain.dim(), codomain.dim());
        BilinearSkewMap {
            blocks: vec![Matrix::zeros(nb, nb); na * na],
            domain,
            codomain,
        }
    }

    /// Builds the map from its upper-triangular blocks `(i, j) ↦ T(a_i, a_j)`, `i < j`.
    ///
    /// Each block must lie in `so(B)`; missing pairs are zero.
    pub fn from_upper_blocks(
        domain: SignatureSpace,
        codomain: SignatureSpace,
        upper: impl IntoIterator<Item = ((usize, usize), Matrix)>,
    ) -> Result<Self> {
        let mut t = BilinearSkewMap::zero(domain, codomain);
        let (na, nb) = (t.domain.dim(), t.codomain.dim());
        for ((i, j), block) in upper {
            if i >= j || j >= na {
                return Err(Error::BadParams(format!("block index ({i},{j}) must satisfy i < j < {na}")));
            }
            if block.rows() != nb || block.cols() != nb {
                return Err(Error::DimensionMismatch {
                    expected: nb,
                    found: block.rows().max(block.cols()),
                });
            }
            if !(t.codomain.gram() * &block).is_antisymmetric() {
                return Err(Error::NotSkew);
            }
            t.blocks[j * na + i] = -&block;
            t.blocks[i * na + j] = block;
        }
        Ok(t)
    }

    pub fn domain(&self) -> &SignatureSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &SignatureSpace {
        &self.codomain
    }

    pub fn block(&self, i: usize, j: usize) -> &Matrix {
        &self.blocks[i * self.domain.dim() + j]
    }

    /// Nonzero blocks with `i < j`, in lexicographic order.
    pub fn upper_blocks(&self) -> impl Iterator<Item = ((usize, usize), &Matrix)> + '_ {
        let na = self.domain.dim();
        (0..na)
            .flat_map(move |i| (i + 1..na).map(move |j| (i, j)))
            .map(|(i, j)| ((i, j), self.block(i, j)))
            .filter(|(_, b)| !b.is_zero())
    }

    /// `T(a1, a2)` by bilinear expansion.
    pub fn evaluate(&self, a1: &[Rational], a2: &[Rational]) -> Result<Matrix> {
        self.domain.check_vector(a1)?;
        self.domain.check_vector(a2)?;
        let na = self.domain.dim();
        let nb = self.codomain.dim();
        let mut out = Matrix::zeros(nb, nb);
        for i in 0..na {
            for j in i + 1..na {
                let w = &a1[i] * &a2[j] - &a1[j] * &a2[i];
                if w.is_zero() {
                    continue;
                }
                let block = self.block(i, j);
                for r in 0..nb {
                    for c in 0..nb {
                        let b = &block[(r, c)];
                        if !b.is_zero() {
                            out[(r, c)] += &w * b;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> BilinearSkewMap {
        BilinearSkewMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(c)).collect(),
        }
    }

    /// Applies `ψ` to every block: the map `a1, a2 ↦ ψ T(a1, a2)` into a
    /// space carrying a different inner product.
    pub fn post_compose(&self, psi: &Matrix, codomain: SignatureSpace) -> Result<BilinearSkewMap> {
        if codomain.dim() != self.codomain.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.codomain.dim(),
                found: codomain.dim(),
            });
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| psi.try_mul(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(BilinearSkewMap {
            domain: self.domain.clone(),
            codomain,
            blocks,
        })
    }

    /// Every block lies in `so(B)` and the map is alternating.
    pub fn is_well_formed(&self) -> bool {
        let na = self.domain.dim();
        (0..na).all(|i| {
            (0..na).all(|j| {
                *self.block(i, j) == -self.block(j, i)
                    && (self.codomain.gram() * self.block(i, j)).is_antisymmetric()
            })
        })
    }

    /// The 4-tensor `T(a_i, a_j, b_k, b_l) = <T(a_i, a_j) b_k, b_l>` when `A = B`.
    pub fn to_tensor(&self) -> Result<CurvatureTensor4> {
        if self.domain != self.codomain {
            return Err(Error::BadParams(
                "a 4-tensor view needs domain equal to codomain".into(),
            ));
        }
        let n = self.domain.dim();
        let lowered: Vec<Matrix> = self
            .blocks
            .iter()
            .map(|b| &b.transpose() * self.codomain.gram())
            .collect();
        Ok(CurvatureTensor4::from_fn(self.domain.clone(), |i, j, k, l| {
            lowered[i * n + j][(k, l)].clone()
        }))
    }

    /// The decoupled view of a tensor: `T(e_i, e_j) = R(e_i, e_j)` as operators.
    pub fn from_tensor(r: &CurvatureTensor4) -> Result<BilinearSkewMap> {
        let space = r.space().clone();
        let n = space.dim();
        let mut upper = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let op = r.curvature_operator(&space.basis_vector(i), &space.basis_vector(j))?;
                upper.push(((i, j), op));
            }
        }
        let t = BilinearSkewMap::from_upper_blocks(space.clone(), space, upper)?;
        if t.to_tensor()? != *r {
            return Err(Error::BadParams(
                "tensor is not antisymmetric in both index pairs".into(),
            ));
        }
        Ok(t)
    }
}

impl AlternatingMap {
    /// From values `χ(a_i, a_j)` for `i < j`; missing pairs are zero.
    pub fn from_upper_values(
        domain: SignatureSpace,
        codomain: SignatureSpace,
        upper: impl IntoIterator<Item = ((usize, usize), Vec<Rational>)>,
    ) -> Result<Self> {
        let (na, nb) = (domain.dim(), codomain.dim());
        let mut values = vec![vec![Rational::zero(); nb]; na * na];
        for ((i, j), v) in upper {
            if i >= j || j >= na {
                return Err(Error::BadParams(format!("pair ({i},{j}) must satisfy i < j < {na}")));
            }
            codomain.check_vector(&v)?;
            values[j * na + i] = v.iter().map(|x| -x).collect();
            values[i * na + j] = v;
        }
        Ok(AlternatingMap {
            domain,
            codomain,
            values,
        })
    }

    pub fn domain(&self) -> &SignatureSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &SignatureSpace {
        &self.codomain
    }

    pub fn value(&self, i: usize, j: usize) -> &[Rational] {
        &self.values[i * self.domain.dim() + j]
    }

    /// Nonzero values with `i < j`.
    pub fn upper_values(&self) -> impl Iterator<Item = ((usize, usize), &[Rational])> + '_ {
        let na = self.domain.dim();
        (0..na)
            .flat_map(move |i| (i + 1..na).map(move |j| (i, j)))
            .map(|(i, j)| ((i, j), self.value(i, j)))
            .filter(|(_, v)| v.iter().any(|x| !x.is_zero()))
    }

    pub fn evaluate(&self, a1: &[Rational], a2: &[Rational]) -> Result<Vec<Rational>> {
        self.domain.check_vector(a1)?;
        self.domain.check_vector(a2)?;
        let na = self.domain.dim();
        let mut out = vec![Rational::zero(); self.codomain.dim()];
        for i in 0..na {
            for j in i + 1..na {
                let w = &a1[i] * &a2[j] - &a1[j] * &a2[i];
                if w.is_zero() {
                    continue;
                }
                for (o, x) in out.iter_mut().zip(self.value(i, j)) {
                    *o += &w * x;
                }
            }
        }
        Ok(out)
    }

    /// Applies `ψ` to every value.
    pub fn post_compose(&self, psi: &Matrix, codomain: SignatureSpace) -> AlternatingMap {
        AlternatingMap {
            domain: self.domain.clone(),
            codomain,
            values: self.values.iter().map(|v| psi.apply(v)).collect(),
        }
    }
}

/// `T_φ(a1, a2) b = <φ a2, b> φ a1 - <φ a1, b> φ a2`.
pub fn make_t_phi(phi: &LinearMap) -> BilinearSkewMap {
    let na = phi.domain().dim();
    let cols: Vec<Vec<Rational>> = (0..na).map(|j| phi.matrix().column(j)).collect();
    let upper = (0..na).flat_map(|i| (i + 1..na).map(move |j| (i, j))).map(|(i, j)| {
        ((i, j), wedge_operator(phi.codomain(), &cols[j], &cols[i]))
    });
    BilinearSkewMap::from_upper_blocks(phi.domain().clone(), phi.codomain().clone(), upper)
        .expect("T_phi blocks lie in so(B)")
}

/// `T_{χ,ξ}(a1, a2) b = <χ(a1, a2), b> ξ - <ξ, b> χ(a1, a2)`.
pub fn make_t_chi_xi(chi: &AlternatingMap, xi: &[Rational]) -> Result<BilinearSkewMap> {
    chi.codomain().check_vector(xi)?;
    let na = chi.domain().dim();
    let upper: Vec<_> = (0..na)
        .flat_map(|i| (i + 1..na).map(move |j| (i, j)))
        .map(|(i, j)| ((i, j), wedge_operator(chi.codomain(), chi.value(i, j), xi)))
        .collect();
    BilinearSkewMap::from_upper_blocks(chi.domain().clone(), chi.codomain().clone(), upper)
}
