use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{LinearMap, Matrix, Rational, SignatureSpace};

/// A 4-tensor `R(i, j, k, l)` on one inner-product space, stored densely.
///
/// Whether it is an algebraic curvature tensor is a property checked by
/// [`CurvatureTensor4::validate_symmetries`], not an invariant of the type.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurvatureTensor4 {
    space: SignatureSpace,
    entries: Vec<Rational>,
    // Cached at construction; enables the bivector contraction fast path.
    first_pair_skew: bool,
    second_pair_skew: bool,
}

/// Which of the curvature identities hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    /// `R(x,y,z,w) = -R(y,x,z,w) = -R(x,y,w,z)`
    pub antisymmetry: bool,
    /// `R(x,y,z,w) = R(z,w,x,y)`
    pub pair_symmetry: bool,
    /// `R(x,y,z,w) + R(y,z,x,w) + R(z,x,y,w) = 0`
    pub first_bianchi: bool,
}

impl SymmetryReport {
    pub fn all(&self) -> bool {
        self.antisymmetry && self.pair_symmetry && self.first_bianchi
    }
}

impl CurvatureTensor4 {
    pub fn zero(space: SignatureSpace) -> Self {
        let n = space.dim();
        CurvatureTensor4::from_entries(space, vec![Rational::zero(); n * n * n * n])
            .expect("entry count matches")
    }

    pub fn from_entries(space: SignatureSpace, entries: Vec<Rational>) -> Result<Self> {
        let n = space.dim();
        if entries.len() != n * n * n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n * n * n,
                found: entries.len(),
            });
        }
        let mut t = CurvatureTensor4 {
            space,
            entries,
            first_pair_skew: false,
            second_pair_skew: false,
        };
        t.first_pair_skew = t.check_first_pair_skew();
        t.second_pair_skew = t.check_second_pair_skew();
        Ok(t)
    }

    pub fn from_fn(
        space: SignatureSpace,
        mut f: impl FnMut(usize, usize, usize, usize) -> Rational,
    ) -> Self {
        let n = space.dim();
        let mut entries = Vec::with_capacity(n * n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        entries.push(f(i, j, k, l));
                    }
                }
            }
        }
        CurvatureTensor4::from_entries(space, entries).expect("entry count matches")
    }

    /// Builds a tensor from sparse `(i, j, k, l, value)` entries; later duplicates overwrite.
    pub fn from_sparse(
        space: SignatureSpace,
        sparse: impl IntoIterator<Item = ([usize; 4], Rational)>,
    ) -> Result<Self> {
        let n = space.dim();
        let mut entries = vec![Rational::zero(); n * n * n * n];
        for (idx, v) in sparse {
            if let Some(&bad) = idx.iter().find(|&&x| x >= n) {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: bad + 1,
                });
            }
            entries[((idx[0] * n + idx[1]) * n + idx[2]) * n + idx[3]] = v;
        }
        CurvatureTensor4::from_entries(space, entries)
    }

    pub fn space(&self) -> &SignatureSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        let n = self.dim();
        ((i * n + j) * n + k) * n + l
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &Rational {
        &self.entries[self.idx(i, j, k, l)]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// Nonzero entries in lexicographic index order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = ([usize; 4], &Rational)> + '_ {
        let n = self.dim();
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(pos, v)| {
                (
                    [pos / (n * n * n), (pos / (n * n)) % n, (pos / n) % n, pos % n],
                    v,
                )
            })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> CurvatureTensor4 {
        CurvatureTensor4 {
            space: self.space.clone(),
            entries: self.entries.iter().map(|x| x * c).collect(),
            first_pair_skew: self.first_pair_skew,
            second_pair_skew: self.second_pair_skew,
        }
    }

    fn check_first_pair_skew(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (i..n).all(|j| {
                (0..n).all(|k| (0..n).all(|l| *self.get(i, j, k, l) == -self.get(j, i, k, l)))
            })
        })
    }

    fn check_second_pair_skew(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| (k..n).all(|l| *self.get(i, j, k, l) == -self.get(i, j, l, k)))
            })
        })
    }

    /// Checks the three curvature identities over every index tuple.
    pub fn validate_symmetries(&self) -> SymmetryReport {
        let n = self.dim();
        let antisymmetry = self.first_pair_skew && self.second_pair_skew;
        let mut pair_symmetry = true;
        let mut first_bianchi = true;
        'outer: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        if pair_symmetry && self.get(i, j, k, l) != self.get(k, l, i, j) {
                            pair_symmetry = false;
                        }
                        if first_bianchi {
                            let s = self.get(i, j, k, l) + self.get(j, k, i, l) + self.get(k, i, j, l);
                            if !s.is_zero() {
                                first_bianchi = false;
                            }
                        }
                        if !pair_symmetry && !first_bianchi {
                            break 'outer;
                        }
                    }
                }
            }
        }
        SymmetryReport {
            antisymmetry,
            pair_symmetry,
            first_bianchi,
        }
    }

    /// The bilinear form `(z, w) ↦ R(x, y, z, w)` as a matrix.
    pub fn contract_front(&self, x: &[Rational], y: &[Rational]) -> Result<Matrix> {
        self.space.check_vector(x)?;
        self.space.check_vector(y)?;
        let n = self.dim();
        let mut q = Matrix::zeros(n, n);
        let accumulate = |w: &Rational, i: usize, j: usize, q: &mut Matrix| {
            let base = self.idx(i, j, 0, 0);
            for k in 0..n {
                let lo = if self.second_pair_skew { k + 1 } else { 0 };
                for l in lo..n {
                    let r = &self.entries[base + k * n + l];
                    if !r.is_zero() {
                        q[(k, l)] += w * r;
                    }
                }
            }
        };
        if self.first_pair_skew {
            for i in 0..n {
                for j in i + 1..n {
                    let w = &x[i] * &y[j] - &x[j] * &y[i];
                    if !w.is_zero() {
                        accumulate(&w, i, j, &mut q);
                    }
                }
            }
        } else {
            for i in 0..n {
                for j in 0..n {
                    let w = &x[i] * &y[j];
                    if !w.is_zero() {
                        accumulate(&w, i, j, &mut q);
                    }
                }
            }
        }
        if self.second_pair_skew {
            for k in 0..n {
                for l in k + 1..n {
                    q[(l, k)] = -&q[(k, l)];
                }
            }
        }
        Ok(q)
    }

    /// Operator `M = R(x, y)` characterised by `<M z, w> = R(x, y, z, w)`.
    pub fn curvature_operator(&self, x: &[Rational], y: &[Rational]) -> Result<Matrix> {
        let q = self.contract_front(x, y)?;
        Ok(self.space.gram_inv() * &q.transpose())
    }

    /// Jacobi operator `y ↦ R(y, x) x`.
    pub fn jacobi(&self, x: &[Rational]) -> Result<Matrix> {
        self.space.check_vector(x)?;
        let n = self.dim();
        // q[k][l] = R(e_k, x, x, e_l)
        let q = Matrix::from_fn(n, n, |k, l| {
            let mut acc = Rational::zero();
            for a in 0..n {
                if x[a].is_zero() {
                    continue;
                }
                for b in 0..n {
                    if x[b].is_zero() {
                        continue;
                    }
                    let r = self.get(k, a, b, l);
                    if !r.is_zero() {
                        acc += &x[a] * &x[b] * r;
                    }
                }
            }
            acc
        });
        Ok(self.space.gram_inv() * &q.transpose())
    }
}

/// `R_φ(x,y,z,w) = <φy,z><φx,w> - <φx,z><φy,w>` for an endomorphism `φ`.
pub fn make_r_phi(phi: &LinearMap) -> Result<CurvatureTensor4> {
    if !phi.is_endomorphism() {
        return Err(Error::BadParams(
            "R_phi needs a map from a space to itself".into(),
        ));
    }
    let l = phi.twisted_gram();
    let space = phi.domain().clone();
    Ok(CurvatureTensor4::from_fn(space, |i, j, k, m| {
        &l[(j, k)] * &l[(i, m)] - &l[(i, k)] * &l[(j, m)]
    }))
}
