use num_traits::{Signed, Zero};

use super::{BilinearSkewMap, CurvatureTensor4};
use crate::error::{Error, Result};
use crate::exactlin::{rank, Matrix, Rational, SignatureSpace};

/// Anything that assigns a skew operator to a pair of domain vectors.
pub trait SkewFamily {
    /// Space the plane vectors live in.
    fn domain(&self) -> &SignatureSpace;
    /// Space the operator acts on.
    fn target(&self) -> &SignatureSpace;
    /// The unnormalized operator for the pair `(x, y)`.
    fn operator(&self, x: &[Rational], y: &[Rational]) -> Result<Matrix>;
}

impl SkewFamily for CurvatureTensor4 {
    fn domain(&self) -> &SignatureSpace {
        self.space()
    }

    fn target(&self) -> &SignatureSpace {
        self.space()
    }

    fn operator(&self, x: &[Rational], y: &[Rational]) -> Result<Matrix> {
        self.curvature_operator(x, y)
    }
}

impl SkewFamily for BilinearSkewMap {
    fn domain(&self) -> &SignatureSpace {
        BilinearSkewMap::domain(self)
    }

    fn target(&self) -> &SignatureSpace {
        self.codomain()
    }

    fn operator(&self, x: &[Rational], y: &[Rational]) -> Result<Matrix> {
        self.evaluate(x, y)
    }
}

/// Unnormalized operator of an oriented plane together with the plane's Gram determinant.
///
/// Normalized invariants are rational functions of the pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlaneOperator {
    pub op: Matrix,
    pub gramdet: Rational,
}

impl PlaneOperator {
    pub fn rank(&self) -> usize {
        rank(&self.op)
    }
}

fn check_independent(v1: &[Rational], v2: &[Rational]) -> Result<()> {
    let n = v1.len();
    let wedge_zero = (0..n).all(|i| (i + 1..n).all(|j| (&v1[i] * &v2[j] - &v1[j] * &v2[i]).is_zero()));
    if wedge_zero {
        return Err(Error::Degenerate);
    }
    Ok(())
}

/// Operator of the spacelike plane spanned by `v1, v2`.
pub fn plane_operator<F: SkewFamily + ?Sized>(
    family: &F,
    v1: &[Rational],
    v2: &[Rational],
) -> Result<PlaneOperator> {
    let space = family.domain();
    space.check_vector(v1)?;
    space.check_vector(v2)?;
    check_independent(v1, v2)?;
    let gramdet = space.plane_gram_det(v1, v2)?;
    if !space.is_spacelike_plane(v1, v2)? {
        return Err(Error::NotSpacelike(format!(
            "plane has <v1,v1> = {} and Gram determinant {}",
            space.inner(v1, v1)?,
            gramdet
        )));
    }
    Ok(PlaneOperator {
        op: family.operator(v1, v2)?,
        gramdet,
    })
}

/// Rank of the operator on any nondegenerate plane, timelike or mixed included.
pub fn plane_rank_any<F: SkewFamily + ?Sized>(
    family: &F,
    v1: &[Rational],
    v2: &[Rational],
) -> Result<usize> {
    let space = family.domain();
    space.check_vector(v1)?;
    space.check_vector(v2)?;
    check_independent(v1, v2)?;
    let gramdet = space.plane_gram_det(v1, v2)?;
    if gramdet.is_zero() {
        return Err(Error::NotSpacelike("plane is degenerate".into()));
    }
    Ok(rank(&family.operator(v1, v2)?))
}

/// True when the form restricted to the plane is negative definite.
pub fn is_timelike_plane(space: &SignatureSpace, v1: &[Rational], v2: &[Rational]) -> Result<bool> {
    Ok(space.inner(v1, v1)?.is_negative() && space.plane_gram_det(v1, v2)?.is_positive())
}
