use num_traits::{Signed, Zero};
use serde::Serialize;

use super::PlaneOperator;
use crate::error::{Error, Result};
use crate::exactlin::{rank, Rational};

/// Complex Jordan type of a rank-2 skew operator, up to the normalization of its plane.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum JordanType {
    Zero,
    /// Eigenvalues `±i λ`, storing `λ² > 0`.
    ImaginaryPair(Rational),
    /// Eigenvalues `±λ`, storing `λ² > 0`.
    RealPair(Rational),
    /// `M ≠ 0`, `M² = 0`.
    Nilpotent2,
    /// `M² ≠ 0`, `M³ = 0`.
    Nilpotent3,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum JordanTag {
    Zero,
    ImaginaryPair,
    RealPair,
    Nilpotent2,
    Nilpotent3,
}

impl JordanType {
    pub fn tag(&self) -> JordanTag {
        match self {
            JordanType::Zero => JordanTag::Zero,
            JordanType::ImaginaryPair(_) => JordanTag::ImaginaryPair,
            JordanType::RealPair(_) => JordanTag::RealPair,
            JordanType::Nilpotent2 => JordanTag::Nilpotent2,
            JordanType::Nilpotent3 => JordanTag::Nilpotent3,
        }
    }

    pub fn lambda_sq(&self) -> Option<&Rational> {
        match self {
            JordanType::ImaginaryPair(l) | JordanType::RealPair(l) => Some(l),
            _ => None,
        }
    }
}

impl std::fmt::Display for JordanType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.lambda_sq() {
            Some(l) => write!(f, "{:?}(lambda_sq={})", self.tag(), l),
            None => write!(f, "{:?}", self.tag()),
        }
    }
}

pub fn jordan_type(po: &PlaneOperator) -> Result<JordanType> {
    let m = &po.op;
    let r = rank(m);
    if r == 0 {
        return Ok(JordanType::Zero);
    }
    if r != 2 {
        return Err(Error::UnsupportedRank(r));
    }
    let m2 = m * m;
    let two = Rational::from_integer(2.into());
    let c = m2.trace() / (two * &po.gramdet);
    if c.is_positive() {
        return Ok(JordanType::RealPair(c));
    }
    if c.is_negative() {
        return Ok(JordanType::ImaginaryPair(-c));
    }
    debug_assert!(c.is_zero());
    if m2.is_zero() {
        return Ok(JordanType::Nilpotent2);
    }
    if !(&m2 * m).is_zero() {
        return Err(Error::CubeNotZero);
    }
    Ok(JordanType::Nilpotent3)
}
