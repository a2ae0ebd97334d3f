//! Three fixed constructions: a rank-2 map on `q = 4` that has no canonical form, a
//! self-adjoint map whose Jordan type changes between planes, and one with
//! totally isotropic image.

use num_traits::{One, Zero};

use crate::curvature::BilinearSkewMap;
use crate::error::{Error, Result};
use crate::exactlin::{LinearMap, Matrix, Rational, SignatureSpace};
use crate::sampling::isotropic_pattern;

pub type Plane = (Vec<Rational>, Vec<Rational>);

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FixturePayload {
    SkewMap(BilinearSkewMap),
    Map(LinearMap),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub p: usize,
    pub q: usize,
    pub payload: FixturePayload,
}

pub const FIXTURE_NAMES: [&str; 3] = ["8.1", "8.2", "8.3"];

/// Looks a fixture up by its CLI name; `p` is the timelike dimension.
pub fn fixture(name: &str, p: usize) -> Result<Fixture> {
    match name {
        "8.1" => Ok(Fixture {
            name: "8.1",
            p,
            q: 4,
            payload: FixturePayload::SkewMap(orientation_map(p)),
        }),
        "8.2" => Ok(Fixture {
            name: "8.2",
            p,
            q: p + 1,
            payload: FixturePayload::Map(mixed_nilpotent_phi(p)?),
        }),
        "8.3" => Ok(Fixture {
            name: "8.3",
            p,
            q: p.saturating_sub(1),
            payload: FixturePayload::Map(isotropic_phi(p)?),
        }),
        _ => Err(Error::BadParams(format!(
            "unknown fixture {name:?}; expected one of {}",
            FIXTURE_NAMES.join(", ")
        ))),
    }
}

fn levi_civita(idx: [usize; 4]) -> i64 {
    let mut v = idx;
    let mut sign = 1;
    for i in 0..4 {
        for j in i + 1..4 {
            if v[i] == v[j] {
                return 0;
            }
            if v[i] > v[j] {
                v.swap(i, j);
                sign = -sign;
            }
        }
    }
    sign
}

/// `<T(v1, v2) v3, v4> = det(σv1, σv2, v3, v4)` from `(p, 4)` into `(0, 4)`,
/// where `σ` keeps the last four coordinates.
pub fn orientation_map(p: usize) -> BilinearSkewMap {
    let domain = SignatureSpace::standard(p, 4);
    let codomain = SignatureSpace::standard(0, 4);
    let mut upper = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            // codomain gram is the identity, so block[l][k] = ε_ijkl
            let block = Matrix::from_fn(4, 4, |l, k| {
                Rational::from_integer(levi_civita([i, j, k, l]).into())
            });
            upper.push(((p + i, p + j), block));
        }
    }
    BilinearSkewMap::from_upper_blocks(domain, codomain, upper).expect("blocks are skew")
}

/// On `(p, p + 1)`: `e_i^± ↦ ±(e_i^- + e_i^+)` for `i ≤ p`, `e_{p+1}^+ ↦ e_{p+1}^+`.
pub fn mixed_nilpotent_phi(p: usize) -> Result<LinearMap> {
    if p + 1 < 5 {
        return Err(Error::BadParams(format!("needs q = p + 1 >= 5, got p = {p}")));
    }
    let q = p + 1;
    let mut m = isotropic_pattern(p, q, p);
    m[(2 * p, 2 * p)] = Rational::one();
    LinearMap::endo(SignatureSpace::standard(p, q), m)
}

/// On `(p, p - 1)`: `e_i^± ↦ ±(e_i^- + e_i^+)` for `i ≤ q`, `e_{q+1}^- ↦ 0`.
pub fn isotropic_phi(p: usize) -> Result<LinearMap> {
    if p < 6 {
        return Err(Error::BadParams(format!("needs q = p - 1 >= 5, got p = {p}")));
    }
    let q = p - 1;
    LinearMap::endo(SignatureSpace::standard(p, q), isotropic_pattern(p, q, q))
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// `span{e_1^+, e_2^+}` and `span{e_1^+, e_{p+1}^+}` in `(p, p + 1)`.
pub fn mixed_nilpotent_planes(p: usize) -> (Plane, Plane) {
    let n = 2 * p + 1;
    (
        (unit(n, p), unit(n, p + 1)),
        (unit(n, p), unit(n, 2 * p)),
    )
}

/// The timelike planes `span{e_1^-, e_i^-}` for `i = 2, …, p`.
pub fn timelike_planes(p: usize, q: usize) -> Vec<Plane> {
    let n = p + q;
    (1..p).map(|i| (unit(n, 0), unit(n, i))).collect()
}
