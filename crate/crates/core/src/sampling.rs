//! Seeded generators. Every draw is a pure function of `(seed, stream, index)`,
//! so loops over sample indices give the same results in any order.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curvature::AlternatingMap;
use crate::error::{Error, Result};
use crate::exactlin::{
    kernel_basis, rank, rat, signature_of_symmetric, LinearMap, Matrix, Rational, SignatureSpace,
};

/// Independent random streams derived from one user seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Plane = 1,
    Phi = 2,
    Skew = 3,
    ChiXi = 4,
    Probe = 5,
    Family = 6,
    Point = 7,
    Witness = 8,
    Partner = 9,
}

const PLANE_RETRIES: usize = 10_000;
const GENERATOR_RETRIES: usize = 200;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(seed: u64, stream: Stream, index: u64) -> u64 {
    splitmix(splitmix(seed ^ (stream as u64).wrapping_mul(0xA24B_AED4_963E_E407)) ^ index)
}

pub fn rng_for(seed: u64, stream: Stream, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, stream, index))
}

pub fn random_int_vector(rng: &mut impl Rng, n: usize, bound: i64) -> Vec<Rational> {
    (0..n).map(|_| rat(rng.gen_range(-bound..=bound))).collect()
}

pub fn random_int_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rat(rng.gen_range(-bound..=bound)))
}

/// Integer pair spanning a spacelike plane, entries in `[-bound, bound]`.
pub fn random_spacelike_plane(
    space: &SignatureSpace,
    seed: u64,
    bound: i64,
) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let mut rng = rng_for(seed, Stream::Plane, 0);
    spacelike_plane_from(space, &mut rng, bound)
}

pub fn spacelike_plane_from(
    space: &SignatureSpace,
    rng: &mut impl Rng,
    bound: i64,
) -> Result<(Vec<Rational>, Vec<Rational>)> {
    if space.q() < 2 {
        return Err(Error::Unsatisfiable(format!(
            "signature ({}, {}) has no spacelike planes",
            space.p(),
            space.q()
        )));
    }
    let bound = bound.max(1);
    let n = space.dim();
    for _ in 0..PLANE_RETRIES {
        let v1 = random_int_vector(rng, n, bound);
        let v2 = random_int_vector(rng, n, bound);
        if space.is_spacelike_plane(&v1, &v2)? {
            return Ok((v1, v2));
        }
    }
    Err(Error::Unsatisfiable(format!(
        "no spacelike plane after {PLANE_RETRIES} draws"
    )))
}

/// The `count` planes `0..count` of one seed, drawn independently per index.
pub fn spacelike_planes(
    space: &SignatureSpace,
    seed: u64,
    count: usize,
    bound: i64,
) -> Result<Vec<(Vec<Rational>, Vec<Rational>)>> {
    (0..count as u64)
        .map(|i| spacelike_plane_from(space, &mut rng_for(seed, Stream::Plane, i), bound))
        .collect()
}

/// Integer vector with `<v, v> > 0`.
pub fn random_spacelike_vector(
    space: &SignatureSpace,
    rng: &mut impl Rng,
    bound: i64,
) -> Result<Vec<Rational>> {
    if space.q() == 0 {
        return Err(Error::Unsatisfiable("no spacelike vectors".into()));
    }
    for _ in 0..PLANE_RETRIES {
        let v = random_int_vector(rng, space.dim(), bound.max(1));
        if space.inner(&v, &v)?.is_positive() {
            return Ok(v);
        }
    }
    Err(Error::Unsatisfiable("no spacelike vector found".into()))
}

/// Random symmetric integer matrix with nonzero determinant.
fn random_invertible_symmetric(rng: &mut impl Rng, n: usize, bound: i64) -> Result<Matrix> {
    for _ in 0..GENERATOR_RETRIES {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = rat(rng.gen_range(-bound..=bound));
                m[(i, j)] = v.clone();
                m[(j, i)] = v;
            }
        }
        if rank(&m) == n {
            return Ok(m);
        }
    }
    Err(Error::Unsatisfiable("no invertible symmetric matrix".into()))
}

pub fn random_invertible_matrix(rng: &mut impl Rng, n: usize, bound: i64) -> Result<Matrix> {
    for _ in 0..GENERATOR_RETRIES {
        let m = random_int_matrix(rng, n, n, bound);
        if rank(&m) == n {
            return Ok(m);
        }
    }
    Err(Error::Unsatisfiable("no invertible matrix".into()))
}

/// Self-adjoint `φ` whose kernel is exactly the span of `kernel`, which must be independent.
pub fn self_adjoint_with_kernel(
    space: &SignatureSpace,
    kernel: &[Vec<Rational>],
    rng: &mut impl Rng,
    bound: i64,
) -> Result<LinearMap> {
    let n = space.dim();
    let k = kernel.len();
    // rows of `w` span the Euclidean annihilator of the kernel
    let kmat = Matrix::from_columns(n, kernel);
    if rank(&kmat) != k {
        return Err(Error::DependentBasis);
    }
    let ann = kernel_basis(&kmat.transpose());
    let w = Matrix::from_rows(ann.basis().to_vec()).unwrap_or_else(|_| Matrix::zeros(0, n));
    let inner = if n == k {
        Matrix::zeros(0, 0)
    } else {
        random_invertible_symmetric(rng, n - k, bound)?
    };
    let s = if n == k {
        Matrix::zeros(n, n)
    } else {
        &(&w.transpose() * &inner) * &w
    };
    LinearMap::endo(space.clone(), space.gram_inv() * &s)
}

/// `k` independent integer vectors spanning a negative definite subspace.
fn negative_definite_family(
    space: &SignatureSpace,
    k: usize,
    rng: &mut impl Rng,
) -> Result<Vec<Vec<Rational>>> {
    if k > space.p() {
        return Err(Error::BadParams(format!(
            "kernel dimension {k} exceeds p = {}",
            space.p()
        )));
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    let n = space.dim();
    for _ in 0..GENERATOR_RETRIES {
        let family: Vec<Vec<Rational>> = (0..k)
            .map(|_| {
                (0..n)
                    .map(|i| {
                        let b = if space.gram()[(i, i)].is_negative() { 3 } else { 1 };
                        rat(rng.gen_range(-b..=b))
                    })
                    .collect()
            })
            .collect();
        let restricted = space.restricted_gram(&Matrix::from_columns(n, &family));
        if signature_of_symmetric(&restricted)?.negative == k {
            return Ok(family);
        }
    }
    Err(Error::Unsatisfiable("no negative definite kernel found".into()))
}

/// Self-adjoint admissible `φ` on `(p, q)` with a negative definite kernel of dimension `kernel_dim`.
pub fn random_admissible_phi(p: usize, q: usize, kernel_dim: usize, seed: u64) -> Result<LinearMap> {
    if q < 5 {
        return Err(Error::BadParams(format!("need q >= 5, got {q}")));
    }
    let space = SignatureSpace::standard(p, q);
    let mut rng = rng_for(seed, Stream::Phi, 0);
    let kernel = negative_definite_family(&space, kernel_dim, &mut rng)?;
    self_adjoint_with_kernel(&space, &kernel, &mut rng, 3)
}

/// Admissible `φ: A → B` with a negative definite kernel of dimension `kernel_dim`.
pub fn random_admissible_map(
    domain: SignatureSpace,
    codomain: SignatureSpace,
    kernel_dim: usize,
    seed: u64,
) -> Result<LinearMap> {
    let n = domain.dim();
    if codomain.dim() + kernel_dim < n {
        return Err(Error::BadParams(format!(
            "codomain dimension {} is too small for a kernel of dimension {kernel_dim}",
            codomain.dim()
        )));
    }
    let mut rng = rng_for(seed, Stream::Phi, 5);
    let kernel = negative_definite_family(&domain, kernel_dim, &mut rng)?;
    let kmat = Matrix::from_columns(n, &kernel);
    let w = if kernel.is_empty() {
        Matrix::identity(n)
    } else {
        Matrix::from_rows(kernel_basis(&kmat.transpose()).basis().to_vec())?
    };
    let r = n - kernel_dim;
    for _ in 0..GENERATOR_RETRIES {
        let lift = random_int_matrix(&mut rng, codomain.dim(), r, 3);
        if rank(&lift) == r {
            return LinearMap::new(domain, codomain, &lift * &w);
        }
    }
    Err(Error::Unsatisfiable("no injective lift found".into()))
}

/// Self-adjoint `φ` whose kernel contains a spacelike vector.
pub fn random_non_admissible_phi(p: usize, q: usize, seed: u64) -> Result<LinearMap> {
    let space = SignatureSpace::standard(p, q);
    let mut rng = rng_for(seed, Stream::Phi, 1);
    let v = random_spacelike_vector(&space, &mut rng, 2)?;
    self_adjoint_with_kernel(&space, &[v], &mut rng, 3)
}

/// A generic integer endomorphism that is not self-adjoint.
pub fn random_non_self_adjoint_phi(p: usize, q: usize, seed: u64) -> Result<LinearMap> {
    let space = SignatureSpace::standard(p, q);
    let mut rng = rng_for(seed, Stream::Phi, 2);
    for _ in 0..GENERATOR_RETRIES {
        let m = random_int_matrix(&mut rng, p + q, p + q, 3);
        if !(space.gram() * &m).is_symmetric() {
            return LinearMap::endo(space, m);
        }
    }
    Err(Error::Unsatisfiable("every draw was self-adjoint".into()))
}

/// An isometry of `space` from the Cayley transform of a sparse skew operator.
pub fn random_isometry(space: &SignatureSpace, rng: &mut impl Rng) -> Result<Matrix> {
    let n = space.dim();
    for _ in 0..GENERATOR_RETRIES {
        let mut a = Matrix::zeros(n, n);
        for _ in 0..n {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i != j {
                let v = rat(rng.gen_range(-1..=1));
                a[(i, j)] = v.clone();
                a[(j, i)] = -v;
            }
        }
        let k = space.gram_inv() * &a;
        let id = Matrix::identity(n);
        if let Some(inv) = (&id - &k).inverse() {
            let q = &inv * &(&id + &k);
            debug_assert_eq!(&(&q.transpose() * space.gram()) * &q, *space.gram());
            return Ok(q);
        }
    }
    Err(Error::Unsatisfiable("no invertible Cayley transform".into()))
}

/// Self-adjoint `φ` with `<φv, φw> = c⁴ <v, w>` (conformal constant `c²`).
pub fn random_conformal_phi(p: usize, q: usize, c: &Rational, seed: u64) -> Result<LinearMap> {
    if c.is_zero() {
        return Err(Error::BadParams("conformal scale must be nonzero".into()));
    }
    let space = SignatureSpace::standard(p, q);
    let n = p + q;
    let mut rng = rng_for(seed, Stream::Phi, 3);
    let iso = random_isometry(&space, &mut rng)?;
    let signs: Vec<Rational> = (0..n)
        .map(|_| if rng.gen_bool(0.5) { Rational::one() } else { -Rational::one() })
        .collect();
    let inv = iso.inverse().expect("isometries are invertible");
    let m = &(&iso * &Matrix::diagonal(&signs)) * &inv;
    LinearMap::endo(space, m.scale(&(c * c)))
}

/// `e_i^± ↦ ±(e_i^- + e_i^+)` for `i ≤ q`, remaining timelike directions to zero,
/// conjugated by a random isometry. Needs `p ≥ q`.
pub fn random_totally_isotropic_phi(p: usize, q: usize, seed: u64) -> Result<LinearMap> {
    if p < q {
        return Err(Error::BadParams(format!(
            "a totally isotropic image of rank {q} needs p >= q, got p = {p}"
        )));
    }
    let space = SignatureSpace::standard(p, q);
    let base = isotropic_pattern(p, q, q);
    let mut rng = rng_for(seed, Stream::Phi, 4);
    let iso = random_isometry(&space, &mut rng)?;
    let inv = iso.inverse().expect("isometries are invertible");
    LinearMap::endo(space, &(&iso * &base) * &inv)
}

/// Matrix of `e_i^± ↦ ±(e_i^- + e_i^+)` for `i < pairs`, everything else to zero.
pub(crate) fn isotropic_pattern(p: usize, q: usize, pairs: usize) -> Matrix {
    let mut m = Matrix::zeros(p + q, p + q);
    for i in 0..pairs {
        let (minus, plus) = (i, p + i);
        for row in [minus, plus] {
            m[(row, minus)] = -Rational::one();
            m[(row, plus)] = Rational::one();
        }
    }
    m
}

/// Admissible pair `(χ, ξ)`: the values `χ(a_i, a_j)` and `ξ` are the columns of
/// a random invertible matrix, so `χ(π) ∧ ξ ≠ 0` for every plane.
pub fn random_admissible_chi_xi(
    domain: SignatureSpace,
    codomain: SignatureSpace,
    seed: u64,
) -> Result<(AlternatingMap, Vec<Rational>)> {
    let na = domain.dim();
    let nb = codomain.dim();
    let pairs = na * (na.saturating_sub(1)) / 2;
    if nb < pairs + 1 {
        return Err(Error::BadParams(format!(
            "codomain dimension {nb} is below {} = pairs + 1",
            pairs + 1
        )));
    }
    let mut rng = rng_for(seed, Stream::ChiXi, 0);
    let m = random_invertible_matrix(&mut rng, nb, 2)?;
    let xi = m.column(0);
    let upper: Vec<_> = (0..na)
        .flat_map(|i| (i + 1..na).map(move |j| (i, j)))
        .enumerate()
        .map(|(c, ij)| (ij, m.column(c + 1)))
        .collect();
    Ok((AlternatingMap::from_upper_values(domain, codomain, upper)?, xi))
}

/// Operator `t = G⁻¹ K` with `K` a sum of `terms` random integer bivectors.
pub fn random_skew(space: &SignatureSpace, terms: usize, seed: u64) -> Matrix {
    let mut rng = rng_for(seed, Stream::Skew, 0);
    let n = space.dim();
    let mut k = Matrix::zeros(n, n);
    for _ in 0..terms {
        let u = random_int_vector(&mut rng, n, 2);
        let v = random_int_vector(&mut rng, n, 2);
        k = &k + &Matrix::from_fn(n, n, |r, c| &u[r] * &v[c] - &v[r] * &u[c]);
    }
    space.gram_inv() * &k
}
