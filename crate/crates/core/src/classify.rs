//! Admissibility, self-adjointness and Ivanov-Petrova tests.

use num_traits::Zero;
use rand::Rng;

use crate::curvature::{jordan_type, plane_operator, AlternatingMap, JordanType, SkewFamily};
use crate::error::{Error, Result};
use crate::exactlin::{rank, signature_of_symmetric, LinearMap, Matrix, Rational, Subspace};
use crate::sampling::{random_int_vector, rng_for, spacelike_plane_from, Stream};

pub type Plane = (Vec<Rational>, Vec<Rational>);

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IpVerdict {
    /// `<φv, φw> = C <v, w>` with `C ≠ 0`.
    ConformalC(Rational),
    /// `<φv, φw> = 0` for all `v, w`.
    TotallyIsotropic,
    NotIP,
}

impl IpVerdict {
    pub fn tag(&self) -> &'static str {
        match self {
            IpVerdict::ConformalC(_) => "ConformalC",
            IpVerdict::TotallyIsotropic => "TotallyIsotropic",
            IpVerdict::NotIP => "NotIP",
        }
    }

    pub fn constant(&self) -> Option<&Rational> {
        match self {
            IpVerdict::ConformalC(c) => Some(c),
            _ => None,
        }
    }
}

/// Outcome of a sampled admissibility test for `(χ, ξ)`; a pass is only probabilistic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SampledVerdict {
    Pass { samples: usize },
    Fail { witness: Plane },
}

/// Outcome of sampling Jordan types over spacelike planes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IpSampling {
    Constant(JordanType),
    Varies {
        first: (Plane, JordanType),
        second: (Plane, JordanType),
    },
}

fn require_endomorphism(phi: &LinearMap) -> Result<()> {
    if !phi.is_endomorphism() {
        return Err(Error::BadParams("expected a map from a space to itself".into()));
    }
    Ok(())
}

pub fn is_self_adjoint(phi: &LinearMap) -> Result<bool> {
    require_endomorphism(phi)?;
    Ok((phi.domain().gram() * phi.matrix()).is_symmetric())
}

/// True iff the kernel contains no spacelike vector.
pub fn is_admissible_phi(phi: &LinearMap) -> bool {
    let kernel = phi.kernel();
    if kernel.is_zero() {
        return true;
    }
    let restricted = phi.domain().restricted_gram(&kernel.basis_matrix());
    signature_of_symmetric(&restricted)
        .expect("restricted gram is symmetric")
        .positive
        == 0
}

/// Samples spacelike planes and checks `χ(a1, a2) ∧ ξ ≠ 0` on each.
pub fn is_admissible_chi_xi(
    chi: &AlternatingMap,
    xi: &[Rational],
    samples: usize,
    seed: u64,
) -> Result<SampledVerdict> {
    chi.codomain().check_vector(xi)?;
    for i in 0..samples as u64 {
        let (a1, a2) = spacelike_plane_from(chi.domain(), &mut rng_for(seed, Stream::Plane, i), 3)?;
        let v = chi.evaluate(&a1, &a2)?;
        let pair = Matrix::from_columns(xi.len(), &[v, xi.to_vec()]);
        if rank(&pair) < 2 {
            return Ok(SampledVerdict::Fail { witness: (a1, a2) });
        }
    }
    Ok(SampledVerdict::Pass { samples })
}

/// Exact test on `PᵀGP`; requires a self-adjoint admissible `φ`.
pub fn ip_class(phi: &LinearMap) -> Result<IpVerdict> {
    if !is_self_adjoint(phi)? {
        return Err(Error::NotSelfAdjoint);
    }
    if !is_admissible_phi(phi) {
        return Err(Error::NotAdmissible);
    }
    let pulled = phi.pullback_gram();
    if pulled.is_zero() {
        return Ok(IpVerdict::TotallyIsotropic);
    }
    let g = phi.domain().gram();
    // every standard-basis Gram has a nonzero diagonal entry, but a general one may not
    let ((r, c), pivot) = g.largest_entry().expect("nonempty gram");
    let constant = &pulled[(r, c)] / pivot;
    if !constant.is_zero() && pulled == g.scale(&constant) {
        return Ok(IpVerdict::ConformalC(constant));
    }
    Ok(IpVerdict::NotIP)
}

/// Whether `q` is large enough for the exact criterion to characterize IP tensors.
pub fn within_ip_hypotheses(phi: &LinearMap) -> bool {
    phi.domain().q() >= 5
}

/// Jordan types over `forced` planes followed by `samples` seeded spacelike planes.
pub fn is_ip_by_sampling<F: SkewFamily + ?Sized>(
    family: &F,
    samples: usize,
    seed: u64,
    forced: &[Plane],
) -> Result<IpSampling> {
    let mut first: Option<(Plane, JordanType)> = None;
    let sampled = (0..samples as u64).map(|i| {
        spacelike_plane_from(family.domain(), &mut rng_for(seed, Stream::Plane, i), 3)
    });
    for plane in forced.iter().cloned().map(Ok).chain(sampled) {
        let plane = plane?;
        let jt = jordan_type(&plane_operator(family, &plane.0, &plane.1)?)?;
        if jt == JordanType::Zero {
            return Err(Error::UnsupportedRank(0));
        }
        match &first {
            None => first = Some((plane, jt)),
            Some((_, t0)) if *t0 == jt => {}
            Some(_) => {
                return Ok(IpSampling::Varies {
                    first: first.expect("set above"),
                    second: (plane, jt),
                })
            }
        }
    }
    first
        .map(|(_, t)| IpSampling::Constant(t))
        .ok_or_else(|| Error::BadParams("no planes to sample".into()))
}

/// Searches for a spacelike plane on which the operator rank is not 2.
///
/// Even-indexed draws are uniform; odd ones pass through a random vector of
/// `hint` (typically a kernel), where rank drops are concentrated.
pub fn find_rank_witness<F: SkewFamily + ?Sized>(
    family: &F,
    samples: usize,
    seed: u64,
    hint: Option<&Subspace>,
) -> Result<Option<(Plane, usize)>> {
    let space = family.domain();
    let hint = hint.filter(|h| !h.is_zero());
    for i in 0..samples as u64 {
        let mut rng = rng_for(seed, Stream::Witness, i);
        let plane = match hint {
            Some(h) if i % 2 == 1 => match plane_through(space, h, &mut rng)? {
                Some(p) => p,
                None => continue,
            },
            _ => spacelike_plane_from(space, &mut rng, 3)?,
        };
        let r = rank(&plane_operator(family, &plane.0, &plane.1)?.op);
        if r != 2 {
            return Ok(Some((plane, r)));
        }
    }
    Ok(None)
}

fn plane_through(
    space: &crate::exactlin::SignatureSpace,
    h: &Subspace,
    rng: &mut impl Rng,
) -> Result<Option<Plane>> {
    for _ in 0..64 {
        let coeffs = random_int_vector(rng, h.dim(), 2);
        let mut k = vec![Rational::zero(); space.dim()];
        for (c, b) in coeffs.iter().zip(h.basis()) {
            for (x, y) in k.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        let v = random_int_vector(rng, space.dim(), 3);
        if space.is_spacelike_plane(&k, &v)? {
            return Ok(Some((k, v)));
        }
    }
    Ok(None)
}

/// Fails with `NotRankTwo` unless the operator has rank 2 on every sampled spacelike plane.
pub fn check_rank_two<F: SkewFamily + ?Sized>(family: &F, samples: usize, seed: u64) -> Result<()> {
    match find_rank_witness(family, samples, seed, None)? {
        None => Ok(()),
        Some(((v1, v2), r)) => Err(Error::NotRankTwo(format!(
            "rank {r} on the plane spanned by {} and {}",
            fmt_vec(&v1),
            fmt_vec(&v2)
        ))),
    }
}

pub(crate) fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}
