//! Decomposition of a constant rank-2 alternating map into one of the two canonical forms.

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::classify::check_rank_two;
use crate::curvature::{make_t_chi_xi, make_t_phi, AlternatingMap, BilinearSkewMap};
use crate::error::{Error, Result};
use crate::exactlin::{
    congruence_diagonalize, kernel_basis, rank, solve_in_span, LinearMap, Matrix, Rational,
    SignatureSpace, Subspace,
};
use crate::sampling::{random_int_vector, random_spacelike_vector, rng_for, Stream};

pub const DEFAULT_SEED: u64 = 0x5eed;
const PRECHECK_PLANES: usize = 32;
const EXTRA_PROBES: usize = 20;
const FAMILY_DRAWS: usize = 4_000;
const PARTNER_RETRIES: u64 = 16;

/// An involution `ψ` of `B` such that `gram · ψ` is positive definite.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Flattener {
    pub psi: Matrix,
    pub positive_gram: Matrix,
}

impl Flattener {
    /// The space `B` with the flattened inner product.
    pub fn positive_space(&self) -> SignatureSpace {
        SignatureSpace::from_gram(self.positive_gram.clone()).expect("flattened gram is definite")
    }
}

pub fn flatten(space: &SignatureSpace) -> Flattener {
    let (d, c) = congruence_diagonalize(space.gram());
    let signs: Vec<Rational> = d
        .iter()
        .map(|x| if x.is_negative() { -Rational::one() } else { Rational::one() })
        .collect();
    let c_inv = c.inverse().expect("congruence basis is invertible");
    let psi = &(&c * &Matrix::diagonal(&signs)) * &c_inv;
    let positive_gram = space.gram() * &psi;
    Flattener { psi, positive_gram }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Decomposition {
    /// `T = T_{χ,ξ}`.
    ChiXi { chi: AlternatingMap, xi: Vec<Rational> },
    /// `T = ε μ T_φ` with `μ > 0`.
    PhiForm {
        epsilon: i8,
        mu: Rational,
        phi: LinearMap,
    },
}

impl Decomposition {
    pub fn variant(&self) -> &'static str {
        match self {
            Decomposition::ChiXi { .. } => "ChiXi",
            Decomposition::PhiForm { .. } => "PhiForm",
        }
    }

    /// The map this decomposition describes.
    pub fn rebuild(&self) -> Result<BilinearSkewMap> {
        match self {
            Decomposition::ChiXi { chi, xi } => make_t_chi_xi(chi, xi),
            Decomposition::PhiForm { epsilon, mu, phi } => {
                Ok(make_t_phi(phi).scale(&(mu * Rational::from_integer((*epsilon).into()))))
            }
        }
    }
}

/// A probe vector together with the line `Φ([a])` found for it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProbeLine {
    pub probe: Vec<Rational>,
    pub line: Subspace,
}

/// Exact blockwise comparison of `T` with the rebuilt map.
pub fn verify_decomposition(t: &BilinearSkewMap, d: &Decomposition) -> bool {
    d.rebuild().map_or(false, |r| r == *t)
}

fn range(op: &Matrix) -> Subspace {
    Subspace::column_space(op)
}

/// Intersection of the ranges of `T(a, w)` over the partners `w`.
pub fn range_intersection(
    t: &BilinearSkewMap,
    a: &[Rational],
    partners: &[Vec<Rational>],
) -> Result<Subspace> {
    let domain = t.domain();
    let mut span = vec![a.to_vec()];
    span.extend(partners.iter().cloned());
    if rank(&Matrix::from_columns(domain.dim(), &span)) != span.len() {
        return Err(Error::Degenerate);
    }
    let mut acc = Subspace::full(t.codomain().dim());
    for w in partners {
        if !domain.is_spacelike_plane(a, w)? {
            return Err(Error::NotSpacelike(format!(
                "Gram determinant {}",
                domain.plane_gram_det(a, w)?
            )));
        }
        acc = acc.intersect(&range(&t.evaluate(a, w)?))?;
    }
    Ok(acc)
}

/// `Φ([a]) = Range T(a, a2) ∩ Range T(a, a3)`; must be a line.
pub fn phi_line(
    t: &BilinearSkewMap,
    a: &[Rational],
    a2: &[Rational],
    a3: &[Rational],
) -> Result<Subspace> {
    phi_line_multi(t, a, &[a2.to_vec(), a3.to_vec()])
}

/// As [`phi_line`] with any number of partners.
pub fn phi_line_multi(
    t: &BilinearSkewMap,
    a: &[Rational],
    partners: &[Vec<Rational>],
) -> Result<Subspace> {
    let s = range_intersection(t, a, partners)?;
    if s.dim() != 1 {
        return Err(Error::DegenerateLine(s.dim()));
    }
    Ok(s)
}

/// An orthogonal basis of a maximal positive subspace of `a^⊥`; with `a` spacelike,
/// any two independent vectors in its span extend `a` to a spacelike 3-space.
fn positive_complement(space: &SignatureSpace, a: &[Rational]) -> Vec<Vec<Rational>> {
    let ga = space.gram().apply(a);
    let perp = kernel_basis(&Matrix::from_rows(vec![ga]).expect("one row"));
    let basis = perp.basis_matrix();
    let (d, c) = congruence_diagonalize(&space.restricted_gram(&basis));
    (0..d.len())
        .filter(|&i| d[i].is_positive())
        .map(|i| basis.apply(&c.column(i)))
        .collect()
}

fn combine(rng: &mut impl Rng, vectors: &[Vec<Rational>]) -> Vec<Rational> {
    let coeffs = random_int_vector(rng, vectors.len(), 2);
    let mut out = vec![Rational::zero(); vectors[0].len()];
    for (c, v) in coeffs.iter().zip(vectors) {
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

/// `Φ([a])` with the first two positive partners, falling back to random ones.
fn probe_line(t: &BilinearSkewMap, a: &[Rational], seed: u64, index: u64) -> Result<Subspace> {
    let positives = positive_complement(t.domain(), a);
    if positives.len() < 2 {
        return Err(Error::DegenerateLine(0));
    }
    let mut last = match phi_line(t, a, &positives[0], &positives[1]) {
        Ok(l) => return Ok(l),
        Err(e) => e,
    };
    for k in 0..PARTNER_RETRIES {
        let mut rng = rng_for(seed, Stream::Partner, index * PARTNER_RETRIES + k);
        let x1 = combine(&mut rng, &positives);
        let x2 = combine(&mut rng, &positives);
        match phi_line(t, a, &x1, &x2) {
            Ok(l) => return Ok(l),
            Err(Error::Degenerate) => {}
            Err(e @ Error::DegenerateLine(_)) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// Spacelike `s_1, …, s_n` spanning `A` with every `span{s_1, s_i}` spacelike.
fn spanning_family(space: &SignatureSpace, seed: u64) -> Result<Vec<Vec<Rational>>> {
    let n = space.dim();
    let mut bound = 2;
    for attempt in 0..8u64 {
        let mut rng = rng_for(seed, Stream::Family, attempt);
        let s1 = match random_spacelike_vector(space, &mut rng, bound) {
            Ok(v) => v,
            Err(_) => {
                bound *= 2;
                continue;
            }
        };
        let mut family = vec![s1];
        for _ in 0..FAMILY_DRAWS {
            if family.len() == n {
                break;
            }
            let v = random_int_vector(&mut rng, n, bound);
            if !space.is_spacelike_plane(&family[0], &v)? {
                continue;
            }
            let mut trial = family.clone();
            trial.push(v);
            if rank(&Matrix::from_columns(n, &trial)) == trial.len() {
                family = trial;
            }
        }
        if family.len() == n {
            return Ok(family);
        }
        bound *= 2;
    }
    Err(Error::SpanningFamilyFailed)
}

pub fn decompose(t: &BilinearSkewMap) -> Result<Decomposition> {
    decompose_traced(t, DEFAULT_SEED).map(|(d, _)| d)
}

/// Decomposes `T` and also returns every probe with its line, expressed in `B`.
pub fn decompose_traced(t: &BilinearSkewMap, seed: u64) -> Result<(Decomposition, Vec<ProbeLine>)> {
    let domain = t.domain().clone();
    if domain.q() < 5 {
        return Err(Error::DomainTooSmall(domain.q()));
    }
    check_rank_two(t, PRECHECK_PLANES, seed)?;

    let flat = flatten(t.codomain());
    let positive = flat.positive_space();
    let ft = t.post_compose(&flat.psi, positive.clone())?;

    let family = spanning_family(&domain, seed)?;
    let mut probes: Vec<ProbeLine> = Vec::with_capacity(family.len() + EXTRA_PROBES);
    for (i, s) in family.iter().enumerate() {
        probes.push(ProbeLine {
            probe: s.clone(),
            line: probe_line(&ft, s, seed, i as u64)?,
        });
    }
    for k in 0..EXTRA_PROBES as u64 {
        let a = random_spacelike_vector(&domain, &mut rng_for(seed, Stream::Probe, k), 3)?;
        let line = probe_line(&ft, &a, seed, (family.len() as u64) + k)?;
        probes.push(ProbeLine { probe: a, line });
    }
    let constant = probes.iter().all(|p| p.line == probes[0].line);

    let d = if constant {
        constant_branch(&ft, &flat, &probes[0].line, t)?
    } else {
        injective_branch(&ft, &flat, &family, &probes, seed, t)?
    };
    if !verify_decomposition(t, &d) {
        return Err(Error::VerificationFailed);
    }
    let unflattened = probes
        .into_iter()
        .map(|p| ProbeLine {
            line: Subspace::span(
                p.line.ambient_dim(),
                &p.line.basis().iter().map(|v| flat.psi.apply(v)).collect::<Vec<_>>(),
            )
            .expect("uniform lengths"),
            probe: p.probe,
        })
        .collect();
    Ok((d, unflattened))
}

fn constant_branch(
    ft: &BilinearSkewMap,
    flat: &Flattener,
    line: &Subspace,
    t: &BilinearSkewMap,
) -> Result<Decomposition> {
    let xi_hat = line.line_representative().expect("probe lines are lines").to_vec();
    let positive = ft.codomain();
    let norm = positive.inner(&xi_hat, &xi_hat)?;
    let scale = -(Rational::one() / norm);
    let na = ft.domain().dim();
    let upper: Vec<_> = (0..na)
        .flat_map(|i| (i + 1..na).map(move |j| (i, j)))
        .map(|(i, j)| {
            let chi_hat: Vec<Rational> =
                ft.block(i, j).apply(&xi_hat).iter().map(|x| x * &scale).collect();
            ((i, j), flat.psi.apply(&chi_hat))
        })
        .collect();
    let chi = AlternatingMap::from_upper_values(t.domain().clone(), t.codomain().clone(), upper)?;
    Ok(Decomposition::ChiXi {
        chi,
        xi: flat.psi.apply(&xi_hat),
    })
}

fn injective_branch(
    ft: &BilinearSkewMap,
    flat: &Flattener,
    family: &[Vec<Rational>],
    probes: &[ProbeLine],
    seed: u64,
    t: &BilinearSkewMap,
) -> Result<Decomposition> {
    let na = family.len();
    let nb = ft.codomain().dim();
    let rep = |l: &Subspace| l.line_representative().expect("probe lines are lines").to_vec();
    let b1 = rep(&probes[0].line);
    let mut images = vec![b1.clone()];
    for i in 1..na {
        let ci = rep(&probes[i].line);
        let sum: Vec<Rational> = family[0].iter().zip(&family[i]).map(|(x, y)| x + y).collect();
        let u = rep(&probe_line(ft, &sum, seed, (na + EXTRA_PROBES + i) as u64)?);
        let coeffs = solve_in_span(&u, &[b1.clone(), ci.clone()])
            .map_err(|_| Error::SpanSolveFailed)?
            .ok_or(Error::SpanSolveFailed)?;
        if coeffs[0].is_zero() {
            return Err(Error::SpanSolveFailed);
        }
        let lambda = &coeffs[1] / &coeffs[0];
        images.push(ci.iter().map(|x| x * &lambda).collect());
    }
    let s = Matrix::from_columns(na, family);
    let s_inv = s.inverse().expect("spanning family is a basis");
    let phi_hat_matrix = &Matrix::from_columns(nb, &images) * &s_inv;
    let phi_hat = LinearMap::new(ft.domain().clone(), ft.codomain().clone(), phi_hat_matrix)?;

    let observed = ft.evaluate(&family[0], &family[1])?;
    let model = make_t_phi(&phi_hat).evaluate(&family[0], &family[1])?;
    let ((r, c), m) = model.largest_entry().ok_or(Error::VerificationFailed)?;
    let mu = &observed[(r, c)] / m;
    if mu.is_zero() {
        return Err(Error::VerificationFailed);
    }
    let epsilon = if mu.is_positive() { 1 } else { -1 };
    let phi = LinearMap::new(
        t.domain().clone(),
        t.codomain().clone(),
        &flat.psi * phi_hat.matrix(),
    )?;
    Ok(Decomposition::PhiForm {
        epsilon,
        mu: mu.abs(),
        phi: canonical_sign(phi),
    })
}

/// `T_φ = T_{-φ}`; fixes the sign so the first nonzero entry is positive.
pub fn canonical_sign(phi: LinearMap) -> LinearMap {
    let first = phi.matrix().entries().iter().find(|x| !x.is_zero()).cloned();
    match first {
        Some(x) if x.is_negative() => phi.scale(&-Rational::one()),
        _ => phi,
    }
}
