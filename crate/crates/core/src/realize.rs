//! Graph hypersurfaces `v ↦ v ⊕ ½<φv, v> e'` and their intrinsic curvature.

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::classify::{check_rank_two, is_self_adjoint};
use crate::curvature::{make_r_phi, plane_operator, BilinearSkewMap, CurvatureTensor4};
use crate::error::{Error, Result};
use crate::exactlin::{rank, rational_sqrt, LinearMap, Matrix, Rational, SignatureSpace};
use crate::reconstruct::{decompose_traced, Decomposition};
use crate::sampling::{rng_for, spacelike_plane_from, Stream};

/// Near-origin sample coordinates are `j / POINT_DENOM` with `|j| ≤ POINT_STEPS`.
pub const POINT_DENOM: i64 = 64;
pub const POINT_STEPS: i64 = 8;

/// The immersion of `V` into `W = V ⊕ R e'` with `<e', e'> = ε μ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Immersion {
    phi: LinearMap,
    epsilon: i8,
    mu: Rational,
    ambient: SignatureSpace,
    // L[i][k] = <φ e_i, e_k>, symmetric
    twisted: Matrix,
}

/// `g_ij(y) = G_ij + Σ_ab Q_ijab y_a y_b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMetric {
    pub constant: Matrix,
    /// `Q_ijab`, stored at `((i * n + j) * n + a) * n + b`.
    pub quadratic: Vec<Rational>,
    dim: usize,
}

impl PolyMetric {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coefficient(&self, i: usize, j: usize, a: usize, b: usize) -> &Rational {
        let n = self.dim;
        &self.quadratic[((i * n + j) * n + a) * n + b]
    }

    pub fn evaluate(&self, y: &[Rational]) -> Matrix {
        let n = self.dim;
        Matrix::from_fn(n, n, |i, j| {
            let mut acc = self.constant[(i, j)].clone();
            for a in 0..n {
                if y[a].is_zero() {
                    continue;
                }
                for b in 0..n {
                    let q = self.coefficient(i, j, a, b);
                    if !q.is_zero() && !y[b].is_zero() {
                        acc += q * &y[a] * &y[b];
                    }
                }
            }
            acc
        })
    }

    /// `∂_a ∂_b g_ij`, constant in `y`.
    pub fn second_derivative(&self, i: usize, j: usize, a: usize, b: usize) -> Rational {
        self.coefficient(i, j, a, b) + self.coefficient(i, j, b, a)
    }
}

pub fn embed(phi: &LinearMap, epsilon: i8) -> Result<Immersion> {
    Immersion::with_scale(phi, epsilon, Rational::one())
}

impl Immersion {
    /// Immersion whose normal direction has norm `ε μ`; it realizes `ε μ R_φ` at the origin.
    pub fn with_scale(phi: &LinearMap, epsilon: i8, mu: Rational) -> Result<Immersion> {
        if !is_self_adjoint(phi)? {
            return Err(Error::NotSelfAdjoint);
        }
        if epsilon != 1 && epsilon != -1 {
            return Err(Error::BadParams(format!("epsilon must be +1 or -1, got {epsilon}")));
        }
        if !mu.is_positive() {
            return Err(Error::BadParams(format!("scale must be positive, got {mu}")));
        }
        let space = phi.domain();
        let n = space.dim();
        let kappa = Rational::from_integer(epsilon.into()) * &mu;
        let gram = Matrix::from_fn(n + 1, n + 1, |i, j| match (i < n, j < n) {
            (true, true) => space.gram()[(i, j)].clone(),
            (false, false) => kappa.clone(),
            _ => Rational::zero(),
        });
        Ok(Immersion {
            twisted: phi.twisted_gram(),
            phi: phi.clone(),
            epsilon,
            mu,
            ambient: SignatureSpace::from_gram(gram)?,
        })
    }

    pub fn phi(&self) -> &LinearMap {
        &self.phi
    }

    pub fn epsilon(&self) -> i8 {
        self.epsilon
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    pub fn ambient(&self) -> &SignatureSpace {
        &self.ambient
    }

    pub fn space(&self) -> &SignatureSpace {
        self.phi.domain()
    }

    /// `<e', e'> = ε μ`.
    pub fn kappa(&self) -> Rational {
        Rational::from_integer(self.epsilon.into()) * &self.mu
    }

    /// `F(y) = y ⊕ ½<φy, y> e'`.
    pub fn point(&self, y: &[Rational]) -> Result<Vec<Rational>> {
        let height = self.space().inner(&self.phi.apply(y)?, y)? / Rational::from_integer(2.into());
        let mut out = y.to_vec();
        out.push(height);
        Ok(out)
    }

    /// `L y`, the vertical components of the coordinate tangent vectors at `y`.
    fn slope(&self, y: &[Rational]) -> Result<Vec<Rational>> {
        self.space().check_vector(y)?;
        Ok(self.twisted.apply(y))
    }

    /// Columns `∂_i F(y) = e_i ⊕ (L y)_i e'`.
    pub fn jacobian(&self, y: &[Rational]) -> Result<Matrix> {
        let n = self.space().dim();
        let s = self.slope(y)?;
        Ok(Matrix::from_fn(n + 1, n, |r, c| {
            if r < n {
                if r == c {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            } else {
                s[c].clone()
            }
        }))
    }

    pub fn metric(&self) -> PolyMetric {
        let n = self.space().dim();
        let kappa = self.kappa();
        let l = &self.twisted;
        let mut quadratic = Vec::with_capacity(n * n * n * n);
        for i in 0..n {
            for j in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        quadratic.push(&kappa * &l[(i, a)] * &l[(j, b)]);
                    }
                }
            }
        }
        PolyMetric {
            constant: self.space().gram().clone(),
            quadratic,
            dim: n,
        }
    }

    /// Unnormalized normal `N(y) = -κ G⁻¹ L y ⊕ 1`.
    pub fn normal(&self, y: &[Rational]) -> Result<Vec<Rational>> {
        let kappa = self.kappa();
        let mut n: Vec<Rational> = self
            .space()
            .gram_inv()
            .apply(&self.slope(y)?)
            .iter()
            .map(|x| -(&kappa * x))
            .collect();
        n.push(Rational::one());
        Ok(n)
    }

    /// `<∂_i ∂_j F, N>`, constant in `y`.
    pub fn second_fundamental_form(&self) -> Matrix {
        self.twisted.scale(&self.kappa())
    }

    /// Weingarten map `g(y)⁻¹ L̃` relative to the unnormalized normal.
    pub fn shape_operator(&self, y: &[Rational]) -> Result<Matrix> {
        let g = first_fundamental_form(self, y)?;
        let g_inv = g.inverse().ok_or(Error::DegeneratePoint)?;
        Ok(&g_inv * &self.second_fundamental_form())
    }
}

/// The induced metric at `y`, from the polynomial formula.
pub fn first_fundamental_form(imm: &Immersion, y: &[Rational]) -> Result<Matrix> {
    imm.space().check_vector(y)?;
    Ok(imm.metric().evaluate(y))
}

/// Curvature of the induced metric at `y`, by the Gauss equation with the unnormalized normal.
pub fn gauss_curvature_tensor(imm: &Immersion, y: &[Rational]) -> Result<CurvatureTensor4> {
    let g = first_fundamental_form(imm, y)?;
    let space = SignatureSpace::from_gram(g).map_err(|_| Error::DegeneratePoint)?;
    let normal = imm.normal(y)?;
    let nn = imm.ambient().inner(&normal, &normal)?;
    if nn.is_zero() {
        return Err(Error::DegeneratePoint);
    }
    let sff = imm.second_fundamental_form();
    Ok(CurvatureTensor4::from_fn(space, |i, j, k, l| {
        (&sff[(i, l)] * &sff[(j, k)] - &sff[(i, k)] * &sff[(j, l)]) / &nn
    }))
}

/// Origin curvature from second derivatives of the metric alone (first derivatives vanish there).
pub fn origin_curvature_from_metric(imm: &Immersion) -> CurvatureTensor4 {
    let m = imm.metric();
    let half = Rational::new(1.into(), 2.into());
    CurvatureTensor4::from_fn(imm.space().clone(), |i, j, k, l| {
        (m.second_derivative(j, l, i, k) + m.second_derivative(i, k, j, l)
            - m.second_derivative(j, k, i, l)
            - m.second_derivative(i, l, j, k))
            * &half
    })
}

/// Shape operator at the origin for the normal `N / √μ`: `ε φ`.
pub fn shape_operator_origin(imm: &Immersion) -> LinearMap {
    imm.phi().scale(&Rational::from_integer(imm.epsilon().into()))
}

/// Rank observed on sampled spacelike planes of the curvature at one point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RankSample {
    pub point: Vec<Rational>,
    /// Smallest rank seen, `None` when the point is degenerate.
    pub rank: Option<usize>,
    /// All sampled planes gave the same rank.
    pub constant: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RealizationReport {
    pub epsilon: i8,
    pub mu: Rational,
    pub phi: LinearMap,
    /// Gauss-route curvature at the origin equals the input exactly.
    pub origin_equal: bool,
    /// The metric second-derivative route agrees with the Gauss route at the origin.
    pub routes_agree: bool,
    pub rank_samples: Vec<RankSample>,
}

impl RealizationReport {
    pub fn ok(&self) -> bool {
        self.origin_equal
            && self.routes_agree
            && self.rank_samples.iter().all(|s| s.rank == Some(2) && s.constant)
    }
}

/// Seeded grid point with coordinates `j / 64`, `|j| ≤ 8`.
pub fn near_origin_point(dim: usize, seed: u64, index: u64) -> Vec<Rational> {
    let mut rng = rng_for(seed, Stream::Point, index);
    (0..dim)
        .map(|_| Rational::new(rng.gen_range(-POINT_STEPS..=POINT_STEPS).into(), POINT_DENOM.into()))
        .collect()
}

pub fn rank_at_point(
    imm: &Immersion,
    y: &[Rational],
    planes: usize,
    seed: u64,
    index: u64,
) -> Result<RankSample> {
    let r = match gauss_curvature_tensor(imm, y) {
        Ok(r) => r,
        Err(Error::DegeneratePoint) => {
            return Ok(RankSample {
                point: y.to_vec(),
                rank: None,
                constant: false,
            })
        }
        Err(e) => return Err(e),
    };
    let mut ranks = Vec::with_capacity(planes);
    for k in 0..planes as u64 {
        let mut rng = rng_for(seed, Stream::Plane, index.wrapping_mul(1 << 20).wrapping_add(k));
        let (v1, v2) = spacelike_plane_from(r.space(), &mut rng, 3)?;
        ranks.push(rank(&plane_operator(&r, &v1, &v2)?.op));
    }
    Ok(RankSample {
        point: y.to_vec(),
        rank: ranks.iter().min().copied(),
        constant: ranks.windows(2).all(|w| w[0] == w[1]),
    })
}

pub const RANK_PRECHECK_PLANES: usize = 32;

/// Factors `R = ε μ R_φ`, realizes it, and checks the result at and near the origin.
pub fn verify_realization(
    r: &CurvatureTensor4,
    points: usize,
    planes: usize,
    seed: u64,
) -> Result<RealizationReport> {
    if !r.validate_symmetries().all() {
        return Err(Error::NotRankTwo("not an algebraic curvature tensor".into()));
    }
    check_rank_two(r, RANK_PRECHECK_PLANES, seed)?;
    let t = BilinearSkewMap::from_tensor(r)?;
    let (d, _) = decompose_traced(&t, seed)?;
    let (epsilon, mu, phi) = match d {
        Decomposition::PhiForm { epsilon, mu, phi } => (epsilon, mu, phi),
        Decomposition::ChiXi { .. } => return Err(Error::VerificationFailed),
    };
    let phi = phi.with_spaces(r.space().clone(), r.space().clone())?;
    let (phi, mu) = match rational_sqrt(&mu) {
        Some(root) => (phi.scale(&root), Rational::one()),
        None => (phi, mu),
    };
    let imm = Immersion::with_scale(&phi, epsilon, mu.clone())?;
    let origin = vec![Rational::zero(); r.dim()];
    let at_origin = gauss_curvature_tensor(&imm, &origin)?;
    let origin_equal = at_origin == *r;
    let routes_agree = origin_curvature_from_metric(&imm) == at_origin;
    if !origin_equal {
        return Err(Error::VerificationFailed);
    }
    let rank_samples = (0..points as u64)
        .map(|i| rank_at_point(&imm, &near_origin_point(r.dim(), seed, i), planes, seed, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(RealizationReport {
        epsilon,
        mu,
        phi,
        origin_equal,
        routes_agree,
        rank_samples,
    })
}

/// `ε μ R_φ`, the tensor an immersion realizes at the origin.
pub fn expected_origin_tensor(imm: &Immersion) -> Result<CurvatureTensor4> {
    Ok(make_r_phi(imm.phi())?.scale(&imm.kappa()))
}
