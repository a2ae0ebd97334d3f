mod common;

use common::*;
use curvrank::curvature::{make_t_chi_xi, make_t_phi, AlternatingMap, BilinearSkewMap};
use curvrank::exactlin::{LinearMap, Matrix, Rational, SignatureSpace, Subspace};
use curvrank::fixtures::orientation_map;
use curvrank::reconstruct::*;
use curvrank::sampling::{
    random_admissible_chi_xi, random_admissible_map, random_admissible_phi, random_skew,
};
use curvrank::Error;
use num_traits::{One, Zero};
use proptest::prelude::*;

#[test]
fn flatten_examples() {
    let f = flatten(&SignatureSpace::standard(0, 5));
    assert_eq!(f.psi, Matrix::identity(5));
    let f = flatten(&SignatureSpace::standard(1, 4));
    assert_eq!(f.psi, Matrix::from_i64(&[
        &[-1, 0, 0, 0, 0],
        &[0, 1, 0, 0, 0],
        &[0, 0, 1, 0, 0],
        &[0, 0, 0, 1, 0],
        &[0, 0, 0, 0, 1],
    ]));
    assert_eq!(f.positive_gram, Matrix::identity(5));
}

#[test]
fn flatten_non_diagonal_gram() {
    let g = Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 3]]);
    let space = SignatureSpace::from_gram(g).unwrap();
    let f = flatten(&space);
    assert_eq!(&f.psi * &f.psi, Matrix::identity(3));
    assert!(f.positive_gram.is_symmetric());
    let s = SignatureSpace::from_gram(f.positive_gram.clone()).unwrap();
    assert_eq!((s.p(), s.q()), (0, 3));
}

#[test]
fn phi_line_examples() {
    let s = SignatureSpace::standard(0, 5);
    let t = make_t_phi(&LinearMap::identity(s));
    let line = phi_line(&t, &e(5, 0), &e(5, 1), &e(5, 2)).unwrap();
    assert_eq!(line, Subspace::span(5, &[e(5, 0)]).unwrap());

    // two partners leave a spurious line; the third removes it
    let t81 = orientation_map(0);
    let two = phi_line(&t81, &e(4, 0), &e(4, 1), &e(4, 2)).unwrap();
    assert_eq!(two, Subspace::span(4, &[e(4, 3)]).unwrap());
    assert_eq!(
        phi_line_multi(&t81, &e(4, 0), &[e(4, 1), e(4, 2), e(4, 3)]),
        Err(Error::DegenerateLine(0))
    );
}

#[test]
fn phi_line_of_chi_xi_is_the_pivot() {
    let a = SignatureSpace::standard(0, 5);
    let b = SignatureSpace::standard(1, 10);
    let (chi, xi) = random_admissible_chi_xi(a, b, 3).unwrap();
    let t = make_t_chi_xi(&chi, &xi).unwrap();
    let line = phi_line(&t, &e(5, 0), &e(5, 1), &e(5, 2)).unwrap();
    assert_eq!(line, Subspace::span(11, &[xi.clone()]).unwrap());
}

#[test]
fn decompose_identity() {
    let s = SignatureSpace::standard(0, 5);
    let t = make_t_phi(&LinearMap::identity(s.clone()));
    match decompose(&t).unwrap() {
        Decomposition::PhiForm { epsilon, mu, phi } => {
            assert_eq!(epsilon, 1);
            assert_eq!(make_t_phi(&phi).scale(&mu), t);
        }
        d => panic!("unexpected {d:?}"),
    }
}

#[test]
fn decompose_between_signatures() {
    let a = SignatureSpace::standard(1, 5);
    let b = SignatureSpace::standard(0, 6);
    for seed in 0..5 {
        let phi = random_admissible_map(a.clone(), b.clone(), 1, seed).unwrap();
        let t = make_t_phi(&phi);
        let (d, probes) = decompose_traced(&t, seed).unwrap();
        let Decomposition::PhiForm { epsilon, mu, phi: found } = &d else {
            panic!("expected PhiForm, got {d:?}");
        };
        assert_eq!(*epsilon, 1);
        let scale = mu * Rational::from_integer((*epsilon).into());
        assert_eq!(make_t_phi(found).scale(&scale), t);
        assert_eq!(
            Subspace::column_space(found.matrix()),
            Subspace::column_space(phi.matrix())
        );
        for pl in &probes {
            assert!(pl.line.contains(&found.apply(&pl.probe).unwrap()));
        }
    }
}

#[test]
fn decompose_negative_multiple() {
    let phi = random_admissible_phi(1, 5, 1, 9).unwrap();
    let t = make_t_phi(&phi).scale(&q(-3, 2));
    let d = decompose(&t).unwrap();
    let Decomposition::PhiForm { epsilon, mu, .. } = &d else {
        panic!("expected PhiForm");
    };
    assert_eq!(*epsilon, -1);
    assert!(verify_decomposition(&t, &d));
    assert!(mu > &Rational::zero());
}

#[test]
fn decompose_chi_xi_round_trip() {
    let a = SignatureSpace::standard(1, 5);
    let b = SignatureSpace::standard(2, 14);
    for seed in 0..3 {
        let (chi, xi) = random_admissible_chi_xi(a.clone(), b.clone(), seed).unwrap();
        let t = make_t_chi_xi(&chi, &xi).unwrap();
        let d = decompose(&t).unwrap();
        assert_eq!(d.variant(), "ChiXi");
        assert_eq!(d.rebuild().unwrap(), t);
    }
}

#[test]
fn decompose_rejects_small_domain() {
    assert_eq!(decompose(&orientation_map(0)), Err(Error::DomainTooSmall(4)));
    assert_eq!(decompose(&orientation_map(2)), Err(Error::DomainTooSmall(4)));
}

#[test]
fn decompose_rejects_higher_rank() {
    let s = SignatureSpace::standard(0, 5);
    let upper: Vec<_> = (0..5)
        .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
        .enumerate()
        .map(|(k, ij)| (ij, random_skew(&s, 2, k as u64)))
        .collect();
    let t = BilinearSkewMap::from_upper_blocks(s.clone(), s, upper).unwrap();
    assert!(matches!(decompose(&t), Err(Error::NotRankTwo(_))));
}

#[test]
fn verify_decomposition_examples() {
    let phi = random_admissible_phi(0, 5, 0, 4).unwrap();
    let t = make_t_phi(&phi);
    let d = decompose(&t).unwrap();
    assert!(verify_decomposition(&t, &d));
    let Decomposition::PhiForm { epsilon, mu, phi: found } = d else {
        panic!("expected PhiForm");
    };
    let mut m = found.matrix().clone();
    m[(0, 0)] += Rational::one();
    let bumped = LinearMap::new(found.domain().clone(), found.codomain().clone(), m).unwrap();
    assert!(!verify_decomposition(
        &t,
        &Decomposition::PhiForm { epsilon, mu, phi: bumped }
    ));

    let a = SignatureSpace::standard(0, 5);
    let b = SignatureSpace::standard(0, 11);
    let (chi, xi) = random_admissible_chi_xi(a, b, 8).unwrap();
    let t = make_t_chi_xi(&chi, &xi).unwrap();
    assert!(verify_decomposition(&t, &Decomposition::ChiXi { chi: chi.clone(), xi: xi.clone() }));
    let doubled: Vec<Rational> = xi.iter().map(|x| x * r(2)).collect();
    // T_{χ,2ξ} = 2 T_{χ,ξ}
    assert_eq!(make_t_chi_xi(&chi, &doubled).unwrap(), t.scale(&r(2)));
    assert!(!verify_decomposition(&t, &Decomposition::ChiXi { chi, xi: doubled }));
}

fn empty_chi(a: &SignatureSpace, b: &SignatureSpace) -> AlternatingMap {
    AlternatingMap::from_upper_values(a.clone(), b.clone(), []).unwrap()
}

#[test]
fn zero_map_is_not_rank_two() {
    let a = SignatureSpace::standard(0, 5);
    let t = make_t_chi_xi(&empty_chi(&a, &a), &e(5, 0)).unwrap();
    assert!(matches!(decompose(&t), Err(Error::NotRankTwo(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prop_flatten_carries_skew_algebras(
        (p, qq) in (0usize..=3, 1usize..=4),
        seed in any::<u64>(),
    ) {
        let space = SignatureSpace::standard(p, qq);
        let f = flatten(&space);
        let t = random_skew(&space, 2, seed);
        let ft = &f.psi * &t;
        prop_assert!((space.gram() * &t).is_antisymmetric());
        prop_assert!((&f.positive_gram * &ft).is_antisymmetric());
        prop_assert_eq!(&f.psi * &ft, t.clone());
        // a non-skew operator stays non-skew
        let bad = &t + &Matrix::identity(p + qq);
        prop_assert!(!(&f.positive_gram * &(&f.psi * &bad)).is_antisymmetric());
    }
}
