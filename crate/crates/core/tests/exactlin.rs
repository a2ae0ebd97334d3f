mod common;

use common::*;
use curvrank::curvature::plane_operator;
use curvrank::exactlin::*;
use curvrank::fixtures::{mixed_nilpotent_phi, orientation_map};
use curvrank::sampling::{random_int_matrix, random_invertible_matrix, rng_for, Stream};
use curvrank::Error;
use proptest::prelude::*;

#[test]
fn inner_examples() {
    let s = SignatureSpace::standard(0, 4);
    assert_eq!(s.inner(&e(4, 0), &e(4, 0)).unwrap(), r(1));
    let s = SignatureSpace::standard(1, 4);
    assert_eq!(s.inner(&e(5, 0), &e(5, 0)).unwrap(), r(-1));
    let v = ints(&[1, 2, 0, 0, 0]);
    assert_eq!(s.inner(&v, &v).unwrap(), r(3));
    assert!(s.inner(&e(4, 0), &v).is_err());
}

#[test]
fn space_construction() {
    let s = SignatureSpace::standard(2, 3);
    assert_eq!((s.dim(), s.p(), s.q()), (5, 2, 3));
    assert_eq!(*s.gram(), Matrix::diagonal(&ints(&[-1, -1, 1, 1, 1])));
    let bad = Matrix::from_i64(&[&[1, 2], &[0, 1]]);
    assert_eq!(SignatureSpace::from_gram(bad), Err(Error::NotSymmetric));
    let singular = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
    assert_eq!(SignatureSpace::from_gram(singular), Err(Error::DegenerateGram));
    let hyperbolic = SignatureSpace::from_gram(Matrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
    assert_eq!((hyperbolic.p(), hyperbolic.q()), (1, 1));
}

#[test]
fn rank_examples() {
    assert_eq!(rank(&Matrix::zeros(4, 4)), 0);
    assert_eq!(rank(&Matrix::identity(5)), 5);
    let t = orientation_map(0);
    assert_eq!(rank(&plane_operator(&t, &e(4, 0), &e(4, 1)).unwrap().op), 2);
}

#[test]
fn kernel_examples() {
    assert!(kernel_basis(&Matrix::identity(4)).is_zero());
    assert_eq!(kernel_basis(&Matrix::zeros(3, 3)), Subspace::full(3));
    let p = 4;
    let phi = mixed_nilpotent_phi(p).unwrap();
    let nulls: Vec<_> = (0..p)
        .map(|i| {
            let mut v = e(2 * p + 1, i);
            v[p + i] = r(1);
            v
        })
        .collect();
    assert_eq!(phi.kernel(), Subspace::span(2 * p + 1, &nulls).unwrap());
}

#[test]
fn intersect_examples() {
    let a = Subspace::span(4, &[e(4, 0), e(4, 1)]).unwrap();
    let b = Subspace::span(4, &[e(4, 1), e(4, 2)]).unwrap();
    assert_eq!(a.intersect(&b).unwrap(), Subspace::span(4, &[e(4, 1)]).unwrap());
    assert_eq!(a.intersect(&a).unwrap(), a);
    assert!(a.intersect(&Subspace::full(5)).is_err());

    let t = orientation_map(0);
    let range = |j: usize| Subspace::column_space(&plane_operator(&t, &e(4, 0), &e(4, j)).unwrap().op);
    let all = range(1).intersect(&range(2)).unwrap().intersect(&range(3)).unwrap();
    assert!(all.is_zero());
}

#[test]
fn signature_examples() {
    let d = Matrix::diagonal(&ints(&[-1, -1, 1, 1, 1]));
    let i = signature_of_symmetric(&d).unwrap();
    assert_eq!((i.positive, i.negative, i.zero), (3, 2, 0));
    let z = signature_of_symmetric(&Matrix::zeros(4, 4)).unwrap();
    assert_eq!((z.positive, z.negative, z.zero), (0, 0, 4));
    assert_eq!(
        signature_of_symmetric(&Matrix::from_i64(&[&[0, 1], &[2, 0]])),
        Err(Error::NotSymmetric)
    );
    // null kernel of the mixed nilpotent map restricts to the zero form
    let phi = mixed_nilpotent_phi(4).unwrap();
    let g = phi.domain().restricted_gram(&phi.kernel().basis_matrix());
    let k = signature_of_symmetric(&g).unwrap();
    assert_eq!((k.positive, k.negative, k.zero), (0, 0, 4));
    // e_i^- - e_i^+ is null as well
    let diffs: Vec<_> = (0..4)
        .map(|i| {
            let mut v = e(9, i);
            v[4 + i] = r(-1);
            v
        })
        .collect();
    let g = phi.domain().restricted_gram(&Matrix::from_columns(9, &diffs));
    let k = signature_of_symmetric(&g).unwrap();
    assert_eq!((k.positive, k.negative, k.zero), (0, 0, 4));
    assert_eq!(inner(phi.domain(), &diffs[0], &diffs[0]), r(0));
}

#[test]
fn solve_in_span_examples() {
    let basis = [e(3, 0), e(3, 1)];
    assert_eq!(solve_in_span(&ints(&[1, 1, 0]), &basis).unwrap(), Some(ints(&[1, 1])));
    assert_eq!(solve_in_span(&e(3, 2), &basis).unwrap(), None);
    let three = vec![vec![r(3), r(0), r(0)]];
    assert_eq!(
        solve_in_span(&[q(3, 2), r(0), r(0)], &three).unwrap(),
        Some(vec![q(1, 2)])
    );
    let dependent = [e(3, 0), ints(&[2, 0, 0])];
    assert_eq!(solve_in_span(&e(3, 0), &dependent), Err(Error::DependentBasis));
}

#[test]
fn rationals_stay_reduced() {
    let x = q(6, -4);
    assert_eq!(x, q(-3, 2));
    assert!(x.denom() > &0.into());
    assert_eq!(rational_sqrt(&q(9, 4)), Some(q(3, 2)));
    assert_eq!(rational_sqrt(&r(2)), None);
    assert_eq!(rational_sqrt(&r(-4)), None);
}

fn matrix_strategy(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max, any::<u64>()).prop_map(|(rows, cols, seed)| {
        random_int_matrix(&mut rng_for(seed, Stream::Phi, 0), rows, cols, 3)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn prop_rank_nullity(m in matrix_strategy(7)) {
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.dim(), m.cols());
        prop_assert_eq!(rank(&m), oracle_rank(&m));
        for v in k.basis() {
            prop_assert!(mat_vec(&m, v).iter().all(|x| x == &r(0)));
        }
    }

    #[test]
    fn prop_intersection_dimensions(a in matrix_strategy(6), seed in any::<u64>()) {
        let n = a.rows();
        let b = random_int_matrix(&mut rng_for(seed, Stream::Phi, 1), n, 1 + (seed % 4) as usize, 2);
        let sa = Subspace::column_space(&a);
        let sb = Subspace::column_space(&b);
        let meet = sa.intersect(&sb).unwrap();
        prop_assert_eq!(&meet, &sb.intersect(&sa).unwrap());
        prop_assert_eq!(sa.dim() + sb.dim(), sa.sum(&sb).unwrap().dim() + meet.dim());
        prop_assert_eq!(&sa.intersect(&Subspace::full(n)).unwrap(), &sa);
        for v in meet.basis() {
            prop_assert!(sa.contains(v) && sb.contains(v));
        }
    }

    #[test]
    fn prop_sylvester_law(n in 1usize..=6, seed in any::<u64>()) {
        let mut rng = rng_for(seed, Stream::Phi, 2);
        let half = random_int_matrix(&mut rng, n, n, 3);
        let m = &half + &half.transpose();
        let g = random_invertible_matrix(&mut rng, n, 3).unwrap();
        let moved = &(&g.transpose() * &m) * &g;
        let a = signature_of_symmetric(&m).unwrap();
        let b = signature_of_symmetric(&moved).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(a.positive + a.negative + a.zero, n);
        prop_assert_eq!(a.zero, n - oracle_rank(&m));
    }

    #[test]
    fn prop_solve_reconstructs(seed in any::<u64>(), k in 1usize..=4) {
        let mut rng = rng_for(seed, Stream::Phi, 3);
        let g = random_invertible_matrix(&mut rng, 5, 3).unwrap();
        let basis: Vec<_> = (0..k).map(|j| g.column(j)).collect();
        let coeffs = curvrank::sampling::random_int_vector(&mut rng, k, 4);
        let mut target = vec![r(0); 5];
        for (c, b) in coeffs.iter().zip(&basis) {
            for (t, x) in target.iter_mut().zip(b) {
                *t += c * x;
            }
        }
        prop_assert_eq!(solve_in_span(&target, &basis).unwrap(), Some(coeffs));
    }
}
