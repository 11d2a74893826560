mod common;

use matrix_waring::canon::{partition_spectrum, zero_diagonal_similarity};
use matrix_waring::certificate::{from_json, to_json, verify};
use matrix_waring::freealg::{parse, NcPolynomial};
use matrix_waring::linalg::{c64, eigenvalues, frobenius, identity, max_abs_diagonal, sylvester_solve, trace, CMatrix};
use matrix_waring::sampling::{gaussian_matrix, random_tuple, sample_rng};
use matrix_waring::unitaries::{
    assign_parameters, build_decoupling_unitary, make_projector, split_hollow, BlockPattern, ProjectorSign,
};
use matrix_waring::waring::{diff_of_similar, four_term_decompose, waring_express, ExpressOptions};
use matrix_waring::Tolerances;
use proptest::prelude::*;

use common::{dense_sylvester, hollow, planted, spectral_distance, traceless};

fn polynomial() -> impl Strategy<Value = NcPolynomial> {
    let coeff = (-4i32..=4, -2i32..=2).prop_map(|(re, im)| c64(f64::from(re) / 2.0, f64::from(im)));
    let word = prop::collection::vec(1u32..=3, 0..4);
    prop::collection::vec((coeff, word), 0..5).prop_map(NcPolynomial::from_terms)
}

fn close(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    frobenius(&(a - b)) <= tol * (1.0 + frobenius(a).max(frobenius(b)))
}

fn pattern() -> impl Strategy<Value = BlockPattern> {
    (2usize..=7).prop_flat_map(|n| {
        let all = BlockPattern::all(n);
        (0..all.len()).prop_map(move |k| all[k])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn display_parses_back(f in polynomial()) {
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn evaluation_is_an_algebra_map(f in polynomial(), g in polynomial(), n in 1usize..4, seed in any::<u64>()) {
        let args = random_tuple(seed, 0, 3, n);
        let (ef, eg) = (f.evaluate(&args).unwrap(), g.evaluate(&args).unwrap());
        prop_assert!(close(&f.add(&g).evaluate(&args).unwrap(), &(&ef + &eg), 1e-12));
        prop_assert!(close(&f.mul(&g).evaluate(&args).unwrap(), &(&ef * &eg), 1e-12));
    }

    #[test]
    fn commutators_are_traceless(n in 1usize..6, seed in any::<u64>()) {
        let f = parse("[X1,X2]").unwrap();
        let m = f.evaluate(&random_tuple(seed, 0, 2, n)).unwrap();
        prop_assert!(trace(&m).norm() <= 1e-12 * frobenius(&m).max(1.0));
    }

    #[test]
    fn projectors_are_rank_one_orthogonal(q in 0.001f64..0.999, minus in any::<bool>()) {
        let sign = if minus { ProjectorSign::Minus } else { ProjectorSign::Plus };
        let r = make_projector(q, sign).unwrap().matrix;
        prop_assert!(close(&(&r * &r), &r, 1e-14));
        prop_assert!(close(&r.adjoint(), &r, 1e-15));
        prop_assert!((trace(&r) - c64(1.0, 0.0)).norm() <= 1e-14);
    }

    #[test]
    fn parameters_satisfy_constraints(r1 in 0usize..8, r2 in 0usize..8, r3 in 0usize..8, odd in any::<bool>()) {
        let p = assign_parameters(r1, r2, r3, odd);
        prop_assert_eq!((p.qs.len(), p.ts.len(), p.ss.len()), (r1, r2, r3));
        prop_assert!(p.validate(odd).is_ok());
    }

    #[test]
    fn decoupling_unitary_is_unitary(p in pattern()) {
        let (u, _) = build_decoupling_unitary(&p).unwrap();
        prop_assert!(close(&(&u * u.adjoint()), &identity(p.n()), 1e-13));
    }

    #[test]
    fn hollow_split_reconstructs(p in pattern(), seed in any::<u64>()) {
        let tol = Tolerances::default();
        let m = hollow(p.n(), seed, 1);
        let s = split_hollow(&m, &p, &tol).unwrap();
        prop_assert!(p.contains(&s.c1) && p.contains(&s.c2));
        let back = &s.c1 + &s.u * &s.c2 * s.u.adjoint();
        prop_assert!(frobenius(&(&m - back)) <= 1e-9 * frobenius(&m).max(1.0));
    }

    #[test]
    fn zero_diagonal_keeps_spectrum(n in 2usize..8, seed in any::<u64>()) {
        let tol = Tolerances::default();
        let a = traceless(n, seed, 2);
        let h = zero_diagonal_similarity(&a, &tol).unwrap();
        prop_assert!(max_abs_diagonal(&h.m) <= tol.hollow_tol * frobenius(&h.m).max(1.0));
        prop_assert!(h.to_hollow.verify(tol.cert_tol).is_ok());
        let d = spectral_distance(&eigenvalues(&a).unwrap(), &eigenvalues(&h.m).unwrap());
        prop_assert!(d <= 1e-8, "spectrum moved by {}", d);
    }

    #[test]
    fn difference_of_similar_is_exact(n in 2usize..7, seed in any::<u64>()) {
        let tol = Tolerances::default();
        let values: Vec<f64> = (1..=n).map(|k| k as f64).collect();
        let part = partition_spectrum(&planted(&values, seed), &tol).unwrap();
        let c = hollow(n, seed, 3);
        let pattern = BlockPattern::from_sizes(&part.block_sizes).unwrap();
        let c = CMatrix::from_fn(n, n, |i, j| if pattern.labels()[i] == pattern.labels()[j] { c64(0.0, 0.0) } else { c[(i, j)] });
        let d = diff_of_similar(&part, &c, &tol).unwrap();
        prop_assert_eq!(&d.bp - &d.bpp, c);
    }

    #[test]
    fn four_term_sums_to_target(n in 2usize..6, seed in any::<u64>()) {
        let tol = Tolerances::default();
        let values: Vec<f64> = (1..=n).map(|k| (k as f64) - 0.5 * n as f64).collect();
        let b = planted(&values, seed);
        let a = traceless(n, seed, 4);
        let cert = four_term_decompose(&b, &a, &tol).unwrap();
        let coeffs: Vec<f64> = cert.coefficients.iter().map(|z| z.re).collect();
        prop_assert_eq!(coeffs, vec![1.0, -1.0, 1.0, -1.0]);
        prop_assert!(cert.residual <= 1e-8 * frobenius(&a).max(1.0));
        prop_assert!(verify(&cert).is_ok());
    }

    #[test]
    fn certificates_round_trip_bytes(n in 2usize..5, seed in 0u64..1000) {
        let tol = Tolerances::default();
        let f = parse("X1^2 + X2").unwrap();
        let cert = waring_express(&f, &traceless(n, seed, 5), &ExpressOptions { budget: 1000, seed }, &tol).unwrap();
        let text = to_json(&cert).unwrap();
        prop_assert_eq!(to_json(&from_json(&text).unwrap()).unwrap(), text);
    }

    #[test]
    fn sylvester_matches_kronecker_oracle(p in 1usize..6, q in 1usize..6, shift in 3.0f64..10.0, seed in any::<u64>()) {
        let mut rng = sample_rng(seed, 6);
        let a1 = gaussian_matrix(&mut rng, p);
        let a2 = gaussian_matrix(&mut rng, q) + identity(q) * c64(shift, 0.0);
        let c = CMatrix::from_fn(p, q, |i, j| c64((i + 2 * j) as f64, 1.0));
        let x = sylvester_solve(&a1, &a2, &c, &Tolerances::default()).unwrap();
        prop_assert!(close(&x, &dense_sylvester(&a1, &a2, &c), 1e-10));
        prop_assert!(close(&(&a1 * &x - &x * &a2), &c, 1e-11));
    }
}
