use num_complex::Complex64;

use super::four_term::{check_end_residual, four_term_parts, FourTermParts};
use super::search::{image_search, Goal, ImageWitness};
use super::triangular::{block_triangular_similarity, Orientation};
use super::{CertifiedStep, Mode, TermLink, WaringCertificate};
use crate::canon::{block_diagonalize_by_cluster, cluster_eigenvalues, zero_diagonal_similarity, Cluster};
use crate::error::{Error, Result};
use crate::freealg::{classify_with, ClassifyOptions, NcPolynomial, Verdict};
use crate::linalg::{eigenvalues, ensure_square, frobenius, project_traceless, trace, zeros, CMatrix, SimilarityCertificate};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpressOptions {
    /// Samples per witness search.
    pub budget: usize,
    pub seed: u64,
}

impl Default for ExpressOptions {
    fn default() -> Self {
        Self { budget: 1000, seed: 0 }
    }
}

fn require_noncentral(f: &NcPolynomial, n: usize, seed: u64, tol: &Tolerances) -> Result<Verdict> {
    let opts = ClassifyOptions { tol: tol.classify_tol, seed, ..ClassifyOptions::default() };
    let verdict = classify_with(f, n, &opts).verdict;
    if verdict.is_noncentral() {
        Ok(verdict)
    } else {
        Err(Error::NotGeneric(verdict))
    }
}

fn require_traceless(a: &CMatrix, tol: &Tolerances) -> Result<()> {
    let tr = trace(a);
    if tr.norm() > tol.trace_tol * frobenius(a).max(1.0) {
        return Err(Error::NonzeroTrace { trace: tr });
    }
    Ok(())
}

fn conjugate_args(cert: &SimilarityCertificate, args: &[CMatrix]) -> Vec<CMatrix> {
    args.iter().map(|a| &cert.t * a * &cert.t_inv).collect()
}

fn signed_residual(f: &NcPolynomial, target: &CMatrix, tuples: &[Vec<CMatrix>], coefficients: &[Complex64]) -> Result<f64> {
    let mut sum = target.clone();
    for (tuple, c) in tuples.iter().zip(coefficients) {
        sum -= f.evaluate(tuple)? * *c;
    }
    Ok(frobenius(&sum))
}

fn four_term_tuples(parts: &FourTermParts, args: &[CMatrix]) -> Vec<Vec<CMatrix>> {
    parts.term_certs.iter().map(|cert| conjugate_args(cert, args)).collect()
}

/// A = f(t₁) − f(t₂) + f(t₃) − f(t₄) for trace-zero A and f neither an
/// identity nor central on n×n matrices.
pub fn waring_express(f: &NcPolynomial, a: &CMatrix, opts: &ExpressOptions, tol: &Tolerances) -> Result<WaringCertificate> {
    let n = ensure_square(a, "target")?;
    require_noncentral(f, n, opts.seed, tol)?;
    require_traceless(a, tol)?;
    let witness = image_search(f, n, Goal::MultiplicityHalf, opts.budget, opts.seed, tol)?;
    let parts = four_term_parts(&witness.matrix, &project_traceless(a), tol)?;
    let tuples = four_term_tuples(&parts, &witness.args);
    let coefficients = Mode::FourTerm.signs().expect("signed mode");
    let residual = signed_residual(f, a, &tuples, &coefficients)?;
    check_end_residual(residual, a, tol)?;
    Ok(WaringCertificate {
        mode: Mode::FourTerm,
        polynomial: f.clone(),
        steps: parts.steps(0, 0),
        witnesses: vec![witness],
        tuples,
        coefficients,
        target: a.clone(),
        residual,
        tolerances: *tol,
    })
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// A = f(t₁) − f(t₂), available when n is prime or f is multilinear.
///
/// A witness D = f(args) with distinct eigenvalues λᵢ is diagonalized; with
/// M = S·A·S⁻¹ hollow, both Λ + strictUpper(M) and Λ − strictLower(M) are
/// triangular with diagonal Λ, hence similar to D, and their difference is M.
pub fn two_term_decompose(f: &NcPolynomial, a: &CMatrix, opts: &ExpressOptions, tol: &Tolerances) -> Result<WaringCertificate> {
    let n = ensure_square(a, "target")?;
    if !is_prime(n) && !f.is_multilinear() {
        return Err(Error::PreconditionUnmet(format!(
            "two-term mode needs n prime or f multilinear (n = {n}); use four-term mode"
        )));
    }
    let verdict = require_noncentral(f, n, opts.seed, tol)?;
    if matches!(verdict, Verdict::KCentral(2)) && n > 2 {
        return Err(Error::PreconditionUnmet(format!(
            "f is 2-central for n = {n}, so differences of two image points miss some trace-zero matrices; use four-term mode"
        )));
    }
    require_traceless(a, tol)?;

    let witness = image_search(f, n, Goal::DistinctEigs, opts.budget, opts.seed, tol)?;
    let eigs = eigenvalues(&witness.matrix)?;
    let clusters: Vec<Cluster> = cluster_eigenvalues(&eigs, tol.cluster_tol);
    if clusters.len() != n {
        return Err(Error::ClusterGapTooSmall { gap: 0.0, bound: tol.cluster_tol });
    }
    // D = Q·Λ·Q⁻¹.
    let (blocks, to_diag) = block_diagonalize_by_cluster(&witness.matrix, &clusters, tol)?;
    let hollow = zero_diagonal_similarity(&project_traceless(a), tol)?;
    let m = &hollow.m;
    let mut upper = zeros(n, n);
    let mut lower = zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            if i < j {
                upper[(i, j)] = m[(i, j)];
            } else if i > j {
                lower[(i, j)] = -m[(i, j)];
            }
        }
    }
    let plus = block_triangular_similarity(&blocks, &upper, Orientation::Upper, tol)?;
    let minus = block_triangular_similarity(&blocks, &lower, Orientation::Lower, tol)?;

    let (s, s_inv) = (&hollow.to_hollow.t, &hollow.to_hollow.t_inv);
    let (q, q_inv) = (&to_diag.t, &to_diag.t_inv);
    let mut steps = vec![
        CertifiedStep { label: "diagonalization".into(), link: None, certificate: to_diag.clone() },
        CertifiedStep { label: "zero diagonal".into(), link: None, certificate: hollow.to_hollow.clone() },
    ];
    let mut tuples = Vec::with_capacity(2);
    for (k, y) in [plus, minus].iter().enumerate() {
        let term = s_inv * &y.to * s;
        let cert = SimilarityCertificate::new(s_inv * &y.t * q_inv, q * &y.t_inv * s, witness.matrix.clone(), term)?;
        cert.check(tol.cert_tol)?;
        tuples.push(conjugate_args(&cert, &witness.args));
        steps.push(CertifiedStep {
            label: format!("term {}", k + 1),
            link: Some(TermLink { term: k, witness: 0 }),
            certificate: cert,
        });
    }
    let coefficients = Mode::TwoTerm.signs().expect("signed mode");
    let residual = signed_residual(f, a, &tuples, &coefficients)?;
    check_end_residual(residual, a, tol)?;
    Ok(WaringCertificate {
        mode: Mode::TwoTerm,
        polynomial: f.clone(),
        witnesses: vec![witness],
        tuples,
        coefficients,
        target: a.clone(),
        residual,
        tolerances: *tol,
        steps,
    })
}

/// T = c₀·f(t₀) + f(t₁) − f(t₂) + f(t₃) − f(t₄) for arbitrary T, using an
/// image point A₀ with nonzero trace and c₀ = tr T / tr A₀.
pub fn five_term_express(f: &NcPolynomial, t: &CMatrix, opts: &ExpressOptions, tol: &Tolerances) -> Result<WaringCertificate> {
    let n = ensure_square(t, "target")?;
    require_noncentral(f, n, opts.seed, tol)?;
    let traced = image_search(f, n, Goal::NonzeroTrace, opts.budget, opts.seed, tol)?;
    let tr = trace(t);
    let c0 = if tr.norm() <= tol.trace_tol * frobenius(t).max(1.0) {
        Complex64::new(0.0, 0.0)
    } else {
        tr / trace(&traced.matrix)
    };
    let remainder = project_traceless(&(t - &traced.matrix * c0));
    let witness: ImageWitness =
        image_search(f, n, Goal::MultiplicityHalf, opts.budget, opts.seed.wrapping_add(1), tol)?;
    let parts = four_term_parts(&witness.matrix, &remainder, tol)?;

    let mut tuples = vec![traced.args.clone()];
    tuples.extend(four_term_tuples(&parts, &witness.args));
    let mut coefficients = vec![c0];
    coefficients.extend(Mode::FourTerm.signs().expect("signed mode"));
    let residual = signed_residual(f, t, &tuples, &coefficients)?;
    check_end_residual(residual, t, tol)?;
    Ok(WaringCertificate {
        mode: Mode::FiveTerm,
        polynomial: f.clone(),
        steps: parts.steps(1, 1),
        witnesses: vec![traced, witness],
        tuples,
        coefficients,
        target: t.clone(),
        residual,
        tolerances: *tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::parse;
    use crate::linalg::{c64, identity};
    use crate::sampling::{gaussian_matrix, sample_rng};

    fn traceless(n: usize, seed: u64) -> CMatrix {
        project_traceless(&gaussian_matrix(&mut sample_rng(seed, 5), n))
    }

    #[test]
    fn primes() {
        let got: Vec<usize> = (0..20).filter(|&n| is_prime(n)).collect();
        assert_eq!(got, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn identity_polynomial() {
        let tol = Tolerances::default();
        let f = parse("X1").unwrap();
        let a = traceless(4, 1);
        let cert = waring_express(&f, &a, &ExpressOptions::default(), &tol).unwrap();
        assert!(cert.residual <= 1e-6 * frobenius(&a).max(1.0));
    }

    #[test]
    fn commutator_three() {
        let tol = Tolerances::default();
        let f = parse("[X1,X2]").unwrap();
        let a = traceless(3, 2);
        let cert = waring_express(&f, &a, &ExpressOptions::default(), &tol).unwrap();
        assert_eq!(cert.tuples.len(), 4);
        assert!(cert.residual <= 1e-7 * frobenius(&a).max(1.0));
    }

    #[test]
    fn central_refused() {
        let tol = Tolerances::default();
        let f = parse("[X1,X2]^2").unwrap();
        let err = waring_express(&f, &traceless(2, 0), &ExpressOptions::default(), &tol).unwrap_err();
        assert!(matches!(err, Error::NotGeneric(Verdict::Central)));
    }

    #[test]
    fn two_term_paths() {
        let tol = Tolerances::default();
        let opts = ExpressOptions::default();
        let f = parse("X1*X2*X3 - X3*X2*X1").unwrap();
        let a = traceless(4, 3);
        let cert = two_term_decompose(&f, &a, &opts, &tol).unwrap();
        assert_eq!(cert.coefficients, vec![c64(1.0, 0.0), c64(-1.0, 0.0)]);
        assert!(cert.residual <= 1e-7 * frobenius(&a).max(1.0));

        let g = parse("[X1,X2]").unwrap();
        let cert = two_term_decompose(&g, &traceless(3, 4), &opts, &tol).unwrap();
        assert_eq!(cert.tuples.len(), 2);

        let zero = two_term_decompose(&g, &zeros(3, 3), &opts, &tol).unwrap();
        assert_eq!(zero.residual, 0.0);
    }

    #[test]
    fn two_term_preconditions() {
        let tol = Tolerances::default();
        let f = parse("X1^2 + X2").unwrap();
        let err = two_term_decompose(&f, &traceless(4, 0), &ExpressOptions::default(), &tol).unwrap_err();
        assert!(matches!(err, Error::PreconditionUnmet(_)));
    }

    #[test]
    fn five_term() {
        let tol = Tolerances::default();
        let opts = ExpressOptions::default();
        let f = parse("X1").unwrap();
        let cert = five_term_express(&f, &identity(2), &opts, &tol).unwrap();
        assert_eq!(cert.coefficients.len(), 5);
        let expected = c64(2.0, 0.0) / trace(&cert.witnesses[0].matrix);
        assert!((cert.coefficients[0] - expected).norm() < 1e-12);
        assert!(cert.residual <= 1e-8);

        let t = traceless(3, 9);
        let cert = five_term_express(&parse("X1^2 + X1").unwrap(), &t, &opts, &tol).unwrap();
        assert_eq!(cert.coefficients[0], c64(0.0, 0.0));

        let err = five_term_express(&parse("[X1,X2]").unwrap(), &identity(3), &ExpressOptions { budget: 64, seed: 0 }, &tol)
            .unwrap_err();
        assert!(matches!(err, Error::BudgetExhausted { .. }));
    }
}
