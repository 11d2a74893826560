use super::search::ImageWitness;
use super::triangular::{block_triangular_similarity, Orientation};
use super::{CertifiedStep, Mode, TermLink, WaringCertificate};
use crate::canon::{partition_spectrum, zero_diagonal_similarity, SpectralPartition};
use crate::error::{Error, Result};
use crate::freealg::NcPolynomial;
use crate::linalg::{block_labels, ensure_square, frobenius, zeros, CMatrix, SimilarityCertificate, ZERO};
use crate::tolerances::Tolerances;
use crate::unitaries::split_hollow;

/// C = bp − bpp with both bp and bpp similar to blkdiag(partition.blocks):
/// bp keeps the blocks of C above the block diagonal, bpp the negated blocks
/// below it.
#[derive(Debug, Clone)]
pub struct DiffOfSimilar {
    pub bp: CMatrix,
    pub bpp: CMatrix,
    /// from = blkdiag(blocks), to = bp.
    pub cert_p: SimilarityCertificate,
    /// from = blkdiag(blocks), to = bpp.
    pub cert_pp: SimilarityCertificate,
}

pub fn diff_of_similar(partition: &SpectralPartition, c: &CMatrix, tol: &Tolerances) -> Result<DiffOfSimilar> {
    let labels = block_labels(&partition.block_sizes);
    let n = labels.len();
    if c.nrows() != n || c.ncols() != n {
        return Err(Error::DimensionMismatch(format!("C is {}x{}, partition has size {n}", c.nrows(), c.ncols())));
    }
    let mut upper = zeros(n, n);
    let mut lower = zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            let z = c[(i, j)];
            match labels[i].cmp(&labels[j]) {
                std::cmp::Ordering::Less => upper[(i, j)] = z,
                std::cmp::Ordering::Greater => lower[(i, j)] = -z,
                std::cmp::Ordering::Equal if z != ZERO => {
                    return Err(Error::InvalidStructure(format!("entry ({i}, {j}) lies in a diagonal block")));
                }
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    let cert_p = block_triangular_similarity(&partition.blocks, &upper, Orientation::Upper, tol)?;
    let cert_pp = block_triangular_similarity(&partition.blocks, &lower, Orientation::Lower, tol)?;
    Ok(DiffOfSimilar { bp: cert_p.to.clone(), bpp: cert_pp.to.clone(), cert_p, cert_pp })
}

/// The four terms A = B′ − B″ + B‴ − B⁗ with Bᵢ = Tᵢ·B·Tᵢ⁻¹.
pub(crate) struct FourTermParts {
    pub terms: Vec<CMatrix>,
    /// One certificate per term, from = B.
    pub term_certs: Vec<SimilarityCertificate>,
    pub aux_steps: Vec<CertifiedStep>,
}

impl FourTermParts {
    /// All steps, with term certificates linked to `witness` and numbered
    /// from `first_term`.
    pub fn steps(&self, witness: usize, first_term: usize) -> Vec<CertifiedStep> {
        let mut steps = self.aux_steps.clone();
        for (k, cert) in self.term_certs.iter().enumerate() {
            steps.push(CertifiedStep {
                label: format!("term {}", first_term + k + 1),
                link: Some(TermLink { term: first_term + k, witness }),
                certificate: cert.clone(),
            });
        }
        steps
    }
}

pub(crate) fn four_term_parts(b: &CMatrix, a: &CMatrix, tol: &Tolerances) -> Result<FourTermParts> {
    let n = ensure_square(b, "witness")?;
    if ensure_square(a, "target")? != n {
        return Err(Error::DimensionMismatch(format!("witness is {n}x{n}, target is {}x{}", a.nrows(), a.ncols())));
    }
    if a.iter().all(|z| *z == ZERO) {
        let cert = SimilarityCertificate::identity(b);
        return Ok(FourTermParts { terms: vec![b.clone(); 4], term_certs: vec![cert; 4], aux_steps: Vec::new() });
    }

    let partition = partition_spectrum(b, tol)?;
    let hollow = zero_diagonal_similarity(a, tol)?;
    let split = split_hollow(&hollow.m, &partition.pattern(), tol)?;
    let first = diff_of_similar(&partition, &split.c1, tol)?;
    let second = diff_of_similar(&partition, &split.c2, tol)?;

    // B = P·D·P⁻¹, M = S·A·S⁻¹, M = C₁ + U·C₂·U*.
    let (p, p_inv) = (&partition.to_block_diag.t, &partition.to_block_diag.t_inv);
    let (s, s_inv) = (&hollow.to_hollow.t, &hollow.to_hollow.t_inv);
    let u = &split.u;
    let u_adj = u.adjoint();

    let mut terms = Vec::with_capacity(4);
    let mut term_certs = Vec::with_capacity(4);
    let pieces = [
        (&first.bp, &first.cert_p, false),
        (&first.bpp, &first.cert_pp, false),
        (&second.bp, &second.cert_p, true),
        (&second.bpp, &second.cert_pp, true),
    ];
    for (inner, cert, rotated) in pieces {
        let (y, y_inv) = (&cert.t, &cert.t_inv);
        let (left, right) = if rotated { (s_inv * u, &u_adj * s) } else { (s_inv.clone(), s.clone()) };
        let term = &left * inner * &right;
        let t = &left * y * p_inv;
        let t_inv = p * y_inv * &right;
        let step = SimilarityCertificate::new(t, t_inv, b.clone(), term.clone())?;
        step.check(tol.cert_tol)?;
        terms.push(term);
        term_certs.push(step);
    }
    let aux_steps = vec![
        CertifiedStep { label: "spectral partition".into(), link: None, certificate: partition.to_block_diag.clone() },
        CertifiedStep { label: "zero diagonal".into(), link: None, certificate: hollow.to_hollow.clone() },
    ];
    Ok(FourTermParts { terms, term_certs, aux_steps })
}

pub(crate) fn check_end_residual(residual: f64, target: &CMatrix, tol: &Tolerances) -> Result<()> {
    let bound = tol.end_tol * frobenius(target).max(1.0);
    if residual <= bound {
        Ok(())
    } else {
        Err(Error::ResidualTooLarge { residual, bound })
    }
}

/// A = B′ − B″ + B‴ − B⁗ for trace-zero A, with each term similar to B. The
/// certificate uses f = X1, so every tuple is the single matrix Bᵢ.
pub fn four_term_decompose(b: &CMatrix, a: &CMatrix, tol: &Tolerances) -> Result<WaringCertificate> {
    let parts = four_term_parts(b, a, tol)?;
    let mut sum = a.clone();
    for (k, term) in parts.terms.iter().enumerate() {
        if k % 2 == 0 {
            sum -= term;
        } else {
            sum += term;
        }
    }
    let residual = frobenius(&sum);
    check_end_residual(residual, a, tol)?;
    Ok(WaringCertificate {
        mode: Mode::FourTerm,
        polynomial: NcPolynomial::var(1),
        witnesses: vec![ImageWitness { matrix: b.clone(), args: vec![b.clone()], sample: 0 }],
        tuples: parts.terms.iter().map(|t| vec![t.clone()]).collect(),
        coefficients: Mode::FourTerm.signs().expect("signed mode"),
        target: a.clone(),
        residual,
        tolerances: *tol,
        steps: parts.steps(0, 0),
    })
}
