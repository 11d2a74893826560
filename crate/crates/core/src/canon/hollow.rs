use nalgebra::QR;

use crate::error::{Error, Result};
use crate::linalg::{
    distance_to_scalars, ensure_square, frobenius, identity, inverse, max_abs_diagonal, trace, CMatrix,
    SimilarityCertificate, ONE, ZERO,
};
use crate::tolerances::Tolerances;

/// A zero-diagonal matrix similar to a given trace-zero matrix.
#[derive(Debug, Clone)]
pub struct HollowForm {
    /// Zero diagonal.
    pub m: CMatrix,
    /// from = A, to = M, so M = S·A·S⁻¹ with S = `to_hollow.t`.
    pub to_hollow: SimilarityCertificate,
}

/// Finds S with S·A·S⁻¹ hollow, for trace-zero A.
///
/// Works by deflation: pick a unit vector v whose image Av makes the
/// widest angle with it, and use the basis (v, Av/‖Av‖, orthonormal
/// completion). In that basis the (1,1) entry is zero and the trailing
/// block still has trace zero, so the step repeats on it. A block that is
/// numerically scalar is zero and ends the recursion.
pub fn zero_diagonal_similarity(a: &CMatrix, tol: &Tolerances) -> Result<HollowForm> {
    let n = ensure_square(a, "hollow-form input")?;
    let norm = frobenius(a);
    let tr = trace(a);
    if tr.norm() > tol.hollow_tol * norm {
        return Err(Error::NonzeroTrace { trace: tr });
    }
    if norm == 0.0 || max_abs_diagonal(a) <= tol.hollow_tol * norm {
        return Ok(HollowForm { m: a.clone(), to_hollow: SimilarityCertificate::identity(a) });
    }
    let floor = f64::EPSILON * norm * n as f64;
    let (s, s_inv) = deflate(a, floor, tol)?;
    let mut m = &s * a * &s_inv;
    let diag = max_abs_diagonal(&m);
    if diag > tol.hollow_tol * frobenius(&m) {
        return Err(Error::NotHollow { max_diag: diag });
    }
    for i in 0..n {
        m[(i, i)] = ZERO;
    }
    let cert = SimilarityCertificate::new(s, s_inv, a.clone(), m.clone())?;
    cert.check(tol.cert_tol)?;
    Ok(HollowForm { m, to_hollow: cert })
}

/// Unit candidates e_k and (e_i + e_j)/√2.
fn candidates(n: usize) -> impl Iterator<Item = CMatrix> {
    let singles = (0..n).map(move |k| {
        let mut v = CMatrix::zeros(n, 1);
        v[(k, 0)] = ONE;
        v
    });
    let pairs = (0..n).flat_map(move |i| {
        (i + 1..n).map(move |j| {
            let mut v = CMatrix::zeros(n, 1);
            let h = ONE * std::f64::consts::FRAC_1_SQRT_2;
            v[(i, 0)] = h;
            v[(j, 0)] = h;
            v
        })
    });
    singles.chain(pairs)
}

fn deflate(a: &CMatrix, floor: f64, tol: &Tolerances) -> Result<(CMatrix, CMatrix)> {
    let n = a.nrows();
    let norm = frobenius(a);
    if n <= 1 || norm <= floor || distance_to_scalars(a) <= tol.hollow_tol * norm {
        return Ok((identity(n), identity(n)));
    }

    // Score: sine of the angle between v and Av; a kernel vector scores 1.
    let mut best: Option<(f64, CMatrix, Option<CMatrix>)> = None;
    for v in candidates(n) {
        let av = a * &v;
        let av_norm = frobenius(&av);
        let (score, image) = if av_norm <= floor {
            (1.0, None)
        } else {
            let along = (v.adjoint() * &av)[(0, 0)];
            let perp = frobenius(&(&av - &v * along));
            (perp / av_norm, Some(av / crate::linalg::c64(av_norm, 0.0)))
        };
        if best.as_ref().is_none_or(|(s, _, _)| score > *s) {
            best = Some((score, v, image));
        }
    }
    let (score, v, image) = best.expect("n ≥ 2 gives candidates");
    if score <= tol.hollow_tol {
        return Err(Error::NotHollow { max_diag: max_abs_diagonal(a) });
    }

    // Orthonormal completion of span{v, Av} from a full QR factorization.
    let mut seed = CMatrix::zeros(n, n);
    seed.set_column(0, &v.column(0));
    if let Some(w) = &image {
        seed.set_column(1, &w.column(0));
    }
    let q = QR::new(seed).q();
    let mut w = q.clone();
    w.set_column(0, &v.column(0));
    if let Some(img) = &image {
        w.set_column(1, &img.column(0));
    }
    let w_inv = inverse(&w)?;
    let rotated = &w_inv * a * &w;
    let trailing = rotated.view((1, 1), (n - 1, n - 1)).into_owned();
    let (s_sub, s_sub_inv) = deflate(&trailing, floor, tol)?;

    let mut lift = identity(n);
    lift.view_mut((1, 1), (n - 1, n - 1)).copy_from(&s_sub);
    let mut lift_inv = identity(n);
    lift_inv.view_mut((1, 1), (n - 1, n - 1)).copy_from(&s_sub_inv);
    Ok((lift * w_inv, w * lift_inv))
}
