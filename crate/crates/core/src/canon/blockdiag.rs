use num_complex::Complex64;

use super::Cluster;
use crate::error::{Error, Result};
use crate::linalg::{
    block_diagonal, eigendecompose, spectral_gap, CMatrix, SchurForm, SimilarityCertificate, ZERO,
};
use crate::tolerances::Tolerances;
use crate::waring::{block_triangular_similarity, Orientation};

/// Splits B into diagonal blocks, one per cluster, with
/// B = T·blkdiag(C₁, …, C_k)·T⁻¹. Block order follows `clusters`.
pub fn block_diagonalize_by_cluster(
    b: &CMatrix,
    clusters: &[Cluster],
    tol: &Tolerances,
) -> Result<(Vec<CMatrix>, SimilarityCertificate)> {
    let schur = eigendecompose(b)?;
    let mut group = Vec::with_capacity(schur.eigenvalues.len());
    let mut counts = vec![0usize; clusters.len()];
    for z in &schur.eigenvalues {
        let nearest = clusters
            .iter()
            .enumerate()
            .min_by(|(_, x), (_, y)| (x.value - z).norm().total_cmp(&(y.value - z).norm()))
            .map(|(k, _)| k)
            .ok_or_else(|| Error::InvalidInput("no clusters given".into()))?;
        counts[nearest] += 1;
        group.push(nearest);
    }
    for (c, &count) in clusters.iter().zip(&counts) {
        if c.multiplicity != count {
            return Err(Error::InvalidInput(format!(
                "cluster at {} claims multiplicity {} but the spectrum has {count} eigenvalues there",
                c.value, c.multiplicity
            )));
        }
    }
    let (blocks, cert, _) = block_diagonalize_grouped(b, schur, &group, clusters.len(), tol)?;
    Ok((blocks, cert))
}

/// Block diagonalization of B from its Schur form, with eigenvalue i (in
/// Schur order) sent to block `group[i]`. Returns the blocks, the
/// certificate for B = T·blkdiag·T⁻¹, and each block's eigenvalues.
pub(crate) fn block_diagonalize_grouped(
    b: &CMatrix,
    mut schur: SchurForm,
    group: &[usize],
    groups: usize,
    tol: &Tolerances,
) -> Result<(Vec<CMatrix>, SimilarityCertificate, Vec<Vec<Complex64>>)> {
    let n = b.nrows();
    let mut spectra: Vec<Vec<Complex64>> = vec![Vec::new(); groups];
    for (z, &g) in schur.eigenvalues.iter().zip(group) {
        spectra[g].push(*z);
    }
    if spectra.iter().any(Vec::is_empty) {
        return Err(Error::InvalidInput("every block needs at least one eigenvalue".into()));
    }
    let scale = schur.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let bound = tol.gap_tol * if scale > 0.0 { scale } else { 1.0 };
    for i in 0..groups {
        for j in i + 1..groups {
            let gap = spectral_gap(&spectra[i], &spectra[j]);
            if !(gap > bound) {
                return Err(Error::ClusterGapTooSmall { gap, bound });
            }
        }
    }

    let order = schur.reorder_by(group);
    let sizes: Vec<usize> = (0..groups).map(|g| order.iter().filter(|&&x| x == g).count()).collect();
    let t = &schur.form;
    let mut blocks = Vec::with_capacity(groups);
    let mut at = 0;
    for &s in &sizes {
        blocks.push(t.view((at, at), (s, s)).into_owned());
        at += s;
    }
    let mut off = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if order[i] < order[j] {
                off[(i, j)] = t[(i, j)];
            }
        }
    }
    let tri = block_triangular_similarity(&blocks, &off, Orientation::Upper, tol)?;
    // B = Q·T·Q* and T = Y·D·Y⁻¹.
    let cert = SimilarityCertificate::new(
        &schur.unitary * &tri.t,
        &tri.t_inv * schur.unitary.adjoint(),
        block_diagonal(&blocks),
        b.clone(),
    )?;
    cert.check(tol.cert_tol)?;
    let mut spectra_out = Vec::with_capacity(groups);
    let mut at = 0;
    for &s in &sizes {
        spectra_out.push((at..at + s).map(|i| t[(i, i)]).collect());
        at += s;
    }
    debug_assert!(blocks.iter().all(|blk| (0..blk.nrows()).all(|i| (0..i).all(|j| blk[(i, j)] == ZERO))));
    Ok((blocks, cert, spectra_out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::cluster_eigenvalues;
    use crate::linalg::{c64, diag, eigenvalues, frobenius, from_real_rows, inverse};
    use crate::sampling::{gaussian_matrix, sample_rng};

    #[test]
    fn already_block_diagonal() {
        let b = diag(&[c64(1.0, 0.0), c64(2.0, 0.0), c64(3.0, 0.0)]);
        let clusters = cluster_eigenvalues(&eigenvalues(&b).unwrap(), 1e-7);
        let (blocks, cert) = block_diagonalize_by_cluster(&b, &clusters, &Tolerances::default()).unwrap();
        assert_eq!(blocks.len(), 3);
        for (k, blk) in blocks.iter().enumerate() {
            assert!((blk[(0, 0)] - c64(k as f64 + 1.0, 0.0)).norm() < 1e-14);
        }
        // T is a permutation-like unitary up to phases: check it is diagonal here.
        assert!(frobenius(&(cert.t.map(|z| c64(z.norm(), 0.0)) - crate::linalg::identity(3))) < 1e-12);
    }

    #[test]
    fn two_by_two_upper_triangular() {
        // [[1,5],[0,2]] = T·diag(1,2)·T⁻¹ with T = [[1,5],[0,1]].
        let b = from_real_rows(&[&[1.0, 5.0], &[0.0, 2.0]]);
        let clusters = cluster_eigenvalues(&eigenvalues(&b).unwrap(), 1e-7);
        let (blocks, cert) = block_diagonalize_by_cluster(&b, &clusters, &Tolerances::default()).unwrap();
        assert!((blocks[0][(0, 0)] - c64(1.0, 0.0)).norm() < 1e-14);
        assert!((blocks[1][(0, 0)] - c64(2.0, 0.0)).norm() < 1e-14);
        cert.verify(1e-12).unwrap();
        let t = from_real_rows(&[&[1.0, 5.0], &[0.0, 1.0]]);
        let recon = &t * diag(&[c64(1.0, 0.0), c64(2.0, 0.0)]) * inverse(&t).unwrap();
        assert!(frobenius(&(recon - &b)) < 1e-14);
    }

    #[test]
    fn planted_repeated_spectrum() {
        let mut rng = sample_rng(3, 0);
        let v = crate::linalg::identity(5) + gaussian_matrix(&mut rng, 5) * c64(0.3, 0.0);
        let d = diag(&[1.0, 1.0, 2.0, 2.0, 3.0].map(|x| c64(x, 0.0)));
        let b = &v * d * inverse(&v).unwrap();
        let clusters = cluster_eigenvalues(&eigenvalues(&b).unwrap(), 1e-7);
        assert_eq!(clusters.iter().map(|c| c.multiplicity).collect::<Vec<_>>(), vec![2, 2, 1]);
        let (blocks, cert) = block_diagonalize_by_cluster(&b, &clusters, &Tolerances::default()).unwrap();
        assert_eq!(blocks.iter().map(|b| b.nrows()).collect::<Vec<_>>(), vec![2, 2, 1]);
        let recon = &cert.t * block_diagonal(&blocks) * &cert.t_inv;
        assert!(frobenius(&(recon - &b)) <= 1e-9);
    }

    #[test]
    fn close_clusters_are_rejected() {
        let b = diag(&[c64(1.0, 0.0), c64(1.0 + 1e-12, 0.0)]);
        let clusters = vec![
            Cluster { value: c64(1.0, 0.0), multiplicity: 1, members: vec![0] },
            Cluster { value: c64(1.0 + 1e-12, 0.0), multiplicity: 1, members: vec![1] },
        ];
        let r = block_diagonalize_by_cluster(&b, &clusters, &Tolerances::default());
        assert!(matches!(r, Err(Error::ClusterGapTooSmall { .. })));
    }
}
