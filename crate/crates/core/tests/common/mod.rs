#![allow(dead_code)]

use matrix_waring::linalg::{c64, diag, eigenvalues, identity, inverse, project_traceless, CMatrix};
use matrix_waring::sampling::{gaussian_matrix, sample_rng};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// V·diag(values)·V⁻¹ with V a seeded perturbation of the identity.
pub fn planted(values: &[f64], seed: u64) -> CMatrix {
    let n = values.len();
    let v = identity(n) + gaussian_matrix(&mut sample_rng(seed, 7), n) * c64(0.3, 0.0);
    let d = diag(&values.iter().map(|&x| c64(x, 0.0)).collect::<Vec<_>>());
    &v * d * inverse(&v).unwrap()
}

pub fn traceless(n: usize, seed: u64, index: u64) -> CMatrix {
    project_traceless(&gaussian_matrix(&mut sample_rng(seed, index), n))
}

pub fn hollow(n: usize, seed: u64, index: u64) -> CMatrix {
    let mut m = gaussian_matrix(&mut sample_rng(seed, index), n);
    for i in 0..n {
        m[(i, i)] = c64(0.0, 0.0);
    }
    m
}

/// Largest distance in a greedy nearest matching of two spectra.
pub fn spectral_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut free: Vec<Complex64> = b.to_vec();
    let mut worst = 0.0f64;
    for z in a {
        let (k, d) = free
            .iter()
            .enumerate()
            .map(|(k, w)| (k, (z - w).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        worst = worst.max(d);
        free.swap_remove(k);
    }
    worst
}

pub fn spectrum_distance_to(m: &CMatrix, values: &[f64]) -> f64 {
    let want: Vec<Complex64> = values.iter().map(|&x| c64(x, 0.0)).collect();
    spectral_distance(&eigenvalues(m).unwrap(), &want)
}

/// Solves A₁·X − X·A₂ = C through the n·m × n·m linear system
/// (I ⊗ A₁ − A₂ᵀ ⊗ I)·vec(X) = vec(C), column-major vec.
pub fn dense_sylvester(a1: &CMatrix, a2: &CMatrix, c: &CMatrix) -> CMatrix {
    let (p, q) = (a1.nrows(), a2.nrows());
    let mut k = DMatrix::<Complex64>::zeros(p * q, p * q);
    for j in 0..q {
        for i in 0..p {
            let row = i + j * p;
            for l in 0..p {
                k[(row, l + j * p)] += a1[(i, l)];
            }
            for l in 0..q {
                k[(row, i + l * p)] -= a2[(l, j)];
            }
        }
    }
    let rhs = DMatrix::from_column_slice(p * q, 1, c.as_slice());
    let x = k.full_piv_lu().solve(&rhs).expect("oracle system is nonsingular");
    DMatrix::from_column_slice(p, q, x.as_slice())
}
