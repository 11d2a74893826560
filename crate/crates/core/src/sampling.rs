//! Seeded random matrices. Sample `index` under master `seed` always draws
//! from its own ChaCha stream, so results do not depend on evaluation order.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::CMatrix;

pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// n×n matrix with i.i.d. standard complex Gaussian entries (real and
/// imaginary parts standard normal).
pub fn gaussian_matrix<R: rand::Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im)
    })
}

/// The `index`-th random argument tuple of `m` matrices of size n.
pub fn random_tuple(seed: u64, index: u64, m: usize, n: usize) -> Vec<CMatrix> {
    let mut rng = sample_rng(seed, index);
    (0..m).map(|_| gaussian_matrix(&mut rng, n)).collect()
}
