//! Random vectors and matrices for sampling-based checks.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{c64, normalized, DenseMatrix};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    c64(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-distributed unit vector in `C^d`.
pub fn haar_vector<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<Complex64> {
    let v: Vec<_> = (0..d).map(|_| gaussian(rng)).collect();
    normalized(&v)
}

/// Hermitian matrix with i.i.d. Gaussian entries (GUE up to scale).
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DenseMatrix {
    let g = DenseMatrix::from_fn(n, n, |_, _| gaussian(rng));
    (&g + &g.adjoint()).scale_re(0.5)
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> DenseMatrix {
    DenseMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}
