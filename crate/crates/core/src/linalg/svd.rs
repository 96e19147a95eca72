//! Singular values through the Hermitian eigensolver.

use crate::linalg::eigen::hermitian_eigensystem;
use crate::linalg::matrix::{norm, DenseMatrix};

/// Singular values in descending order, `min(rows, cols)` of them.
///
/// The right (or left, whichever Gram matrix is smaller) singular vectors
/// come from the eigenvectors of `M^dagger M`; each value is then taken as
/// `||M v||` so that small singular values keep full absolute accuracy.
pub fn singular_values(m: &DenseMatrix) -> Vec<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Vec::new();
    }
    let (gram, side) = if m.cols() <= m.rows() {
        (&m.adjoint() * m, m.clone())
    } else {
        let adj = m.adjoint();
        (m * &adj, adj)
    };
    let eig = hermitian_eigensystem(&gram).expect("Gram matrix is Hermitian by construction");
    let mut sv: Vec<f64> = (0..gram.rows())
        .map(|i| norm(&side.apply(&eig.vector(i)).expect("shapes agree")))
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Sum of singular values.
pub fn trace_norm(m: &DenseMatrix) -> f64 {
    singular_values(m).iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigen::hermitian_eigenvalues;
    use crate::linalg::matrix::c64;
    use crate::sampling::random_hermitian;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_trace_norm() {
        assert!((trace_norm(&DenseMatrix::identity(9)) - 9.0).abs() < 1e-14);
    }

    #[test]
    fn diagonal_with_negative_entry() {
        assert!((trace_norm(&DenseMatrix::real_diagonal(&[-2.0, 3.0])) - 5.0).abs() < 1e-14);
    }

    #[test]
    fn rectangular_rank_one() {
        // [1 1 1; 1 1 1] has a single singular value sqrt(6)
        let m = DenseMatrix::from_fn(2, 3, |_, _| c64(1.0, 0.0));
        let sv = singular_values(&m);
        assert_eq!(sv.len(), 2);
        assert!((sv[0] - 6f64.sqrt()).abs() < 1e-14);
        assert!(sv[1].abs() < 1e-14);
        assert_eq!(singular_values(&m.adjoint()).len(), 2);
    }

    #[test]
    fn hermitian_singular_values_are_absolute_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let m = random_hermitian(&mut rng, 9);
            let mut abs: Vec<f64> = hermitian_eigenvalues(&m)
                .unwrap()
                .iter()
                .map(|x| x.abs())
                .collect();
            abs.sort_by(|a, b| b.total_cmp(a));
            let sv = singular_values(&m);
            for (a, b) in abs.iter().zip(&sv) {
                assert!((a - b).abs() < 1e-11, "{a} vs {b}");
            }
        }
    }
}
