//! Dense complex linear algebra for small bipartite operators.

pub mod bipartite;
pub mod eigen;
pub mod matrix;
pub mod svd;

pub use bipartite::{partial_transpose, realign, swap_factors, swap_vector, tensor};
pub use eigen::{hermitian_eigensystem, hermitian_eigenvalues, Spectrum};
pub use matrix::{c64, inner, kron_vec, norm, normalized, ComplexMatrix, DenseMatrix, MatrixJson};
pub use svd::{singular_values, trace_norm};
