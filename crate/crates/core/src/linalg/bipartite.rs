//! Index reshuffles on bipartite operators.

use crate::error::Result;
use crate::linalg::matrix::{ComplexMatrix, DenseMatrix};

/// Kronecker product `a (x) b`. The result acts on `C^{a.dim()} (x) C^{b.dim()}`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim(), b.dim());
    ComplexMatrix::from_fn(na, nb, |r, c| a[(r / nb, c / nb)] * b[(r % nb, c % nb)])
}

/// Transposition on the second factor:
/// `out[(i,j),(k,l)] = m[(i,l),(k,j)]`.
pub fn partial_transpose(m: &ComplexMatrix) -> ComplexMatrix {
    let db = m.dim_b();
    ComplexMatrix::from_fn(m.dim_a(), db, |r, c| {
        let (i, j) = (r / db, r % db);
        let (k, l) = (c / db, c % db);
        m[(i * db + l, k * db + j)]
    })
}

/// Realignment `out[(i,k),(j,l)] = m[(i,j),(k,l)]`, a `dim_a^2 x dim_b^2` matrix.
pub fn realign(m: &ComplexMatrix) -> DenseMatrix {
    let (da, db) = (m.dim_a(), m.dim_b());
    DenseMatrix::from_fn(da * da, db * db, |r, c| {
        let (i, k) = (r / da, r % da);
        let (j, l) = (c / db, c % db);
        m[(i * db + j, k * db + l)]
    })
}

/// Swap the two tensor factors: `out[(j,i),(l,k)] = m[(i,j),(k,l)]`.
pub fn swap_factors(m: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (m.dim_a(), m.dim_b());
    ComplexMatrix::from_fn(db, da, |r, c| {
        let (j, i) = (r / da, r % da);
        let (l, k) = (c / da, c % da);
        m[(i * db + j, k * db + l)]
    })
}

/// Reorder a vector on `C^da (x) C^db` into `C^db (x) C^da`.
pub fn swap_vector<T: Copy>(v: &[T], da: usize, db: usize) -> Vec<T> {
    (0..da * db).map(|r| v[(r % da) * db + r / da]).collect()
}

pub fn tensor_product(a: &DenseMatrix, b: &DenseMatrix) -> Result<ComplexMatrix> {
    let a = ComplexMatrix::single(a.clone())?;
    let b = ComplexMatrix::single(b.clone())?;
    Ok(tensor(&a, &b))
}
