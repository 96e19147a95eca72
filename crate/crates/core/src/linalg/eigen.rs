//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq`, then applies
//! the real symmetric 2x2 Schur rotation. The combined unitary on columns
//! `p, q` is
//!
//! ```text
//!   J = [[ c,        s      ],
//!        [ -conj(e)s, conj(e)c ]]      e = a_pq / |a_pq|
//! ```
//!
//! Sweeps stop once the off-diagonal Frobenius mass falls below
//! `OFF_DIAGONAL_RTOL` times the Frobenius norm of the input.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::matrix::{c64, DenseMatrix, HERMITIAN_TOL};

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_RTOL: f64 = 1e-17;

/// Eigenvalues in ascending order with unitary eigenvector columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    #[serde(skip)]
    pub eigenvectors: Option<DenseMatrix>,
}

impl Spectrum {
    pub fn vectors(&self) -> &DenseMatrix {
        self.eigenvectors
            .as_ref()
            .expect("spectrum was computed without eigenvectors")
    }

    pub fn vector(&self, idx: usize) -> Vec<Complex64> {
        self.vectors().column(idx)
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("empty spectrum")
    }

    /// `U diag(lambda) U^dagger`.
    pub fn reconstruct(&self) -> DenseMatrix {
        let u = self.vectors();
        let lam = DenseMatrix::real_diagonal(&self.eigenvalues);
        &(u * &lam) * &u.adjoint()
    }

    /// Eigenvalues within `tol` of the smallest one.
    pub fn lowest_cluster(&self, tol: f64) -> usize {
        let lo = self.min();
        self.eigenvalues.iter().filter(|&&x| x - lo <= tol).count()
    }

    /// Group ascending eigenvalues into clusters whose neighbours are within `tol`.
    pub fn clusters(&self, tol: f64) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = Vec::new();
        for &x in &self.eigenvalues {
            match out.last_mut() {
                Some(last) if x - last[last.len() - 1] <= tol => last.push(x),
                _ => out.push(vec![x]),
            }
        }
        out
    }
}

fn check_hermitian(m: &DenseMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "eigensystem of a non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let defect = m.hermitian_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    Ok(())
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn hermitian_eigensystem(m: &DenseMatrix) -> Result<Spectrum> {
    check_hermitian(m)?;
    let (vals, vecs) = jacobi(m, true)?;
    Ok(Spectrum {
        eigenvalues: vals,
        eigenvectors: vecs,
    })
}

/// Eigenvalues only (ascending).
pub fn hermitian_eigenvalues(m: &DenseMatrix) -> Result<Vec<f64>> {
    check_hermitian(m)?;
    Ok(jacobi(m, false)?.0)
}

fn off_diagonal_norm(a: &DenseMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            s += 2.0 * a[(p, q)].norm_sqr();
        }
    }
    s.sqrt()
}

fn jacobi(m: &DenseMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<DenseMatrix>)> {
    let n = m.rows();
    // work on the exactly Hermitian part
    let mut a = DenseMatrix::from_fn(n, n, |r, c| (m[(r, c)] + m[(c, r)].conj()) * 0.5);
    let mut v = want_vectors.then(|| DenseMatrix::identity(n));
    let scale = a.frobenius_norm();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= OFF_DIAGONAL_RTOL * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, v.as_mut(), p, q);
            }
        }
    }
    // roundoff can stall just above the strict threshold
    if !converged && off_diagonal_norm(&a) > 1e-14 * scale {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let vals = order.iter().map(|&i| a[(i, i)].re).collect();
    let vecs = v.map(|v| DenseMatrix::from_fn(n, n, |r, c| v[(r, order[c])]));
    Ok((vals, vecs))
}

fn rotate(a: &mut DenseMatrix, v: Option<&mut DenseMatrix>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let e = apq / g;
    let (app, aqq) = (a[(p, p)].re, a[(q, q)].re);
    let tau = (aqq - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let jpp = c64(c, 0.0);
    let jpq = c64(s, 0.0);
    let jqp = -e.conj() * s;
    let jqq = e.conj() * c;

    let n = a.rows();
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::default();
    a[(q, p)] = Complex64::default();
    a[(p, p)] = c64(a[(p, p)].re, 0.0);
    a[(q, q)] = c64(a[(q, q)].re, 0.0);

    if let Some(v) = v {
        for k in 0..n {
            let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
            v[(k, p)] = vkp * jpp + vkq * jqp;
            v[(k, q)] = vkp * jpq + vkq * jqq;
        }
    }
}

/// Eigenvector of the largest eigenvalue, with that eigenvalue.
pub fn top_eigenpair(m: &DenseMatrix) -> Result<(f64, Vec<Complex64>)> {
    let eig = hermitian_eigensystem(m)?;
    let last = m.rows() - 1;
    Ok((eig.eigenvalues[last], eig.vector(last)))
}
