//! Dense complex matrices.
//!
//! [`DenseMatrix`] is a plain row-major rectangular matrix. [`ComplexMatrix`]
//! wraps a square `DenseMatrix` with the dimensions of the two tensor factors
//! it acts on; composite index `(i, j)` maps to `i * dim_b + j`.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used for the Hermitian invariant.
pub const HERMITIAN_TOL: f64 = 1e-12;

#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::default(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c64(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn real_diagonal(values: &[f64]) -> Self {
        let v: Vec<_> = values.iter().map(|&x| c64(x, 0.0)).collect();
        Self::diagonal(&v)
    }

    /// Outer product `|u><v|`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        Self::from_fn(u.len(), v.len(), |r, c| u[r] * v[c].conj())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Result<Self> {
        let rows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Dimension("columns of unequal length".into()));
        }
        Ok(Self::from_fn(rows, columns.len(), |r, c| columns[c][r]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == Complex64::default() {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other[(k, c)];
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `<v|M|v>` for square `M`.
    pub fn expectation(&self, v: &[Complex64]) -> Result<Complex64> {
        let mv = self.apply(v)?;
        Ok(inner(v, &mv))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry-wise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest `|M[r,c] - conj(M[c,r])|`; infinite for non-square input.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for r in 0..self.rows {
            for c in r..self.cols {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_defect() <= HERMITIAN_TOL
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

fn zip_same(a: &DenseMatrix, b: &DenseMatrix, f: impl Fn(Complex64, Complex64) -> Complex64) -> DenseMatrix {
    assert!(
        a.rows == b.rows && a.cols == b.cols,
        "shape mismatch: {}x{} vs {}x{}",
        a.rows,
        a.cols,
        b.rows,
        b.cols
    );
    DenseMatrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(&x, &y)| f(x, y)).collect(),
    }
}

impl Add for &DenseMatrix {
    type Output = DenseMatrix;

    fn add(self, rhs: &DenseMatrix) -> DenseMatrix {
        zip_same(self, rhs, |x, y| x + y)
    }
}

impl Sub for &DenseMatrix {
    type Output = DenseMatrix;

    fn sub(self, rhs: &DenseMatrix) -> DenseMatrix {
        zip_same(self, rhs, |x, y| x - y)
    }
}

impl Mul for &DenseMatrix {
    type Output = DenseMatrix;

    /// Panics on incompatible shapes; use [`DenseMatrix::matmul`] for a checked product.
    fn mul(self, rhs: &DenseMatrix) -> DenseMatrix {
        self.matmul(rhs).expect("incompatible shapes in matrix product")
    }
}

/// `<u|v>`, conjugate-linear in the first argument.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalized(v: &[Complex64]) -> Vec<Complex64> {
    let n = norm(v);
    v.iter().map(|z| z / n).collect()
}

/// Kronecker product of two vectors.
pub fn kron_vec(u: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    u.iter().flat_map(|&a| v.iter().map(move |&b| a * b)).collect()
}

/// Square operator on `C^dim_a (x) C^dim_b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "MatrixJson", try_from = "MatrixJson")]
pub struct ComplexMatrix {
    dim_a: usize,
    dim_b: usize,
    matrix: DenseMatrix,
}

impl ComplexMatrix {
    pub fn new(dim_a: usize, dim_b: usize, matrix: DenseMatrix) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::Dimension("factor dimensions must be positive".into()));
        }
        let n = dim_a * dim_b;
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::Dimension(format!(
                "a {dim_a}x{dim_b} bipartite operator needs a {n}x{n} matrix, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self { dim_a, dim_b, matrix })
    }

    /// Operator on a single factor (`dim_b = 1`).
    pub fn single(matrix: DenseMatrix) -> Result<Self> {
        Self::new(matrix.rows(), 1, matrix)
    }

    pub fn identity(dim_a: usize, dim_b: usize) -> Self {
        Self {
            dim_a,
            dim_b,
            matrix: DenseMatrix::identity(dim_a * dim_b),
        }
    }

    pub fn zeros(dim_a: usize, dim_b: usize) -> Self {
        let n = dim_a * dim_b;
        Self {
            dim_a,
            dim_b,
            matrix: DenseMatrix::zeros(n, n),
        }
    }

    pub fn from_fn(dim_a: usize, dim_b: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let n = dim_a * dim_b;
        Self {
            dim_a,
            dim_b,
            matrix: DenseMatrix::from_fn(n, n, f),
        }
    }

    /// `|v><v|` for a vector on the composite space.
    pub fn projector(dim_a: usize, dim_b: usize, v: &[Complex64]) -> Result<Self> {
        Self::new(dim_a, dim_b, DenseMatrix::outer(v, v))
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> DenseMatrix {
        self.matrix
    }

    /// Same factor structure, new entries.
    pub fn with_matrix(&self, matrix: DenseMatrix) -> Result<Self> {
        Self::new(self.dim_a, self.dim_b, matrix)
    }

    pub fn entry(&self, row: (usize, usize), col: (usize, usize)) -> Complex64 {
        self.matrix[(row.0 * self.dim_b + row.1, col.0 * self.dim_b + col.1)]
    }

    pub fn scale_re(&self, s: f64) -> Self {
        Self {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            matrix: self.matrix.scale_re(s),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            matrix: self.matrix.scale(s),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            matrix: self.matrix.adjoint(),
        }
    }

    /// `self + s * I`.
    pub fn shift(&self, s: f64) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim() {
            out.matrix[(i, i)] += s;
        }
        out
    }

    fn check_same_dims(&self, other: &Self) -> Result<()> {
        if self.dim_a != other.dim_a || self.dim_b != other.dim_b {
            return Err(Error::Dimension(format!(
                "factor dimensions {}x{} and {}x{} differ",
                self.dim_a, self.dim_b, other.dim_a, other.dim_b
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_dims(other)?;
        self.with_matrix(&self.matrix + &other.matrix)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dims(other)?;
        self.with_matrix(&self.matrix - &other.matrix)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_dims(other)?;
        self.with_matrix(self.matrix.matmul(&other.matrix)?)
    }
}

impl std::ops::Deref for ComplexMatrix {
    type Target = DenseMatrix;

    fn deref(&self) -> &DenseMatrix {
        &self.matrix
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.matrix[idx]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, idx: (usize, usize)) -> &mut Complex64 {
        &mut self.matrix[idx]
    }
}

/// JSON form: `{"dim_a", "dim_b", "re": [[..]], "im": [[..]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim_a: usize,
    pub dim_b: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<ComplexMatrix> for MatrixJson {
    fn from(m: ComplexMatrix) -> Self {
        let n = m.dim();
        let part = |f: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..n).map(|r| m.matrix.row(r).iter().map(f).collect()).collect()
        };
        MatrixJson {
            dim_a: m.dim_a,
            dim_b: m.dim_b,
            re: part(|z| z.re),
            im: part(|z| z.im),
        }
    }
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        let n = j.dim_a * j.dim_b;
        let shaped = |p: &Vec<Vec<f64>>| p.len() == n && p.iter().all(|r| r.len() == n);
        if !shaped(&j.re) || !shaped(&j.im) {
            return Err(Error::Dimension(format!(
                "re/im must be {n}x{n} for dim_a={} dim_b={}",
                j.dim_a, j.dim_b
            )));
        }
        let data =
            j.re.iter()
                .flatten()
                .zip(j.im.iter().flatten())
                .map(|(&re, &im)| c64(re, im))
                .collect();
        ComplexMatrix::new(j.dim_a, j.dim_b, DenseMatrix::from_vec(n, n, data)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matmul_and_adjoint() {
        let a = DenseMatrix::from_fn(2, 3, |r, c| c64(r as f64, c as f64));
        let b = a.adjoint();
        assert_eq!((b.rows(), b.cols()), (3, 2));
        let p = &a * &b;
        assert!(p.is_hermitian());
        assert!(a.matmul(&a).is_err());
    }

    #[test]
    fn bipartite_shape_is_checked() {
        assert!(ComplexMatrix::new(3, 3, DenseMatrix::identity(8)).is_err());
        assert!(ComplexMatrix::new(0, 3, DenseMatrix::identity(0)).is_err());
        assert!(ComplexMatrix::new(2, 3, DenseMatrix::identity(6)).is_ok());
    }

    #[test]
    fn entry_uses_row_major_composite_index() {
        let m = ComplexMatrix::from_fn(2, 3, |r, c| c64((10 * r + c) as f64, 0.0));
        assert_eq!(m.entry((1, 2), (0, 1)).re, 51.0);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let m = ComplexMatrix::from_fn(3, 3, |r, c| {
            c64((r as f64 + 0.1).sqrt() / 7.0, -(c as f64 + 1e-17).ln())
        });
        let text = serde_json::to_string(&m).unwrap();
        let back: ComplexMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(m, back);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["dim_a"], 3);
        assert_eq!(v["re"].as_array().unwrap().len(), 9);
    }

    #[test]
    fn json_rejects_bad_shape() {
        let text = r#"{"dim_a":2,"dim_b":2,"re":[[1.0]],"im":[[0.0]]}"#;
        assert!(serde_json::from_str::<ComplexMatrix>(text).is_err());
    }
}
