//! Dense matrices over `Q(omega)` and the exact Bell-diagonal witness.

use std::ops::{Index, IndexMut};

use num_traits::One;

use super::{EisensteinRational, ExactPolynomial, Rational};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<EisensteinRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![EisensteinRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, EisensteinRational::one())
    }

    pub fn scalar(n: usize, s: EisensteinRational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> EisensteinRational) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn is_hermitian(&self) -> bool {
        self.rows == self.cols && *self == self.adjoint()
    }

    pub fn trace(&self) -> EisensteinRational {
        (0..self.rows.min(self.cols)).fold(EisensteinRational::zero(), |acc, i| &acc + &self[(i, i)])
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, |r, c| {
            &self[(r, c)] + &other[(r, c)]
        }))
    }

    pub fn scale(&self, s: &EisensteinRational) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| &self[(r, c)] * s)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Partial transpose on the second factor of a `d x d` bipartite matrix.
    pub fn partial_transpose(&self, d: usize) -> Result<Self> {
        if self.rows != d * d || self.cols != d * d {
            return Err(Error::Dimension(format!("expected {0}x{0}", d * d)));
        }
        Ok(Self::from_fn(self.rows, self.cols, |r, c| {
            let (i, j, k, l) = (r / d, r % d, c / d, c % d);
            self[(i * d + l, k * d + j)].clone()
        }))
    }

    pub fn to_complex(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].to_complex())
    }

    /// `det(x I - A)` in ascending coefficients via Faddeev-LeVerrier.
    pub fn char_poly(&self) -> Result<ExactPolynomial> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "characteristic polynomial of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut c = vec![EisensteinRational::zero(); n + 1];
        c[n] = EisensteinRational::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            m = self.matmul(&m)?.add(&Self::scalar(n, c[n - k + 1].clone()))?;
            let t = self.matmul(&m)?.trace();
            let inv_k = -Rational::one() / Rational::from_integer(k.into());
            c[n - k] = t.scale(&inv_k);
        }
        let mut coefficients = Vec::with_capacity(n + 1);
        for (i, z) in c.into_iter().enumerate() {
            if !z.is_real() {
                return Err(Error::NonRealCoefficient(i));
            }
            coefficients.push(z.a);
        }
        Ok(ExactPolynomial::new(coefficients))
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = EisensteinRational;

    fn index(&self, (r, c): (usize, usize)) -> &EisensteinRational {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut EisensteinRational {
        &mut self.data[r * self.cols + c]
    }
}

/// `sum_i (W_kl |i>) (x) |i>` without the `1/sqrt 3`.
fn bell_vector(k: usize, l: usize) -> Vec<EisensteinRational> {
    let d = 3;
    let mut v = vec![EisensteinRational::zero(); d * d];
    for i in 0..d {
        let a = (i + d - l) % d;
        v[a * d + i] = EisensteinRational::omega_pow((k * a) as i64);
    }
    v
}

fn bell_projector(k: usize, l: usize) -> ExactMatrix {
    let v = bell_vector(k, l);
    let third = Rational::new(1.into(), 3.into());
    ExactMatrix::from_fn(9, 9, |r, c| (&v[r] * &v[c].conj()).scale(&third))
}

/// `B_gamma = (1-g)/2 (P_10 + P_20) + g P_11`.
pub fn exact_b(gamma: &Rational) -> ExactMatrix {
    let half = (Rational::one() - gamma) / Rational::from_integer(2.into());
    let terms = [((1, 0), half.clone()), ((2, 0), half), ((1, 1), gamma.clone())];
    terms.iter().fold(ExactMatrix::zeros(9, 9), |acc, ((k, l), w)| {
        acc.add(&bell_projector(*k, *l).scale(&EisensteinRational::real(w.clone())))
            .expect("9x9")
    })
}

/// `W_gamma = 3 B_gamma^Gamma` over `Q(omega)`.
pub fn exact_witness(gamma: &Rational) -> ExactMatrix {
    let three = EisensteinRational::real(Rational::from_integer(3.into()));
    exact_b(gamma).partial_transpose(3).expect("9x9").scale(&three)
}
