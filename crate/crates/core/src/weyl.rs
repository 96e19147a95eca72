//! Weyl operators on `C^d` and the generalized Bell basis of `C^d (x) C^d`.
//!
//! `W_kl |i> = omega^{k(i-l)} |i-l>` with `omega = exp(2 pi i / d)` and all
//! index arithmetic mod `d`. The Bell vectors are
//! `|Omega_kl> = (W_kl (x) I) |Omega_00>`, which places the Weyl operator on
//! the first factor. In the row-major composite convention used throughout
//! the crate this is the ordering under which the witness matrix and the
//! realigned block structure take their standard displayed form;
//! [`BellVector::swapped`] gives the same vector with the factors exchanged,
//! i.e. `(I (x) W_kl)|Omega_00>`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c64, swap_vector, ComplexMatrix, DenseMatrix};

/// Default local dimension (qutrits).
pub const QUTRIT: usize = 3;

/// `omega^p` for `omega = exp(2 pi i / d)`, evaluated from the reduced angle.
pub fn root_of_unity(d: usize, p: i64) -> Complex64 {
    let r = p.rem_euclid(d as i64) as f64;
    let theta = 2.0 * std::f64::consts::PI * r / d as f64;
    c64(theta.cos(), theta.sin())
}

/// `omega = exp(2 pi i / 3)`.
pub fn omega() -> Complex64 {
    root_of_unity(QUTRIT, 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylIndex {
    k: usize,
    l: usize,
    d: usize,
}

impl WeylIndex {
    pub fn new(k: usize, l: usize, d: usize) -> Result<Self> {
        if d == 0 || k >= d || l >= d {
            return Err(Error::InvalidParameter(format!(
                "Weyl index ({k},{l}) outside 0..{d}"
            )));
        }
        Ok(Self { k, l, d })
    }

    /// Qutrit index; panics when `k` or `l` is not in `0..3`.
    pub fn qutrit(k: usize, l: usize) -> Self {
        Self::new(k, l, QUTRIT).expect("qutrit Weyl index out of range")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// All `d^2` indices in `(k, l)` lexicographic order.
    pub fn all(d: usize) -> Vec<Self> {
        (0..d)
            .flat_map(|k| (0..d).map(move |l| Self { k, l, d }))
            .collect()
    }
}

pub fn weyl_operator(idx: WeylIndex) -> DenseMatrix {
    let d = idx.d;
    let mut m = DenseMatrix::zeros(d, d);
    for i in 0..d {
        let target = (i + d - idx.l) % d;
        m[(target, i)] = root_of_unity(d, (idx.k * target) as i64);
    }
    m
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BellVector {
    pub index: WeylIndex,
    pub amplitudes: Vec<Complex64>,
}

impl BellVector {
    /// Amplitudes with the two tensor factors exchanged.
    pub fn swapped(&self) -> Vec<Complex64> {
        swap_vector(&self.amplitudes, self.index.d, self.index.d)
    }
}

/// `(1/sqrt d) sum_i |ii>`.
pub fn maximally_entangled(d: usize) -> Vec<Complex64> {
    let s = 1.0 / (d as f64).sqrt();
    let mut v = vec![Complex64::default(); d * d];
    for i in 0..d {
        v[i * d + i] = c64(s, 0.0);
    }
    v
}

pub fn bell_vector(idx: WeylIndex) -> BellVector {
    let d = idx.d;
    let w = weyl_operator(idx);
    let s = 1.0 / (d as f64).sqrt();
    // (W (x) I) sum_i |i>|i> = sum_i (W|i>) (x) |i>
    let mut amplitudes = vec![Complex64::default(); d * d];
    for i in 0..d {
        for a in 0..d {
            amplitudes[a * d + i] += w[(a, i)] * s;
        }
    }
    BellVector {
        index: idx,
        amplitudes,
    }
}

pub fn bell_projector(idx: WeylIndex) -> ComplexMatrix {
    let v = bell_vector(idx);
    ComplexMatrix::projector(idx.d, idx.d, &v.amplitudes).expect("d*d vector")
}
