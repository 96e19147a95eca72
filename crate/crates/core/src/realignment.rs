//! Realignment (CCNR) criterion for the SPA states of `W_gamma`.
//!
//! For `Q = W_gamma - lambda_min I` the product `R(Q) R(Q)^dagger` splits into
//! three 3x3 blocks on the composite indices `{0,4,8}`, `{1,5,6}` and
//! `{2,3,7}`. The first block has eigenvalues `(1 - 3 lambda)^2` (once) and
//! `3g^2 - 3g + 1` (twice); the other two share `(3g - 1)^2 / 4` (once) and
//! `(3g^2 + 1) / 4` (twice). Summing square roots gives the closed-form trace
//! norm below.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{c64, realign, singular_values, ComplexMatrix, DenseMatrix};
use crate::weyl::omega;
use crate::witness::SpaResult;

/// Index groups of the block decomposition of `R(Q) R(Q)^dagger`.
pub const BLOCKS: [[usize; 3]; 3] = [[0, 4, 8], [1, 5, 6], [2, 3, 7]];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockCoefficients {
    pub d1: f64,
    pub d2: f64,
    pub q1: f64,
    pub q2: f64,
}

pub fn block_coefficients(gamma: f64, lambda_min: f64) -> BlockCoefficients {
    let (g, l) = (gamma, lambda_min);
    BlockCoefficients {
        d1: (g + l - 1.0).powi(2) + l * l + (g - l).powi(2),
        d2: g * g + ((g - 1.0) / 2.0).powi(2),
        q1: l * (g + l - 1.0) - (g - l) * (g + 2.0 * l - 1.0),
        q2: g * (g - 1.0) / 2.0,
    }
}

impl BlockCoefficients {
    /// The 9x9 matrix `R(Q) R(Q)^dagger` assembled from the coefficients.
    pub fn product_matrix(&self) -> DenseMatrix {
        let w = omega();
        let qw = w * self.q2;
        let qwc = w.conj() * self.q2;
        let mut m = DenseMatrix::zeros(9, 9);
        for &i in &BLOCKS[0] {
            for &j in &BLOCKS[0] {
                m[(i, j)] = c64(if i == j { self.d1 } else { self.q1 }, 0.0);
            }
        }
        for i in [1, 2, 3, 5, 6, 7] {
            m[(i, i)] = c64(self.d2, 0.0);
        }
        let upper = [
            (1, 5, qwc),
            (1, 6, qw),
            (2, 3, qw),
            (2, 7, qwc),
            (3, 7, qw),
            (5, 6, qwc),
        ];
        for (r, c, z) in upper {
            m[(r, c)] = z;
            m[(c, r)] = z.conj();
        }
        m
    }
}

/// `||R(Q_gamma)||_1` in closed form.
pub fn analytic_trace_norm(gamma: f64, lambda_min: f64) -> f64 {
    let g = gamma;
    (3.0 * g - 1.0).abs()
        + (1.0 - 3.0 * lambda_min)
        + 2.0 * (3.0 * g * g - 3.0 * g + 1.0).sqrt()
        + 2.0 * (3.0 * g * g + 1.0).sqrt()
}

/// `Tr Q_gamma = 3 - 9 lambda_min`.
pub fn shifted_trace(lambda_min: f64) -> f64 {
    3.0 - 9.0 * lambda_min
}

/// `(||R(Q)||_1 - Tr Q) / Tr Q` from the closed forms.
pub fn analytic_margin(gamma: f64, lambda_min: f64) -> f64 {
    let tr = shifted_trace(lambda_min);
    (analytic_trace_norm(gamma, lambda_min) - tr) / tr
}

/// `lambda0(g) = (1-g)/2 - sqrt(3g^2-3g+1)/3 - sqrt(3g^2+1)/3`.
///
/// This is the detection threshold only for `g >= 1/3`; see
/// [`realignment_threshold`] for the whole range.
pub fn lambda0_threshold(gamma: f64) -> f64 {
    let g = gamma;
    (1.0 - g) / 2.0 - (3.0 * g * g - 3.0 * g + 1.0).sqrt() / 3.0 - (3.0 * g * g + 1.0).sqrt() / 3.0
}

/// Realignment fires on the SPA state iff `lambda_min` exceeds this value.
/// Equal to [`lambda0_threshold`] for `g >= 1/3`; below that the `|3g - 1|`
/// term flips sign.
pub fn realignment_threshold(gamma: f64) -> f64 {
    let g = gamma;
    (2.0 - (3.0 * g - 1.0).abs()) / 6.0
        - (3.0 * g * g - 3.0 * g + 1.0).sqrt() / 3.0
        - (3.0 * g * g + 1.0).sqrt() / 3.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealignmentReport {
    pub gamma: Option<f64>,
    pub singular_values: Vec<f64>,
    pub trace_norm_numeric: f64,
    /// Closed-form `||R(Q)||_1 / Tr Q`, comparable with `trace_norm_numeric`.
    pub trace_norm_analytic: Option<f64>,
    pub margin: f64,
    pub entangled_flag: bool,
}

/// Realignment report for an arbitrary state; pass `(gamma, lambda_min)` to
/// add the closed-form value for a family member.
pub fn realignment_report(state: &ComplexMatrix, family: Option<(f64, f64)>) -> RealignmentReport {
    let singular_values = singular_values(&realign(state));
    let trace_norm_numeric: f64 = singular_values.iter().sum();
    let margin = trace_norm_numeric - 1.0;
    RealignmentReport {
        gamma: family.map(|f| f.0),
        singular_values,
        trace_norm_numeric,
        trace_norm_analytic: family.map(|(g, l)| analytic_trace_norm(g, l) / shifted_trace(l)),
        margin,
        entangled_flag: margin > 0.0,
    }
}

pub fn entanglement_margin(spa: &SpaResult) -> Result<RealignmentReport> {
    Ok(realignment_report(
        &spa.spa_state,
        spa.gamma.map(|g| (g, spa.lambda_min)),
    ))
}
