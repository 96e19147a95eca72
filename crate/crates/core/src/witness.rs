//! The Bell-diagonal family `B_gamma`, the witness `W_gamma = 3 B_gamma^Gamma`,
//! and its structural physical approximation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigensystem, hermitian_eigenvalues, partial_transpose, ComplexMatrix, DenseMatrix,
};
use crate::weyl::{bell_projector, WeylIndex, QUTRIT};

/// Eigenvalues closer than this are counted as one degenerate level.
pub const CLUSTER_TOL: f64 = 1e-9;

/// Trace of every `W_gamma`.
pub const WITNESS_TRACE: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellFamilyParams {
    gamma: f64,
}

impl BellFamilyParams {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::InvalidParameter(format!(
                "gamma = {gamma} is outside [0, 1]"
            )));
        }
        Ok(Self { gamma })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Projector weights `{(1,0): (1-g)/2, (2,0): (1-g)/2, (1,1): g}`.
    pub fn weights(&self) -> [(WeylIndex, f64); 3] {
        let g = self.gamma;
        [
            (WeylIndex::qutrit(1, 0), (1.0 - g) / 2.0),
            (WeylIndex::qutrit(2, 0), (1.0 - g) / 2.0),
            (WeylIndex::qutrit(1, 1), g),
        ]
    }
}

pub fn build_b(params: BellFamilyParams) -> ComplexMatrix {
    params
        .weights()
        .iter()
        .fold(ComplexMatrix::zeros(QUTRIT, QUTRIT), |acc, &(idx, w)| {
            acc.try_add(&bell_projector(idx).scale_re(w))
                .expect("qutrit dims")
        })
}

pub fn build_witness(params: BellFamilyParams) -> ComplexMatrix {
    partial_transpose(&build_b(params)).scale_re(3.0)
}

/// Smallest eigenvalue and the size of its cluster.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessSpectrum {
    pub lambda_min: f64,
    pub degeneracy: usize,
}

pub fn witness_spectrum_check(w: &DenseMatrix) -> Result<WitnessSpectrum> {
    let vals = hermitian_eigenvalues(w)?;
    let lambda_min = vals[0];
    let degeneracy = vals.iter().filter(|&&x| x - lambda_min <= CLUSTER_TOL).count();
    Ok(WitnessSpectrum {
        lambda_min,
        degeneracy,
    })
}

/// Structural physical approximation of a witness.
///
/// `lambda_min` is the smallest eigenvalue of the witness as given (trace 3
/// for the family), `p_star` the largest admissible mixing weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaResult {
    pub gamma: Option<f64>,
    pub lambda_min: f64,
    pub p_star: f64,
    pub ppt_min_eig: f64,
    pub spa_state: ComplexMatrix,
}

/// Mix the trace-normalized witness with the maximally mixed state at the
/// largest weight that keeps the mixture positive.
///
/// With `W^ = w / Tr w` and `D = dim`, the boundary weight is
/// `p* = 1 / (1 - D lambda_min(W^))`; for the trace-3 qutrit family this is
/// `1 / (1 - 3 lambda_min(w))`. The resulting state coincides with
/// `(w - lambda_min I) / Tr(w - lambda_min I)`, which is checked.
pub fn spa(w: &ComplexMatrix) -> Result<SpaResult> {
    let check = witness_spectrum_check(w)?;
    let lambda_min = check.lambda_min;
    if lambda_min >= 0.0 {
        return Err(Error::NotAWitness(lambda_min));
    }
    let trace = w.trace().re;
    if trace <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "witness trace {trace} must be positive"
        )));
    }
    let dim = w.dim() as f64;
    let p_star = 1.0 / (1.0 - dim * lambda_min / trace);
    let normalized = w.scale_re(1.0 / trace);
    let spa_state = normalized
        .scale_re(p_star)
        .try_add(&ComplexMatrix::identity(w.dim_a(), w.dim_b()).scale_re((1.0 - p_star) / dim))?;

    let shifted = w.shift(-lambda_min);
    let via_shift = shifted.scale_re(1.0 / shifted.trace().re);
    let defect = spa_state.max_abs_diff(&via_shift);
    if defect > 1e-12 {
        return Err(Error::Consistency(format!(
            "SPA state differs from (W - lambda I)/Tr by {defect:e}"
        )));
    }

    let ppt_min_eig = ppt_check(&spa_state)?;
    Ok(SpaResult {
        gamma: None,
        lambda_min,
        p_star,
        ppt_min_eig,
        spa_state,
    })
}

/// [`spa`] applied to `W_gamma`, recording `gamma`.
pub fn spa_for_gamma(params: BellFamilyParams) -> Result<SpaResult> {
    let mut out = spa(&build_witness(params))?;
    out.gamma = Some(params.gamma());
    Ok(out)
}

/// `Q = W - lambda_min I`.
pub fn shifted_witness(w: &ComplexMatrix, lambda_min: f64) -> ComplexMatrix {
    w.shift(-lambda_min)
}

/// Smallest eigenvalue of the partial transpose.
pub fn ppt_check(state: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(&partial_transpose(state))?[0])
}

/// Minimum eigenvalue of a state; convenience for callers validating `spa_state`.
pub fn min_eigenvalue(m: &DenseMatrix) -> Result<f64> {
    Ok(hermitian_eigensystem(m)?.min())
}

pub fn principal_submatrix(m: &DenseMatrix, idx: &[usize]) -> DenseMatrix {
    DenseMatrix::from_fn(idx.len(), idx.len(), |r, c| m[(idx[r], idx[c])])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c64;
    use crate::weyl::{maximally_entangled, omega};

    fn params(g: f64) -> BellFamilyParams {
        BellFamilyParams::new(g).unwrap()
    }

    #[test]
    fn rejects_gamma_outside_unit_interval() {
        assert!(BellFamilyParams::new(-0.1).is_err());
        assert!(BellFamilyParams::new(1.5).is_err());
        assert!(BellFamilyParams::new(f64::NAN).is_err());
    }

    #[test]
    fn weights_sum_to_one() {
        let s: f64 = params(0.3).weights().iter().map(|w| w.1).sum();
        assert!((s - 1.0).abs() < 1e-15);
    }

    #[test]
    fn b_is_a_state() {
        let b = build_b(params(0.3));
        assert!((b.trace().re - 1.0).abs() < 1e-14);
        assert!(b.is_hermitian());
        assert!(min_eigenvalue(&build_b(params(0.5))).unwrap() >= -1e-12);
        let b1 = build_b(params(1.0));
        let p11 = bell_projector(WeylIndex::qutrit(1, 1));
        assert!(b1.max_abs_diff(&p11) < 1e-15);
    }

    #[test]
    fn witness_entries() {
        let g = 0.25;
        let w = build_witness(params(g));
        assert!((w[(0, 0)] - c64(1.0 - g, 0.0)).norm() < 1e-15);
        assert!((w[(0, 7)] - omega() * g).norm() < 1e-15);
        assert!((w[(1, 3)] - c64(-(1.0 - g) / 2.0, 0.0)).norm() < 1e-15);
        assert!((w.trace().re - 3.0).abs() < 1e-14);
    }

    #[test]
    fn principal_block_has_negative_determinant() {
        for g in [0.1, 0.25, 0.5, 0.75, 0.9] {
            let w = build_witness(params(g));
            let s = principal_submatrix(w.matrix(), &[0, 5, 7]);
            let h = -(1.0 - g) / 2.0;
            let expect = [
                [c64(1.0 - g, 0.0), c64(0.0, 0.0), omega() * g],
                [c64(0.0, 0.0), c64(g, 0.0), c64(h, 0.0)],
                [omega().conj() * g, c64(h, 0.0), c64(0.0, 0.0)],
            ];
            for r in 0..3 {
                for c in 0..3 {
                    assert!((s[(r, c)] - expect[r][c]).norm() < 1e-15);
                }
            }
            // det = -(1-g) h^2 - g |w g|^2
            let det = -(1.0 - g) * h * h - g * g * g;
            assert!(det < 0.0);
            let vals = hermitian_eigenvalues(&s).unwrap();
            assert!((vals.iter().product::<f64>() - det).abs() < 1e-14);
            assert_eq!(vals.iter().filter(|&&x| x < 0.0).count(), 1);
        }
    }

    #[test]
    fn spectrum_check_on_identity_and_witness() {
        let s = witness_spectrum_check(&DenseMatrix::identity(9)).unwrap();
        assert_eq!((s.lambda_min, s.degeneracy), (1.0, 9));
        let s = witness_spectrum_check(build_witness(params(0.5)).matrix()).unwrap();
        assert_eq!(s.degeneracy, 3);
        assert!(s.lambda_min < 0.0);
    }

    #[test]
    fn hypothetical_lambda_gives_half() {
        // a trace-3 qutrit operator with smallest eigenvalue -1/3
        let w = ComplexMatrix::new(
            3,
            3,
            DenseMatrix::real_diagonal(&[-1.0 / 3.0, 1.0 / 3.0, 3.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
        )
        .unwrap();
        let r = spa(&w).unwrap();
        assert!((r.p_star - 0.5).abs() < 1e-15);
    }

    #[test]
    fn spa_state_sits_on_positivity_boundary() {
        let r = spa_for_gamma(params(0.5)).unwrap();
        assert!(min_eigenvalue(r.spa_state.matrix()).unwrap().abs() < 1e-12);
        assert!((r.spa_state.trace().re - 1.0).abs() < 1e-12);
        assert!(r.ppt_min_eig >= -1e-12);
    }

    #[test]
    fn p_star_matches_line_search() {
        let w = build_witness(params(0.75));
        let r = spa(&w).unwrap();
        // bisection on the sign of the smallest eigenvalue of pW/3 + (1-p)I/9
        let min_eig = |p: f64| {
            let m = w
                .scale_re(p / 3.0)
                .try_add(&ComplexMatrix::identity(3, 3).scale_re((1.0 - p) / 9.0))
                .unwrap();
            min_eigenvalue(m.matrix()).unwrap()
        };
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if min_eig(mid) >= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((r.p_star - lo).abs() < 1e-12);
    }

    #[test]
    fn spa_rejects_positive_operator() {
        assert!(matches!(
            spa(&ComplexMatrix::identity(3, 3)),
            Err(Error::NotAWitness(_))
        ));
    }

    #[test]
    fn ppt_check_examples() {
        let mixed = ComplexMatrix::identity(3, 3).scale_re(1.0 / 9.0);
        assert!((ppt_check(&mixed).unwrap() - 1.0 / 9.0).abs() < 1e-15);
        let bell = ComplexMatrix::projector(3, 3, &maximally_entangled(3)).unwrap();
        assert!((ppt_check(&bell).unwrap() + 1.0 / 3.0).abs() < 1e-14);
        let r = spa_for_gamma(params(0.6)).unwrap();
        assert!(r.ppt_min_eig >= -1e-12);
    }

    #[test]
    fn spa_json_has_documented_keys() {
        let r = spa_for_gamma(params(0.75)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in ["gamma", "lambda_min", "p_star", "ppt_min_eig", "spa_state"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert!(v["spa_state"]["re"].is_array());
        let back: SpaResult = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
