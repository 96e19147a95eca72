//! Numerical optimality evidence for `W_gamma`.
//!
//! A product vector `|x (x) y>` is a zero of `B_gamma` iff it is orthogonal to
//! `Omega_10`, `Omega_20` and `Omega_11`. The first two force `x_k y_k` to be
//! constant, so `y_k = 1/x_k` up to scale, and the third becomes
//!
//! ```text
//!   omega x2/x0 + x0/x1 + omega^2 x1/x2 = 0.
//! ```
//!
//! In the gauge `x0 = 1, x1 = t` this is `omega t x2^2 + x2 + omega^2 t^2 = 0`.
//! Because `W = 3 B^Gamma`, every such solution gives a zero `|x (x) y*>` of
//! the witness. Optimality follows once those zeros span the whole space.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    c64, hermitian_eigensystem, inner, kron_vec, normalized, singular_values, ComplexMatrix, DenseMatrix,
};
use crate::sampling::haar_vector;
use crate::weyl::{bell_vector, omega, WeylIndex, QUTRIT};
use crate::witness::{build_b, build_witness, BellFamilyParams};

/// Relative singular-value threshold for numeric rank.
pub const RANK_RTOL: f64 = 1e-8;

/// Distance kept from the degenerate parameters `t = 0` and `t^3 = 1/4`.
const DEGENERATE_GUARD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstraintSolution {
    pub t: Complex64,
    pub x: [Complex64; 3],
    pub y: [Complex64; 3],
}

impl ConstraintSolution {
    fn from_x(t: Complex64, x: [Complex64; 3]) -> Self {
        let y = x.map(|v| v.inv());
        Self { t, x, y }
    }

    /// `|x (x) y>`, a zero of `B_gamma`.
    pub fn product_vector(&self) -> Vec<Complex64> {
        kron_vec(&self.x, &self.y)
    }

    /// `|x (x) y*>`, a zero of `W_gamma`.
    pub fn witness_vector(&self) -> Vec<Complex64> {
        let yc = self.y.map(|v| v.conj());
        kron_vec(&self.x, &yc)
    }

    /// Largest `|<Omega|x (x) y>|` over the three excluded Bell vectors, for the normalized product vector.
    pub fn orthogonality_residual(&self) -> f64 {
        let v = normalized(&self.product_vector());
        excluded_bell_vectors()
            .iter()
            .map(|b| inner(b, &v).norm())
            .fold(0.0, f64::max)
    }

    /// Scale `x` by `c` (and `y` by `1/c`).
    pub fn rescaled(&self, c: Complex64) -> Self {
        Self {
            t: self.t,
            x: self.x.map(|v| v * c),
            y: self.y.map(|v| v / c),
        }
    }
}

/// Bell vectors spanning the support of `B_gamma`.
pub fn excluded_bell_vectors() -> [Vec<Complex64>; 3] {
    [(1, 0), (2, 0), (1, 1)].map(|(k, l)| bell_vector(WeylIndex::qutrit(k, l)).amplitudes)
}

/// `omega x2/x0 + x0/x1 + omega^2 x1/x2`.
pub fn constraint_residual(x: &[Complex64; 3]) -> Complex64 {
    let w = omega();
    w * x[2] / x[0] + x[0] / x[1] + w * w * x[1] / x[2]
}

pub fn is_degenerate_parameter(t: Complex64) -> bool {
    let disc = c64(1.0, 0.0) - t * t * t * 4.0;
    t.norm() < DEGENERATE_GUARD || disc.norm() < DEGENERATE_GUARD
}

/// Solutions with `x = (1, t, x2)`; one when the discriminant `1 - 4t^3` vanishes, two otherwise.
pub fn solve_constraint(t: Complex64) -> Result<Vec<ConstraintSolution>> {
    if t.norm() == 0.0 {
        return Err(Error::InvalidParameter("t = 0 leaves y undefined".into()));
    }
    let w = omega();
    // a x^2 + b x + c with a = omega t, b = 1, c = omega^2 t^2
    let a = w * t;
    let c = w * w * t * t;
    let disc = c64(1.0, 0.0) - a * c * 4.0;
    let s = disc.sqrt(); // principal branch, Re(s) >= 0, so no cancellation in 1 + s
    let q = -(c64(1.0, 0.0) + s) * 0.5;
    let mut roots = vec![q / a];
    if disc.norm() > 1e-14 {
        roots.push(c / q);
    }
    let mut out = Vec::with_capacity(2);
    for x2 in roots {
        if x2.norm() == 0.0 || !x2.is_finite() {
            return Err(Error::InvalidParameter(format!("root x2 = {x2} is not usable")));
        }
        out.push(ConstraintSolution::from_x(t, [c64(1.0, 0.0), t, x2]));
    }
    Ok(out)
}

/// Parameters split over two concentric circles of radii `radius` and
/// `1.5 radius`. A single circle does not work: on `|t| = r` the coordinates
/// satisfy `x1/x0* = r^2 x0/x1*`, which caps the witness-zero span at 8.
pub fn sample_parameters(samples: usize, radius: f64, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phase: f64 = rng.random();
    (0..samples)
        .map(|k| {
            let r = if k % 2 == 0 { radius } else { 1.5 * radius };
            let mut theta = 2.0 * std::f64::consts::PI * (k as f64 + phase) / samples as f64;
            let mut t = Complex64::from_polar(r, theta);
            while is_degenerate_parameter(t) {
                theta += 1e-3;
                t = Complex64::from_polar(r, theta);
            }
            t
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpanCertificate {
    #[serde(with = "vector_list")]
    pub vector_set: Vec<Vec<Complex64>>,
    pub singular_values: Vec<f64>,
    pub numeric_rank: usize,
}

pub fn span_rank(vectors: &[Vec<Complex64>]) -> Result<SpanCertificate> {
    let first = vectors
        .first()
        .ok_or(Error::Empty("span_rank needs at least one vector"))?;
    let n = first.len();
    if vectors.iter().any(|v| v.len() != n) {
        return Err(Error::Dimension("vectors of unequal length".into()));
    }
    let stacked = DenseMatrix::from_fn(vectors.len(), n, |r, c| vectors[r][c]);
    let singular_values = singular_values(&stacked);
    let top = singular_values.first().copied().unwrap_or(0.0);
    let numeric_rank = singular_values
        .iter()
        .filter(|&&s| top > 0.0 && s > RANK_RTOL * top)
        .count();
    Ok(SpanCertificate {
        vector_set: vectors.to_vec(),
        singular_values,
        numeric_rank,
    })
}

/// Constraint solutions for the sampled parameters.
pub fn zero_set(samples: usize, radius: f64, seed: u64) -> Result<Vec<ConstraintSolution>> {
    let mut out = Vec::new();
    for t in sample_parameters(samples, radius, seed) {
        out.extend(solve_constraint(t)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimalityReport {
    pub gamma: f64,
    pub samples: usize,
    pub seed: u64,
    pub b_span: SpanCertificate,
    pub w_span: SpanCertificate,
    /// Largest `|<v|B|v>|` over normalized product zeros.
    pub max_b_residual: f64,
    /// Largest `|<v|W|v>|` over normalized witness zeros.
    pub max_w_residual: f64,
    pub ces_overlap: f64,
}

impl OptimalityReport {
    pub fn ranks_match(&self) -> bool {
        self.b_span.numeric_rank == 6 && self.w_span.numeric_rank == 9
    }
}

pub const DEFAULT_RADIUS: f64 = 1.3;

pub fn optimality_report(gamma: f64, samples: usize, seed: u64) -> Result<OptimalityReport> {
    let params = BellFamilyParams::new(gamma)?;
    let b = build_b(params);
    let w = build_witness(params);
    let sols = zero_set(samples, DEFAULT_RADIUS, seed)?;
    let products: Vec<_> = sols.iter().map(|s| normalized(&s.product_vector())).collect();
    let witness_zeros: Vec<_> = sols.iter().map(|s| normalized(&s.witness_vector())).collect();
    let residual = |m: &ComplexMatrix, vs: &[Vec<Complex64>]| -> Result<f64> {
        vs.iter()
            .map(|v| m.expectation(v).map(|z| z.norm()))
            .try_fold(0.0f64, |acc, r| r.map(|r| acc.max(r)))
    };
    Ok(OptimalityReport {
        gamma,
        samples,
        seed,
        max_b_residual: residual(&b, &products)?,
        max_w_residual: residual(&w, &witness_zeros)?,
        b_span: span_rank(&products)?,
        w_span: span_rank(&witness_zeros)?,
        ces_overlap: ces_overlap(&ces_projector(), 32, 300, seed)?,
    })
}

/// Orthogonal projector onto the span of the given vectors.
pub fn subspace_projector(dim_a: usize, dim_b: usize, vectors: &[Vec<Complex64>]) -> Result<ComplexMatrix> {
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for v in vectors {
        let mut u = v.clone();
        for b in &basis {
            let c = inner(b, &u);
            for (ui, bi) in u.iter_mut().zip(b) {
                *ui -= c * bi;
            }
        }
        if crate::linalg::norm(&u) > 1e-12 {
            basis.push(normalized(&u));
        }
    }
    let mut p = ComplexMatrix::zeros(dim_a, dim_b);
    for b in &basis {
        p = p.try_add(&ComplexMatrix::projector(dim_a, dim_b, b)?)?;
    }
    Ok(p)
}

/// Projector onto `span{Omega_10, Omega_20, Omega_11}`.
pub fn ces_projector() -> ComplexMatrix {
    subspace_projector(QUTRIT, QUTRIT, &excluded_bell_vectors()).expect("qutrit vectors")
}

fn check_projector(p: &ComplexMatrix) -> Result<()> {
    let defect = p
        .hermitian_defect()
        .max((p.matrix() * p.matrix()).max_abs_diff(p.matrix()));
    if defect > 1e-10 {
        return Err(Error::NotAProjector(defect));
    }
    Ok(())
}

/// Contract `Pi` with a fixed vector on one factor: the operator on the other
/// factor whose expectation value equals `<x (x) y|Pi|x (x) y>`.
fn contract(p: &ComplexMatrix, fixed: &[Complex64], fix_first: bool) -> DenseMatrix {
    let (da, db) = (p.dim_a(), p.dim_b());
    if fix_first {
        DenseMatrix::from_fn(db, db, |j, l| {
            let mut s = Complex64::default();
            for i in 0..da {
                for k in 0..da {
                    s += fixed[i].conj() * p[(i * db + j, k * db + l)] * fixed[k];
                }
            }
            s
        })
    } else {
        DenseMatrix::from_fn(da, da, |i, k| {
            let mut s = Complex64::default();
            for j in 0..db {
                for l in 0..db {
                    s += fixed[j].conj() * p[(i * db + j, k * db + l)] * fixed[l];
                }
            }
            s
        })
    }
}

/// One see-saw run from the starting `y`; returns the objective after every half-step.
pub fn see_saw(p: &ComplexMatrix, start_y: &[Complex64], iters: usize) -> Result<Vec<f64>> {
    let mut y = start_y.to_vec();
    let mut x;
    let mut history = Vec::with_capacity(2 * iters);
    for _ in 0..iters {
        let eig = hermitian_eigensystem(&contract(p, &y, false))?;
        x = eig.vector(p.dim_a() - 1);
        history.push(eig.max());
        let eig = hermitian_eigensystem(&contract(p, &x, true))?;
        y = eig.vector(p.dim_b() - 1);
        history.push(eig.max());
        let n = history.len();
        if n >= 4 && (history[n - 1] - history[n - 3]).abs() < 1e-16 {
            break;
        }
    }
    Ok(history)
}

/// Best product-vector overlap `max <x (x) y|Pi|x (x) y>` found by see-saw
/// from `restarts` Haar-random starts.
pub fn ces_overlap(p: &ComplexMatrix, restarts: usize, iters: usize, seed: u64) -> Result<f64> {
    check_projector(p)?;
    if restarts < 8 || iters < 200 {
        return Err(Error::InvalidParameter(format!(
            "see-saw needs restarts >= 8 and iters >= 200 (got {restarts}, {iters})"
        )));
    }
    let values: Result<Vec<f64>> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(r as u64);
            let y = haar_vector(&mut rng, p.dim_b());
            let h = see_saw(p, &y, iters)?;
            Ok(h.last().copied().unwrap_or(0.0))
        })
        .collect();
    Ok(values?.into_iter().fold(f64::NEG_INFINITY, f64::max))
}

mod vector_list {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Parts {
        re: Vec<f64>,
        im: Vec<f64>,
    }

    pub fn serialize<S: Serializer>(v: &[Vec<Complex64>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|x| Parts {
                re: x.iter().map(|z| z.re).collect(),
                im: x.iter().map(|z| z.im).collect(),
            })
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Complex64>>, D::Error> {
        let parts = Vec::<Parts>::deserialize(d)?;
        Ok(parts
            .into_iter()
            .map(|p| {
                p.re.into_iter()
                    .zip(p.im)
                    .map(|(a, b)| Complex64::new(a, b))
                    .collect()
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::maximally_entangled;

    #[test]
    fn t_equal_one() {
        let sols = solve_constraint(c64(1.0, 0.0)).unwrap();
        assert_eq!(sols.len(), 2);
        let w = omega();
        let x2: Vec<_> = sols.iter().map(|s| s.x[2]).collect();
        assert!(x2.iter().any(|z| (z - c64(1.0, 0.0)).norm() < 1e-14));
        assert!(x2.iter().any(|z| (z - w).norm() < 1e-14));
        let ones = sols
            .iter()
            .find(|s| (s.x[2] - c64(1.0, 0.0)).norm() < 1e-14)
            .unwrap();
        assert!(ones.y.iter().all(|z| (z - c64(1.0, 0.0)).norm() < 1e-14));
    }

    #[test]
    fn rejects_zero_parameter() {
        assert!(solve_constraint(c64(0.0, 0.0)).is_err());
    }

    #[test]
    fn double_root_is_returned_once() {
        let t = c64(0.25f64.cbrt(), 0.0);
        let sols = solve_constraint(t).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(constraint_residual(&sols[0].x).norm() < 1e-12);
    }

    #[test]
    fn solutions_are_zeros_of_b_and_w() {
        let params = BellFamilyParams::new(0.4).unwrap();
        let b = build_b(params);
        let w = build_witness(params);
        for t in [c64(0.3, 1.1), c64(-2.0, 0.5), c64(1.0, 0.0)] {
            for s in solve_constraint(t).unwrap() {
                assert!(s.orthogonality_residual() < 1e-12);
                let v = normalized(&s.product_vector());
                let u = normalized(&s.witness_vector());
                assert!(b.expectation(&v).unwrap().norm() < 1e-12);
                assert!(w.expectation(&u).unwrap().norm() < 1e-12);
            }
        }
    }

    #[test]
    fn matches_the_cyclic_form_after_relabelling() {
        // z = (y1, y0, y2) satisfies z0/z1 + omega z1/z2 + omega* z2/z0 = 0
        let w = omega();
        for t in [c64(0.7, -0.2), c64(1.9, 0.4)] {
            for s in solve_constraint(t).unwrap() {
                let z = [s.y[1], s.y[0], s.y[2]];
                let r = z[0] / z[1] + w * z[1] / z[2] + w.conj() * z[2] / z[0];
                assert!(r.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn standard_basis_has_full_rank() {
        let basis: Vec<Vec<Complex64>> = (0..9)
            .map(|i| (0..9).map(|j| c64((i == j) as u8 as f64, 0.0)).collect())
            .collect();
        assert_eq!(span_rank(&basis).unwrap().numeric_rank, 9);
        assert!(span_rank(&[]).is_err());
    }

    #[test]
    fn sampler_avoids_degenerate_points_and_is_deterministic() {
        let a = sample_parameters(24, 0.7, 3);
        assert_eq!(a, sample_parameters(24, 0.7, 3));
        assert!(a.iter().all(|&t| !is_degenerate_parameter(t)));
        assert_ne!(a, sample_parameters(24, 0.7, 4));
    }

    #[test]
    fn zero_span_ranks() {
        let sols = zero_set(24, 1.3, 0).unwrap();
        let p: Vec<_> = sols.iter().map(|s| normalized(&s.product_vector())).collect();
        let q: Vec<_> = sols.iter().map(|s| normalized(&s.witness_vector())).collect();
        assert_eq!(span_rank(&p).unwrap().numeric_rank, 6);
        assert_eq!(span_rank(&q).unwrap().numeric_rank, 9);
    }

    #[test]
    fn single_circle_is_rank_deficient() {
        let r: f64 = 1.3;
        let mut q = Vec::new();
        for k in 0..24 {
            let t = Complex64::from_polar(r, 0.3 + k as f64 * 0.26);
            for s in solve_constraint(t).unwrap() {
                q.push(normalized(&s.witness_vector()));
            }
        }
        assert_eq!(span_rank(&q).unwrap().numeric_rank, 8);
    }

    #[test]
    fn see_saw_oracles() {
        let mut e0 = vec![c64(0.0, 0.0); 9];
        e0[0] = c64(1.0, 0.0);
        let product = ComplexMatrix::projector(3, 3, &e0).unwrap();
        assert!((ces_overlap(&product, 8, 200, 1).unwrap() - 1.0).abs() < 1e-9);
        let bell = ComplexMatrix::projector(3, 3, &maximally_entangled(3)).unwrap();
        assert!((ces_overlap(&bell, 8, 200, 1).unwrap() - 1.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn see_saw_is_monotone() {
        let p = ces_projector();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let y = haar_vector(&mut rng, 3);
            let h = see_saw(&p, &y, 200).unwrap();
            assert!(h.windows(2).all(|w| w[1] >= w[0] - 1e-12));
        }
    }

    #[test]
    fn ces_rejects_bad_input() {
        let not_projector = ComplexMatrix::identity(3, 3).scale_re(0.5);
        assert!(matches!(
            ces_overlap(&not_projector, 8, 200, 0),
            Err(Error::NotAProjector(_))
        ));
        assert!(ces_overlap(&ces_projector(), 4, 200, 0).is_err());
    }

    #[test]
    fn span_certificate_json() {
        let c = span_rank(&[vec![c64(1.0, 2.0), c64(0.0, -1.0)]]).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        let back: SpanCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }
}
