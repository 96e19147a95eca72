//! Rational proof that the SPA state of `W_{3/4}` is PPT and detected by
//! realignment.
//!
//! The witness spectrum is the root set of the cubic
//! `P(x) = -x^3 + x^2 + 25/64 x - 109/256`, each root threefold. The
//! realignment criterion fires iff `lambda_min > lambda0`, with
//! `lambda0 = (1 - 2/3 sqrt 7 - 2/3 sqrt 43) / 8`. A rational `lambda'` with
//! `P(lambda') > 0` sits below the negative root and above `lambda0`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{exact_b, exact_witness, parse_rational, rat, rational_json, to_f64, ExactPolynomial, Rational};
use crate::error::{Error, Result};

pub const DEFAULT_LAMBDA_PRIME: &str = "-0.64191";

/// `P(x) = -x^3 + x^2 + 25/64 x - 109/256`.
pub fn family_cubic() -> ExactPolynomial {
    ExactPolynomial::new(vec![rat(-109, 256), rat(25, 64), rat(1, 1), rat(-1, 1)])
}

/// Rationals `lo <= sqrt(n) < hi` with `hi - lo <= precision`.
pub fn sqrt_bracket(n: &Rational, precision: &Rational) -> Result<(Rational, Rational)> {
    if n.is_negative() {
        return Err(Error::InvalidParameter("square root of a negative number".into()));
    }
    if !precision.is_positive() {
        return Err(Error::InvalidParameter("precision must be positive".into()));
    }
    let d: BigInt = (Rational::one() / precision).ceil().to_integer();
    let scaled = (n * Rational::from_integer(&d * &d)).floor().to_integer();
    let s = scaled.sqrt();
    Ok((
        Rational::new(s.clone(), d.clone()),
        Rational::new(s + BigInt::one(), d),
    ))
}

/// Rational bracket of `lambda0(3/4) = 1/8 - sqrt(7)/12 - sqrt(43)/12`.
pub fn lambda0_bracket(precision: &Rational) -> Result<(Rational, Rational)> {
    let (lo7, hi7) = sqrt_bracket(&rat(7, 1), precision)?;
    let (lo43, hi43) = sqrt_bracket(&rat(43, 1), precision)?;
    let twelve = rat(12, 1);
    let base = rat(1, 8);
    let lo = &base - (hi7 + hi43) / &twelve;
    let hi = base - (lo7 + lo43) / twelve;
    Ok((lo, hi))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateStep {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    #[serde(with = "rational_json")]
    pub gamma: Rational,
    pub char_poly: ExactPolynomial,
    pub cubic_factor: ExactPolynomial,
    #[serde(with = "rational_json")]
    pub lambda_prime: Rational,
    #[serde(with = "rational_json")]
    pub p_at_lambda_prime: Rational,
    pub p_at_lambda_prime_approx: f64,
    #[serde(with = "rational_json::pair")]
    pub lambda0_bracket: (Rational, Rational),
    pub lambda0_bracket_approx: (f64, f64),
    pub steps: Vec<CertificateStep>,
    pub failed_step: Option<String>,
    pub verdict: bool,
    pub narrative: Vec<String>,
}

pub fn certify_gamma_three_quarters() -> Result<CertificateReport> {
    certify_with_lambda_prime(&parse_rational(DEFAULT_LAMBDA_PRIME)?)
}

/// Runs every step with the given `lambda'`; a step that fails exactly makes
/// the verdict false and is named in `failed_step`.
pub fn certify_with_lambda_prime(lambda_prime: &Rational) -> Result<CertificateReport> {
    let gamma = rat(3, 4);
    let mut steps = Vec::new();
    fn push(steps: &mut Vec<CertificateStep>, name: &str, passed: bool, detail: String) {
        steps.push(CertificateStep {
            name: name.into(),
            passed,
            detail,
        });
    }

    // PPT: W^Gamma = 3 B with B a nonnegative mix of projectors, so
    // Q^Gamma = 3 B - lambda_min I >= 0 whenever lambda_min < 0.
    let w = exact_witness(&gamma);
    let wpt = w.partial_transpose(3)?;
    let b3 = exact_b(&gamma).scale(&super::EisensteinRational::real(rat(3, 1)));
    let ppt = w.is_hermitian() && wpt == b3;
    push(
        &mut steps,
        "ppt",
        ppt,
        "W^Gamma = 3 (1/8 P10 + 1/8 P20 + 3/4 P11) exactly, so the SPA state has PSD partial transpose"
            .into(),
    );

    let cubic = family_cubic();
    let char_poly = w.char_poly()?;
    let expected = cubic.neg().pow(3);
    push(
        &mut steps,
        "characteristic polynomial",
        char_poly == expected,
        format!("det(x I - W) = ({})^3", cubic.neg()),
    );

    let p_lp = cubic.eval(lambda_prime);
    push(
        &mut steps,
        "sign at lambda'",
        p_lp.is_positive() && lambda_prime.is_negative(),
        format!("P({lambda_prime}) = {p_lp} ~ {:.6e}", to_f64(&p_lp)),
    );

    let probes: Vec<(Rational, Rational)> =
        [rat(-1, 1), lambda_prime.clone(), rat(0, 1), rat(1, 1), rat(2, 1)]
            .into_iter()
            .map(|x| {
                let v = cubic.eval(&x);
                (x, v)
            })
            .collect();
    let changes = cubic.reflect().sign_changes();
    let p0 = cubic.eval(&Rational::zero());
    let isolated = changes == 1 && p0.is_negative() && p_lp.is_positive() && lambda_prime.is_negative();
    let probe_text: Vec<String> = probes
        .iter()
        .map(|(x, v)| format!("P({x}) = {:.6e}", to_f64(v)))
        .collect();
    push(
        &mut steps,
        "unique negative root",
        isolated,
        format!(
            "P(-x) has {changes} sign change(s), so P has exactly one negative root; {}; \
             the root lies in (lambda', 0) and is the smallest eigenvalue",
            probe_text.join(", ")
        ),
    );

    let precision = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 12));
    let (l0_lo, l0_hi) = lambda0_bracket(&precision)?;
    push(
        &mut steps,
        "threshold",
        lambda_prime > &l0_hi,
        format!(
            "lambda0 in [{:.12}, {:.12}], lambda' = {:.12}",
            to_f64(&l0_lo),
            to_f64(&l0_hi),
            to_f64(lambda_prime)
        ),
    );

    let all = steps.iter().all(|s| s.passed);
    push(
        &mut steps,
        "conclusion",
        all,
        "lambda_min > lambda' > lambda0: realignment detects the PPT SPA state, which is therefore entangled"
            .into(),
    );

    let failed_step = steps.iter().find(|s| !s.passed).map(|s| s.name.clone());
    let narrative = steps
        .iter()
        .map(|s| {
            format!(
                "[{}] {}: {}",
                if s.passed { "ok" } else { "FAILED" },
                s.name,
                s.detail
            )
        })
        .collect();
    Ok(CertificateReport {
        gamma,
        char_poly,
        cubic_factor: cubic,
        lambda_prime: lambda_prime.clone(),
        p_at_lambda_prime_approx: to_f64(&p_lp),
        p_at_lambda_prime: p_lp,
        lambda0_bracket_approx: (to_f64(&l0_lo), to_f64(&l0_hi)),
        lambda0_bracket: (l0_lo, l0_hi),
        verdict: failed_step.is_none(),
        failed_step,
        steps,
        narrative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Rational Newton iteration from above, each iterate rounded up to a
    /// multiple of 1e-15 so it stays an upper bound for sqrt(n).
    fn newton_sqrt(n: &Rational, iters: usize) -> Rational {
        let two = rat(2, 1);
        let grid = Rational::from_integer(num_traits::pow(BigInt::from(10), 15));
        let mut x = n + Rational::one();
        for _ in 0..iters {
            x = ((&x + n / &x) / &two * &grid).ceil() / &grid;
        }
        x
    }

    #[test]
    fn sqrt_bracket_agrees_with_newton() {
        let prec = rat(1, 1_000_000_000);
        for n in [2, 7, 43, 100, 12345] {
            let n = rat(n, 1);
            let (lo, hi) = sqrt_bracket(&n, &prec).unwrap();
            assert!(&lo * &lo <= n && &hi * &hi > n);
            assert!(&hi - &lo <= prec);
            let newton = newton_sqrt(&n, 60);
            // Newton from above never undershoots
            assert!(&newton * &newton >= n);
            assert!((to_f64(&newton) - to_f64(&lo)).abs() < 1e-8);
        }
        assert_eq!(sqrt_bracket(&rat(9, 4), &prec).unwrap().0, rat(3, 2));
        let (lo, hi) = sqrt_bracket(&rat(4, 1), &rat(1, 1_000_000_000_000)).unwrap();
        assert!(lo <= rat(2, 1) && rat(2, 1) < hi);
        let (lo, _) = sqrt_bracket(&rat(7, 1), &rat(1, 1_000_000_000_000)).unwrap();
        assert!((to_f64(&lo) - 2.6457513110).abs() < 1e-10);
        let (lo, _) = sqrt_bracket(&rat(43, 1), &rat(1, 1_000_000_000_000)).unwrap();
        assert!((to_f64(&lo) - 6.5574385243).abs() < 1e-10);
        assert!(sqrt_bracket(&rat(-1, 1), &prec).is_err());
        assert!(sqrt_bracket(&rat(1, 1), &rat(0, 1)).is_err());
    }

    proptest! {
        #[test]
        fn sqrt_bracket_contains_root(num in 0i64..100_000, den in 1i64..1000, p in 1u32..15) {
            let n = rat(num, den);
            let prec = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), p as usize));
            let (lo, hi) = sqrt_bracket(&n, &prec).unwrap();
            prop_assert!(&lo * &lo <= n);
            prop_assert!(&hi * &hi > n);
            prop_assert!(&hi - &lo <= prec);
        }
    }

    #[test]
    fn lambda0_bracket_is_tight() {
        let (lo, hi) = lambda0_bracket(&rat(1, 1_000_000_000)).unwrap();
        let exact = (1.0 - 2.0 / 3.0 * 7f64.sqrt() - 2.0 / 3.0 * 43f64.sqrt()) / 8.0;
        assert!(to_f64(&lo) <= exact && exact <= to_f64(&hi));
        assert!(to_f64(&(hi - lo)) <= 1e-6);
    }

    #[test]
    fn default_certificate_holds() {
        let r = certify_gamma_three_quarters().unwrap();
        assert!(r.verdict, "{:#?}", r.narrative);
        assert!(r.failed_step.is_none());
        assert_eq!(r.steps.len(), 6);
        assert!(r.p_at_lambda_prime_approx > 1.5e-5 && r.p_at_lambda_prime_approx < 2.5e-5);
        let (lo, hi) = r.lambda0_bracket_approx;
        let exact = (1.0 - 2.0 / 3.0 * 7f64.sqrt() - 2.0 / 3.0 * 43f64.sqrt()) / 8.0;
        assert!(lo <= exact && exact <= hi);
        assert!(hi - lo <= 1e-6);
        // both ends round to -0.64193
        assert!(lo > -0.641935 && hi < -0.641925);
    }

    #[test]
    fn below_threshold_lambda_prime_fails_the_threshold_step() {
        let r = certify_with_lambda_prime(&rat(-13, 20)).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.failed_step.as_deref(), Some("threshold"));
        assert!(r.p_at_lambda_prime.is_positive());
    }

    #[test]
    fn lambda_prime_above_the_root_fails_the_sign_step() {
        let r = certify_with_lambda_prime(&rat(-64, 100)).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.failed_step.as_deref(), Some("sign at lambda'"));
    }

    #[test]
    fn report_json_round_trip() {
        let r = certify_gamma_three_quarters().unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["lambda_prime"]["num"], "-64191");
        assert_eq!(v["lambda_prime"]["den"], "100000");
        let back: CertificateReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
