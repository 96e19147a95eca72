//! Exact arithmetic over `Q(omega)` and the rational certificate for the
//! PPT-entangled SPA state at `gamma = 3/4`.

mod certificate;
mod eisenstein;
mod matrix;
mod poly;

pub use certificate::{
    certify_gamma_three_quarters, certify_with_lambda_prime, family_cubic, lambda0_bracket, sqrt_bracket,
    CertificateReport, CertificateStep, DEFAULT_LAMBDA_PRIME,
};
pub use eisenstein::EisensteinRational;
pub use matrix::{exact_b, exact_witness, ExactMatrix};
pub use poly::ExactPolynomial;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"-0.64191"`, `"3/4"` or `"2"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidParameter(format!("not a rational number: {s:?}"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad())?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let r = Rational::new(digits, den);
    Ok(if neg { -r } else { r })
}

/// `{"num": "...", "den": "..."}` encoding for rationals.
pub(crate) mod rational_json {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::Rational;

    #[derive(Serialize, Deserialize)]
    struct Repr {
        num: String,
        den: String,
    }

    fn to_repr(r: &Rational) -> Repr {
        Repr {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }

    fn from_repr<E: serde::de::Error>(r: Repr) -> Result<Rational, E> {
        let n: BigInt = r.num.parse().map_err(E::custom)?;
        let d: BigInt = r.den.parse().map_err(E::custom)?;
        if d == BigInt::from(0) {
            return Err(E::custom("zero denominator"));
        }
        Ok(Rational::new(n, d))
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        to_repr(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        from_repr(Repr::deserialize(d)?)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            v.iter().map(to_repr).collect::<Vec<_>>().serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            Vec::<Repr>::deserialize(d)?.into_iter().map(from_repr).collect()
        }
    }

    pub mod pair {
        use super::*;

        pub fn serialize<S: Serializer>(v: &(Rational, Rational), s: S) -> Result<S::Ok, S::Error> {
            (to_repr(&v.0), to_repr(&v.1)).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(Rational, Rational), D::Error> {
            let (a, b) = <(Repr, Repr)>::deserialize(d)?;
            Ok((from_repr(a)?, from_repr(b)?))
        }
    }
}
