//! Numbers `a + b omega` with rational `a, b` and `omega^2 = -1 - omega`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct EisensteinRational {
    pub a: Rational,
    pub b: Rational,
}

impl EisensteinRational {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    pub fn real(a: Rational) -> Self {
        Self {
            a,
            b: Rational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn omega() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    /// `omega^p` for any integer `p`.
    pub fn omega_pow(p: i64) -> Self {
        match p.rem_euclid(3) {
            0 => Self::one(),
            1 => Self::omega(),
            _ => Self::new(-Rational::one(), -Rational::one()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero()
    }

    /// `conj(a + b omega) = (a - b) - b omega`.
    pub fn conj(&self) -> Self {
        Self::new(&self.a - &self.b, -&self.b)
    }

    /// `|z|^2 = a^2 - ab + b^2`.
    pub fn norm_sqr(&self) -> Rational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.a * r, &self.b * r)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(self.conj().scale(&(Rational::one() / n)))
    }

    pub fn to_complex(&self) -> Complex64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        Complex64::new(a - 0.5 * b, b * 0.75f64.sqrt())
    }
}

impl From<Rational> for EisensteinRational {
    fn from(a: Rational) -> Self {
        Self::real(a)
    }
}

impl fmt::Display for EisensteinRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}w", self.a, self.b)
        }
    }
}

impl Add for &EisensteinRational {
    type Output = EisensteinRational;

    fn add(self, rhs: &EisensteinRational) -> EisensteinRational {
        EisensteinRational::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &EisensteinRational {
    type Output = EisensteinRational;

    fn sub(self, rhs: &EisensteinRational) -> EisensteinRational {
        EisensteinRational::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &EisensteinRational {
    type Output = EisensteinRational;

    /// `(a + b w)(c + d w) = (ac - bd) + (ad + bc - bd) w`.
    fn mul(self, rhs: &EisensteinRational) -> EisensteinRational {
        let bd = &self.b * &rhs.b;
        EisensteinRational::new(&self.a * &rhs.a - &bd, &self.a * &rhs.b + &self.b * &rhs.a - bd)
    }
}

impl Neg for &EisensteinRational {
    type Output = EisensteinRational;

    fn neg(self) -> EisensteinRational {
        EisensteinRational::new(-&self.a, -&self.b)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for EisensteinRational {
            type Output = EisensteinRational;
            fn $m(self, rhs: EisensteinRational) -> EisensteinRational {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for EisensteinRational {
    type Output = EisensteinRational;

    fn neg(self) -> EisensteinRational {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn er(a: (i64, i64), b: (i64, i64)) -> EisensteinRational {
        EisensteinRational::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn omega_identities() {
        let w = EisensteinRational::omega();
        let one = EisensteinRational::one();
        assert_eq!(&(&w * &w) * &w, one);
        assert!((&(&one + &w) + &(&w * &w)).is_zero());
        assert_eq!(w.conj(), &w * &w);
        assert_eq!(EisensteinRational::omega_pow(-1), w.conj());
        assert_eq!(EisensteinRational::omega_pow(4), w);
    }

    #[test]
    fn conjugation_and_norm() {
        let z = er((3, 4), (-1, 2));
        let n = &z * &z.conj();
        assert!(n.is_real());
        assert_eq!(n.a, z.norm_sqr());
        assert_eq!(&z * &z.inv().unwrap(), EisensteinRational::one());
        assert!(EisensteinRational::zero().inv().is_none());
    }

    #[test]
    fn complex_cast() {
        let z = er((1, 2), (3, 1));
        let w = crate::weyl::omega();
        assert!((z.to_complex() - (Complex64::new(0.5, 0.0) + w * 3.0)).norm() < 1e-15);
    }

    fn arb() -> impl Strategy<Value = EisensteinRational> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20).prop_map(|(a, b, c, d)| er((a, b), (c, d)))
    }

    proptest! {
        #[test]
        fn ring_laws(x in arb(), y in arb(), z in arb()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
        }
    }
}
