//! Reduced rational functions, the carrier for localization intermediates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gcd::{gcd, reduce_fraction};
use super::Polynomial;
use crate::error::{Error, Result};

/// A fraction of polynomials kept in reduced canonical form: numerator and
/// denominator share no non-unit factor and the denominator's grlex-leading
/// coefficient is positive. Equality of fractions is structural equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        assert_eq!(num.nvars(), den.nvars(), "variable count mismatch");
        let (num, den) = reduce_fraction(&num, &den);
        Ok(RationalFunction { num, den })
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        let den = Polynomial::one(p.nvars());
        RationalFunction { num: p, den }
    }

    pub fn zero(nvars: usize) -> Self {
        RationalFunction::from_polynomial(Polynomial::zero(nvars))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Converts back to a polynomial when the denominator is the unit 1.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        if self.den == Polynomial::one(self.den.nvars()) {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn inverse(&self) -> Result<RationalFunction> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        // a/b + c/d = (a·(d/g) + c·(b/g)) / (b·(d/g)) with g = gcd(b, d)
        let g = gcd(&self.den, &rhs.den);
        let db = self.den.div_exact(&g).unwrap();
        let dd = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &dd) + &(&rhs.num * &db);
        let den = &self.den * &dd;
        let (num, den) = reduce_fraction(&num, &den);
        RationalFunction { num, den }
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        // cross-reduce before multiplying to keep intermediates small
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let (num, den) = reduce_fraction(&(&n1 * &n2), &(&d1 * &d2));
        RationalFunction { num, den }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.as_polynomial() {
            write!(f, "{p}")
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, LinearForm};

    fn p(nvars: usize, s: &str) -> Polynomial {
        parse_polynomial(nvars, s).unwrap()
    }

    #[test]
    fn cancels_common_factor() {
        // α_13² / (α_13·α_32) = α_13/α_32
        let a13 = LinearForm::root(3, 1, 3).to_polynomial();
        let a32 = LinearForm::root(3, 3, 2).to_polynomial();
        let r = RationalFunction::new(&a13 * &a13, &a13 * &a32).unwrap();
        // equal to α_13/α_32 in canonical (sign-normalized) form
        assert_eq!(r, RationalFunction::new(a13, a32.clone()).unwrap());
        assert_eq!(r.denominator(), &-&a32);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            RationalFunction::new(p(2, "t1"), p(2, "0")),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn polynomial_embedding() {
        let r = RationalFunction::new(p(2, "t1 + t2"), p(2, "1")).unwrap();
        assert_eq!(r.as_polynomial().unwrap(), &p(2, "t1 + t2"));
        let z = RationalFunction::new(p(2, "0"), p(2, "t1")).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.as_polynomial().unwrap(), &p(2, "0"));
    }

    #[test]
    fn denominator_sign_normalized() {
        let r = RationalFunction::new(p(2, "t2"), p(2, "-t1 + t2")).unwrap();
        assert_eq!(r.denominator(), &p(2, "t1 - t2"));
        assert_eq!(r.numerator(), &p(2, "-t2"));
    }

    #[test]
    fn arithmetic_reduces() {
        // 1/(x-y) + 1/(y-x) = 0
        let one = p(2, "1");
        let a = RationalFunction::new(one.clone(), p(2, "t1 - t2")).unwrap();
        let b = RationalFunction::new(one, p(2, "t2 - t1")).unwrap();
        assert!((&a + &b).is_zero());
        // (x/y)·(y/x) = 1
        let c = RationalFunction::new(p(2, "t1"), p(2, "t2")).unwrap();
        let d = RationalFunction::new(p(2, "t2"), p(2, "t1")).unwrap();
        assert_eq!(&c * &d, RationalFunction::from_polynomial(p(2, "1")));
    }

    #[test]
    fn integer_content_not_a_unit() {
        // t1/2 stays a genuine fraction
        let r = RationalFunction::new(p(2, "t1"), p(2, "2")).unwrap();
        assert!(r.as_polynomial().is_none());
    }
}
