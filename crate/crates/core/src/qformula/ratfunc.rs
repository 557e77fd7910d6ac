//! Rational functions in q as numerator/denominator pairs.

use super::QPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    pub fn new(num: QPoly, den: QPoly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        RatFunc { num, den }
    }

    pub fn from_poly(p: QPoly) -> RatFunc {
        RatFunc {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn from_int(c: impl Into<BigInt>) -> RatFunc {
        RatFunc::from_poly(QPoly::constant(c))
    }

    pub fn from_rational(r: &BigRational) -> RatFunc {
        RatFunc::new(QPoly::constant(r.numer().clone()), QPoly::constant(r.denom().clone()))
    }

    pub fn zero() -> RatFunc {
        RatFunc::from_poly(QPoly::zero())
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(QPoly::one())
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancels the gcd and normalizes the denominator to a positive leading
    /// coefficient with constant term at degree 0.
    pub fn reduced(&self) -> RatFunc {
        if self.num.is_zero() {
            return RatFunc::zero();
        }
        let g = self.num.gcd(&self.den);
        let mut num = self.num.div_exact(&g).expect("gcd divides");
        let mut den = self.den.div_exact(&g).expect("gcd divides");
        let shift = den.low();
        num = num.shift(-shift);
        den = den.shift(-shift);
        if den.leading().is_negative() {
            num = -num;
            den = -den;
        }
        RatFunc { num, den }
    }

    /// The polynomial value when the denominator divides the numerator.
    pub fn to_poly(&self) -> Option<QPoly> {
        self.num.div_exact(&self.den)
    }

    pub fn recip(&self) -> RatFunc {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn eval(&self, q: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(q);
        (!d.is_zero()).then(|| self.num.eval(q) / d)
    }

    pub fn pow(&self, e: u64) -> RatFunc {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFunc {}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::new(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::new(-&self.num, self.den.clone())
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl From<QPoly> for RatFunc {
    fn from(p: QPoly) -> RatFunc {
        RatFunc::from_poly(p)
    }
}

impl std::fmt::Display for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == QPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_cancels_common_factor() {
        let a = QPoly::from_i64s(&[1, 1]);
        let b = QPoly::from_i64s(&[2, 0, 1]);
        let c = QPoly::from_i64s(&[-3, 5]);
        let r = RatFunc::new(&a * &c, &(&b * &c) * &QPoly::monomial(-2, 3)).reduced();
        assert_eq!(r.den().leading(), BigInt::from(2));
        assert_eq!(r, RatFunc::new(-&a, b.shift(3).scale(&BigInt::from(2))));
        assert_eq!(r.den().degree(), Some(2));
    }

    #[test]
    fn field_operations() {
        let x = RatFunc::new(QPoly::from_i64s(&[1, 2]), QPoly::from_i64s(&[3, 0, 1]));
        let y = RatFunc::new(QPoly::from_i64s(&[0, 1]), QPoly::from_i64s(&[1, -1]));
        assert_eq!(&(&x + &y) - &y, x);
        assert_eq!(&(&x * &y) * &y.recip(), x);
        assert_eq!((&x - &x).reduced(), RatFunc::zero());
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(
            x.eval(&half).unwrap(),
            BigRational::new(2.into(), 1.into()) / BigRational::new(13.into(), 4.into())
        );
    }
}
