//! Laurent polynomials in q with arbitrary-precision integer coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `sum_i coeffs[i] q^(low + i)`. Normalized: no zero coefficient at either
/// end, and the zero polynomial has `low = 0` and no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn new(low: i64, mut coeffs: Vec<BigInt>) -> QPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return QPoly::zero();
        }
        coeffs.drain(..lead);
        QPoly {
            low: low + lead as i64,
            coeffs,
        }
    }

    /// Ordinary polynomial from small coefficients, lowest degree first.
    pub fn from_i64s(coeffs: &[i64]) -> QPoly {
        QPoly::new(0, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> QPoly {
        QPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> QPoly {
        QPoly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> QPoly {
        QPoly::new(0, vec![c.into()])
    }

    /// `c q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> QPoly {
        QPoly::new(e, vec![c.into()])
    }

    /// The variable q.
    pub fn q() -> QPoly {
        QPoly::monomial(1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.low + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        let i = e - self.low;
        if i < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_polynomial(&self) -> bool {
        self.low >= 0
    }

    /// Constant value if the polynomial has degree 0.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.degree() {
            None => Some(BigInt::zero()),
            Some(0) if self.low == 0 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> QPoly {
        QPoly::new(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: u64) -> QPoly {
        let mut acc = QPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitution `q -> q^s` for `s >= 1`.
    pub fn subs_power(&self, s: i64) -> QPoly {
        assert!(s >= 1);
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigInt::zero(); (self.coeffs.len() - 1) * s as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * s as usize] = c.clone();
        }
        QPoly::new(self.low * s, out)
    }

    pub fn eval(&self, q: &BigRational) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + BigRational::from_integer(c.clone());
        }
        let base = if self.low >= 0 {
            q.pow(self.low as i32)
        } else {
            q.recip().pow((-self.low) as i32)
        };
        acc * base
    }

    /// Value at an integer, `None` when negative powers leave a non-integer.
    pub fn eval_int(&self, q: &BigInt) -> Option<BigInt> {
        let v = self.eval(&BigRational::from_integer(q.clone()));
        v.is_integer().then(|| v.to_integer())
    }

    pub fn eval_i64(&self, q: i64) -> Option<BigInt> {
        self.eval_int(&BigInt::from(q))
    }

    pub fn eval_u64(&self, q: u64) -> Option<u64> {
        self.eval_int(&BigInt::from(q))?.to_u64()
    }

    /// Value at q = 1.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Exact quotient, `None` when `d` does not divide `self` in `Z[q, 1/q]`.
    pub fn div_exact(&self, d: &QPoly) -> Option<QPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(QPoly::zero());
        }
        let dl = d.coeffs.len();
        let mut r = self.coeffs.clone();
        if r.len() < dl {
            return None;
        }
        let dlead = d.coeffs.last().expect("nonzero");
        let mut quot = vec![BigInt::zero(); r.len() - dl + 1];
        for i in (0..quot.len()).rev() {
            let top = &r[i + dl - 1];
            if top.is_zero() {
                continue;
            }
            let (qc, rem) = top.div_rem(dlead);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] -= &qc * dc;
            }
            quot[i] = qc;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(QPoly::new(self.low - d.low, quot))
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        QPoly::new(self.low, self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Greatest common divisor in `Z[q]` up to units `+-q^k`, normalized with
    /// positive leading coefficient and nonzero constant term.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        if self.is_zero() {
            return other.shift(-other.low).primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.shift(-self.low).primitive_part().scale(&self.content());
        }
        let content = self.content().gcd(&other.content());
        let mut a = self.shift(-self.low).primitive_part();
        let mut b = other.shift(-other.low).primitive_part();
        if a.coeffs.len() < b.coeffs.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
            if !b.is_zero() {
                b = b.shift(-b.low);
            }
        }
        a.primitive_part().scale(&content)
    }

    /// Pseudo-remainder of ordinary polynomials.
    fn pseudo_rem(&self, d: &QPoly) -> QPoly {
        let dl = d.coeffs.len();
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        while r.len() >= dl && !r.is_empty() {
            let top = r.last().cloned().expect("nonempty");
            let off = r.len() - dl;
            for x in r.iter_mut() {
                *x *= &lead;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[off + j] -= &top * dc;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        QPoly::new(0, r)
    }

    /// Coefficient array of decimal strings when `low = 0`, otherwise an object
    /// with the minimum exponent.
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|c| serde_json::Value::String(c.to_string()))
            .collect();
        if self.low == 0 {
            serde_json::Value::Array(coeffs)
        } else {
            serde_json::json!({ "min_exponent": self.low, "coeffs": coeffs })
        }
    }
}

impl serde::Serialize for QPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.low + i as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_mag = !mag.is_one() || e == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

fn add_impl(a: &QPoly, b: &QPoly, negate_b: bool) -> QPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let low = a.low.min(b.low);
    let high = a.degree().unwrap().max(b.degree().unwrap());
    let mut out = vec![BigInt::zero(); (high - low + 1) as usize];
    for (i, c) in a.coeffs.iter().enumerate() {
        out[(a.low - low) as usize + i] += c;
    }
    for (i, c) in b.coeffs.iter().enumerate() {
        let slot = &mut out[(b.low - low) as usize + i];
        if negate_b {
            *slot -= c;
        } else {
            *slot += c;
        }
    }
    QPoly::new(low, out)
}

fn mul_impl(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_zero() || b.is_zero() {
        return QPoly::zero();
    }
    let mut out = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    QPoly::new(a.low + b.low, out)
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&QPoly> for &QPoly {
            type Output = QPoly;
            fn $m(self, rhs: &QPoly) -> QPoly {
                $body(self, rhs)
            }
        }
        impl $tr<QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                $body(&self, &rhs)
            }
        }
        impl $tr<&QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: &QPoly) -> QPoly {
                $body(&self, rhs)
            }
        }
        impl $tr<QPoly> for &QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| add_impl(a, b, false));
binop!(Sub, sub, |a, b| add_impl(a, b, true));
binop!(Mul, mul, mul_impl);

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for QPoly {
    fn product<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::one(), |a, b| a * b)
    }
}
