//! Laurent polynomials in x with Laurent-polynomial-in-q coefficients, and the
//! q-difference operator `D_q f(x) = (f(x) - f(qx)) / (x - qx)`.

use super::basics::{choose2, q_binom};
use super::QPoly;
use num_bigint::BigInt;
use std::ops::{Add, Mul, Neg, Sub};

/// `sum_i coeffs[i] x^(low + i)`, normalized like [`QPoly`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QLaurent {
    low: i64,
    coeffs: Vec<QPoly>,
}

impl QLaurent {
    pub fn new(low: i64, mut coeffs: Vec<QPoly>) -> QLaurent {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return QLaurent::zero();
        }
        coeffs.drain(..lead);
        QLaurent {
            low: low + lead as i64,
            coeffs,
        }
    }

    pub fn zero() -> QLaurent {
        QLaurent {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> QLaurent {
        QLaurent::monomial(QPoly::one(), 0)
    }

    /// `c x^e`.
    pub fn monomial(c: QPoly, e: i64) -> QLaurent {
        QLaurent::new(e, vec![c])
    }

    /// The variable x.
    pub fn x() -> QLaurent {
        QLaurent::monomial(QPoly::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn coeffs(&self) -> &[QPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> QPoly {
        let i = e - self.low;
        if i < 0 {
            return QPoly::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_default()
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> QLaurent {
        QLaurent::new(self.low + k, self.coeffs.clone())
    }

    pub fn scale(&self, c: &QPoly) -> QLaurent {
        QLaurent::new(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: u64) -> QLaurent {
        let mut acc = QLaurent::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitution `x -> q^j x`: the coefficient of `x^A` gains `q^(jA)`.
    pub fn subs_qx(&self, j: i64) -> QLaurent {
        QLaurent::new(
            self.low,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.shift(j * (self.low + i as i64)))
                .collect(),
        )
    }

    /// Value at x = 1.
    pub fn at_x_one(&self) -> QPoly {
        self.coeffs.iter().cloned().sum()
    }

    /// Coefficient-wise exact division by a polynomial in q.
    pub fn div_exact_q(&self, d: &QPoly) -> Option<QLaurent> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.div_exact(d))
            .collect::<Option<Vec<_>>>()?;
        Some(QLaurent::new(self.low, coeffs))
    }

    /// One application of the q-difference operator, computed literally:
    /// `f(x) - f(qx)` divided exactly by `1 - q`, then by `x`.
    pub fn delta_q_once(&self) -> QLaurent {
        let diff = self - &self.subs_qx(1);
        let one_minus_q = QPoly::from_i64s(&[1, -1]);
        diff.div_exact_q(&one_minus_q)
            .expect("1 - q divides 1 - q^A termwise")
            .shift(-1)
    }

    /// `times`-fold iterate by repeated single steps.
    pub fn delta_q(&self, times: u64) -> QLaurent {
        (0..times).fold(self.clone(), |f, _| f.delta_q_once())
    }

    /// `times`-fold iterate via the closed sum
    /// `(q^C(N,2) x^N (1-q)^N)^(-1) sum_k (-1)^(N-k) q^C(k,2) [N,k]_q f(q^(N-k) x)`.
    pub fn delta_q_closed(&self, times: u64) -> QLaurent {
        let big_n = times;
        let mut acc = QLaurent::zero();
        for k in 0..=big_n {
            let sign = if (big_n - k) % 2 == 0 { 1 } else { -1 };
            let c = q_binom(big_n, k)
                .expect("k <= N")
                .shift(choose2(k) as i64)
                .scale(&BigInt::from(sign));
            acc = &acc + &self.subs_qx((big_n - k) as i64).scale(&c);
        }
        let den = QPoly::from_i64s(&[1, -1]).pow(big_n).shift(choose2(big_n) as i64);
        acc.div_exact_q(&den)
            .expect("closed iterate divides exactly")
            .shift(-(big_n as i64))
    }
}

impl Add<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        combine(self, rhs, false)
    }
}

impl Sub<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        combine(self, rhs, true)
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent::new(self.low, self.coeffs.iter().map(|c| -c).collect())
    }
}

fn combine(a: &QLaurent, b: &QLaurent, negate: bool) -> QLaurent {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate { -b } else { b.clone() };
    }
    let low = a.low.min(b.low);
    let high = (a.low + a.coeffs.len() as i64).max(b.low + b.coeffs.len() as i64);
    let mut out = vec![QPoly::zero(); (high - low) as usize];
    for (i, c) in a.coeffs.iter().enumerate() {
        let slot = &mut out[(a.low - low) as usize + i];
        *slot = &*slot + c;
    }
    for (i, c) in b.coeffs.iter().enumerate() {
        let slot = &mut out[(b.low - low) as usize + i];
        *slot = if negate { &*slot - c } else { &*slot + c };
    }
    QLaurent::new(low, out)
}

impl Mul<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        if self.is_zero() || rhs.is_zero() {
            return QLaurent::zero();
        }
        let mut out = vec![QPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        QLaurent::new(self.low + rhs.low, out)
    }
}

/// `(q^(A-N+1); q)_N / (1-q)^N`, the value at x = 1 of the N-fold iterate on `x^A`.
pub fn delta_power_at_one(a: i64, n: u64) -> QPoly {
    let x = QPoly::monomial(1, a - n as i64 + 1);
    let num = super::basics::pochhammer(&x, &QPoly::q(), n);
    num.div_exact(&QPoly::from_i64s(&[1, -1]).pow(n))
        .expect("(1-q)^N divides the Pochhammer product")
}
