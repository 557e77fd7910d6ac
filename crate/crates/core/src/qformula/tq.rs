//! Closed forms for `t_q(n, l)` and `t_q(n, l, m)`, the numbers of ordered
//! factorizations of a Singer cycle in GL_n(F_q) into `l` reflections (with
//! `m` transvections in a fixed determinant sequence for the refined count).

use super::basics::{binom, choose2, q_binom, q_binom_or_zero, q_fact, q_int, qq};
use super::{QLaurent, QPoly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TqRoute {
    /// Alternating sum over `k` with `(1 + q^(n-k-1) - q^(n-k))^l`.
    Sum,
    /// Iterated q-difference of `1/x - (1 + x(1-q))^l / x`.
    Difference,
    /// `[n]^(l-1)` times a binomial sum.
    Binomial,
}

impl TqRoute {
    pub const ALL: [TqRoute; 3] = [TqRoute::Sum, TqRoute::Difference, TqRoute::Binomial];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NlmRoute {
    Binomial,
    Difference,
}

impl NlmRoute {
    pub const ALL: [NlmRoute; 2] = [NlmRoute::Binomial, NlmRoute::Difference];
}

fn sign(e: u64) -> BigInt {
    if e % 2 == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

fn one_minus_q() -> QPoly {
    QPoly::from_i64s(&[1, -1])
}

fn exact(num: &QPoly, den: &QPoly, what: &str) -> Result<QPoly> {
    num.div_exact(den)
        .ok_or_else(|| Error::Internal(format!("{what}: inexact division")))
}

pub fn tq(n: u64, l: u64, route: TqRoute) -> Result<QPoly> {
    if n < 2 {
        return Err(Error::Invalid(format!("t_q(n, l) needs n >= 2, got n={n}")));
    }
    let qn = q_int(n);
    let neg_qn_pow = (-&qn).pow(l);
    match route {
        TqRoute::Sum => {
            let mut bracket = qq(n - 1).scale(&sign(n - 1));
            for k in 0..n {
                let base = QPoly::one() + QPoly::monomial(1, (n - k - 1) as i64) - QPoly::monomial(1, (n - k) as i64);
                let term = (&q_binom(n - 1, k)? * &base.pow(l))
                    .shift(choose2(k + 1) as i64)
                    .scale(&sign(k + n));
                bracket = bracket + term;
            }
            let den = qq(n).shift(choose2(n) as i64);
            exact(&(&neg_qn_pow * &bracket), &den, "sum route")
        }
        TqRoute::Difference => {
            let inv_x = QLaurent::monomial(QPoly::one(), -1);
            let lin = &QLaurent::one() + &QLaurent::x().scale(&one_minus_q());
            let f = &inv_x - &(&lin.pow(l) * &inv_x);
            let d = f.delta_q(n - 1).at_x_one();
            let den = &one_minus_q() * &q_fact(n);
            exact(&(&neg_qn_pow * &d), &den, "difference route")
        }
        TqRoute::Binomial => {
            if l < n {
                return Ok(QPoly::zero());
            }
            let qm1 = QPoly::from_i64s(&[-1, 1]);
            let sum: QPoly = (0..=(l - n))
                .map(|i| {
                    (&qm1.pow(l - i - 1) * &q_binom_or_zero((l - i - 1) as i64, (n - 1) as i64))
                        .scale(&(sign(i) * binom(l as i64, i as i64)))
                })
                .sum();
            Ok(&qn.pow(l - 1) * &sum)
        }
    }
}

/// All three routes, failing with a mismatch error unless they coincide.
pub fn tq_checked(n: u64, l: u64) -> Result<QPoly> {
    let values = TqRoute::ALL
        .iter()
        .map(|&r| tq(n, l, r))
        .collect::<Result<Vec<_>>>()?;
    if values.iter().any(|v| v != &values[0]) {
        return Err(Error::RouteMismatch(format!(
            "t_q({n},{l}): sum={}, difference={}, binomial={}",
            values[0], values[1], values[2]
        )));
    }
    Ok(values.into_iter().next().expect("three routes"))
}

pub fn tq_nlm(n: u64, l: u64, m: u64, route: NlmRoute) -> Result<QPoly> {
    if n < 2 {
        return Err(Error::Invalid(format!("t_q(n, l, m) needs n >= 2, got n={n}")));
    }
    if m >= l {
        return Err(Error::Invalid(format!(
            "t_q(n, l, m) needs m <= l - 1: a Singer cycle has determinant != 1 when q > 2, \
             so some factor is not a transvection (got l={l}, m={m})"
        )));
    }
    let qn = q_int(n);
    match route {
        NlmRoute::Binomial => {
            if l < n {
                return Ok(QPoly::zero());
            }
            let top = m.min(l - n);
            let sum: QPoly = (0..=top)
                .map(|i| {
                    q_binom_or_zero((l - i - 1) as i64, (n - 1) as i64)
                        .scale(&(sign(i) * binom(m as i64, i as i64)))
                })
                .sum();
            Ok(&qn.pow(l - 1) * &sum)
        }
        NlmRoute::Difference => {
            let x_minus_1 = &QLaurent::x() - &QLaurent::one();
            let f = &x_minus_1.pow(m) * &QLaurent::monomial(QPoly::one(), (l - m - 1) as i64);
            let d = f.delta_q(n - 1).at_x_one();
            exact(&(&qn.pow(l) * &d), &q_fact(n), "difference route")
        }
    }
}

pub fn tq_nlm_checked(n: u64, l: u64, m: u64) -> Result<QPoly> {
    let a = tq_nlm(n, l, m, NlmRoute::Binomial)?;
    let b = tq_nlm(n, l, m, NlmRoute::Difference)?;
    if a != b {
        return Err(Error::RouteMismatch(format!(
            "t_q({n},{l},{m}): binomial={a}, difference={b}"
        )));
    }
    Ok(a)
}

/// `t_q(n, l) = sum_m t_q(n, l, m) C(l, m) ((q-2)^(l-m) - (-1)^(l-m)) / (q-1)`;
/// the inner factor counts determinant sequences with `m` ones and product
/// `det c != 1`.
pub fn aggregate_identity(n: u64, l: u64) -> Result<bool> {
    let qm1 = QPoly::from_i64s(&[-1, 1]);
    let qm2 = QPoly::from_i64s(&[-2, 1]);
    let mut total = QPoly::zero();
    for m in 0..l {
        let e = l - m;
        let seq = exact(&(qm2.pow(e) - QPoly::constant(sign(e))), &qm1, "sequence count")?;
        total = total + (&tq_nlm_checked(n, l, m)? * &seq).scale(&binom(l as i64, m as i64));
    }
    Ok(total == tq_checked(n, l)?)
}

/// The expression obtained from the character sum when q = 2, as a rational
/// function with denominator `|GL_n|`:
/// `(-(-[n])^l (q;q)_(n-1) + sum_k q^C(k+1,2) [n-1,k]_q (-1)^k [n]^l (q^(n-k) - q^(n-k-1) - 1)^l) / |GL_n|`.
pub fn q2_closed_form(n: u64, l: u64) -> Result<super::RatFunc> {
    if n < 2 {
        return Err(Error::Invalid(format!("needs n >= 2, got n={n}")));
    }
    let qn = q_int(n);
    let mut num = -(&(-&qn).pow(l) * &qq(n - 1));
    for k in 0..n {
        let base = QPoly::monomial(1, (n - k) as i64) - QPoly::monomial(1, (n - k - 1) as i64) - QPoly::one();
        num = num
            + (&(&q_binom(n - 1, k)? * &qn.pow(l)) * &base.pow(l))
                .shift(choose2(k + 1) as i64)
                .scale(&sign(k));
    }
    Ok(super::RatFunc::new(num, super::basics::gl_order_poly(n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortest_factorizations() {
        for n in 2..=6u64 {
            let expect = (QPoly::monomial(1, n as i64) - QPoly::one()).pow(n - 1);
            for r in TqRoute::ALL {
                assert_eq!(tq(n, n, r).unwrap(), expect, "n={n} {r:?}");
            }
            for m in 0..n {
                for r in NlmRoute::ALL {
                    assert_eq!(tq_nlm(n, n, m, r).unwrap(), q_int(n).pow(n - 1));
                }
            }
        }
    }

    #[test]
    fn below_length_n_is_zero() {
        for n in 2..=5u64 {
            for l in 0..n {
                for r in TqRoute::ALL {
                    assert!(tq(n, l, r).unwrap().is_zero(), "n={n} l={l} {r:?}");
                }
            }
        }
    }

    #[test]
    fn three_four_at_two() {
        // hand evaluation of the binomial route: [3]_2^3 (C(4,0) 1 [3,2]_2 - C(4,1) [2,2]_2) = 343 (7 - 4)
        assert_eq!(tq_checked(3, 4).unwrap().eval_u64(2), Some(1029));
    }

    #[test]
    fn hypotheses_are_enforced() {
        assert!(tq(1, 1, TqRoute::Sum).is_err());
        assert!(tq_nlm(3, 3, 3, NlmRoute::Binomial).is_err());
    }

    #[test]
    fn aggregate_small() {
        assert!(aggregate_identity(2, 2).unwrap());
        assert!(aggregate_identity(3, 5).unwrap());
        assert!(aggregate_identity(4, 2).unwrap());
    }

    #[test]
    fn q2_form_is_polynomial_identity() {
        for n in 2..=5 {
            for l in 0..=8 {
                let r = q2_closed_form(n, l).unwrap();
                assert_eq!(r, super::super::RatFunc::from_poly(tq(n, l, TqRoute::Sum).unwrap()));
            }
        }
    }
}
