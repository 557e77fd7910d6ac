//! Classical symmetric-group counts and the q -> 1 limits of the GL_n counts.

use super::basics::binom;
use super::tq::{tq_checked, tq_nlm_checked};
use super::QPoly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

/// Number of ordered factorizations of an n-cycle in S_n into `l` transpositions:
/// `(n^l / n!) sum_k (-1)^k C(n-1, k) ((n-1)/2 - k)^l`.
pub fn classical_t(n: u64, l: u64) -> BigInt {
    assert!(n >= 1, "classical_t needs n >= 1");
    let mut sum = BigRational::zero();
    for k in 0..n {
        let base = BigRational::new(BigInt::from(n as i64 - 1 - 2 * k as i64), BigInt::from(2));
        let mut term = base.pow(l as i32) * BigRational::from_integer(binom(n as i64 - 1, k as i64));
        if k % 2 == 1 {
            term = -term;
        }
        sum += term;
    }
    let nfact: BigInt = (1..=n).map(BigInt::from).product();
    let value = sum * BigRational::new(BigInt::from(n).pow(l as u32), nfact);
    assert!(value.is_integer(), "classical count is an integer");
    value.to_integer()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Q1Limit {
    #[serde(with = "crate::util::decimal")]
    pub computed: BigInt,
    #[serde(with = "crate::util::decimal")]
    pub closed_form: BigInt,
}

impl Q1Limit {
    pub fn pass(&self) -> bool {
        self.computed == self.closed_form
    }
}

/// Without `m`: `lim_{q->1} t_q(n,l) / (1-q)^(n-1)` against `(-n)^(l-1) C(l, n)`.
/// With `m`: `t_q(n,l,m)` at q = 1 against `n^(l-1) C(l-m-1, l-n)`.
pub fn q1_limits(n: u64, l: u64, m: Option<u64>) -> Result<Q1Limit> {
    if n < 2 {
        return Err(Error::Invalid(format!("q -> 1 limits need n >= 2, got n={n}")));
    }
    match m {
        None => {
            let t = tq_checked(n, l)?;
            let d = QPoly::from_i64s(&[1, -1]).pow(n - 1);
            let reduced = t
                .div_exact(&d)
                .ok_or_else(|| Error::Internal(format!("(1-q)^{} does not divide t_q({n},{l})", n - 1)))?;
            let closed = if l == 0 {
                BigInt::zero()
            } else {
                let base = BigInt::from(-(n as i64)).pow(l as u32 - 1);
                base * binom(l as i64, n as i64)
            };
            Ok(Q1Limit {
                computed: reduced.at_one(),
                closed_form: closed,
            })
        }
        Some(m) => {
            let t = tq_nlm_checked(n, l, m)?;
            let closed = BigInt::from(n).pow(l as u32 - 1) * binom(l as i64 - m as i64 - 1, l as i64 - n as i64);
            Ok(Q1Limit {
                computed: t.at_one(),
                closed_form: closed,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force over transposition tuples in S_n multiplying to the n-cycle (0 1 ... n-1).
    fn brute(n: usize, l: usize) -> u64 {
        let transpositions: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let target: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        fn rec(perm: &mut Vec<usize>, depth: usize, ts: &[(usize, usize)], target: &[usize]) -> u64 {
            if depth == 0 {
                return (perm.as_slice() == target) as u64;
            }
            let mut total = 0;
            for &(a, b) in ts {
                // right-multiply by (a b): swap the images of a and b
                perm.swap(a, b);
                total += rec(perm, depth - 1, ts, target);
                perm.swap(a, b);
            }
            total
        }
        let mut id: Vec<usize> = (0..n).collect();
        rec(&mut id, l, &transpositions, &target)
    }

    #[test]
    fn cayley_counts() {
        for n in 1..=6u64 {
            let expect = if n == 1 { BigInt::from(1) } else { BigInt::from(n).pow(n as u32 - 2) };
            assert_eq!(classical_t(n, n - 1), expect);
        }
        assert_eq!(classical_t(3, 2), BigInt::from(3));
        assert_eq!(classical_t(4, 3), BigInt::from(16));
        assert_eq!(classical_t(3, 4), BigInt::from(27));
    }

    #[test]
    fn matches_symmetric_group_brute_force() {
        for n in 2..=4usize {
            for l in 0..=6usize {
                assert_eq!(classical_t(n as u64, l as u64), BigInt::from(brute(n, l)), "n={n} l={l}");
            }
        }
    }

    #[test]
    fn limits_examples() {
        assert_eq!(q1_limits(2, 3, None).unwrap().computed, BigInt::from(12));
        assert_eq!(q1_limits(3, 3, None).unwrap().computed, BigInt::from(9));
        for n in 2..=5 {
            for m in 0..n {
                let r = q1_limits(n, n, Some(m)).unwrap();
                assert_eq!(r.computed, BigInt::from(n).pow(n as u32 - 1));
                assert!(r.pass());
            }
        }
    }
}
