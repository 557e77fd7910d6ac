//! q-integers, q-factorials, Gaussian binomials and q-Pochhammer symbols.

use super::QPoly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn q_int(n: u64) -> QPoly {
    QPoly::new(0, vec![BigInt::one(); n as usize])
}

/// `[n]!_q = [1]_q [2]_q ... [n]_q`.
pub fn q_fact(n: u64) -> QPoly {
    (1..=n).map(q_int).product()
}

/// Gaussian binomial `[n]!_q / ([k]!_q [n-k]!_q)`, by exact division.
pub fn q_binom(n: u64, k: u64) -> Result<QPoly> {
    if k > n {
        return Err(Error::Invalid(format!("q_binom needs k <= n, got n={n}, k={k}")));
    }
    // cancel the larger factorial first to keep intermediate degrees small
    let (a, b) = if k > n - k { (k, n - k) } else { (n - k, k) };
    let num: QPoly = (a + 1..=n).map(q_int).product();
    num.div_exact(&q_fact(b))
        .ok_or_else(|| Error::Internal(format!("[{b}]! does not divide the numerator")))
}

/// Gaussian binomial that is zero outside `0 <= k <= n`, for formula sums.
pub(crate) fn q_binom_or_zero(n: i64, k: i64) -> QPoly {
    if n < 0 || k < 0 || k > n {
        QPoly::zero()
    } else {
        q_binom(n as u64, k as u64).expect("k <= n")
    }
}

/// `(x; b)_n = (1 - x)(1 - x b) ... (1 - x b^(n-1))`.
pub fn pochhammer(x: &QPoly, base: &QPoly, n: u64) -> QPoly {
    let mut acc = QPoly::one();
    let mut term = x.clone();
    for _ in 0..n {
        acc = &acc * &(QPoly::one() - &term);
        term = &term * base;
    }
    acc
}

/// `(q; q)_n = (1 - q)(1 - q^2) ... (1 - q^n)`.
pub fn qq(n: u64) -> QPoly {
    pochhammer(&QPoly::q(), &QPoly::q(), n)
}

/// `|GL_n(F_q)| = q^(n choose 2) prod_{i=1}^n (q^i - 1)` as a polynomial in q.
pub fn gl_order_poly(n: u64) -> QPoly {
    (1..=n)
        .map(|i| QPoly::monomial(1, i as i64) - QPoly::one())
        .product::<QPoly>()
        .shift(choose2(n) as i64)
}

pub(crate) fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Ordinary binomial coefficient, zero outside `0 <= k <= n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Moebius function.
pub fn moebius(mut n: u64) -> i64 {
    let mut res = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            res = -res;
        }
        p += 1;
    }
    if n > 1 {
        res = -res;
    }
    res
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Pascal recurrence `[n,k] = [n-1,k-1] + q^k [n-1,k]`.
    fn pascal(n: u64, k: u64) -> QPoly {
        if k == 0 || k == n {
            return QPoly::one();
        }
        pascal(n - 1, k - 1) + pascal(n - 1, k).shift(k as i64)
    }

    #[test]
    fn q_binom_four_two() {
        assert_eq!(q_binom(4, 2).unwrap(), QPoly::from_i64s(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binom(7, 0).unwrap(), QPoly::one());
        assert!(q_binom(2, 3).is_err());
    }

    #[test]
    fn q_int_at_one() {
        for n in 0..10 {
            assert_eq!(q_int(n).at_one(), BigInt::from(n));
        }
    }

    #[test]
    fn gl_order_matches_group_count() {
        assert_eq!(gl_order_poly(4).eval_u64(2), Some(20160));
        assert_eq!(gl_order_poly(3).eval_u64(3), Some(11232));
        // |GL_n| = (-1)^n q^(n choose 2) (q;q)_n
        for n in 1..7 {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(gl_order_poly(n), qq(n).shift(choose2(n) as i64).scale(&BigInt::from(sign)));
        }
    }

    #[test]
    fn moebius_values() {
        let expect = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1];
        for (i, &e) in expect.iter().enumerate() {
            assert_eq!(moebius(i as u64 + 1), e);
        }
    }

    proptest! {
        #[test]
        fn q_binom_matches_pascal_and_is_symmetric(n in 0u64..14, k in 0u64..14) {
            prop_assume!(k <= n);
            let b = q_binom(n, k).unwrap();
            prop_assert_eq!(&b, &pascal(n, k));
            prop_assert_eq!(&b, &q_binom(n, n - k).unwrap());
            prop_assert_eq!(b.at_one(), binom(n as i64, k as i64));
        }
    }
}
