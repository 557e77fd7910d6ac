//! Exact sums of roots of unity over free Frobenius orbits of characters.

use super::basics::moebius;
use super::QPoly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Cyclotomic polynomial `Phi_m` with integer coefficients, lowest degree first.
pub fn cyclotomic_poly(m: u64) -> Vec<BigInt> {
    // Phi_m = prod_{d | m} (x^d - 1)^mu(m/d)
    let mut num = QPoly::one();
    let mut den = QPoly::one();
    for d in 1..=m {
        if m % d != 0 {
            continue;
        }
        let f = QPoly::monomial(1, d as i64) - QPoly::one();
        match moebius(m / d) {
            1 => num = &num * &f,
            -1 => den = &den * &f,
            _ => {}
        }
    }
    let phi = num.div_exact(&den).expect("cyclotomic quotient is exact");
    (0..=phi.degree().unwrap_or(0)).map(|e| phi.coeff(e)).collect()
}

/// Remainder of `a` modulo a monic integer polynomial.
fn rem_monic(a: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let top = r.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let off = r.len() - dm;
        for (j, c) in m[..dm].iter().enumerate() {
            r[off + j] -= &top * c;
        }
    }
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    r
}

/// For `beta` of order `d` in `F_{q^s}^x`, sums `sum_j phi(beta^(q^j))` over one
/// representative `phi` of each free Frobenius orbit of characters of
/// `F_{q^s}^x`. Equivalently the sum of `zeta^(a b)` over all characters
/// `a in Z/M` with orbit size exactly `s` under multiplication by `q`, where
/// `M = q^s - 1`, `zeta = exp(2 pi i / M)` and `beta = gamma^b` with `b = M/d`.
/// The value is reduced in `Z[x]/Phi_M(x)` and must come out constant.
pub fn cyclotomic_orbit_sum(q: u64, s: u32, d: u64) -> Result<BigInt> {
    if q < 2 || s == 0 {
        return Err(Error::Invalid(format!("need q >= 2 and s >= 1, got q={q}, s={s}")));
    }
    let big_m = q.checked_pow(s).ok_or_else(|| Error::Invalid("q^s overflows".into()))? - 1;
    if d == 0 || big_m % d != 0 {
        return Err(Error::Invalid(format!("order {d} does not divide q^s - 1 = {big_m}")));
    }
    let b = big_m / d;
    let proper: Vec<u64> = (1..s as u64).filter(|t| s as u64 % t == 0).map(|t| q.pow(t as u32) - 1).collect();
    let mut counts = vec![BigInt::zero(); big_m as usize];
    for a in 0..big_m {
        let free = proper
            .iter()
            .all(|&qt| (a as u128 * qt as u128) % big_m as u128 != 0);
        if free {
            let e = (a as u128 * b as u128 % big_m as u128) as usize;
            counts[e] += BigInt::one();
        }
    }
    root_sum(&counts).map_err(|r| {
        Error::Internal(format!("orbit sum for (q={q}, s={s}, d={d}) is not an integer: {r:?}"))
    })
}

/// `sum_e counts[e] zeta^e` for `zeta` a primitive `M`-th root of unity,
/// `M = counts.len()`, reduced in `Z[x]/Phi_M`. Returns the reduced
/// coefficients as the error when the value is not an integer.
pub fn root_sum(counts: &[BigInt]) -> std::result::Result<BigInt, Vec<BigInt>> {
    if counts.is_empty() {
        return Ok(BigInt::zero());
    }
    let reduced = rem_monic(counts, &cyclotomic_poly(counts.len() as u64));
    match reduced.len() {
        0 => Ok(BigInt::zero()),
        1 => Ok(reduced[0].clone()),
        _ => Err(reduced),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small() {
        let v = |c: &[i64]| c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(cyclotomic_poly(1), v(&[-1, 1]));
        assert_eq!(cyclotomic_poly(4), v(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(15), v(&[1, -1, 0, 1, -1, 1, 0, -1, 1]));
    }

    #[test]
    fn root_sums() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(root_sum(&b(&[1, 1, 1, 1])).unwrap(), BigInt::from(0));
        assert_eq!(root_sum(&b(&[2, 0, 0])).unwrap(), BigInt::from(2));
        assert_eq!(root_sum(&b(&[0, 1, 1, 1, 1])).unwrap(), BigInt::from(-1));
        assert!(root_sum(&b(&[0, 1, 0, 0, 1])).is_err());
        assert!(root_sum(&b(&[0, 1, 0])).is_err());
    }

    #[test]
    fn worked_examples() {
        assert_eq!(cyclotomic_orbit_sum(2, 4, 15).unwrap(), BigInt::from(0));
        assert_eq!(cyclotomic_orbit_sum(2, 4, 5).unwrap(), BigInt::from(-3));
        assert_eq!(cyclotomic_orbit_sum(3, 2, 8).unwrap(), BigInt::from(0));
        assert!(cyclotomic_orbit_sum(2, 4, 7).is_err());
    }

    #[test]
    fn generator_sums_follow_moebius_at_two() {
        // For beta a generator and q = 2 the sum is mu(s).
        for s in 1..=8u32 {
            let m = 2u64.pow(s) - 1;
            assert_eq!(cyclotomic_orbit_sum(2, s, m).unwrap(), BigInt::from(moebius(s as u64)), "s={s}");
        }
    }
}
