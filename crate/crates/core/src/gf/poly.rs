//! Univariate polynomials over a table-backed field.

use super::{prime_factors, FieldTable, FqElem};

/// Coefficients from low to high degree, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqPoly {
    coeffs: Vec<FqElem>,
}

impl FqPoly {
    pub fn new(mut coeffs: Vec<FqElem>) -> FqPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FqPoly { coeffs }
    }

    pub fn zero() -> FqPoly {
        FqPoly { coeffs: Vec::new() }
    }

    pub fn one() -> FqPoly {
        FqPoly {
            coeffs: vec![FqElem::ONE],
        }
    }

    pub fn x() -> FqPoly {
        FqPoly {
            coeffs: vec![FqElem::ZERO, FqElem::ONE],
        }
    }

    /// Monic polynomial `x^d + c_{d-1} x^{d-1} + ... + c_0` from its low coefficients.
    pub fn monic(low: &[FqElem]) -> FqPoly {
        let mut c = low.to_vec();
        c.push(FqElem::ONE);
        FqPoly::new(c)
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or(FqElem::ZERO)
    }

    pub fn leading(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }
}

#[derive(Clone, Copy)]
pub struct PolyRing<'a> {
    field: &'a FieldTable,
}

impl<'a> PolyRing<'a> {
    pub fn new(field: &'a FieldTable) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &'a FieldTable {
        self.field
    }

    pub fn add(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        FqPoly::new(
            (0..n)
                .map(|i| self.field.add(a.coeff(i), b.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        FqPoly::new(
            (0..n)
                .map(|i| self.field.sub(a.coeff(i), b.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, a: &FqPoly, c: FqElem) -> FqPoly {
        FqPoly::new(a.coeffs.iter().map(|&x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        if a.is_zero() || b.is_zero() {
            return FqPoly::zero();
        }
        let mut out = vec![FqElem::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.field.add(out[i + j], self.field.mul(x, y));
            }
        }
        FqPoly::new(out)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, a: &FqPoly, b: &FqPoly) -> (FqPoly, FqPoly) {
        let db = b.degree().expect("division by the zero polynomial");
        let lead_inv = self.field.inv(b.leading()).expect("nonzero leading coefficient");
        let mut r = a.coeffs.clone();
        if r.len() <= db {
            return (FqPoly::zero(), a.clone());
        }
        let mut q = vec![FqElem::ZERO; r.len() - db];
        for i in (db..r.len()).rev() {
            let c = r[i];
            if c.is_zero() {
                continue;
            }
            let f = self.field.mul(c, lead_inv);
            q[i - db] = f;
            for (j, &bj) in b.coeffs.iter().enumerate() {
                let idx = i - db + j;
                r[idx] = self.field.sub(r[idx], self.field.mul(f, bj));
            }
        }
        r.truncate(db);
        (FqPoly::new(q), FqPoly::new(r))
    }

    pub fn rem(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.divrem(a, b).1
    }

    pub fn mulmod(&self, a: &FqPoly, b: &FqPoly, m: &FqPoly) -> FqPoly {
        self.rem(&self.mul(a, b), m)
    }

    pub fn powmod(&self, a: &FqPoly, mut e: u64, m: &FqPoly) -> FqPoly {
        let mut acc = self.rem(&FqPoly::one(), m);
        let mut base = self.rem(a, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(&acc, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = self.mulmod(&base, &base, m);
            }
        }
        acc
    }

    /// Monic greatest common divisor, zero if both inputs are zero.
    pub fn gcd(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.make_monic(&a)
    }

    pub fn make_monic(&self, a: &FqPoly) -> FqPoly {
        if a.is_zero() {
            return a.clone();
        }
        let inv = self.field.inv(a.leading()).expect("nonzero leading coefficient");
        self.scale(a, inv)
    }

    pub fn eval(&self, a: &FqPoly, x: FqElem) -> FqElem {
        a.coeffs
            .iter()
            .rev()
            .fold(FqElem::ZERO, |acc, &c| self.field.add(self.field.mul(acc, x), c))
    }

    /// Rabin-style test: `f` of degree `d` is irreducible iff
    /// `gcd(x^{q^i} - x, f) = 1` for every `1 <= i <= d/2`.
    pub fn is_irreducible(&self, f: &FqPoly) -> bool {
        let d = match f.degree() {
            None | Some(0) => return false,
            Some(d) => d,
        };
        if d == 1 {
            return true;
        }
        let f = self.make_monic(f);
        let q = self.field.q() as u64;
        let x = FqPoly::x();
        let mut h = self.rem(&x, &f);
        for _ in 1..=d / 2 {
            h = self.powmod(&h, q, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// `f` monic of degree `d` is primitive iff `x` has order exactly `q^d - 1` mod `f`.
    pub fn is_primitive(&self, f: &FqPoly) -> bool {
        let d = match f.degree() {
            None | Some(0) => return false,
            Some(d) => d,
        };
        if f.coeff(0).is_zero() {
            return false;
        }
        let q = self.field.q() as u128;
        let m = match q.checked_pow(d as u32) {
            Some(v) if v - 1 <= u64::MAX as u128 => (v - 1) as u64,
            _ => return false,
        };
        let x = FqPoly::x();
        let one = FqPoly::one();
        if self.powmod(&x, m, f) != one {
            return false;
        }
        prime_factors(m)
            .into_iter()
            .all(|r| self.powmod(&x, m / r, f) != one)
    }

    /// The `idx`-th monic polynomial of degree `d`, reading `idx` in base `q` as
    /// `(c_0, ..., c_{d-1})` with `c_0` least significant.
    pub fn monic_by_index(&self, d: usize, mut idx: u64) -> FqPoly {
        let q = self.field.q() as u64;
        let low: Vec<FqElem> = (0..d)
            .map(|_| {
                let c = self.field.from_int_unchecked((idx % q) as u32);
                idx /= q;
                c
            })
            .collect();
        FqPoly::monic(&low)
    }

    fn monic_count(&self, d: usize) -> Option<u64> {
        (self.field.q() as u64).checked_pow(d as u32)
    }

    /// Smallest primitive monic polynomial of degree `d` in the index order.
    pub fn smallest_primitive(&self, d: usize) -> Option<FqPoly> {
        let total = self.monic_count(d)?;
        (0..total)
            .map(|i| self.monic_by_index(d, i))
            .find(|f| self.is_primitive(f))
    }

    /// Every monic irreducible polynomial of degree `d`, in index order.
    pub fn monic_irreducibles(&self, d: usize) -> Vec<FqPoly> {
        let total = self.monic_count(d).unwrap_or(0);
        (0..total)
            .map(|i| self.monic_by_index(d, i))
            .filter(|f| self.is_irreducible(f))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;

    /// Number of monic irreducibles of degree d over F_q via Moebius inversion.
    fn necklace(q: u64, d: u64) -> u64 {
        let mu = |mut n: u64| -> i64 {
            let mut res = 1i64;
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
        };
        let mut s = 0i64;
        for e in 1..=d {
            if d % e == 0 {
                s += mu(d / e) * (q as i64).pow(e as u32);
            }
        }
        (s / d as i64) as u64
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        for &(p, k, d) in &[(2u64, 1u32, 4usize), (3, 1, 3), (2, 2, 2), (2, 2, 3), (3, 2, 2), (5, 1, 2)] {
            let f = build_field(p, k).unwrap();
            let ring = PolyRing::new(&f);
            let got = ring.monic_irreducibles(d).len() as u64;
            assert_eq!(got, necklace(f.q() as u64, d as u64), "q={} d={d}", f.q());
        }
    }

    #[test]
    fn primitive_counts_match_totient() {
        // phi(q^d - 1) / d primitive polynomials of degree d
        let phi = |n: u64| -> u64 {
            prime_factors(n)
                .into_iter()
                .fold(n, |acc, p| acc / p * (p - 1))
        };
        for &(p, k, d) in &[(2u64, 1u32, 4usize), (2, 1, 5), (3, 1, 2), (2, 2, 2), (3, 1, 3)] {
            let f = build_field(p, k).unwrap();
            let ring = PolyRing::new(&f);
            let q = f.q() as u64;
            let total = q.pow(d as u32);
            let got = (0..total)
                .filter(|&i| ring.is_primitive(&ring.monic_by_index(d, i)))
                .count() as u64;
            assert_eq!(got, phi(q.pow(d as u32) - 1) / d as u64);
        }
    }

    #[test]
    fn divrem_reconstructs() {
        let f = build_field(5, 1).unwrap();
        let ring = PolyRing::new(&f);
        for i in 0..125u64 {
            for j in 1..25u64 {
                let a = ring.monic_by_index(3, i);
                let b = ring.scale(&ring.monic_by_index(2, j), f.from_int(3).unwrap());
                let (q, r) = ring.divrem(&a, &b);
                assert!(r.degree().map_or(true, |d| d < 2));
                assert_eq!(ring.add(&ring.mul(&q, &b), &r), a);
            }
        }
    }
}
