//! Small finite fields F_q realized by exp/log tables over a primitive polynomial.
//!
//! Elements are stored as exponents of the field's fixed generator with a
//! sentinel for zero, so multiplication is exponent addition and addition goes
//! through a Zech logarithm table built once per field.
//!
//! The primitive polynomial is the lexicographically smallest monic primitive
//! polynomial of degree `k` over F_p, comparing coefficient vectors
//! `(c_0, ..., c_{k-1})` as the base-`p` integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`.

mod poly;
mod subfield;

pub use poly::{FqPoly, PolyRing};
pub use subfield::{norm, Subfield};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default upper bound on the field size `q = p^k`.
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("field size {p}^{k} exceeds the configured bound {bound}")]
    SizeBound { p: u64, k: u32, bound: u64 },
    #[error("no primitive polynomial of degree {k} over F_{p} was found")]
    NoPrimitive { p: u64, k: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("element {value} does not belong to F_{q}")]
    OutOfRange { value: u64, q: u64 },
    #[error("operands belong to different fields (F_{left} and F_{right})")]
    FieldMismatch { left: u64, right: u64 },
    #[error("F_{small} is not a subfield of F_{big}")]
    NotSubfield { small: u64, big: u64 },
}

/// A field element: either zero or `g^e` for the field generator `g`, `0 <= e < q - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FqElem(u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(u32::MAX);
    pub const ONE: FqElem = FqElem(0);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == u32::MAX
    }

    /// Exponent relative to the field generator, `None` for zero.
    #[inline]
    pub fn exponent(self) -> Option<u32> {
        if self.is_zero() {
            None
        } else {
            Some(self.0)
        }
    }

    /// Builds `g^e`. The caller guarantees `e < q - 1`.
    #[inline]
    pub fn from_exponent(e: u32) -> FqElem {
        FqElem(e)
    }
}

/// Serializable description of a field: characteristic, degree and defining polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub k: u32,
    pub prim_poly: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct FieldTable {
    p: u32,
    k: u32,
    q: u32,
    prim_poly: Vec<u32>,
    /// exponent -> integer representative (base-p digits of the polynomial residue)
    exp: Vec<u32>,
    /// integer representative -> exponent; entry 0 is unused
    log: Vec<u32>,
    /// zech[i] = log(1 + g^i)
    zech: Vec<FqElem>,
    /// exponent of -1
    neg_one: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of `n` by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `q = p^k`, failing if `q` is not a prime power.
pub fn prime_power(q: u64) -> Result<(u32, u32), GfError> {
    let factors = prime_factors(q);
    if q < 2 || factors.len() != 1 {
        return Err(GfError::NotPrimePower(q));
    }
    let p = factors[0];
    let mut k = 0;
    let mut m = q;
    while m > 1 {
        m /= p;
        k += 1;
    }
    Ok((p as u32, k))
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

pub fn build_field(p: u64, k: u32) -> Result<FieldTable, GfError> {
    build_field_bounded(p, k, DEFAULT_FIELD_BOUND)
}

pub fn build_field_for_order(q: u64) -> Result<FieldTable, GfError> {
    let (p, k) = prime_power(q)?;
    build_field(p as u64, k)
}

pub fn build_field_bounded(p: u64, k: u32, bound: u64) -> Result<FieldTable, GfError> {
    if !is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    if k == 0 {
        return Err(GfError::ZeroDegree);
    }
    let size = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
    if size > bound as u128 || size > u32::MAX as u128 {
        return Err(GfError::SizeBound { p, k, bound });
    }
    let prime = prime_field(p as u32)?;
    if k == 1 {
        return Ok(prime);
    }
    let ring = PolyRing::new(&prime);
    let poly = ring
        .smallest_primitive(k as usize)
        .ok_or(GfError::NoPrimitive { p, k })?;
    let coeffs: Vec<u32> = poly.coeffs()[..k as usize]
        .iter()
        .map(|&c| prime.to_int(c))
        .collect();
    Ok(FieldTable::from_primitive(p as u32, coeffs))
}

/// F_p with generator the root of the smallest primitive `x + c_0`.
fn prime_field(p: u32) -> Result<FieldTable, GfError> {
    let order = (p - 1) as u64;
    let factors = prime_factors(order);
    let primitive_root = |r: u64| -> bool {
        r != 0 && factors.iter().all(|&f| pow_mod(r, order / f, p as u64) != 1)
    };
    for c0 in 1..p {
        let root = (p - c0) % p;
        if primitive_root(root as u64) || (p == 2 && root == 1) {
            return Ok(FieldTable::from_primitive(p, vec![c0]));
        }
    }
    Err(GfError::NoPrimitive { p: p as u64, k: 1 })
}

impl FieldTable {
    /// Builds the tables from a primitive polynomial given by its low coefficients.
    fn from_primitive(p: u32, prim_poly: Vec<u32>) -> FieldTable {
        let k = prim_poly.len() as u32;
        let q = p.pow(k);
        let order = (q - 1) as usize;
        let digits = |mut v: u32| -> Vec<u32> {
            let mut d = vec![0u32; k as usize];
            for slot in d.iter_mut() {
                *slot = v % p;
                v /= p;
            }
            d
        };
        let undigits = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &x| acc * p + x) };

        let mut exp = vec![0u32; order];
        let mut log = vec![u32::MAX; q as usize];
        // The residue of x^i mod f, starting from 1.
        let mut cur = vec![0u32; k as usize];
        cur[0] = 1;
        if k == 1 {
            // x = -c_0 in F_p
            let root = (p - prim_poly[0]) % p;
            let mut v = 1u32;
            for (i, slot) in exp.iter_mut().enumerate() {
                *slot = v;
                log[v as usize] = i as u32;
                v = ((v as u64 * root as u64) % p as u64) as u32;
            }
        } else {
            for (i, slot) in exp.iter_mut().enumerate() {
                let v = undigits(&cur);
                *slot = v;
                log[v as usize] = i as u32;
                // multiply by x and reduce with x^k = -sum c_j x^j
                let top = cur[k as usize - 1];
                for j in (1..k as usize).rev() {
                    cur[j] = cur[j - 1];
                }
                cur[0] = 0;
                if top != 0 {
                    for (j, c) in cur.iter_mut().enumerate() {
                        let sub = (top as u64 * prim_poly[j] as u64 % p as u64) as u32;
                        *c = (*c + p - sub) % p;
                    }
                }
            }
        }

        let mut zech = vec![FqElem::ZERO; order];
        for (i, z) in zech.iter_mut().enumerate() {
            let mut d = digits(exp[i]);
            d[0] = (d[0] + 1) % p;
            let v = undigits(&d);
            if v != 0 {
                *z = FqElem(log[v as usize]);
            }
        }
        let neg_one = if p == 2 { 0 } else { (order / 2) as u32 };
        FieldTable {
            p,
            k,
            q,
            prim_poly,
            exp,
            log,
            zech,
            neg_one,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Size of the multiplicative group, `q - 1`.
    pub fn order(&self) -> u32 {
        self.q - 1
    }

    /// Low coefficients `(c_0, ..., c_{k-1})` of the monic defining polynomial.
    pub fn prim_poly(&self) -> &[u32] {
        &self.prim_poly
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            k: self.k,
            prim_poly: self.prim_poly.clone(),
        }
    }

    pub fn generator(&self) -> FqElem {
        if self.q == 2 {
            FqElem::ONE
        } else {
            FqElem(1 % self.order())
        }
    }

    /// All field elements, zero first, then `g^0, g^1, ...`.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        std::iter::once(FqElem::ZERO).chain((0..self.order()).map(FqElem))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.order()).map(FqElem)
    }

    /// Integer representative in `[0, q)`: zero maps to 0, others to the base-p
    /// digit value of their polynomial residue.
    #[inline]
    pub fn to_int(&self, a: FqElem) -> u32 {
        match a.exponent() {
            None => 0,
            Some(e) => self.exp[e as usize],
        }
    }

    #[inline]
    pub fn from_int(&self, v: u32) -> Result<FqElem, GfError> {
        if v >= self.q {
            return Err(GfError::OutOfRange {
                value: v as u64,
                q: self.q as u64,
            });
        }
        Ok(self.from_int_unchecked(v))
    }

    #[inline]
    pub(crate) fn from_int_unchecked(&self, v: u32) -> FqElem {
        if v == 0 {
            FqElem::ZERO
        } else {
            FqElem(self.log[v as usize])
        }
    }

    /// Rejects exponents at or beyond `q - 1`, which can only come from another field.
    pub fn check(&self, a: FqElem) -> Result<FqElem, GfError> {
        match a.exponent() {
            Some(e) if e >= self.order() => Err(GfError::OutOfRange {
                value: e as u64,
                q: self.q as u64,
            }),
            _ => Ok(a),
        }
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.is_zero() || b.is_zero() {
            return FqElem::ZERO;
        }
        let s = a.0 + b.0;
        let o = self.order();
        FqElem(if s >= o { s - o } else { s })
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let (lo, hi) = if a.0 <= b.0 { (a.0, b.0) } else { (b.0, a.0) };
        let z = self.zech[(hi - lo) as usize];
        if z.is_zero() {
            FqElem::ZERO
        } else {
            let s = lo + z.0;
            let o = self.order();
            FqElem(if s >= o { s - o } else { s })
        }
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        self.mul(a, FqElem(self.neg_one))
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem, GfError> {
        match a.exponent() {
            None => Err(GfError::ZeroInverse),
            Some(0) => Ok(FqElem::ONE),
            Some(e) => Ok(FqElem(self.order() - e)),
        }
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FqElem, e: u64) -> FqElem {
        match a.exponent() {
            None if e == 0 => FqElem::ONE,
            None => FqElem::ZERO,
            Some(x) => FqElem(((x as u64 * (e % self.order() as u64)) % self.order() as u64) as u32),
        }
    }

    /// The Frobenius automorphism `a -> a^p`.
    pub fn frobenius(&self, a: FqElem) -> FqElem {
        self.pow(a, self.p as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn elem_order(&self, a: FqElem) -> Option<u64> {
        let e = a.exponent()? as u64;
        let o = self.order() as u64;
        Some(o / num_integer::gcd(e, o))
    }

    pub fn is_prime_field_elem(&self, a: FqElem) -> bool {
        self.to_int(a) < self.p
    }

    /// The element `-1`.
    pub fn neg_one(&self) -> FqElem {
        FqElem(self.neg_one)
    }

    /// Checked arithmetic through an explicit operation tag.
    pub fn arith(&self, op: ArithOp, a: FqElem, b: FqElem) -> Result<FqElem, GfError> {
        let a = self.check(a)?;
        let b = self.check(b)?;
        match op {
            ArithOp::Add => Ok(self.add(a, b)),
            ArithOp::Mul => Ok(self.mul(a, b)),
            ArithOp::Neg => Ok(self.neg(a)),
            ArithOp::Inv => self.inv(a),
        }
    }

    pub fn elem(&self, a: FqElem) -> Elem<'_> {
        Elem { field: self, raw: a }
    }

    fn same_field(&self, other: &FieldTable) -> bool {
        std::ptr::eq(self, other) || (self.p == other.p && self.prim_poly == other.prim_poly)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
    Neg,
}

/// An element tied to its field, for arithmetic that must reject mixed fields.
#[derive(Clone, Copy, Debug)]
pub struct Elem<'f> {
    field: &'f FieldTable,
    raw: FqElem,
}

impl<'f> Elem<'f> {
    pub fn raw(self) -> FqElem {
        self.raw
    }

    fn compatible(self, other: Elem<'_>) -> Result<(), GfError> {
        if self.field.same_field(other.field) {
            Ok(())
        } else {
            Err(GfError::FieldMismatch {
                left: self.field.q as u64,
                right: other.field.q as u64,
            })
        }
    }

    pub fn try_add(self, other: Elem<'_>) -> Result<Elem<'f>, GfError> {
        self.compatible(other)?;
        Ok(self.field.elem(self.field.add(self.raw, other.raw)))
    }

    pub fn try_mul(self, other: Elem<'_>) -> Result<Elem<'f>, GfError> {
        self.compatible(other)?;
        Ok(self.field.elem(self.field.mul(self.raw, other.raw)))
    }

    pub fn try_inv(self) -> Result<Elem<'f>, GfError> {
        Ok(self.field.elem(self.field.inv(self.raw)?))
    }

    pub fn neg(self) -> Elem<'f> {
        self.field.elem(self.field.neg(self.raw))
    }
}

impl PartialEq for Elem<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(other.field) && self.raw == other.raw
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent of the table construction: brute-force every monic
    /// polynomial of degree k over F_p and test the order of x by direct
    /// polynomial arithmetic mod p.
    fn brute_force_primitive(p: u32, k: usize) -> Vec<Vec<u32>> {
        let q = (p as u64).pow(k as u32);
        let mut out = Vec::new();
        for n in 0..q {
            let mut c = vec![0u32; k];
            let mut m = n;
            for slot in c.iter_mut() {
                *slot = (m % p as u64) as u32;
                m /= p as u64;
            }
            // iterate x^i mod f and record the first return to 1
            let mut cur = vec![0u32; k];
            cur[0] = 1;
            let mut order = None;
            for i in 1..=q {
                let top = cur[k - 1];
                for j in (1..k).rev() {
                    cur[j] = cur[j - 1];
                }
                cur[0] = 0;
                for j in 0..k {
                    cur[j] = (cur[j] + p - (top * c[j]) % p) % p;
                }
                if cur[0] == 1 && cur[1..].iter().all(|&x| x == 0) {
                    order = Some(i);
                    break;
                }
                if cur.iter().all(|&x| x == 0) {
                    break;
                }
            }
            if order == Some(q - 1) {
                out.push(c);
            }
        }
        out
    }

    #[test]
    fn f2_prim_poly_is_x_plus_one() {
        let f = build_field(2, 1).unwrap();
        assert_eq!(f.q(), 2);
        assert_eq!(f.prim_poly(), &[1]);
    }

    #[test]
    fn f16_uses_one_of_the_singer_quartics() {
        let f = build_field(2, 4).unwrap();
        // x^4 + x + 1 -> (1,1,0,0); x^4 + x^3 + 1 -> (1,0,0,1)
        assert!(f.prim_poly() == [1, 1, 0, 0] || f.prim_poly() == [1, 0, 0, 1]);
        assert_eq!(f.prim_poly(), &[1, 1, 0, 0]);
    }

    #[test]
    fn smallest_primitive_matches_brute_force() {
        for &(p, k) in &[(3u32, 2usize), (2, 3), (2, 4), (2, 5), (5, 2), (3, 3), (7, 2)] {
            let expected = brute_force_primitive(p, k);
            let f = build_field(p as u64, k as u32).unwrap();
            assert_eq!(f.prim_poly(), expected[0].as_slice(), "p={p} k={k}");
        }
    }

    #[test]
    fn f9_generator_times_its_inverse_power() {
        let f = build_field(3, 2).unwrap();
        let g = f.generator();
        assert_eq!(f.mul(g, f.pow(g, 7)), FqElem::ONE);
        assert_eq!(f.elem_order(g), Some(8));
    }

    #[test]
    fn characteristic_two_doubles_vanish() {
        let f2 = build_field(2, 1).unwrap();
        assert_eq!(f2.add(FqElem::ONE, FqElem::ONE), FqElem::ZERO);
        let f16 = build_field(2, 4).unwrap();
        let g3 = f16.pow(f16.generator(), 3);
        assert_eq!(f16.add(g3, g3), FqElem::ZERO);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for &(p, k) in &[(2u64, 1u32), (3, 1), (2, 2), (5, 1), (3, 2), (2, 3), (7, 1), (2, 4), (5, 2)] {
            let f = build_field(p, k).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, FqElem::ZERO), a);
                assert_eq!(f.mul(a, FqElem::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), FqElem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FqElem::ONE);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn addition_matches_digitwise_integer_addition() {
        for &(p, k) in &[(3u64, 3u32), (2, 6), (7, 2)] {
            let f = build_field(p, k).unwrap();
            for a in 0..f.q() {
                for b in 0..f.q() {
                    let mut sum = 0u32;
                    let (mut x, mut y, mut place) = (a, b, 1u32);
                    for _ in 0..k {
                        sum += ((x % f.p() + y % f.p()) % f.p()) * place;
                        x /= f.p();
                        y /= f.p();
                        place *= f.p();
                    }
                    let ea = f.from_int(a).unwrap();
                    let eb = f.from_int(b).unwrap();
                    assert_eq!(f.to_int(f.add(ea, eb)), sum);
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_the_prime_field() {
        for &(p, k) in &[(2u64, 4u32), (3, 3), (5, 2), (2, 10), (3, 6)] {
            let f = build_field(p, k).unwrap();
            let mut image = std::collections::HashSet::new();
            for a in f.elements() {
                let fa = f.frobenius(a);
                image.insert(fa);
                assert_eq!(fa == a, f.is_prime_field_elem(a));
                for b in f.elements().step_by(7) {
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(fa, f.frobenius(b)));
                }
            }
            assert_eq!(image.len(), f.q() as usize);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(build_field(4, 1).unwrap_err(), GfError::NotPrime(4));
        assert!(matches!(build_field(2, 21), Err(GfError::SizeBound { .. })));
        assert!(build_field_bounded(2, 21, 1 << 21).is_ok());
        assert_eq!(prime_power(12).unwrap_err(), GfError::NotPrimePower(12));
        assert_eq!(prime_power(49).unwrap(), (7, 2));
        let f = build_field(3, 1).unwrap();
        assert_eq!(f.inv(FqElem::ZERO).unwrap_err(), GfError::ZeroInverse);
        assert!(f.arith(ArithOp::Add, FqElem::from_exponent(5), FqElem::ONE).is_err());
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let f4 = build_field(2, 2).unwrap();
        let f8 = build_field(2, 3).unwrap();
        let a = f4.elem(FqElem::ONE);
        let b = f8.elem(FqElem::ONE);
        assert!(matches!(a.try_add(b), Err(GfError::FieldMismatch { .. })));
        assert_eq!(a.try_add(a).unwrap().raw(), FqElem::ZERO);
    }

    #[test]
    fn descriptor_json() {
        let f = build_field(3, 2).unwrap();
        let json = serde_json::to_string(&f.descriptor()).unwrap();
        assert_eq!(json, r#"{"p":3,"k":2,"prim_poly":[2,1]}"#);
    }
}
