//! Subfield embeddings F_{q^s} -> F_{q^n} and the field norm.
//!
//! The small generator is sent to the root `G^{jM}` of its defining polynomial
//! with the least admissible `j`, where `G` is the big generator and
//! `M = (Q - 1)/(q_s - 1)`. Sending it to `G^M` alone is additive only when
//! the two defining polynomials happen to be compatible.

use super::{FieldTable, FqElem, GfError};
use num_integer::Integer;

#[derive(Clone, Debug)]
pub struct Subfield<'a> {
    small: &'a FieldTable,
    big: &'a FieldTable,
    /// (Q - 1)/(q_s - 1)
    cofactor: u64,
    /// the small generator maps to G^{mult * cofactor}
    mult: u64,
    mult_inv: u64,
}

impl<'a> Subfield<'a> {
    pub fn new(small: &'a FieldTable, big: &'a FieldTable) -> Result<Self, GfError> {
        let err = GfError::NotSubfield {
            small: small.q() as u64,
            big: big.q() as u64,
        };
        if small.p() != big.p() || big.k() % small.k() != 0 {
            return Err(err);
        }
        let qs = small.order() as u64;
        let cofactor = big.order() as u64 / qs;
        if qs == 1 {
            return Ok(Subfield {
                small,
                big,
                cofactor,
                mult: 1,
                mult_inv: 1,
            });
        }
        for j in 1..qs {
            if j.gcd(&qs) != 1 {
                continue;
            }
            let h = FqElem::from_exponent(((j * cofactor) % big.order() as u64) as u32);
            // evaluate the small defining polynomial at h inside the big field
            let mut acc = big.pow(h, small.k() as u64);
            for (i, &c) in small.prim_poly().iter().enumerate() {
                let c = big.from_int_unchecked(c);
                acc = big.add(acc, big.mul(c, big.pow(h, i as u64)));
            }
            if acc.is_zero() {
                let inv = mod_inverse(j, qs);
                return Ok(Subfield {
                    small,
                    big,
                    cofactor,
                    mult: j,
                    mult_inv: inv,
                });
            }
        }
        Err(err)
    }

    pub fn small(&self) -> &'a FieldTable {
        self.small
    }

    pub fn big(&self) -> &'a FieldTable {
        self.big
    }

    pub fn embed(&self, a: FqElem) -> FqElem {
        match a.exponent() {
            None => FqElem::ZERO,
            Some(e) => {
                let big_e = (e as u64 * self.mult % self.small.order().max(1) as u64) * self.cofactor;
                FqElem::from_exponent((big_e % self.big.order() as u64) as u32)
            }
        }
    }

    /// Inverse of `embed` on its image, `None` outside the subfield.
    pub fn restrict(&self, b: FqElem) -> Option<FqElem> {
        match b.exponent() {
            None => Some(FqElem::ZERO),
            Some(e) => {
                let e = e as u64;
                if e % self.cofactor != 0 {
                    return None;
                }
                let qs = self.small.order().max(1) as u64;
                Some(FqElem::from_exponent(((e / self.cofactor) * self.mult_inv % qs) as u32))
            }
        }
    }

    pub fn contains(&self, b: FqElem) -> bool {
        self.restrict(b).is_some()
    }

    /// The norm `b^{(Q-1)/(q_s-1)}` expressed in the small field.
    pub fn norm(&self, b: FqElem) -> FqElem {
        let n = self.big.pow(b, self.cofactor);
        self.restrict(n).expect("norm lands in the subfield")
    }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let e = (a as i64).extended_gcd(&(m as i64));
    e.x.rem_euclid(m as i64) as u64
}

/// The norm from `big` down to `small`.
pub fn norm(big: &FieldTable, small: &FieldTable, b: FqElem) -> Result<FqElem, GfError> {
    Ok(Subfield::new(small, big)?.norm(big.check(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;

    #[test]
    fn embedding_is_a_field_homomorphism() {
        for &(p, s, n) in &[(2u64, 1u32, 4u32), (2, 2, 4), (2, 2, 6), (2, 3, 6), (3, 1, 2), (3, 2, 4), (5, 1, 3), (2, 4, 8)] {
            let small = build_field(p, s).unwrap();
            let big = build_field(p, n).unwrap();
            let sub = Subfield::new(&small, &big).unwrap();
            let els: Vec<_> = small.elements().collect();
            let mut image = std::collections::HashSet::new();
            for &a in &els {
                image.insert(sub.embed(a));
                assert_eq!(sub.restrict(sub.embed(a)), Some(a));
                for &b in &els {
                    assert_eq!(sub.embed(small.add(a, b)), big.add(sub.embed(a), sub.embed(b)));
                    assert_eq!(sub.embed(small.mul(a, b)), big.mul(sub.embed(a), sub.embed(b)));
                }
            }
            assert_eq!(image.len(), small.q() as usize);
        }
    }

    #[test]
    fn norm_is_multiplicative_and_surjective() {
        for &(p, s, n) in &[(2u64, 2u32, 4u32), (3, 1, 3), (2, 1, 5), (5, 1, 2)] {
            let small = build_field(p, s).unwrap();
            let big = build_field(p, n).unwrap();
            let sub = Subfield::new(&small, &big).unwrap();
            let mut counts = vec![0usize; small.order() as usize];
            for a in big.nonzero_elements() {
                let na = sub.norm(a);
                counts[na.exponent().unwrap() as usize] += 1;
                let b = big.pow(a, 3);
                assert_eq!(sub.norm(big.mul(a, b)), small.mul(na, sub.norm(b)));
            }
            assert!(counts.iter().all(|&c| c == counts[0]));
            // restricted to the subfield the norm is the (n/s)-th power
            for a in small.elements() {
                assert_eq!(sub.norm(sub.embed(a)), small.pow(a, (n / s) as u64));
            }
        }
    }

    #[test]
    fn non_subfields_are_rejected() {
        let f4 = build_field(2, 2).unwrap();
        let f8 = build_field(2, 3).unwrap();
        let f9 = build_field(3, 2).unwrap();
        assert!(Subfield::new(&f4, &f8).is_err());
        assert!(Subfield::new(&f4, &f9).is_err());
        assert!(norm(&f8, &f4, FqElem::ONE).is_err());
    }
}
