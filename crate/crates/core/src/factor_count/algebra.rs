//! Sparse group-algebra elements and the Jucys-Murphy commutation checks.

use crate::error::{Error, Result};
use crate::gf::FqElem;
use crate::glnq::{GlGroup, Matrix, DEFAULT_GROUP_BOUND};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use serde::Serialize;
use std::sync::Arc;

/// `sum_g c_g g` with no stored zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupAlgebraVector {
    coeffs: FxHashMap<u64, BigInt>,
}

impl GroupAlgebraVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: u64) -> Self {
        let mut v = Self::zero();
        v.add_term(key, BigInt::one());
        v
    }

    /// Sum of the listed elements, each with coefficient one.
    pub fn from_keys(keys: impl IntoIterator<Item = u64>) -> Self {
        let mut v = Self::zero();
        for k in keys {
            v.add_term(k, BigInt::one());
        }
        v
    }

    pub fn add_term(&mut self, key: u64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(key).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn coeff(&self, key: u64) -> BigInt {
        self.coeffs.get(&key).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    /// Terms sorted by key.
    pub fn terms(&self) -> Vec<(u64, BigInt)> {
        let mut t: Vec<(u64, BigInt)> = self.coeffs.iter().map(|(&k, c)| (k, c.clone())).collect();
        t.sort_by_key(|&(k, _)| k);
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.coeffs {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.coeffs {
            out.add_term(k, -c);
        }
        out
    }

    /// Convolution product in the group algebra of `group`.
    pub fn mul(&self, other: &Self, group: &GlGroup) -> Self {
        let right: Vec<(Matrix, &BigInt)> = other.coeffs.iter().map(|(&k, c)| (group.from_key(k), c)).collect();
        let mut out = Self::zero();
        for (&a, x) in &self.coeffs {
            let am = group.from_key(a);
            for (bm, y) in &right {
                out.add_term(group.key(&group.mul(&am, bm)), x * *y);
            }
        }
        out
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self, group: &GlGroup) -> Self {
        self.mul(other, group).sub(&other.mul(self, group))
    }
}

/// `J_m^alpha`: determinant-`alpha` reflections of GL_m that do not lie in
/// GL_{m-1}, embedded in GL_n as `diag(t, I_{n-m})`.
pub fn jm_element(group: &GlGroup, m: usize, alpha: FqElem) -> Result<GroupAlgebraVector> {
    let n = group.n();
    if m == 0 || m > n {
        return Err(Error::Invalid(format!("J_m needs 1 <= m <= n, got m={m}, n={n}")));
    }
    let small = GlGroup::new(m, Arc::clone(group.field_arc()))?;
    let mut keys = Vec::new();
    for r in small.enumerate_reflections(Some(alpha)) {
        let t = small.from_key(r.key);
        let in_smaller = (0..m - 1).all(|i| t.get(m - 1, i).is_zero() && t.get(i, m - 1).is_zero())
            && t.get(m - 1, m - 1) == FqElem::ONE;
        if in_smaller {
            continue;
        }
        let mut big = group.identity();
        for i in 0..m {
            for j in 0..m {
                big.set(i, j, t.get(i, j));
            }
        }
        keys.push(group.key(&big));
    }
    Ok(GroupAlgebraVector::from_keys(keys))
}

#[derive(Clone, Debug, Serialize)]
pub struct JmElementInfo {
    pub m: usize,
    pub alpha: u32,
    pub size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralityInfo {
    pub alpha: u32,
    pub size: usize,
    pub central: bool,
}

/// `{n, q, elements, pairs_checked, noncommuting, centrality, pass}`.
#[derive(Clone, Debug, Serialize)]
pub struct JmReport {
    pub n: usize,
    pub q: u64,
    pub elements: Vec<JmElementInfo>,
    pub pairs_checked: usize,
    /// Pairs `((m, alpha), (m', alpha'))` whose commutator is nonzero.
    pub noncommuting: Vec<((usize, u32), (usize, u32))>,
    pub centrality: Vec<CentralityInfo>,
    pub pass: bool,
}

/// Builds every `J_m^alpha`, checks all pairwise commutators, and checks that
/// `z_alpha = sum_m J_m^alpha` commutes with a generating set of GL_n.
pub fn jm_commutation(group: &GlGroup) -> Result<JmReport> {
    if group.order() > DEFAULT_GROUP_BOUND {
        return Err(Error::Bound {
            what: "|GL_n(F_q)|",
            size: group.order(),
            bound: DEFAULT_GROUP_BOUND,
        });
    }
    let f = group.field();
    let n = group.n();
    let mut alphas: Vec<FqElem> = f.nonzero_elements().collect();
    alphas.sort_by_key(|&a| f.to_int(a));
    let mut elems = Vec::new();
    for m in 1..=n {
        for &a in &alphas {
            elems.push(((m, f.to_int(a)), jm_element(group, m, a)?));
        }
    }
    let mut noncommuting = Vec::new();
    let mut pairs_checked = 0;
    for i in 0..elems.len() {
        for j in i..elems.len() {
            pairs_checked += 1;
            if !elems[i].1.commutator(&elems[j].1, group).is_zero() {
                noncommuting.push((elems[i].0, elems[j].0));
            }
        }
    }
    let generators = generators(group);
    let mut centrality = Vec::new();
    for &a in &alphas {
        let ai = f.to_int(a);
        let z = elems
            .iter()
            .filter(|((_, b), _)| *b == ai)
            .fold(GroupAlgebraVector::zero(), |acc, (_, v)| acc.add(v));
        let expected = group.enumerate_reflections(Some(a)).len();
        let central = z.support_len() == expected
            && generators
                .iter()
                .all(|h| z.commutator(&GroupAlgebraVector::basis(group.key(h)), group).is_zero());
        centrality.push(CentralityInfo {
            alpha: ai,
            size: z.support_len(),
            central,
        });
    }
    let pass = noncommuting.is_empty() && centrality.iter().all(|c| c.central);
    Ok(JmReport {
        n,
        q: group.q(),
        elements: elems
            .iter()
            .map(|((m, a), v)| JmElementInfo {
                m: *m,
                alpha: *a,
                size: v.support_len(),
            })
            .collect(),
        pairs_checked,
        noncommuting,
        centrality,
        pass,
    })
}

/// Elementary transvections `I + a E_ij` and `diag(g, 1, ..., 1)` for a field generator `g`.
fn generators(group: &GlGroup) -> Vec<Matrix> {
    let f = group.field();
    let n = group.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for a in f.nonzero_elements() {
                let mut m = group.identity();
                m.set(i, j, a);
                out.push(m);
            }
        }
    }
    let mut d = group.identity();
    d.set(0, 0, f.generator());
    out.push(d);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_basics() {
        let g = GlGroup::over(2, 3).unwrap();
        let s = g.singer_cycle().unwrap();
        let a = GroupAlgebraVector::basis(g.key(&s));
        let b = GroupAlgebraVector::basis(g.key(&g.identity()));
        assert_eq!(a.mul(&b, &g), a);
        assert!(a.sub(&a).is_zero());
        assert!(a.commutator(&a, &g).is_zero());
        let sq = a.mul(&a, &g);
        assert_eq!(sq.coeff(g.key(&g.mul(&s, &s))), BigInt::one());
    }

    #[test]
    fn jm_sizes_partition_reflection_classes() {
        let g = GlGroup::over(3, 3).unwrap();
        let f = g.field();
        for a in f.nonzero_elements() {
            let total: usize = (1..=3).map(|m| jm_element(&g, m, a).unwrap().support_len()).sum();
            assert_eq!(total, g.enumerate_reflections(Some(a)).len());
        }
        // J_1^1 is empty: GL_1 has no transvections
        assert!(jm_element(&g, 1, FqElem::ONE).unwrap().is_zero());
    }

    #[test]
    fn small_groups_commute() {
        for &(n, q) in &[(2usize, 3u64), (3, 2), (2, 2)] {
            let g = GlGroup::over(n, q).unwrap();
            let r = jm_commutation(&g).unwrap();
            assert!(r.pass, "{n} {q}: {r:?}");
        }
    }

    #[test]
    fn noncentral_element_is_detected() {
        // a single reflection is not central in GL_2(F_3)
        let g = GlGroup::over(2, 3).unwrap();
        let t = g.enumerate_reflections(None)[0].key;
        let v = GroupAlgebraVector::basis(t);
        let gens = generators(&g);
        assert!(gens
            .iter()
            .any(|h| !v.commutator(&GroupAlgebraVector::basis(g.key(h)), &g).is_zero()));
    }
}
