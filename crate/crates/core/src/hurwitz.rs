//! Hurwitz braid action on reflection factorizations and orbit decomposition.

use crate::error::{Error, Result};
use crate::factor_count::{FactorCounter, StepPlan};
use crate::glnq::{GlGroup, Matrix, DEFAULT_GROUP_BOUND};
use crate::qformula::{tq, TqRoute};
use crate::gf::PolyRing;
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

pub const DEFAULT_TUPLE_BUDGET: usize = 5_000_000;

/// Largest reflection set for which the conjugation tables are built.
const MAX_REFLECTIONS: usize = 4096;

/// An ordered tuple of reflection keys with its product and sorted determinants.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FactTuple {
    pub factors: Vec<u64>,
    pub product: u64,
    /// Integer representatives of the determinants, sorted.
    pub det_multiset: Vec<u32>,
}

impl FactTuple {
    /// Fails unless every factor is a reflection.
    pub fn new(group: &GlGroup, factors: Vec<u64>) -> Result<FactTuple> {
        let mut p = group.identity();
        let mut dets = Vec::with_capacity(factors.len());
        for &k in &factors {
            let t = group.from_key(k);
            if group.key(&t) != k || group.fixed_codim(&t) != 1 {
                return Err(Error::Invalid(format!("key {k} is not a reflection")));
            }
            dets.push(group.field().to_int(group.det(&t)));
            p = group.mul(&p, &t);
        }
        dets.sort_unstable();
        Ok(FactTuple {
            factors,
            product: group.key(&p),
            det_multiset: dets,
        })
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// `sigma_i` with `i` counted from one: `(a, b) -> (b, b^-1 a b)` at positions
/// `i, i+1`; the inverse sends `(a, b) -> (a b a^-1, a)`.
pub fn apply_braid(group: &GlGroup, t: &FactTuple, i: usize, inverse: bool) -> Result<FactTuple> {
    if i == 0 || i >= t.len() {
        return Err(Error::Invalid(format!(
            "strand index {i} outside 1..={} for a tuple of length {}",
            t.len().saturating_sub(1),
            t.len()
        )));
    }
    let a = group.from_key(t.factors[i - 1]);
    let b = group.from_key(t.factors[i]);
    let (x, y) = if inverse {
        (group.mul(&group.mul(&a, &b), &group.inv(&a)?), a)
    } else {
        let conj = group.conj(&a, &b)?;
        (b, conj)
    };
    let mut factors = t.factors.clone();
    factors[i - 1] = group.key(&x);
    factors[i] = group.key(&y);
    let out = FactTuple::new(group, factors)?;
    if out.product != t.product || out.det_multiset != t.det_multiset {
        return Err(Error::Internal("braid move changed the product or the determinants".into()));
    }
    Ok(out)
}

/// Reflections of one group indexed by key order, with conjugation tables.
pub struct HurwitzSpace {
    group: GlGroup,
    keys: Vec<u64>,
    dets: Vec<u32>,
    inverses: Vec<Matrix>,
    /// `right[a * N + b] = b^-1 a b`.
    right: Vec<u16>,
    /// `left[a * N + b] = a b a^-1`.
    left: Vec<u16>,
    bits: u32,
}

impl HurwitzSpace {
    pub fn new(group: GlGroup) -> Result<HurwitzSpace> {
        let refl = group.enumerate_reflections(None);
        let r = refl.len();
        if r == 0 {
            return Err(Error::Invalid(format!("GL_{}(F_{}) has no reflections", group.n(), group.q())));
        }
        if r > MAX_REFLECTIONS {
            return Err(Error::Bound {
                what: "reflection count",
                size: r as u128,
                bound: MAX_REFLECTIONS as u128,
            });
        }
        let keys: Vec<u64> = refl.iter().map(|t| t.key).collect();
        let dets = refl.iter().map(|t| group.field().to_int(t.det)).collect();
        let mats: Vec<Matrix> = keys.iter().map(|&k| group.from_key(k)).collect();
        let inverses = mats.iter().map(|m| group.inv(m)).collect::<Result<Vec<_>>>()?;
        let lookup = |m: &Matrix| -> Result<u16> {
            keys.binary_search(&group.key(m))
                .map(|i| i as u16)
                .map_err(|_| Error::Internal("conjugate of a reflection is not a reflection".into()))
        };
        let rows: Vec<(Vec<u16>, Vec<u16>)> = (0..r)
            .into_par_iter()
            .map(|a| {
                let mut right = Vec::with_capacity(r);
                let mut left = Vec::with_capacity(r);
                for b in 0..r {
                    right.push(lookup(&group.mul(&inverses[b], &group.mul(&mats[a], &mats[b])))?);
                    left.push(lookup(&group.mul(&group.mul(&mats[a], &mats[b]), &inverses[a]))?);
                }
                Ok((right, left))
            })
            .collect::<Result<_>>()?;
        let (right, left): (Vec<Vec<u16>>, Vec<Vec<u16>>) = rows.into_iter().unzip();
        let bits = usize::BITS - (r - 1).leading_zeros();
        Ok(HurwitzSpace {
            group,
            keys,
            dets,
            inverses,
            right: right.concat(),
            left: left.concat(),
            bits: bits.max(1),
        })
    }

    pub fn group(&self) -> &GlGroup {
        &self.group
    }

    pub fn reflection_count(&self) -> usize {
        self.keys.len()
    }

    fn index(&self, m: &Matrix) -> Option<usize> {
        self.keys.binary_search(&self.group.key(m)).ok()
    }

    fn check_len(&self, ell: usize) -> Result<()> {
        if ell as u32 * self.bits > 128 {
            return Err(Error::Invalid(format!(
                "tuples of length {ell} over {} reflections do not pack into 128 bits",
                self.keys.len()
            )));
        }
        Ok(())
    }

    fn slot(&self, packed: u128, ell: usize, j: usize) -> usize {
        let shift = (ell - 1 - j) as u32 * self.bits;
        ((packed >> shift) & ((1u128 << self.bits) - 1)) as usize
    }

    fn unpack(&self, packed: u128, ell: usize) -> Vec<usize> {
        (0..ell).map(|j| self.slot(packed, ell, j)).collect()
    }

    fn pack(&self, idx: &[usize]) -> u128 {
        idx.iter().fold(0u128, |acc, &i| (acc << self.bits) | i as u128)
    }

    fn det_multiset(&self, idx: &[usize]) -> Vec<u32> {
        let mut d: Vec<u32> = idx.iter().map(|&i| self.dets[i]).collect();
        d.sort_unstable();
        d
    }

    /// Braid move on a packed tuple; `i` counted from zero here.
    fn braid_packed(&self, packed: u128, ell: usize, i: usize, inverse: bool) -> u128 {
        let r = self.keys.len();
        let a = self.slot(packed, ell, i);
        let b = self.slot(packed, ell, i + 1);
        let (x, y) = if inverse {
            (self.left[a * r + b] as usize, a)
        } else {
            (b, self.right[a * r + b] as usize)
        };
        let mask = (1u128 << self.bits) - 1;
        let sa = (ell - 1 - i) as u32 * self.bits;
        let sb = sa - self.bits;
        let cleared = packed & !((mask << sa) | (mask << sb));
        cleared | ((x as u128) << sa) | ((y as u128) << sb)
    }

    /// Every factorization of `target` into `ell` reflections, by depth-first
    /// search pruned on `fixed_codim(p^-1 target) <= ell - d`.
    pub fn enumerate_factorizations(&self, target: &Matrix, ell: usize, budget: usize) -> Result<FactorizationSet> {
        self.check_len(ell)?;
        let g = &self.group;
        let found = AtomicUsize::new(0);
        let tuples: Vec<u128> = if ell == 0 {
            if *target == g.identity() {
                vec![0]
            } else {
                Vec::new()
            }
        } else if g.fixed_codim(target) > ell {
            Vec::new()
        } else {
            let parts: Vec<Vec<u128>> = (0..self.keys.len())
                .into_par_iter()
                .map(|t| {
                    let mut out = Vec::new();
                    let rest = g.mul(&self.inverses[t], target);
                    self.extend(&rest, ell - 1, t as u128, &mut out, &found, budget)?;
                    Ok(out)
                })
                .collect::<Result<_>>()?;
            let mut all = parts.concat();
            all.sort_unstable();
            all
        };
        Ok(FactorizationSet {
            target: target.clone(),
            ell,
            tuples,
        })
    }

    fn extend(&self, rest: &Matrix, r: usize, acc: u128, out: &mut Vec<u128>, found: &AtomicUsize, budget: usize) -> Result<()> {
        let g = &self.group;
        if r == 0 {
            if *rest == g.identity() {
                self.push(acc, out, found, budget)?;
            }
            return Ok(());
        }
        if r == 1 {
            if let Some(i) = self.index(rest) {
                self.push((acc << self.bits) | i as u128, out, found, budget)?;
            }
            return Ok(());
        }
        for (t, inv) in self.inverses.iter().enumerate() {
            let next = g.mul(inv, rest);
            if r == 2 || g.fixed_codim(&next) <= r - 1 {
                self.extend(&next, r - 1, (acc << self.bits) | t as u128, out, found, budget)?;
            }
        }
        Ok(())
    }

    fn push(&self, packed: u128, out: &mut Vec<u128>, found: &AtomicUsize, budget: usize) -> Result<()> {
        let n = found.fetch_add(1, Ordering::Relaxed) + 1;
        if n > budget {
            return Err(Error::TupleBudget { budget, found: n });
        }
        out.push(packed);
        Ok(())
    }

    /// Validates that each tuple consists of reflections with product `target`.
    pub fn factorization_set(&self, target: &Matrix, tuples: &[Vec<u64>]) -> Result<FactorizationSet> {
        let ell = tuples.first().map_or(0, |t| t.len());
        self.check_len(ell)?;
        let tkey = self.group.key(target);
        let mut packed = Vec::with_capacity(tuples.len());
        for t in tuples {
            if t.len() != ell {
                return Err(Error::Invalid("tuples of different lengths".into()));
            }
            let ft = FactTuple::new(&self.group, t.clone())?;
            if ft.product != tkey {
                return Err(Error::Invalid(format!("tuple {t:?} has product {} instead of {tkey}", ft.product)));
            }
            let idx: Vec<usize> = t.iter().map(|k| self.keys.binary_search(k).unwrap()).collect();
            packed.push(self.pack(&idx));
        }
        packed.sort_unstable();
        packed.dedup();
        Ok(FactorizationSet {
            target: target.clone(),
            ell,
            tuples: packed,
        })
    }

    pub fn tuple(&self, set: &FactorizationSet, i: usize) -> Vec<u64> {
        self.unpack(set.tuples[i], set.ell).iter().map(|&j| self.keys[j]).collect()
    }

    /// Breadth-first closure under every `sigma_i^{+-1}`. The input must be
    /// closed under the action.
    pub fn orbit_decompose(&self, set: &FactorizationSet) -> Result<Vec<Orbit>> {
        let ell = set.ell;
        let n = set.tuples.len();
        let mut visited = vec![false; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if visited[start] {
                continue;
            }
            visited[start] = true;
            let dets = self.det_multiset(&self.unpack(set.tuples[start], ell));
            let mut size = 1usize;
            let mut frontier = vec![start];
            while !frontier.is_empty() {
                let next: Vec<usize> = frontier
                    .par_iter()
                    .map(|&v| {
                        let mut nb = Vec::with_capacity(2 * ell);
                        for i in 0..ell.saturating_sub(1) {
                            for inverse in [false, true] {
                                let w = self.braid_packed(set.tuples[v], ell, i, inverse);
                                let j = set.tuples.binary_search(&w).map_err(|_| {
                                    Error::Invalid("input set is not closed under the braid action".into())
                                })?;
                                nb.push(j);
                            }
                        }
                        Ok(nb)
                    })
                    .collect::<Result<Vec<Vec<usize>>>>()?
                    .concat();
                frontier.clear();
                for j in next {
                    if !visited[j] {
                        visited[j] = true;
                        if self.det_multiset(&self.unpack(set.tuples[j], ell)) != dets {
                            return Err(Error::Internal("determinant multiset changed along an orbit".into()));
                        }
                        size += 1;
                        frontier.push(j);
                    }
                }
            }
            orbits.push(Orbit {
                size,
                representative: self.tuple(set, start),
                det_multiset: dets,
            });
        }
        orbits.sort_by(|a, b| {
            a.det_multiset
                .cmp(&b.det_multiset)
                .then(b.size.cmp(&a.size))
                .then(a.representative.cmp(&b.representative))
        });
        Ok(orbits)
    }

    /// Orbits grouped by determinant multiset.
    pub fn report(&self, set: &FactorizationSet) -> Result<HurwitzReport> {
        let orbits = self.orbit_decompose(set)?;
        let mut classes: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
        for o in &orbits {
            classes.entry(o.det_multiset.clone()).or_default().push(o.size);
        }
        let classes: Vec<DetClass> = classes
            .into_iter()
            .map(|(det_multiset, mut orbit_sizes)| {
                orbit_sizes.sort_unstable_by(|a, b| b.cmp(a));
                DetClass {
                    det_multiset,
                    tuple_count: orbit_sizes.iter().sum(),
                    orbit_sizes,
                }
            })
            .collect();
        Ok(HurwitzReport {
            n: self.group.n(),
            q: self.group.q(),
            target_charpoly: self.group.charpoly_ints(&set.target),
            ell: set.ell,
            tuple_count: set.len(),
            pass: classes.iter().all(|c| c.orbit_sizes.len() == 1),
            classes,
        })
    }

    /// The factorization count of `target` by an independent route: the
    /// closed formula when `target` is a Singer cycle, otherwise the group
    /// algebra counter when the group is small enough.
    pub fn independent_count(&self, target: &Matrix, ell: usize) -> Result<Option<BigUint>> {
        let g = &self.group;
        let ring = PolyRing::new(g.field());
        if ring.is_primitive(&g.charpoly(target)) {
            let v = tq(g.n() as u64, ell as u64, TqRoute::Sum)?
                .eval_i64(g.q() as i64)
                .and_then(|v| v.to_biguint())
                .ok_or_else(|| Error::Internal("closed formula is not a natural number".into()))?;
            return Ok(Some(v));
        }
        if g.order() <= DEFAULT_GROUP_BOUND {
            let counter = FactorCounter::new(g.clone())?;
            return counter.count(target, &StepPlan::all(ell)).map(Some);
        }
        Ok(None)
    }
}

/// A complete set of factorizations of one target, sorted.
#[derive(Clone, Debug)]
pub struct FactorizationSet {
    pub target: Matrix,
    pub ell: usize,
    tuples: Vec<u128>,
}

impl FactorizationSet {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub size: usize,
    /// Lexicographically first tuple met by the search.
    pub representative: Vec<u64>,
    pub det_multiset: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetClass {
    pub det_multiset: Vec<u32>,
    pub tuple_count: usize,
    /// Decreasing.
    pub orbit_sizes: Vec<usize>,
}

/// `{n, q, target_charpoly, ell, tuple_count, classes, pass}`; `pass` holds
/// iff each determinant class is one orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HurwitzReport {
    pub n: usize,
    pub q: u64,
    pub target_charpoly: Vec<u32>,
    pub ell: usize,
    pub tuple_count: usize,
    pub classes: Vec<DetClass>,
    pub pass: bool,
}

/// Orbits of the length-`ell` factorizations of the Singer cycle, one line
/// per determinant multiset, after checking the enumeration against the
/// closed-formula count.
pub fn singer_orbit_check(n: usize, q: u64, ell: usize, budget: usize) -> Result<HurwitzReport> {
    let space = HurwitzSpace::new(GlGroup::over(n, q)?)?;
    let c = space.group().singer_cycle()?;
    let set = space.enumerate_factorizations(&c, ell, budget)?;
    if let Some(expected) = space.independent_count(&c, ell)? {
        if BigUint::from(set.len()) != expected {
            return Err(Error::RouteMismatch(format!(
                "enumerated {} factorizations, count is {expected}",
                set.len()
            )));
        }
    }
    space.report(&set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FqElem;
    use proptest::prelude::*;

    fn jordan_block(g: &GlGroup) -> Matrix {
        let mut u = g.identity();
        for i in 0..g.n() - 1 {
            u.set(i, i + 1, FqElem::ONE);
        }
        u
    }

    #[test]
    fn braid_examples() {
        let g = GlGroup::over(2, 3).unwrap();
        let space = HurwitzSpace::new(g.clone()).unwrap();
        let c = g.singer_cycle().unwrap();
        let set = space.enumerate_factorizations(&c, 2, DEFAULT_TUPLE_BUDGET).unwrap();
        for i in 0..set.len() {
            let t = FactTuple::new(&g, space.tuple(&set, i)).unwrap();
            let s = apply_braid(&g, &t, 1, false).unwrap();
            assert_eq!(apply_braid(&g, &s, 1, true).unwrap(), t);
            let s2 = apply_braid(&g, &s, 1, false).unwrap();
            let (t1, t2) = (g.from_key(t.factors[0]), g.from_key(t.factors[1]));
            assert_eq!(s2.factors[0], g.key(&g.conj(&t1, &t2).unwrap()));
            assert_eq!(s2.factors[1], g.key(&g.conj(&t2, &c).unwrap()));
            assert_eq!(s.det_multiset, t.det_multiset);
        }
        let t = FactTuple::new(&g, space.tuple(&set, 0)).unwrap();
        assert!(apply_braid(&g, &t, 0, false).is_err());
        assert!(apply_braid(&g, &t, 2, false).is_err());
    }

    #[test]
    fn packed_moves_match_matrix_moves() {
        let g = GlGroup::over(3, 2).unwrap();
        let space = HurwitzSpace::new(g.clone()).unwrap();
        let c = g.singer_cycle().unwrap();
        let set = space.enumerate_factorizations(&c, 4, DEFAULT_TUPLE_BUDGET).unwrap();
        for v in (0..set.len()).step_by(7) {
            let t = FactTuple::new(&g, space.tuple(&set, v)).unwrap();
            for i in 0..3 {
                for inv in [false, true] {
                    let w = space.braid_packed(set.tuples[v], 4, i, inv);
                    let keys: Vec<u64> = space.unpack(w, 4).iter().map(|&j| space.keys[j]).collect();
                    assert_eq!(keys, apply_braid(&g, &t, i + 1, inv).unwrap().factors);
                }
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let g = GlGroup::over(2, 2).unwrap();
        let s = HurwitzSpace::new(g.clone()).unwrap();
        assert_eq!(s.enumerate_factorizations(&g.singer_cycle().unwrap(), 2, 100).unwrap().len(), 3);
        assert!(s.enumerate_factorizations(&g.singer_cycle().unwrap(), 1, 100).unwrap().is_empty());
        assert_eq!(s.enumerate_factorizations(&g.identity(), 0, 100).unwrap().len(), 1);
        assert!(matches!(
            s.enumerate_factorizations(&g.singer_cycle().unwrap(), 4, 10),
            Err(Error::TupleBudget { .. })
        ));
    }

    #[test]
    fn enumeration_matches_counter() {
        for &(n, q, ell) in &[(2usize, 3u64, 3usize), (2, 4, 2), (3, 2, 3), (3, 2, 4), (2, 5, 3)] {
            let g = GlGroup::over(n, q).unwrap();
            let s = HurwitzSpace::new(g.clone()).unwrap();
            let counter = FactorCounter::new(g.clone()).unwrap();
            for target in [g.singer_cycle().unwrap(), jordan_block(&g)] {
                let set = s.enumerate_factorizations(&target, ell, DEFAULT_TUPLE_BUDGET).unwrap();
                let count = counter.count(&target, &StepPlan::all(ell)).unwrap();
                assert_eq!(BigUint::from(set.len()), count, "n={n} q={q} l={ell}");
            }
        }
    }

    #[test]
    fn gl4_f2_orbits() {
        let g = GlGroup::over(4, 2).unwrap();
        let s = HurwitzSpace::new(g.clone()).unwrap();
        let u = jordan_block(&g);
        let set = s.enumerate_factorizations(&u, 3, DEFAULT_TUPLE_BUDGET).unwrap();
        assert_eq!(set.len(), 64);
        let mut sizes: Vec<usize> = s.orbit_decompose(&set).unwrap().iter().map(|o| o.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![16, 48]);

        let r = singer_orbit_check(4, 2, 4, DEFAULT_TUPLE_BUDGET).unwrap();
        assert_eq!(r.tuple_count, 3375);
        assert_eq!(r.classes[0].orbit_sizes, vec![3375]);

        let one = FqElem::ONE;
        let p = g.companion(&[one, one, one, one]).unwrap();
        let set = s.enumerate_factorizations(&p, 4, DEFAULT_TUPLE_BUDGET).unwrap();
        assert_eq!(set.len(), 3375);
        let orbits = s.orbit_decompose(&set).unwrap();
        assert_eq!(orbits.len(), 4);
        assert_eq!(orbits.iter().map(|o| o.size).sum::<usize>(), 3375);
    }

    #[test]
    fn rank_two_classes() {
        // each determinant class has q+1 or 2(q+1) tuples and is one orbit
        for q in [2u64, 3, 4, 5, 7] {
            let r = singer_orbit_check(2, q, 2, DEFAULT_TUPLE_BUDGET).unwrap();
            assert!(r.pass, "q={q}");
            for c in &r.classes {
                let k = c.tuple_count as u64;
                assert!(k == q + 1 || k == 2 * (q + 1), "q={q} {c:?}");
            }
        }
    }

    #[test]
    fn foreign_tuples_rejected() {
        let g = GlGroup::over(2, 3).unwrap();
        let s = HurwitzSpace::new(g.clone()).unwrap();
        let c = g.singer_cycle().unwrap();
        let set = s.enumerate_factorizations(&c, 2, 100).unwrap();
        let t = s.tuple(&set, 0);
        assert!(s.factorization_set(&g.identity(), &[t.clone()]).is_err());
        let partial = s.factorization_set(&c, &[t]).unwrap();
        assert!(s.orbit_decompose(&partial).is_err());
    }

    #[test]
    fn json_shape() {
        let r = singer_orbit_check(2, 3, 2, 100).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for k in ["target_charpoly", "ell", "classes"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        assert!(v["classes"][0].get("orbit_sizes").is_some());
    }

    fn braid_cases() -> Vec<(HurwitzSpace, usize)> {
        vec![
            (HurwitzSpace::new(GlGroup::over(3, 2).unwrap()).unwrap(), 4),
            (HurwitzSpace::new(GlGroup::over(2, 5).unwrap()).unwrap(), 5),
            (HurwitzSpace::new(GlGroup::over(3, 3).unwrap()).unwrap(), 4),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn braid_relations(case in 0usize..3, seed in prop::collection::vec(any::<u32>(), 5)) {
            thread_local! {
                static CASES: Vec<(HurwitzSpace, usize)> = braid_cases();
            }
            CASES.with(|cases| {
                let (s, ell) = &cases[case];
                let ell = *ell;
                let idx: Vec<usize> = seed[..ell].iter().map(|&x| x as usize % s.reflection_count()).collect();
                let t = s.pack(&idx);
                for inv in [false, true] {
                    for i in 0..ell - 2 {
                        let a = s.braid_packed(s.braid_packed(s.braid_packed(t, ell, i, inv), ell, i + 1, inv), ell, i, inv);
                        let b = s.braid_packed(s.braid_packed(s.braid_packed(t, ell, i + 1, inv), ell, i, inv), ell, i + 1, inv);
                        prop_assert_eq!(a, b);
                    }
                    for i in 0..ell - 1 {
                        for j in i + 2..ell - 1 {
                            let a = s.braid_packed(s.braid_packed(t, ell, i, inv), ell, j, inv);
                            let b = s.braid_packed(s.braid_packed(t, ell, j, inv), ell, i, inv);
                            prop_assert_eq!(a, b);
                        }
                    }
                    for i in 0..ell - 1 {
                        prop_assert_eq!(s.braid_packed(s.braid_packed(t, ell, i, inv), ell, i, !inv), t);
                    }
                }
                let before: Vec<Matrix> = s.unpack(t, ell).iter().map(|&j| s.group.from_key(s.keys[j])).collect();
                let w = s.braid_packed(t, ell, 0, false);
                let after: Vec<Matrix> = s.unpack(w, ell).iter().map(|&j| s.group.from_key(s.keys[j])).collect();
                let prod = |v: &[Matrix]| v.iter().fold(s.group.identity(), |p, m| s.group.mul(&p, m));
                prop_assert_eq!(prod(&before), prod(&after));
                prop_assert_eq!(s.det_multiset(&s.unpack(t, ell)), s.det_multiset(&s.unpack(w, ell)));
                Ok(())
            })?;
        }
    }
}
