//! Exact counts of ordered reflection factorizations by convolution in the
//! group algebra of GL_n(F_q).
//!
//! A forward step maps `v` to `v'[h] = sum_{t in S} v[h t^{-1}]`, so after `k`
//! steps `v[h]` counts tuples with `t_1 ... t_k = h`. A backward step from the
//! target maps `w` to `w'[h] = sum_{t in S} w[h t]`. Both are gathers against a
//! list of right multipliers, which lets dense and sparse modes share one shape.

mod algebra;
mod survey;

pub use algebra::{jm_commutation, jm_element, GroupAlgebraVector, JmReport};
pub use survey::{survey_regular_elliptic, SurveyRow};

use crate::error::{Error, Result};
use crate::gf::FqElem;
use crate::glnq::{GlGroup, GroupIndex, Matrix, DEFAULT_GROUP_BOUND};
use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;
use std::ops::AddAssign;
use std::sync::{Arc, Mutex};

/// Groups up to this order are counted with dense vectors in `Auto` mode.
pub const DEFAULT_DENSE_BOUND: u128 = 1 << 22;
/// Largest sparse support allowed before a step aborts.
pub const DEFAULT_MEMORY_CAP: usize = 20_000_000;
/// Largest `|G| * |S|` for which a right-multiplication table is materialized.
const TABLE_CAP: u128 = 1 << 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepFilter {
    All,
    Det(FqElem),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepPlan {
    steps: Vec<StepFilter>,
}

impl StepPlan {
    pub fn uniform(ell: usize, filter: StepFilter) -> StepPlan {
        StepPlan { steps: vec![filter; ell] }
    }

    pub fn all(ell: usize) -> StepPlan {
        StepPlan::uniform(ell, StepFilter::All)
    }

    pub fn from_dets(alphas: &[FqElem]) -> StepPlan {
        StepPlan {
            steps: alphas.iter().map(|&a| StepFilter::Det(a)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[StepFilter] {
        &self.steps
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Auto,
    Dense,
    Sparse,
}

#[derive(Clone, Debug)]
pub struct CountOptions {
    pub mode: Mode,
    pub meet_in_middle: bool,
    pub dense_bound: u128,
    pub memory_cap: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            mode: Mode::Auto,
            meet_in_middle: false,
            dense_bound: DEFAULT_DENSE_BOUND,
            memory_cap: DEFAULT_MEMORY_CAP,
        }
    }
}

/// Coefficient ring for the counters. Counts never exceed the product of the
/// step sizes, so `u128` is exact whenever that product fits.
trait Coef: Clone + Send + Sync + Zero + for<'a> AddAssign<&'a Self> {
    fn one() -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn into_big(self) -> BigUint;
}

impl Coef for u128 {
    fn one() -> Self {
        1
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn into_big(self) -> BigUint {
        BigUint::from(self)
    }
}

impl Coef for BigUint {
    fn one() -> Self {
        BigUint::from(1u32)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn into_big(self) -> BigUint {
        self
    }
}

/// Result of a fixed-determinant count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedDetCount {
    #[serde(with = "crate::util::decimal")]
    pub count: BigUint,
    /// Set when the product of the prescribed determinants differs from `det(target)`.
    pub det_obstructed: bool,
}

/// `{n, q, ell, target_charpoly, filter, count}` with the count as a decimal string.
#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub n: usize,
    pub q: u64,
    pub ell: usize,
    pub target_charpoly: Vec<u32>,
    pub filter: String,
    #[serde(with = "crate::util::decimal")]
    pub count: BigUint,
}

type TableKey = (StepFilter, bool);

/// Reusable counting context for one group.
pub struct FactorCounter {
    group: GlGroup,
    opts: CountOptions,
    index: Option<GroupIndex>,
    reflections: Vec<(u64, FqElem, Matrix)>,
    tables: Mutex<FxHashMap<TableKey, Arc<Vec<u32>>>>,
}

impl FactorCounter {
    pub fn new(group: GlGroup) -> Result<Self> {
        Self::with_options(group, CountOptions::default())
    }

    pub fn with_options(group: GlGroup, opts: CountOptions) -> Result<Self> {
        if group.n() == 1 && group.q() == 2 {
            return Err(Error::DegenerateGl1F2);
        }
        let dense = match opts.mode {
            Mode::Dense => true,
            Mode::Sparse => false,
            Mode::Auto => group.order() <= opts.dense_bound,
        };
        let index = if dense {
            Some(GroupIndex::with_bound(&group, DEFAULT_GROUP_BOUND)?)
        } else {
            None
        };
        let reflections = group
            .enumerate_reflections(None)
            .into_iter()
            .map(|r| (r.key, r.det, group.from_key(r.key)))
            .collect();
        Ok(FactorCounter {
            group,
            opts,
            index,
            reflections,
            tables: Mutex::new(FxHashMap::default()),
        })
    }

    pub fn group(&self) -> &GlGroup {
        &self.group
    }

    pub fn is_dense(&self) -> bool {
        self.index.is_some()
    }

    /// Reflections passing `filter`, as `(key, det, matrix)`, sorted by key.
    pub fn reflections(&self, filter: StepFilter) -> impl Iterator<Item = &(u64, FqElem, Matrix)> {
        self.reflections.iter().filter(move |r| match filter {
            StepFilter::All => true,
            StepFilter::Det(a) => r.1 == a,
        })
    }

    fn step_size(&self, filter: StepFilter) -> usize {
        self.reflections(filter).count()
    }

    /// Right multipliers for a gather step: `t^{-1}` going forward, `t` going backward.
    fn multipliers(&self, filter: StepFilter, forward: bool) -> Vec<Matrix> {
        self.reflections(filter)
            .map(|(_, _, t)| {
                if forward {
                    self.group.inv(t).expect("reflections are invertible")
                } else {
                    t.clone()
                }
            })
            .collect()
    }

    fn check_target(&self, target: &Matrix) -> Result<()> {
        if target.n() != self.group.n() {
            return Err(Error::DimensionMismatch {
                left: self.group.n(),
                right: target.n(),
            });
        }
        if self.group.det(target).is_zero() {
            return Err(Error::Singular);
        }
        Ok(())
    }

    /// `#{(t_1, ..., t_l) : t_1 ... t_l = target, t_i in the class of step i}`.
    pub fn count(&self, target: &Matrix, plan: &StepPlan) -> Result<BigUint> {
        self.check_target(target)?;
        let bound: Option<u128> = plan
            .steps()
            .iter()
            .try_fold(1u128, |acc, &f| acc.checked_mul(self.step_size(f) as u128));
        match bound {
            Some(_) => self.count_with::<u128>(target, plan),
            None => self.count_with::<BigUint>(target, plan),
        }
    }

    fn count_with<C: Coef>(&self, target: &Matrix, plan: &StepPlan) -> Result<BigUint> {
        let steps = plan.steps();
        let ell = steps.len();
        if ell == 0 {
            let one = target == &self.group.identity();
            return Ok(BigUint::from(one as u32));
        }
        if self.opts.meet_in_middle && ell >= 2 {
            let k = ell / 2;
            let mut fwd = self.delta::<C>(&self.group.identity());
            for (i, &f) in steps[..k].iter().enumerate() {
                fwd = self.step(fwd, f, true, i)?;
            }
            let mut bwd = self.delta::<C>(target);
            for (i, &f) in steps[k..].iter().rev().enumerate() {
                bwd = self.step(bwd, f, false, k + i)?;
            }
            return Ok(self.inner(&fwd, &bwd).into_big());
        }
        let mut v = self.delta::<C>(&self.group.identity());
        for (i, &f) in steps[..ell - 1].iter().enumerate() {
            v = self.step(v, f, true, i)?;
        }
        Ok(self.finish(&v, target, steps[ell - 1]).into_big())
    }

    /// Every determinant sequence of length `ell` with product `det(target)`,
    /// with its count, in lexicographic order of field-element integers. The
    /// search walks the trie of prefixes so shared prefixes are convolved once.
    pub fn count_by_det_sequence(&self, target: &Matrix, ell: usize) -> Result<Vec<(Vec<FqElem>, BigUint)>> {
        self.check_target(target)?;
        if ell == 0 {
            return Ok(vec![(Vec::new(), self.count(target, &StepPlan::all(0))?)]);
        }
        let f = self.group.field();
        let mut dets: Vec<FqElem> = f.nonzero_elements().collect();
        dets.sort_by_key(|&a| f.to_int(a));
        let det_c = self.group.det(target);
        let mut out = Vec::new();
        let v = self.delta::<BigUint>(&self.group.identity());
        let mut prefix = Vec::with_capacity(ell);
        self.det_trie(&v, target, det_c, ell, &dets, &mut prefix, &mut out)?;
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn det_trie(
        &self,
        v: &Vector<BigUint>,
        target: &Matrix,
        det_c: FqElem,
        ell: usize,
        dets: &[FqElem],
        prefix: &mut Vec<FqElem>,
        out: &mut Vec<(Vec<FqElem>, BigUint)>,
    ) -> Result<()> {
        let f = self.group.field();
        if prefix.len() == ell - 1 {
            let prod = prefix.iter().fold(FqElem::ONE, |acc, &a| f.mul(acc, a));
            let last = f.div(det_c, prod).expect("determinants are nonzero");
            let c = self.finish(v, target, StepFilter::Det(last));
            prefix.push(last);
            out.push((prefix.clone(), c));
            prefix.pop();
            return Ok(());
        }
        for &a in dets {
            let next = self.step(v.clone(), StepFilter::Det(a), true, prefix.len())?;
            prefix.push(a);
            self.det_trie(&next, target, det_c, ell, dets, prefix, out)?;
            prefix.pop();
        }
        Ok(())
    }

    /// Count with the exact determinant sequence `alphas`.
    pub fn count_fixed_dets(&self, target: &Matrix, alphas: &[FqElem]) -> Result<FixedDetCount> {
        self.check_target(target)?;
        let f = self.group.field();
        for &a in alphas {
            f.check(a)?;
            if a.is_zero() {
                return Err(Error::Invalid("a reflection determinant cannot be zero".into()));
            }
        }
        let prod = alphas.iter().fold(FqElem::ONE, |acc, &a| f.mul(acc, a));
        if prod != self.group.det(target) {
            return Ok(FixedDetCount {
                count: BigUint::zero(),
                det_obstructed: true,
            });
        }
        Ok(FixedDetCount {
            count: self.count(target, &StepPlan::from_dets(alphas))?,
            det_obstructed: false,
        })
    }

    pub fn report(&self, target: &Matrix, plan: &StepPlan) -> Result<CountReport> {
        let count = self.count(target, plan)?;
        let f = self.group.field();
        let filter = if plan.steps().iter().all(|&s| s == StepFilter::All) {
            "all".to_string()
        } else {
            let parts: Vec<String> = plan
                .steps()
                .iter()
                .map(|s| match s {
                    StepFilter::All => "*".to_string(),
                    StepFilter::Det(a) => f.to_int(*a).to_string(),
                })
                .collect();
            format!("dets:{}", parts.join(","))
        };
        Ok(CountReport {
            n: self.group.n(),
            q: self.group.q(),
            ell: plan.len(),
            target_charpoly: self.group.charpoly_ints(target),
            filter,
            count,
        })
    }

    fn delta<C: Coef>(&self, at: &Matrix) -> Vector<C> {
        let key = self.group.key(at);
        match &self.index {
            Some(idx) => {
                let mut v = vec![C::zero(); idx.len()];
                v[idx.index_of(key).expect("invertible matrices are indexed")] = C::one();
                Vector::Dense(v)
            }
            None => {
                let mut m = FxHashMap::default();
                m.insert(key, C::one());
                Vector::Sparse(m)
            }
        }
    }

    /// `table[j * |G| + h] = index(h * M_j)` for the step's multipliers `M_j`.
    fn table(&self, filter: StepFilter, forward: bool) -> Option<Arc<Vec<u32>>> {
        let idx = self.index.as_ref()?;
        let size = self.step_size(filter);
        if (idx.len() as u128) * (size as u128) > TABLE_CAP {
            return None;
        }
        if let Some(t) = self.tables.lock().expect("table cache").get(&(filter, forward)) {
            return Some(t.clone());
        }
        let mults = self.multipliers(filter, forward);
        let g = &self.group;
        let n = idx.len();
        let mut table = vec![0u32; n * mults.len()];
        table.par_chunks_mut(n).zip(mults.par_iter()).for_each(|(row, m)| {
            for (h, slot) in row.iter_mut().enumerate() {
                let hm = g.mul(&g.from_key(idx.key_of(h)), m);
                *slot = idx.index_of(g.key(&hm)).expect("products stay in the group") as u32;
            }
        });
        let table = Arc::new(table);
        self.tables
            .lock()
            .expect("table cache")
            .insert((filter, forward), table.clone());
        Some(table)
    }

    fn step<C: Coef>(&self, v: Vector<C>, filter: StepFilter, forward: bool, step: usize) -> Result<Vector<C>> {
        match v {
            Vector::Dense(v) => Ok(Vector::Dense(self.dense_step(&v, filter, forward))),
            Vector::Sparse(m) => Ok(Vector::Sparse(self.sparse_step(&m, filter, forward, step)?)),
        }
    }

    fn dense_step<C: Coef>(&self, v: &[C], filter: StepFilter, forward: bool) -> Vec<C> {
        let idx = self.index.as_ref().expect("dense mode has an index");
        let n = idx.len();
        let mut out = vec![C::zero(); n];
        const CHUNK: usize = 2048;
        match self.table(filter, forward) {
            Some(table) => {
                let k = table.len() / n.max(1);
                out.par_chunks_mut(CHUNK).enumerate().for_each(|(c, chunk)| {
                    let base = c * CHUNK;
                    for j in 0..k {
                        let row = &table[j * n + base..j * n + base + chunk.len()];
                        for (o, &src) in chunk.iter_mut().zip(row) {
                            let x = &v[src as usize];
                            if !x.is_zero() {
                                *o += x;
                            }
                        }
                    }
                });
            }
            None => {
                let mults = self.multipliers(filter, forward);
                let g = &self.group;
                out.par_chunks_mut(CHUNK).enumerate().for_each(|(c, chunk)| {
                    for (i, o) in chunk.iter_mut().enumerate() {
                        let h = g.from_key(idx.key_of(c * CHUNK + i));
                        for m in &mults {
                            let src = idx.index_of(g.key(&g.mul(&h, m))).expect("products stay in the group");
                            *o += &v[src];
                        }
                    }
                });
            }
        }
        out
    }

    fn sparse_step<C: Coef>(
        &self,
        v: &FxHashMap<u64, C>,
        filter: StepFilter,
        forward: bool,
        step: usize,
    ) -> Result<FxHashMap<u64, C>> {
        // Scatter form: the support of `v'` is `supp(v) * S^{-1}` going backward and
        // `supp(v) * S` going forward, so push each entry through the inverse multipliers.
        let mults = self.multipliers(filter, !forward);
        let g = &self.group;
        let cap = self.opts.memory_cap;
        let entries: Vec<(&u64, &C)> = v.iter().collect();
        let partials: Vec<FxHashMap<u64, C>> = entries
            .par_chunks(4096)
            .map(|chunk| {
                let mut local: FxHashMap<u64, C> = FxHashMap::default();
                for (&key, c) in chunk {
                    let a = g.from_key(key);
                    for m in &mults {
                        *local.entry(g.key(&g.mul(&a, m))).or_insert_with(C::zero) += *c;
                    }
                }
                local
            })
            .collect();
        let mut out: FxHashMap<u64, C> = FxHashMap::default();
        for part in partials {
            for (k, c) in part {
                *out.entry(k).or_insert_with(C::zero) += &c;
            }
            if out.len() > cap {
                return Err(Error::MemoryCap {
                    step,
                    support: out.len(),
                    cap,
                });
            }
        }
        Ok(out)
    }

    /// Coefficient at `target` after one more forward step.
    fn finish<C: Coef>(&self, v: &Vector<C>, target: &Matrix, filter: StepFilter) -> C {
        let g = &self.group;
        let mut acc = C::zero();
        for (_, _, t) in self.reflections(filter) {
            let src = g.mul(target, &g.inv(t).expect("reflections are invertible"));
            let key = g.key(&src);
            match v {
                Vector::Dense(d) => {
                    let i = self.index.as_ref().expect("dense").index_of(key).expect("indexed");
                    acc += &d[i];
                }
                Vector::Sparse(m) => {
                    if let Some(c) = m.get(&key) {
                        acc += c;
                    }
                }
            }
        }
        acc
    }

    fn inner<C: Coef>(&self, a: &Vector<C>, b: &Vector<C>) -> C {
        match (a, b) {
            (Vector::Dense(x), Vector::Dense(y)) => x
                .par_iter()
                .zip(y.par_iter())
                .filter(|(p, r)| !p.is_zero() && !r.is_zero())
                .map(|(p, r)| p.mul_ref(r))
                .reduce(C::zero, |mut s, t| {
                    s += &t;
                    s
                }),
            (Vector::Sparse(x), Vector::Sparse(y)) => {
                let (small, large) = if x.len() <= y.len() { (x, y) } else { (y, x) };
                let mut acc = C::zero();
                for (k, c) in small {
                    if let Some(d) = large.get(k) {
                        acc += &c.mul_ref(d);
                    }
                }
                acc
            }
            _ => unreachable!("both sides share the counter's mode"),
        }
    }
}

#[derive(Clone)]
enum Vector<C> {
    Dense(Vec<C>),
    Sparse(FxHashMap<u64, C>),
}

/// Convenience wrapper: one count in a fresh counter.
pub fn count_factorizations(group: &GlGroup, target: &Matrix, plan: &StepPlan) -> Result<BigUint> {
    FactorCounter::new(group.clone())?.count(target, plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: run over every tuple of reflections and multiply out.
    fn brute(g: &GlGroup, target: &Matrix, ell: usize, dets: Option<&[FqElem]>) -> u64 {
        let refl: Vec<(FqElem, Matrix)> = g
            .enumerate_reflections(None)
            .into_iter()
            .map(|r| (r.det, g.from_key(r.key)))
            .collect();
        fn rec(g: &GlGroup, refl: &[(FqElem, Matrix)], p: Matrix, d: usize, ell: usize, target: &Matrix, dets: Option<&[FqElem]>) -> u64 {
            if d == ell {
                return (&p == target) as u64;
            }
            refl.iter()
                .filter(|(det, _)| dets.map_or(true, |a| a[d] == *det))
                .map(|(_, t)| rec(g, refl, g.mul(&p, t), d + 1, ell, target, dets))
                .sum()
        }
        rec(g, &refl, g.identity(), 0, ell, target, dets)
    }

    fn opts(mode: Mode, mitm: bool) -> CountOptions {
        CountOptions {
            mode,
            meet_in_middle: mitm,
            ..CountOptions::default()
        }
    }

    #[test]
    fn shortest_singer_counts() {
        let g = GlGroup::over(2, 2).unwrap();
        let c = g.singer_cycle().unwrap();
        assert_eq!(count_factorizations(&g, &c, &StepPlan::all(2)).unwrap(), BigUint::from(3u32));
        assert_eq!(brute(&g, &c, 2, None), 3);
    }

    #[test]
    fn three_four_over_f2_matches_brute_force() {
        let g = GlGroup::over(3, 2).unwrap();
        let c = g.singer_cycle().unwrap();
        let fc = FactorCounter::new(g.clone()).unwrap();
        assert_eq!(fc.count(&c, &StepPlan::all(4)).unwrap(), BigUint::from(1029u32));
        assert_eq!(brute(&g, &c, 4, None), 1029);
    }

    #[test]
    fn empty_product() {
        let g = GlGroup::over(2, 3).unwrap();
        let fc = FactorCounter::new(g.clone()).unwrap();
        assert_eq!(fc.count(&g.identity(), &StepPlan::all(0)).unwrap(), BigUint::from(1u32));
        let c = g.singer_cycle().unwrap();
        assert!(fc.count(&c, &StepPlan::all(0)).unwrap().is_zero());
    }

    #[test]
    fn degenerate_gl1_f2_is_refused() {
        let g = GlGroup::over(1, 2).unwrap();
        assert!(matches!(FactorCounter::new(g), Err(Error::DegenerateGl1F2)));
    }

    #[test]
    fn fixed_dets_over_f3() {
        let g = GlGroup::over(2, 3).unwrap();
        let c = g.singer_cycle().unwrap();
        let fc = FactorCounter::new(g.clone()).unwrap();
        let dc = g.det(&c);
        let one = FqElem::ONE;
        let a = fc.count_fixed_dets(&c, &[one, dc]).unwrap();
        let b = fc.count_fixed_dets(&c, &[dc, one]).unwrap();
        assert_eq!(a.count, BigUint::from(4u32));
        assert_eq!(a, b);
        assert_eq!(brute(&g, &c, 2, Some(&[one, dc])), 4);
        let bad = fc.count_fixed_dets(&c, &[one, one]).unwrap();
        assert!(bad.det_obstructed && bad.count.is_zero());
    }

    #[test]
    fn det_sequences_partition_the_total() {
        for &(n, q, ell) in &[(2usize, 3u64, 4usize), (2, 5, 3), (3, 3, 4), (2, 4, 3)] {
            let g = GlGroup::over(n, q).unwrap();
            let c = g.singer_cycle().unwrap();
            let fc = FactorCounter::new(g.clone()).unwrap();
            let seqs = fc.count_by_det_sequence(&c, ell).unwrap();
            let total: BigUint = seqs.iter().map(|(_, x)| x.clone()).sum();
            assert_eq!(total, fc.count(&c, &StepPlan::all(ell)).unwrap());
            for (s, x) in &seqs {
                assert_eq!(&fc.count_fixed_dets(&c, s).unwrap().count, x);
            }
            assert_eq!(seqs.len(), (q as usize - 1).pow(ell as u32 - 1));
        }
    }

    #[test]
    fn sparse_and_meet_in_middle_agree_with_dense() {
        let g = GlGroup::over(3, 2).unwrap();
        let c = g.singer_cycle().unwrap();
        let modes = [opts(Mode::Dense, false), opts(Mode::Dense, true), opts(Mode::Sparse, false), opts(Mode::Sparse, true)];
        for ell in 0..=6 {
            let counts: Vec<BigUint> = modes
                .iter()
                .map(|o| {
                    FactorCounter::with_options(g.clone(), o.clone())
                        .unwrap()
                        .count(&c, &StepPlan::all(ell))
                        .unwrap()
                })
                .collect();
            assert!(counts.iter().all(|x| x == &counts[0]), "ell={ell}: {counts:?}");
        }
    }

    #[test]
    fn big_integer_path_matches_u128_path() {
        // 21^30 exceeds 2^128, forcing BigUint coefficients
        let g = GlGroup::over(3, 2).unwrap();
        let c = g.singer_cycle().unwrap();
        let fc = FactorCounter::new(g).unwrap();
        let big = fc.count(&c, &StepPlan::all(30)).unwrap();
        let expect = crate::qformula::tq_checked(3, 30).unwrap().eval_int(&2.into()).unwrap();
        assert_eq!(num_bigint::BigInt::from(big), expect);
    }

    #[test]
    fn memory_cap_is_reported() {
        let g = GlGroup::over(3, 3).unwrap();
        let c = g.singer_cycle().unwrap();
        let o = CountOptions {
            mode: Mode::Sparse,
            memory_cap: 100,
            ..CountOptions::default()
        };
        let fc = FactorCounter::with_options(g, o).unwrap();
        assert!(matches!(fc.count(&c, &StepPlan::all(4)), Err(Error::MemoryCap { .. })));
    }

    #[test]
    fn report_json_shape() {
        let g = GlGroup::over(2, 2).unwrap();
        let c = g.singer_cycle().unwrap();
        let fc = FactorCounter::new(g).unwrap();
        let r = fc.report(&c, &StepPlan::all(2)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["count"], "3");
        assert_eq!(v["filter"], "all");
        assert_eq!(v["target_charpoly"], serde_json::json!([1, 1, 1]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn conjugation_invariance(seed in 0usize..11232, ell in 3usize..6) {
            let g = GlGroup::over(3, 3).unwrap();
            let fc = FactorCounter::new(g.clone()).unwrap();
            let idx = GroupIndex::new(&g).unwrap();
            let h = g.from_key(idx.key_of(seed));
            let c = g.singer_cycle().unwrap();
            let conj = g.conj(&c, &h).unwrap();
            prop_assert_eq!(fc.count(&c, &StepPlan::all(ell)).unwrap(), fc.count(&conj, &StepPlan::all(ell)).unwrap());
        }

        #[test]
        fn random_targets_match_brute_force(seed in 0usize..168, ell in 0usize..4) {
            let g = GlGroup::over(3, 2).unwrap();
            let idx = GroupIndex::new(&g).unwrap();
            let target = g.from_key(idx.key_of(seed));
            let fc = FactorCounter::new(g.clone()).unwrap();
            let got = fc.count(&target, &StepPlan::all(ell)).unwrap();
            prop_assert_eq!(got, BigUint::from(brute(&g, &target, ell, None)));
            if ell < g.fixed_codim(&target) {
                prop_assert!(fc.count(&target, &StepPlan::all(ell)).unwrap().is_zero());
            }
        }
    }
}
