//! Absolute length, the interval `[e, c]` below a target, Kreweras
//! complementation and the fixed-space map to the subspace lattice.

use crate::error::{Error, Result};
use crate::glnq::{GlGroup, GroupIndex, Matrix, SubspaceKey, DEFAULT_GROUP_BOUND};
use crate::hurwitz::HurwitzSpace;
use crate::qformula::q_binom;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Reflection length, equal to the codimension of the fixed space.
pub fn absolute_length(group: &GlGroup, g: &Matrix) -> usize {
    group.fixed_codim(g)
}

/// Members `w` of `[e, c]`, i.e. `l(w) + l(w^-1 c) = l(c)`, sorted by key.
#[derive(Clone, Debug)]
pub struct IntervalData {
    pub target: u64,
    members: Vec<u64>,
    ranks: Vec<u8>,
    /// `rank_sizes[r]` members of absolute length `r`.
    pub rank_sizes: Vec<usize>,
}

impl IntervalData {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn rank(&self, key: u64) -> Option<usize> {
        self.members.binary_search(&key).ok().map(|i| self.ranks[i] as usize)
    }

    pub fn contains(&self, key: u64) -> bool {
        self.members.binary_search(&key).is_ok()
    }

    /// Members of one rank, sorted by key.
    pub fn rank_members(&self, r: usize) -> Vec<u64> {
        self.members
            .iter()
            .zip(&self.ranks)
            .filter(|&(_, &k)| k as usize == r)
            .map(|(&m, _)| m)
            .collect()
    }
}

/// Full scan of the group for the rank-additivity criterion.
pub fn interval(group: &GlGroup, c: &Matrix) -> Result<IntervalData> {
    let index = GroupIndex::with_bound(group, DEFAULT_GROUP_BOUND)?;
    let top = absolute_length(group, c);
    let hits: Vec<(u64, u8)> = index
        .keys()
        .par_iter()
        .filter_map(|&k| {
            let w = group.from_key(k);
            let r = absolute_length(group, &w);
            if r > top {
                return None;
            }
            let rest = group.mul(&group.inv(&w).ok()?, c);
            (r + absolute_length(group, &rest) == top).then_some((k, r as u8))
        })
        .collect();
    let mut rank_sizes = vec![0usize; top + 1];
    for &(_, r) in &hits {
        rank_sizes[r as usize] += 1;
    }
    let (members, ranks) = hits.into_iter().unzip();
    Ok(IntervalData {
        target: group.key(c),
        members,
        ranks,
        rank_sizes,
    })
}

/// `w -> w^-1 c`.
pub fn kreweras(group: &GlGroup, data: &IntervalData, w: &Matrix) -> Result<Matrix> {
    if !data.contains(group.key(w)) {
        return Err(Error::Invalid("element does not lie in the interval".into()));
    }
    let c = group.from_key(data.target);
    Ok(group.mul(&group.inv(w)?, &c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberCount {
    pub fiber_size: usize,
    pub subspaces: usize,
}

/// `{n, q, rank_sizes, subspace_rank_sizes, pi_image_sizes, pi_surjective,
/// fiber_multiset_by_rank, constant_fibers_by_rank, missed_subspaces}`.
/// Rank `r` of the interval maps to subspaces of dimension `n - r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiReport {
    pub n: usize,
    pub q: u64,
    pub rank_sizes: Vec<usize>,
    pub subspace_rank_sizes: Vec<usize>,
    pub pi_image_sizes: Vec<usize>,
    pub pi_surjective: bool,
    /// Per rank, fiber sizes over all subspaces of the matching dimension,
    /// missed subspaces counted with fiber size zero.
    pub fiber_multiset_by_rank: Vec<Vec<FiberCount>>,
    pub constant_fibers_by_rank: Vec<bool>,
    /// Bases (rows of integer representatives) of subspaces not hit.
    pub missed_subspaces: Vec<Vec<Vec<u32>>>,
}

/// The map `w -> (F_q^n)^w` from `[e, c]` to subspaces, rank by rank.
pub fn pi_map_report(group: &GlGroup, data: &IntervalData) -> Result<PiReport> {
    let n = group.n();
    let q = group.q();
    let mut fibers: Vec<BTreeMap<SubspaceKey, usize>> = vec![BTreeMap::new(); n + 1];
    let spaces: Vec<(usize, SubspaceKey)> = data
        .members
        .par_iter()
        .zip(data.ranks.par_iter())
        .map(|(&k, &r)| (r as usize, group.fixed_space(&group.from_key(k))))
        .collect();
    for (r, s) in spaces {
        if r > n || s.dim != n - r {
            return Err(Error::Internal("fixed space dimension differs from n - rank".into()));
        }
        *fibers[r].entry(s).or_default() += 1;
    }
    let mut rank_sizes = data.rank_sizes.clone();
    rank_sizes.resize(n + 1, 0);
    let mut subspace_rank_sizes = Vec::with_capacity(n + 1);
    let mut fiber_multiset_by_rank = Vec::with_capacity(n + 1);
    let mut constant_fibers_by_rank = Vec::with_capacity(n + 1);
    let mut missed_subspaces = Vec::new();
    for (r, hit) in fibers.iter().enumerate() {
        let total = q_binom(n as u64, r as u64)?
            .eval_u64(q)
            .ok_or_else(|| Error::Internal("Gaussian binomial overflow".into()))? as usize;
        subspace_rank_sizes.push(total);
        let mut multiset: BTreeMap<usize, usize> = BTreeMap::new();
        for &size in hit.values() {
            *multiset.entry(size).or_default() += 1;
        }
        if hit.len() < total {
            multiset.insert(0, total - hit.len());
            for s in group.enumerate_subspaces(n - r) {
                if !hit.contains_key(&s) {
                    missed_subspaces.push(
                        group
                            .subspace_basis(s)
                            .iter()
                            .map(|v| v.iter().map(|&x| group.field().to_int(x)).collect())
                            .collect(),
                    );
                }
            }
        }
        constant_fibers_by_rank.push(multiset.len() == 1);
        fiber_multiset_by_rank.push(
            multiset
                .into_iter()
                .map(|(fiber_size, subspaces)| FiberCount { fiber_size, subspaces })
                .collect(),
        );
    }
    let pi_image_sizes: Vec<usize> = fibers.iter().map(|m| m.len()).collect();
    Ok(PiReport {
        n,
        q,
        pi_surjective: pi_image_sizes == subspace_rank_sizes,
        rank_sizes,
        subspace_rank_sizes,
        pi_image_sizes,
        fiber_multiset_by_rank,
        constant_fibers_by_rank,
        missed_subspaces,
    })
}

/// Every prefix product `t_1 ... t_i` of every shortest reflection
/// factorization of `c`.
pub fn prefix_products(space: &HurwitzSpace, c: &Matrix, budget: usize) -> Result<BTreeSet<u64>> {
    let g = space.group();
    let ell = absolute_length(g, c);
    let set = space.enumerate_factorizations(c, ell, budget)?;
    let mut out = BTreeSet::new();
    out.insert(g.key(&g.identity()));
    for i in 0..set.len() {
        let mut p = g.identity();
        for k in space.tuple(&set, i) {
            p = g.mul(&p, &g.from_key(k));
            out.insert(g.key(&p));
        }
    }
    Ok(out)
}
