//! Dense enumeration of GL_n(F_q) with key <-> index lookup.

use super::GlGroup;
use crate::error::{Error, Result};
use crate::gf::FqElem;

/// Default cap on `|GL_n(F_q)|` for dense indexing.
pub const DEFAULT_GROUP_BOUND: u128 = 30_000_000;

/// Keys below this bound get a direct lookup array.
const DIRECT_KEY_BOUND: u128 = 1 << 24;

pub fn gl_order(n: usize, q: u64) -> u128 {
    let q = q as u128;
    let mut ord = q.pow((n * n.saturating_sub(1) / 2) as u32);
    for i in 1..=n {
        ord *= q.pow(i as u32) - 1;
    }
    ord
}

/// Row vectors of length n, encoded as integers `sum_j int(v_j) q^j`.
pub(crate) struct VectorSpace {
    pub q: u32,
    pub size: u32,
    add: Vec<u32>,
    /// scale[c * size + v] = (c-th field element by integer rep) * v
    scale: Vec<u32>,
}

impl VectorSpace {
    pub fn new(g: &GlGroup) -> Self {
        let n = g.n();
        let q = g.q() as u32;
        let size = q.pow(n as u32);
        let f = g.field();
        let digits = |mut v: u32| -> Vec<FqElem> {
            (0..n)
                .map(|_| {
                    let d = f.from_int_unchecked(v % q);
                    v /= q;
                    d
                })
                .collect()
        };
        let undigits = |d: &[FqElem]| -> u32 { d.iter().rev().fold(0, |acc, &x| acc * q + f.to_int(x)) };
        let vecs: Vec<Vec<FqElem>> = (0..size).map(digits).collect();
        let mut add = vec![0u32; (size * size) as usize];
        for a in 0..size {
            for b in 0..size {
                let s: Vec<FqElem> = vecs[a as usize]
                    .iter()
                    .zip(&vecs[b as usize])
                    .map(|(&x, &y)| f.add(x, y))
                    .collect();
                add[(a * size + b) as usize] = undigits(&s);
            }
        }
        let mut scale = vec![0u32; (q * size) as usize];
        for c in 0..q {
            let ce = f.from_int_unchecked(c);
            for v in 0..size {
                let s: Vec<FqElem> = vecs[v as usize].iter().map(|&x| f.mul(ce, x)).collect();
                scale[(c * size + v) as usize] = undigits(&s);
            }
        }
        VectorSpace { q, size, add, scale }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.size + b) as usize]
    }

    #[inline]
    pub fn scale(&self, c: u32, v: u32) -> u32 {
        self.scale[(c * self.size + v) as usize]
    }

    /// Membership bitmap of the span of `span` extended by `v`.
    pub fn extend_span(&self, span: &[bool], v: u32) -> Vec<bool> {
        let mut out = span.to_vec();
        for (s, &inside) in span.iter().enumerate() {
            if inside {
                for c in 1..self.q {
                    out[self.add(s as u32, self.scale(c, v)) as usize] = true;
                }
            }
        }
        out
    }
}

/// All of GL_n(F_q) as a sorted key list.
pub struct GroupIndex {
    n: usize,
    q: u64,
    keys: Vec<u64>,
    direct: Option<Vec<u32>>,
}

impl GroupIndex {
    pub fn new(g: &GlGroup) -> Result<Self> {
        Self::with_bound(g, DEFAULT_GROUP_BOUND)
    }

    pub fn with_bound(g: &GlGroup, bound: u128) -> Result<Self> {
        let order = g.order();
        if order > bound {
            return Err(Error::Bound {
                what: "|GL_n(F_q)|",
                size: order,
                bound,
            });
        }
        let vs = VectorSpace::new(g);
        let n = g.n();
        let row_weight = (vs.size as u64, n);
        let mut keys = Vec::with_capacity(order as usize);
        let mut span0 = vec![false; vs.size as usize];
        span0[0] = true;
        // Rows are chosen from the most significant (last) row down, each outside
        // the span of those already chosen, so keys come out in increasing order.
        fn rec(vs: &VectorSpace, row: usize, span: &[bool], acc: u64, weight: (u64, usize), keys: &mut Vec<u64>) {
            let place = weight.0.pow(row as u32);
            for v in 0..vs.size {
                if span[v as usize] {
                    continue;
                }
                let key = acc + v as u64 * place;
                if row == 0 {
                    keys.push(key);
                } else {
                    let next = vs.extend_span(span, v);
                    rec(vs, row - 1, &next, key, weight, keys);
                }
            }
        }
        rec(&vs, n - 1, &span0, 0, row_weight, &mut keys);
        debug_assert!(keys.windows(2).all(|w| w[0] < w[1]));
        if keys.len() as u128 != order {
            return Err(Error::Internal(format!(
                "enumerated {} elements, expected {order}",
                keys.len()
            )));
        }
        let key_space = (g.q() as u128).pow((n * n) as u32);
        let direct = (key_space <= DIRECT_KEY_BOUND).then(|| {
            let mut d = vec![u32::MAX; key_space as usize];
            for (i, &k) in keys.iter().enumerate() {
                d[k as usize] = i as u32;
            }
            d
        });
        Ok(GroupIndex { n, q: g.q(), keys, direct })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[u64] {
        &self.keys
    }

    #[inline]
    pub fn key_of(&self, idx: usize) -> u64 {
        self.keys[idx]
    }

    #[inline]
    pub fn index_of(&self, key: u64) -> Option<usize> {
        match &self.direct {
            Some(d) => d
                .get(key as usize)
                .copied()
                .filter(|&i| i != u32::MAX)
                .map(|i| i as usize),
            None => self.keys.binary_search(&key).ok(),
        }
    }
}
