//! Matrices over F_q and the group GL_n(F_q).
//!
//! A matrix key reads the entries row-major as base-q digits,
//! `key = sum_{i,j} int(a_ij) q^(i n + j)`, where `int` is the field's
//! polynomial-basis integer representative.

mod index;
mod reflections;
mod subspace;

pub use index::{gl_order, GroupIndex, DEFAULT_GROUP_BOUND};
pub use reflections::{ReflectionInfo, ReflectionKind};
pub use subspace::SubspaceKey;

use crate::error::{Error, Result};
use crate::gf::{build_field_for_order, FieldTable, FqElem, FqPoly, PolyRing, DEFAULT_FIELD_BOUND};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use std::sync::Arc;

/// Dense `n x n` matrix, entries row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    entries: SmallVec<[FqElem; 25]>,
}

impl Matrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FqElem {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FqElem) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[FqElem] {
        &self.entries
    }
}

/// `{n, q, rows}` with entries as integer representatives in `[0, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub q: u64,
    pub rows: Vec<Vec<u32>>,
}

/// GL_n over a fixed field.
#[derive(Clone, Debug)]
pub struct GlGroup {
    n: usize,
    field: Arc<FieldTable>,
}

impl GlGroup {
    pub fn new(n: usize, field: Arc<FieldTable>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension { n, min: 1 });
        }
        let q = field.q() as u128;
        if q.checked_pow((n * n) as u32).map_or(true, |v| v > u64::MAX as u128 + 1) {
            return Err(Error::KeyOverflow { n, q: q as u64 });
        }
        Ok(GlGroup { n, field })
    }

    /// GL_n(F_q) over the canonical field of order `q`.
    pub fn over(n: usize, q: u64) -> Result<Self> {
        GlGroup::new(n, Arc::new(build_field_for_order(q)?))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    pub fn field(&self) -> &FieldTable {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<FieldTable> {
        &self.field
    }

    /// `|GL_n(F_q)| = q^(n choose 2) prod_{i=1}^n (q^i - 1)`.
    pub fn order(&self) -> u128 {
        gl_order(self.n, self.q())
    }

    pub fn zero(&self) -> Matrix {
        Matrix {
            n: self.n,
            entries: SmallVec::from_elem(FqElem::ZERO, self.n * self.n),
        }
    }

    pub fn identity(&self) -> Matrix {
        let mut m = self.zero();
        for i in 0..self.n {
            m.set(i, i, FqElem::ONE);
        }
        m
    }

    pub fn from_rows(&self, rows: &[Vec<u32>]) -> Result<Matrix> {
        if rows.len() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: rows.len() });
        }
        let mut m = self.zero();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != self.n {
                return Err(Error::DimensionMismatch { left: self.n, right: row.len() });
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, self.field.from_int(v)?);
            }
        }
        Ok(m)
    }

    pub fn to_rows(&self, a: &Matrix) -> Vec<Vec<u32>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.field.to_int(a.get(i, j))).collect())
            .collect()
    }

    pub fn to_json(&self, a: &Matrix) -> MatrixJson {
        MatrixJson {
            n: self.n,
            q: self.q(),
            rows: self.to_rows(a),
        }
    }

    pub fn key(&self, a: &Matrix) -> u64 {
        let q = self.q();
        a.entries
            .iter()
            .rev()
            .fold(0u64, |acc, &e| acc.wrapping_mul(q).wrapping_add(self.field.to_int(e) as u64))
    }

    pub fn from_key(&self, mut key: u64) -> Matrix {
        let q = self.q();
        let mut m = self.zero();
        for e in m.entries.iter_mut() {
            *e = self.field.from_int_unchecked((key % q) as u32);
            key /= q;
        }
        m
    }

    fn check_dim(&self, a: &Matrix) -> Result<()> {
        if a.n != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: a.n });
        }
        Ok(())
    }

    pub fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let n = self.n;
        let f = &*self.field;
        let mut out = self.zero();
        for i in 0..n {
            for k in 0..n {
                let aik = a.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out.entries[idx] = f.add(out.entries[idx], f.mul(aik, b.get(k, j)));
                }
            }
        }
        out
    }

    pub fn checked_mul(&self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        Ok(self.mul(a, b))
    }

    pub fn sub(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let mut out = a.clone();
        for (o, &y) in out.entries.iter_mut().zip(b.entries.iter()) {
            *o = self.field.sub(*o, y);
        }
        out
    }

    pub fn pow(&self, a: &Matrix, mut e: u128) -> Matrix {
        let mut acc = self.identity();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Matrix-vector product on column vectors.
    pub fn apply(&self, a: &Matrix, v: &[FqElem]) -> Vec<FqElem> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(FqElem::ZERO, |acc, j| {
                    self.field.add(acc, self.field.mul(a.get(i, j), v[j]))
                })
            })
            .collect()
    }

    /// Row-reduces `rows` in place to reduced echelon form and returns the pivot columns.
    pub(crate) fn rref(&self, rows: &mut [Vec<FqElem>], ncols: usize) -> Vec<usize> {
        let f = &*self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = f.inv(rows[r][c]).expect("pivot is nonzero");
            for x in rows[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
            for i in 0..rows.len() {
                if i != r && !rows[i][c].is_zero() {
                    let factor = rows[i][c];
                    for j in 0..rows[i].len() {
                        let s = f.mul(factor, rows[r][j]);
                        rows[i][j] = f.sub(rows[i][j], s);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn row_vecs(&self, a: &Matrix) -> Vec<Vec<FqElem>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| a.get(i, j)).collect())
            .collect()
    }

    pub fn rank(&self, a: &Matrix) -> usize {
        let mut rows = self.row_vecs(a);
        self.rref(&mut rows, self.n).len()
    }

    pub fn det(&self, a: &Matrix) -> FqElem {
        let f = &*self.field;
        let n = self.n;
        let mut rows = self.row_vecs(a);
        let mut det = FqElem::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !rows[i][c].is_zero()) else {
                return FqElem::ZERO;
            };
            if p != c {
                rows.swap(p, c);
                det = f.neg(det);
            }
            let piv = rows[c][c];
            det = f.mul(det, piv);
            let inv = f.inv(piv).expect("pivot is nonzero");
            for i in c + 1..n {
                if rows[i][c].is_zero() {
                    continue;
                }
                let factor = f.mul(rows[i][c], inv);
                for j in c..n {
                    let s = f.mul(factor, rows[c][j]);
                    rows[i][j] = f.sub(rows[i][j], s);
                }
            }
        }
        det
    }

    pub fn inv(&self, a: &Matrix) -> Result<Matrix> {
        self.check_dim(a)?;
        let n = self.n;
        let mut rows: Vec<Vec<FqElem>> = (0..n)
            .map(|i| {
                let mut r: Vec<FqElem> = (0..n).map(|j| a.get(i, j)).collect();
                r.extend((0..n).map(|j| if i == j { FqElem::ONE } else { FqElem::ZERO }));
                r
            })
            .collect();
        let pivots = self.rref(&mut rows, n);
        if pivots.len() < n {
            return Err(Error::Singular);
        }
        let mut out = self.zero();
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, rows[i][n + j]);
            }
        }
        Ok(out)
    }

    /// `h^{-1} a h`.
    pub fn conj(&self, a: &Matrix, h: &Matrix) -> Result<Matrix> {
        Ok(self.mul(&self.inv(h)?, &self.mul(a, h)))
    }

    /// `rank(A - I)`, the codimension of the fixed space.
    pub fn fixed_codim(&self, a: &Matrix) -> usize {
        self.rank(&self.sub(a, &self.identity()))
    }

    /// Characteristic polynomial `det(xI - A)` through a Hessenberg reduction.
    pub fn charpoly(&self, a: &Matrix) -> FqPoly {
        let f = &*self.field;
        let n = self.n;
        let mut h = self.row_vecs(a);
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else {
                continue;
            };
            if i != m {
                h.swap(i, m);
                for row in h.iter_mut() {
                    row.swap(i, m);
                }
            }
            let inv = f.inv(h[m][m - 1]).expect("pivot is nonzero");
            for j in m + 1..n {
                if h[j][m - 1].is_zero() {
                    continue;
                }
                let u = f.mul(h[j][m - 1], inv);
                for c in 0..n {
                    let s = f.mul(u, h[m][c]);
                    h[j][c] = f.sub(h[j][c], s);
                }
                for row in h.iter_mut() {
                    let s = f.mul(u, row[j]);
                    row[m] = f.add(row[m], s);
                }
            }
        }
        let ring = PolyRing::new(f);
        let mut p: Vec<FqPoly> = vec![FqPoly::one()];
        for m in 1..=n {
            let lin = FqPoly::new(vec![f.neg(h[m - 1][m - 1]), FqElem::ONE]);
            let mut pm = ring.mul(&lin, &p[m - 1]);
            let mut t = FqElem::ONE;
            for i in 1..m {
                t = f.mul(t, h[m - i][m - i - 1]);
                let c = f.mul(t, h[m - i - 1][m - 1]);
                pm = ring.sub(&pm, &ring.scale(&p[m - i - 1], c));
            }
            p.push(pm);
        }
        p.pop().expect("n >= 1")
    }

    /// Companion matrix of the monic polynomial `x^n + c_{n-1} x^{n-1} + ... + c_0`:
    /// ones on the subdiagonal and `-c_i` down the last column.
    pub fn companion(&self, low: &[FqElem]) -> Result<Matrix> {
        if low.len() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: low.len() });
        }
        let mut m = self.zero();
        for i in 1..self.n {
            m.set(i, i - 1, FqElem::ONE);
        }
        for (i, &c) in low.iter().enumerate() {
            m.set(i, self.n - 1, self.field.neg(c));
        }
        Ok(m)
    }

    pub fn companion_of(&self, poly: &FqPoly) -> Result<Matrix> {
        if poly.degree() != Some(self.n) || poly.leading() != FqElem::ONE {
            return Err(Error::Invalid(format!("companion needs a monic polynomial of degree {}", self.n)));
        }
        self.companion(&poly.coeffs()[..self.n])
    }

    /// The smallest primitive monic polynomial of degree n over F_q.
    pub fn singer_polynomial(&self) -> Result<FqPoly> {
        let size = (self.q() as u128).pow(self.n as u32);
        if size > DEFAULT_FIELD_BOUND as u128 {
            return Err(Error::Bound {
                what: "F_{q^n}",
                size,
                bound: DEFAULT_FIELD_BOUND as u128,
            });
        }
        PolyRing::new(&self.field)
            .smallest_primitive(self.n)
            .ok_or_else(|| Error::Internal("no primitive polynomial".into()))
    }

    /// Companion matrix of the Singer polynomial; an element of order `q^n - 1`.
    pub fn singer_cycle(&self) -> Result<Matrix> {
        self.companion_of(&self.singer_polynomial()?)
    }

    /// Multiplicative order, computed from the factorization of `|GL_n|`.
    pub fn elem_order(&self, a: &Matrix) -> Result<u128> {
        if self.det(a).is_zero() {
            return Err(Error::Singular);
        }
        let id = self.identity();
        let mut ord = self.order();
        let mut m = ord;
        let mut primes = Vec::new();
        let mut d = 2u128;
        while d * d <= m {
            if m % d == 0 {
                primes.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        for p in primes {
            while ord % p == 0 && self.pow(a, ord / p) == id {
                ord /= p;
            }
        }
        Ok(ord)
    }

    /// Irreducible characteristic polynomial; equivalently no proper nonzero stable subspace.
    pub fn is_regular_elliptic(&self, a: &Matrix) -> bool {
        PolyRing::new(&self.field).is_irreducible(&self.charpoly(a))
    }

    /// Integer representatives of the characteristic polynomial, low degree first.
    pub fn charpoly_ints(&self, a: &Matrix) -> Vec<u32> {
        self.charpoly(a)
            .coeffs()
            .iter()
            .map(|&c| self.field.to_int(c))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(g: &GlGroup, rng: &mut ChaCha8Rng) -> Matrix {
        let mut m = g.zero();
        for i in 0..g.n() {
            for j in 0..g.n() {
                m.set(i, j, g.field().from_int(rng.gen_range(0..g.q() as u32)).unwrap());
            }
        }
        m
    }

    /// Leibniz expansion of det(xI - A) with polynomial entries.
    fn charpoly_leibniz(g: &GlGroup, a: &Matrix) -> FqPoly {
        let f = g.field();
        let ring = PolyRing::new(f);
        let n = g.n();
        let entry = |i: usize, j: usize| -> FqPoly {
            let c = f.neg(a.get(i, j));
            if i == j {
                FqPoly::new(vec![c, FqElem::ONE])
            } else {
                FqPoly::new(vec![c])
            }
        };
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = FqPoly::zero();
        permute(&mut perm, 0, &mut |p: &[usize]| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let mut term = FqPoly::one();
            for (i, &pi) in p.iter().enumerate() {
                term = ring.mul(&term, &entry(i, pi));
            }
            if inversions % 2 == 1 {
                term = ring.scale(&term, f.neg_one());
            }
            total = ring.add(&total, &term);
        });
        total
    }

    fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            visit(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, visit);
            p.swap(k, i);
        }
    }

    #[test]
    fn charpoly_matches_leibniz_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(n, q) in &[(1usize, 2u64), (2, 3), (3, 2), (3, 4), (4, 2), (4, 3), (5, 5)] {
            let g = GlGroup::over(n, q).unwrap();
            for _ in 0..40 {
                let a = random_matrix(&g, &mut rng);
                assert_eq!(g.charpoly(&a), charpoly_leibniz(&g, &a));
            }
        }
    }

    #[test]
    fn inverse_and_det_are_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &(n, q) in &[(2usize, 2u64), (3, 3), (4, 2), (3, 4), (4, 5)] {
            let g = GlGroup::over(n, q).unwrap();
            for _ in 0..50 {
                let a = random_matrix(&g, &mut rng);
                let b = random_matrix(&g, &mut rng);
                let f = g.field();
                assert_eq!(g.det(&g.mul(&a, &b)), f.mul(g.det(&a), g.det(&b)));
                match g.inv(&a) {
                    Ok(ai) => assert_eq!(g.mul(&a, &ai), g.identity()),
                    Err(e) => {
                        assert_eq!(e, Error::Singular);
                        assert!(g.det(&a).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn key_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = GlGroup::over(3, 4).unwrap();
        for _ in 0..100 {
            let a = random_matrix(&g, &mut rng);
            assert_eq!(g.from_key(g.key(&a)), a);
        }
        assert_eq!(g.key(&g.identity()), 1 + 4u64.pow(4) + 4u64.pow(8));
        assert!(matches!(GlGroup::over(9, 2), Err(Error::KeyOverflow { .. })));
    }

    #[test]
    fn companion_determinant() {
        for &(n, q) in &[(2usize, 3u64), (3, 2), (3, 5), (4, 4)] {
            let g = GlGroup::over(n, q).unwrap();
            let f = g.field();
            let ring = PolyRing::new(f);
            for idx in (0..(q as u64).pow(n as u32)).step_by(7) {
                let poly = ring.monic_by_index(n, idx);
                let c = g.companion_of(&poly).unwrap();
                let sign = if n % 2 == 1 { f.neg_one() } else { FqElem::ONE };
                assert_eq!(g.det(&c), f.mul(sign, poly.coeff(0)));
                assert_eq!(g.charpoly(&c), poly);
            }
        }
    }

    #[test]
    fn singer_cycles() {
        let g = GlGroup::over(2, 2).unwrap();
        assert_eq!(g.elem_order(&g.singer_cycle().unwrap()).unwrap(), 3);
        let g = GlGroup::over(3, 3).unwrap();
        assert_eq!(g.elem_order(&g.singer_cycle().unwrap()).unwrap(), 26);
        let g = GlGroup::over(4, 2).unwrap();
        let c = g.singer_cycle().unwrap();
        let cp = g.charpoly_ints(&c);
        assert!(cp == [1, 1, 0, 0, 1] || cp == [1, 0, 0, 1, 1]);
        for &(n, q) in &[(2usize, 4u64), (3, 4), (2, 9), (4, 3), (2, 5)] {
            let g = GlGroup::over(n, q).unwrap();
            let c = g.singer_cycle().unwrap();
            assert_eq!(g.elem_order(&c).unwrap(), (q as u128).pow(n as u32) - 1);
            assert!(g.is_regular_elliptic(&c));
            assert_eq!(g.fixed_codim(&c), n);
            // the determinant generates F_q^x
            let d = g.det(&c);
            assert_eq!(g.field().elem_order(d), Some(q - 1));
        }
    }

    #[test]
    fn regular_elliptic_examples() {
        let g = GlGroup::over(4, 2).unwrap();
        assert!(!g.is_regular_elliptic(&g.identity()));
        let f = g.field();
        let one = FqElem::ONE;
        let c5 = g.companion(&[one, one, one, one]).unwrap();
        assert!(g.is_regular_elliptic(&c5));
        assert_eq!(g.elem_order(&c5).unwrap(), 5);
        assert!(f.q() == 2);
    }
}
