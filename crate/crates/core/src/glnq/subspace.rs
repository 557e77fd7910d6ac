//! Subspaces of F_q^n (column vectors) keyed by their reduced echelon basis.

use super::GlGroup;
use crate::gf::FqElem;

/// A subspace: its dimension and the reduced echelon basis rows packed as
/// base-`q^n` digits (each row read as `sum_j int(v_j) q^j`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubspaceKey {
    pub dim: usize,
    pub code: u128,
}

impl GlGroup {
    fn pack_rows(&self, rows: &[Vec<FqElem>]) -> u128 {
        let q = self.q() as u128;
        let size = q.pow(self.n() as u32);
        rows.iter().rev().fold(0u128, |acc, r| {
            let v = r
                .iter()
                .rev()
                .fold(0u128, |a, &x| a * q + self.field().to_int(x) as u128);
            acc * size + v
        })
    }

    /// Canonical key of the span of `vectors`.
    pub fn subspace_key(&self, vectors: &[Vec<FqElem>]) -> SubspaceKey {
        let mut rows = vectors.to_vec();
        let rank = self.rref(&mut rows, self.n()).len();
        rows.truncate(rank);
        SubspaceKey {
            dim: rank,
            code: self.pack_rows(&rows),
        }
    }

    pub fn subspace_basis(&self, key: SubspaceKey) -> Vec<Vec<FqElem>> {
        let q = self.q() as u128;
        let size = q.pow(self.n() as u32);
        let mut code = key.code;
        (0..key.dim)
            .map(|_| {
                let mut v = code % size;
                code /= size;
                (0..self.n())
                    .map(|_| {
                        let d = self.field().from_int_unchecked((v % q) as u32);
                        v /= q;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    /// Basis of the kernel of `m` acting on column vectors.
    pub fn kernel(&self, m: &super::Matrix) -> Vec<Vec<FqElem>> {
        let n = self.n();
        let f = self.field();
        let mut rows: Vec<Vec<FqElem>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j)).collect()).collect();
        let pivots = self.rref(&mut rows, n);
        (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![FqElem::ZERO; n];
                v[free] = FqElem::ONE;
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(rows[r][free]);
                }
                v
            })
            .collect()
    }

    /// The fixed space `{v : g v = v}`.
    pub fn fixed_space(&self, g: &super::Matrix) -> SubspaceKey {
        let basis = self.kernel(&self.sub(g, &self.identity()));
        self.subspace_key(&basis)
    }

    /// All subspaces of dimension `d`, generated as reduced echelon matrices.
    pub fn enumerate_subspaces(&self, d: usize) -> Vec<SubspaceKey> {
        let n = self.n();
        let field_elems: Vec<FqElem> = self.field().elements().collect();
        let mut out = Vec::new();
        let mut pivots = Vec::with_capacity(d);
        fn choose(n: usize, d: usize, start: usize, pivots: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
            if pivots.len() == d {
                visit(pivots);
                return;
            }
            for c in start..n {
                pivots.push(c);
                choose(n, d, c + 1, pivots, visit);
                pivots.pop();
            }
        }
        choose(n, d, 0, &mut pivots, &mut |piv: &[usize]| {
            // free slots: row r, column c > piv[r], c not a pivot
            let slots: Vec<(usize, usize)> = (0..d)
                .flat_map(|r| ((piv[r] + 1)..n).filter(|c| !piv.contains(c)).map(move |c| (r, c)))
                .collect();
            let total = field_elems.len().pow(slots.len() as u32);
            for mut code in 0..total {
                let mut rows = vec![vec![FqElem::ZERO; n]; d];
                for (r, &p) in piv.iter().enumerate() {
                    rows[r][p] = FqElem::ONE;
                }
                for &(r, c) in &slots {
                    rows[r][c] = field_elems[code % field_elems.len()];
                    code /= field_elems.len();
                }
                out.push(SubspaceKey {
                    dim: d,
                    code: self.pack_rows(&rows),
                });
            }
        });
        out.sort();
        out
    }

    /// Whether `g` maps the subspace into itself.
    pub fn is_stable(&self, g: &super::Matrix, key: SubspaceKey) -> bool {
        let basis = self.subspace_basis(key);
        let mut ext = basis.clone();
        ext.extend(basis.iter().map(|v| self.apply(g, v)));
        self.subspace_key(&ext).dim == key.dim
    }
}
