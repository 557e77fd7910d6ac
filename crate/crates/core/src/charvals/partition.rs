//! Integer partitions and their Ferrers-diagram statistics.

use crate::error::{Error, Result};
use serde::Serialize;

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// The hook `(n - k, 1^k)`.
    pub fn hook(n: usize, k: usize) -> Result<Partition> {
        if n == 0 || k >= n {
            return Err(Error::Invalid(format!("hook (n-k, 1^k) needs 0 <= k < n, got n={n}, k={k}")));
        }
        let mut parts = vec![n - k];
        parts.extend(std::iter::repeat(1).take(k));
        Ok(Partition { parts })
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (0..cols).map(|j| self.parts.iter().filter(|&&p| p > j).count()).collect(),
        }
    }

    /// `n(lambda) = sum_i (i - 1) lambda_i` with rows numbered from one.
    pub fn n_stat(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// Cells `(i, j)`, zero-based, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
    }

    /// `lambda_i + lambda'_j - i - j + 1` in one-based indices.
    pub fn hook_length(&self, i: usize, j: usize) -> usize {
        let conj = self.conjugate();
        self.parts[i] + conj.parts[j] - i - j - 1
    }

    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        self.cells().map(|(i, j)| self.parts[i] + conj.parts[j] - i - j - 1).collect()
    }

    /// `j - i`.
    pub fn contents(&self) -> Vec<i64> {
        self.cells().map(|(i, j)| j as i64 - i as i64).collect()
    }

    /// Partitions obtained by deleting one removable corner.
    pub fn remove_corners(&self) -> Vec<Partition> {
        (0..self.parts.len())
            .filter(|&i| i + 1 == self.parts.len() || self.parts[i + 1] < self.parts[i])
            .map(|i| {
                let mut p = self.parts.clone();
                p[i] -= 1;
                Partition::new(p)
            })
            .collect()
    }

    /// Major indices of all standard Young tableaux, by backtracking. The
    /// descent set holds `i` whenever `i + 1` sits in a lower row than `i`.
    pub fn syt_majors(&self) -> Vec<usize> {
        let n = self.size();
        let mut filled = vec![0usize; self.parts.len()];
        let mut out = Vec::new();
        fn rec(shape: &[usize], filled: &mut [usize], placed: usize, n: usize, last_row: usize, maj: usize, out: &mut Vec<usize>) {
            if placed == n {
                out.push(maj);
                return;
            }
            for r in 0..shape.len() {
                let ok = filled[r] < shape[r] && (r == 0 || filled[r - 1] > filled[r]);
                if !ok {
                    continue;
                }
                filled[r] += 1;
                let add = if placed > 0 && r > last_row { placed } else { 0 };
                rec(shape, filled, placed + 1, n, r, maj + add, out);
                filled[r] -= 1;
            }
        }
        rec(&self.parts, &mut filled, 0, n, 0, 0, &mut out);
        out
    }
}
