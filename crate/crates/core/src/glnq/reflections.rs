//! Reflections of GL_n(F_q): `t = I + v phi^T` with `phi` a normalized
//! functional (first nonzero coordinate equal to 1), `v != 0` and
//! `det t = 1 + phi(v) != 0`. The pair `(phi, v)` determines `t` uniquely.

use super::GlGroup;
use crate::gf::FqElem;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReflectionKind {
    Transvection,
    Semisimple,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionInfo {
    pub key: u64,
    pub det: FqElem,
    pub kind: ReflectionKind,
    /// Index of the fixed hyperplane `ker phi` among normalized functionals.
    pub hyperplane: u32,
}

impl GlGroup {
    /// Normalized functionals, one per hyperplane, in increasing integer order.
    pub fn hyperplane_functionals(&self) -> Vec<Vec<FqElem>> {
        let n = self.n();
        let q = self.q() as u32;
        let size = q.pow(n as u32);
        let f = self.field();
        (1..size)
            .map(|mut v| {
                (0..n)
                    .map(|_| {
                        let d = f.from_int_unchecked(v % q);
                        v /= q;
                        d
                    })
                    .collect::<Vec<_>>()
            })
            .filter(|phi| phi.iter().find(|c| !c.is_zero()) == Some(&FqElem::ONE))
            .collect()
    }

    /// Every reflection, optionally only those of one determinant, sorted by key.
    pub fn enumerate_reflections(&self, det_filter: Option<FqElem>) -> Vec<ReflectionInfo> {
        let n = self.n();
        let f = self.field();
        let q = self.q() as u32;
        let size = q.pow(n as u32);
        let vectors: Vec<Vec<FqElem>> = (1..size)
            .map(|mut v| {
                (0..n)
                    .map(|_| {
                        let d = f.from_int_unchecked(v % q);
                        v /= q;
                        d
                    })
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        for (h, phi) in self.hyperplane_functionals().iter().enumerate() {
            for v in &vectors {
                let pv = v
                    .iter()
                    .zip(phi)
                    .fold(FqElem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                let det = f.add(FqElem::ONE, pv);
                if det.is_zero() || det_filter.is_some_and(|d| d != det) {
                    continue;
                }
                let mut t = self.identity();
                for i in 0..n {
                    for j in 0..n {
                        t.set(i, j, f.add(t.get(i, j), f.mul(v[i], phi[j])));
                    }
                }
                out.push(ReflectionInfo {
                    key: self.key(&t),
                    det,
                    kind: if det == FqElem::ONE {
                        ReflectionKind::Transvection
                    } else {
                        ReflectionKind::Semisimple
                    },
                    hyperplane: h as u32,
                });
            }
        }
        out.sort_by_key(|r| r.key);
        out
    }

    /// `[n]_q (q^{n-1} - 1)` transvections.
    pub fn transvection_count(&self) -> u128 {
        let q = self.q() as u128;
        let n = self.n() as u32;
        (q.pow(n) - 1) / (q - 1) * (q.pow(n - 1) - 1)
    }

    /// `[n]_q q^{n-1}` semisimple reflections for each determinant `alpha != 1`.
    pub fn semisimple_count_per_det(&self) -> u128 {
        let q = self.q() as u128;
        let n = self.n() as u32;
        (q.pow(n) - 1) / (q - 1) * q.pow(n - 1)
    }
}
