//! Factorization counts across all regular elliptic conjugacy classes.

use super::{FactorCounter, StepPlan};
use crate::error::Result;
use crate::gf::{FqElem, PolyRing};
use num_bigint::BigUint;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    /// Characteristic polynomial, low degree first, leading one included.
    pub charpoly: Vec<u32>,
    /// Whether the polynomial is primitive, i.e. its companion is a Singer cycle.
    pub primitive: bool,
    pub ell: usize,
    #[serde(with = "crate::util::decimal")]
    pub count: BigUint,
}

/// For each monic irreducible degree-n polynomial other than `x`, the number
/// of factorizations of its companion matrix into `ell` reflections.
pub fn survey_regular_elliptic(counter: &FactorCounter, ell: usize) -> Result<Vec<SurveyRow>> {
    let g = counter.group();
    let f = g.field();
    let ring = PolyRing::new(f);
    let mut rows = Vec::new();
    for p in ring.monic_irreducibles(g.n()) {
        if p.coeff(0) == FqElem::ZERO {
            continue;
        }
        let c = g.companion_of(&p)?;
        rows.push(SurveyRow {
            charpoly: p.coeffs().iter().map(|&x| f.to_int(x)).collect(),
            primitive: ring.is_primitive(&p),
            ell,
            count: counter.count(&c, &StepPlan::all(ell))?,
        });
    }
    Ok(rows)
}
