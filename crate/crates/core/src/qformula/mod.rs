//! Exact q-series arithmetic and the closed formulas for reflection
//! factorization counts of Singer cycles.

mod basics;
mod classical;
mod cyclotomic;
mod laurent;
mod qpoly;
mod ratfunc;
mod series;
mod tq;

pub use basics::{binom, gl_order_poly, moebius, pochhammer, q_binom, q_fact, q_int, qq};
pub use classical::{classical_t, q1_limits, Q1Limit};
pub use cyclotomic::{cyclotomic_orbit_sum, cyclotomic_poly, root_sum};
pub use laurent::{delta_power_at_one, QLaurent};
pub use qpoly::QPoly;
pub use ratfunc::RatFunc;
pub use series::{egf_check, jackson_egf_mismatch, ogf_check, partial_fractions_hold, QSeries};
pub use tq::{
    aggregate_identity, q2_closed_form, tq, tq_checked, tq_nlm, tq_nlm_checked, NlmRoute, TqRoute,
};

use serde::Serialize;

/// Outcome of a symbolic identity check. `witness` names the first failing term.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub check: String,
    pub params: serde_json::Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}
