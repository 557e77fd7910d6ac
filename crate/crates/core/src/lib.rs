pub mod absorder;
pub mod error;
pub mod gf;
pub mod glnq;
pub mod hurwitz;
pub mod charvals;
pub mod factor_count;
pub mod qformula;
pub mod repro;
mod util;

pub use error::{Error, Result};
