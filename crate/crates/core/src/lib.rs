//! Exact quantum-cluster machinery: q-series, quivers, tropical and quantum
//! y-seeds, q-Weyl calculus, representation matrix elements, and a numeric
//! noncompact quantum dilogarithm.

pub mod error;
pub mod ncqd;
pub mod qseries;
pub mod qtorus;
pub mod quiver;
pub mod qweylrep;
pub mod tropical;
pub mod weylcalc;

pub use error::{Error, Result};
