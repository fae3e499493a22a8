//! Volterra and incomplete Volterra functions, evaluated with error-bounded
//! quadrature, plus a lab that checks their inequality and monotonicity
//! properties with verdicts that respect the numerical error.

pub mod error;
pub mod eval;
pub mod gammakit;
pub mod ineqlab;
pub mod means;
pub mod oracle;
pub mod quad;
pub mod volterra;

pub use error::{Error, Result};
pub use eval::EvalResult;
