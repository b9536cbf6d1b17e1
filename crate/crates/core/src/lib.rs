//! Exact split cuts, alpha-cuts and split closures for corner relaxations.

pub mod corner;
pub mod cutfn;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod instance;
pub mod lp;
pub mod separation;
pub mod split;

pub use error::{Error, Result};
pub use exact::{IntVector, Rational, RationalVector};
