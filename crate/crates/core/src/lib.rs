pub mod error;
pub mod poly;

pub use error::{Error, Result};
pub mod lattice;
pub mod newton;
pub mod fan;
pub mod degeneracy;
pub mod jacobian;
pub mod resolution;
pub mod zeta;
