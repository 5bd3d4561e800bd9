//! Fixed point sectors of finite groupoids and the homotopy invariants built
//! from them.

pub mod error;
pub mod group;

pub use error::{Error, Limits, Result};
pub mod groupoid;
pub mod homology;
pub mod invariants;
pub mod sectors;
