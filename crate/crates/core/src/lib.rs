//! Exact enumeration of plane tropical curves through point constraints, with
//! complex, real and Welschinger counts.

pub mod acceptance;
pub mod counting;
pub mod enumeration;
pub mod error;
pub mod lattice;
pub mod incidence;
pub mod plane;
pub mod polyhedral;
pub mod tropical;
pub mod welschinger;

pub use error::{Error, Result};
