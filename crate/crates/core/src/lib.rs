//! Exact computations with Clifford algebras, spin groups and their
//! representations, relative cellular cochains, finite torsors, and
//! characteristic-class data of 8-manifolds with Spin(7)-structures.

pub mod census;
pub mod clifford;
pub mod cochain;
pub mod error;
pub mod linalg;
pub mod reps;
pub mod spin;
pub mod torsor;
pub mod verify;

pub use error::{Error, Result};
