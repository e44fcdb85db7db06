//! Metric (horofunction) boundaries of Z^d under word and norm lengths, and
//! truncated estimates of the Lip-seminorm `L_ℓ(f) = ‖[M_ℓ, π_f]‖` on
//! twisted group algebras of Z^d.

pub mod acceptance;
pub mod convexgeom;
pub mod error;
pub mod freegroup;
pub mod horoboundary;
pub mod lattice;
pub mod nctorus;

pub use error::{Error, Result};
