//! Exact arithmetic for Schmidt-type subspace inequalities with moving
//! hypersurface targets.
//!
//! The crate covers places and heights of rational points, projective forms
//! and their Weil functions, position checks for families of forms, the
//! staircase filtration of `V_L`, and a campaign harness that evaluates the
//! inequality along point sequences.

pub mod error;
pub mod family;
pub mod filtration;
pub mod harness;
pub mod linalg;
pub mod places;
pub mod position;
pub mod primes;
pub mod projgeom;
pub mod real;
pub mod search;

pub use error::{Error, Result};
pub use places::{ExactPositive, HeightKernel, Place};
pub use projgeom::{HomForm, MultiIndex, ProjectivePoint};
pub use real::Fixed;
