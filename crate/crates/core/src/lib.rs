//! Exact computations with V-filtrations, higher multiplier ideals and
//! Hodge ideals of hypersurfaces over ℚ.

pub mod bfun;
pub mod error;
pub mod family;
pub mod graphmod;
pub mod par;
pub mod polyalg;
pub mod rational;
pub mod vfilt;
pub mod weyl;

pub use error::{Error, Result};
pub use rational::Q;
