//! Numerical geometry of the Chen-Teo instanton: curvature, harmonic
//! 2-forms, their periods and energies, intersection data and the classical
//! Maxwell partition function.

pub mod chen_teo;
pub mod dual;
pub mod error;
pub mod geometry;
pub mod harmonics;
pub mod integrals;
pub mod numerics;

pub use error::{Error, Result};
