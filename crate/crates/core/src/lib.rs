//! Form-level calculus on flat tori: Fourier-coefficient exterior algebra,
//! foliations and partial connections, Chern–Weil forms and their
//! transgressions, η/ξ-invariants of twisted Dirac operators on the circle,
//! the invariant ρ and its imaginary part, and the algebra WO_q.

pub mod error;
pub mod tolerance;
pub mod charforms;
pub mod connections;
pub mod forms;
pub mod rho;
pub mod spectral;
pub mod trigcalc;
pub mod wo;

pub use error::{Error, Result};
pub use tolerance::Tolerances;
