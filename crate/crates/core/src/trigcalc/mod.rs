//! Coefficient arithmetic on the torus: Fourier series, their certified
//! quotients, matrices of those, and polynomials in the interval variable.

mod freq;
mod grid;
mod json;
mod matrix;
mod poly;
mod scalar;
mod tpoly;

pub use freq::{Freq, MAX_DIM};
pub use grid::Grid;
pub use json::{complex_from_json, complex_to_json};
pub use matrix::MatScalar;
pub use poly::TrigPoly;
pub use scalar::{grid_min_modulus, TrigScalar};
pub use tpoly::{Linear, TPoly};
