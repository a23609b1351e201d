//! Connections on trivialized bundles, partial connections along foliations,
//! adjoints for constant hermitian metrics, the Bott connection of a
//! codimension-one foliation and interpolation onto the cylinder.

mod codim1;
mod connection;
mod partial;

pub use codim1::{bott_connection, bott_partial_connection, Codim1Residuals, CodimOneData};
pub use connection::{interpolate, interpolate_cubic, Connection, HermMetric, TConnection};
pub use partial::{extension_residual, is_extension, partial_curvature_residual, PartialConnection};
