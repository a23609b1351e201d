//! Exterior calculus on the torus and the cylinder, foliations, the
//! filtration `F^pΩ` and the graded complexes built from it.

mod filtration;
mod foliation;
mod form;
mod graded;
mod tform;
mod vector;

pub use filtration::filtration_degree;
pub use foliation::{orthonormal_span, span_residual, Foliation, FoliationReport};
pub use form::{indices_of, mask_of, poly_one_form, subsets, wedge_sign, Form, IndexSet};
pub use graded::{Flavor, FormAlgebra, GradedFormSequence};
pub use tform::TForm;
pub use vector::VectorField;
