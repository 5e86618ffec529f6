//! Special functions, Gaussian quadrature and scalar search.

mod optimize;
mod quadrature;
mod special;

pub use optimize::{maximize_scalar, minimize_scalar, OptResult};
pub use quadrature::{
    gauss_hermite_expectation, gaussian_expectation_panels, QuadratureKind, QuadratureRule,
};
pub(crate) use special::positive_part_normal;
pub use special::{norm_cdf, norm_pdf, positive_part_gaussian_mean};
