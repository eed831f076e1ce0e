//! Shared numerical machinery: special functions, quadrature rules, and
//! derivative-free maximization on bounded domains.

pub mod optimize;
pub mod quadrature;
pub mod special;

pub use optimize::{bisect_boundary, golden_section_max};
pub use quadrature::{adaptive_quadrature, gauss_hermite, gauss_legendre, trapezoid};
pub use special::{erf, ln_factorial, log_poisson, poisson_pmf, round_sig};
