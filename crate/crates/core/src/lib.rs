//! Multivariable signatures and nullities of colored links from C-complex
//! data, with the correction terms, slopes and Torres formulas that govern
//! their limits at the boundary of the torus.

pub mod angle;
pub mod cli;
pub mod clink;
pub mod conway_slope;
pub mod corrections;
pub mod families;
pub mod hermitian;
pub mod laurent;
pub mod limits_verify;

pub use angle::{Angle, TorusPoint};
pub use clink::{parse_link, ColoredLink, SeifertSystem};
pub use hermitian::{inertia, inertia_exact_integer, HermitianMatrix, Inertia, DEFAULT_TOL};
