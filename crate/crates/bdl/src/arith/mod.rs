//! Exact scalars, multivariate polynomials, rational functions and linear
//! algebra over them.

pub mod field;
pub mod linalg;
pub mod mat;
pub mod mpoly;
pub mod ratfun;

pub use field::{rat, ratq, Coeff, Field, Fp, Rat, Ring};
pub use linalg::{charpoly, det, kernel, rank, solve, SolveError};
pub use mat::Mat;
pub use mpoly::{MPoly, Mono, Var};
pub use ratfun::{ArithError, RatFun, Rf};
