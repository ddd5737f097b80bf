//! Exact algebra for separated polynomials f(X) - g(Y): number fields,
//! univariate and bivariate factorization, functional decomposition, the
//! classical families, the reducibility classifier and integer fiber scans.

pub mod arith;
pub mod bipoly;
pub mod classifier;
pub mod decompose;
pub mod error;
pub mod families;
pub mod parse;
pub mod poly;
pub mod scan;

pub use arith::{BigRational, Field, NFElement};
pub use bipoly::BiPoly;
pub use error::{AlgebraError, Result};
pub use poly::UniPoly;
