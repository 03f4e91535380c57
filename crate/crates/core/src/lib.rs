//! Coefficient machinery for the class `T_n^alpha(beta)` of normalized
//! analytic functions, together with the tooling to check its coefficient
//! bounds numerically and exactly.
//!
//! Layers, bottom-up:
//!
//! * [`scalar`]: the `f64` and exact `BigRational` backends.
//! * [`series`]: truncated power series with complex coefficients.
//! * [`caratheodory`]: Herglotz combinations, the Möbius kernel, the
//!   half-Hadamard product and the iterated integral transform.
//! * [`bounds`]: reconstruction of `f`, the coefficient bounds, extremal
//!   generators, the gamma-scheme and `h_k`.
//! * [`doc`]: the JSON generator document.
//! * [`harness`]: grid sweeps and reports behind the `coeffbound` CLI.

pub mod bounds;
pub mod caratheodory;
pub mod doc;
pub mod error;
pub mod harness;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::{Coefficient, Rational, Scalar};
pub use series::TruncatedSeries;
