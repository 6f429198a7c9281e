//! Independent high-precision recomputation of the alternating series
//!
//! σ = Σ_{n≥1} (-1)^n (ln 2 - 1/(n+1) - … - 1/(2n))²
//!   = G/2 + π²/48 - (7/8)(ln 2)² - (π/8) ln 2
//!
//! and of every integral identity used to evaluate it. Each identity is a
//! catalog entry whose left-hand side is recomputed by quadrature or series
//! and compared against an exact closed form (or an independent route).
//!
//! Module map:
//! - [`numeric`]: precision, extended reals, constants, closed forms
//! - [`quadrature`]: tanh-sinh and Gauss-Legendre rules, 1D and 2D
//! - [`series`]: harmonic tails, σ partial sums, alternating-series accelerators
//! - [`identities`]: the check catalog and the parameter-derivative checks
//! - [`cli`]: run configuration and report rendering for the `verify` binary

pub mod cli;
pub mod error;
pub mod identities;
pub mod numeric;
pub mod quadrature;
pub mod series;

pub use error::{Error, Result};
pub use numeric::{BasisConstant, ClosedForm, HPReal, Precision};
