//! Explicit Carlson-type zero-density estimate for the Riemann zeta function.
//!
//! The crate evaluates the constant `K(σ, T₀)` in
//!
//! ```text
//! N(σ, T) ≤ K(σ, T₀) · T^{4σ(1−σ)} · (log T)^{5−2σ},   T ≥ T₀ ≥ 3·10¹², σ ≥ 0.6
//! ```
//!
//! together with every intermediate constant, compares the bound against the
//! other explicit estimates in the same σ-range, and checks each numerically
//! testable ingredient (divisor-sum bounds, the approximate functional
//! equation, the Montgomery–Vaughan mean value inequality, moment bounds) at
//! desk scale.
//!
//! Modules:
//!
//! - [`extrange`]: sign + log-magnitude reals for heights up to `10^{10^6}`.
//! - [`arith`]: sieved `d(n)`, `μ(n)` and divisor-sum checks.
//! - [`zeta`]: Euler–Maclaurin `ζ(s)`, the AFE main sum and the mollified functions.
//! - [`meanvalue`]: Dirichlet-polynomial mean squares and moment bounds.
//! - [`constants`]: the constant pipeline `C(σ,X₀) → … → K(σ,T₀)`.
//! - [`bounds`]: comparable bound shapes, crossover heights and region maps.
//! - [`zeros`]: zero-ordinate datasets and counting audits.
//! - [`cli`]: the `zerodensity` command-line front end.

pub mod arith;
pub mod bounds;
pub mod cli;
pub mod constants;
pub mod error;
pub mod extrange;
pub mod meanvalue;
pub mod zeros;
pub mod zeta;

mod sum;

pub use error::{Error, Result};
pub use extrange::ExtReal;
