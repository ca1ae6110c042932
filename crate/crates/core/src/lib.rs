//! Exact q-integer power sums, closed forms for the q-analogue of Barnes'
//! degree-two Bernoulli numbers and polynomials, q-zeta numerics, and a
//! verdict harness that checks every identity against an independent oracle.
//!
//! All symbolic values are rational functions in `v = q^(1/2)`, so half-integer
//! powers of `q` stay polynomial.

pub mod classical;
pub mod closed;
pub mod field;
pub mod numeric;
pub mod qobjects;
pub mod sums;
pub mod verify;

pub use field::{frac, rat, FieldError, Poly, RatFunc, RatFunc2, Rational};
pub use qobjects::QExp;
