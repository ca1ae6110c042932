//! Exact arithmetic kernel: rationals, polynomials and canonical rational
//! functions in `v = q^(1/2)`, plus the bivariate `(v, z)` carrier used for
//! regularized limits.

mod bivariate;
mod poly;
mod ratfunc;

pub use bivariate::{subst_z1, BiPoly, RatFunc2};
pub use poly::{format_rational, Poly};
pub use ratfunc::{ratfunc_arith, ratfunc_normalize, ArithOp, RatFunc};

/// Exact arbitrary-precision fraction; always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by the zero rational function")]
    DivisionByZeroFunction,
    #[error("pole at v = {0}")]
    PoleAtPoint(Rational),
    #[error("pole at v = 1")]
    PoleAtOne,
    #[error("pole at z = 1 survives reduction; the regularized limit does not exist")]
    SingularAtZ1,
}

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `n / d`.
///
/// # Panics
///
/// Panics if `d` is zero.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `poly_gcd` under its operation name.
pub fn poly_gcd(p: &Poly, q: &Poly) -> Poly {
    p.gcd(q)
}

pub fn eval_at(f: &RatFunc, x: &Rational) -> Result<Rational, FieldError> {
    f.eval_at(x)
}

pub fn limit_at_v1(f: &RatFunc) -> Result<Rational, FieldError> {
    f.limit_at_v1()
}

pub fn to_canonical_string(f: &RatFunc) -> String {
    f.to_canonical_string()
}
