//! Rational functions in `v` over the rationals, always in canonical form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::forward_owned;
use super::{FieldError, Poly, Rational};

/// A rational function `num / den` in canonical form.
///
/// Invariants: `den` is nonzero and monic, `gcd(num, den) = 1`, and zero is `0 / 1`.
/// Because the representative is unique, structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RatFunc {
    /// Reduces `num / den` to its canonical representative.
    pub fn normalize(num: Poly, den: Poly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g), den.exact_div(&g))
            }
        };
        Ok(Self::from_coprime(num, den))
    }

    /// Assumes coprime input; only rescales to a monic denominator.
    fn from_coprime(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        let out = if lc.is_one() {
            Self { num, den }
        } else {
            let inv = lc.recip();
            Self {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        };
        out.debug_check();
        out
    }

    #[inline]
    fn debug_check(&self) {
        #[cfg(debug_assertions)]
        {
            assert!(self.den.leading_coeff().is_some_and(One::is_one), "denominator not monic");
            if self.num.is_zero() {
                assert!(self.den.is_one(), "zero must be 0/1");
            } else if self.den.degree() != Some(0) {
                assert!(self.num.gcd(&self.den).is_one(), "numerator and denominator share a factor");
            }
        }
    }

    pub fn zero() -> Self {
        Self {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        Self {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    /// `v^e` for any integer `e`; negative powers land in the denominator.
    pub fn v_pow(e: i64) -> Self {
        let mono = Poly::pow_var(e.unsigned_abs() as u32);
        if e >= 0 {
            Self::from_poly(mono)
        } else {
            Self {
                num: Poly::one(),
                den: mono,
            }
        }
    }

    /// `1 - v^e` for any integer `e`.
    pub fn one_minus_v_pow(e: i64) -> Self {
        &Self::one() - &Self::v_pow(e)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZeroFunction);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self, FieldError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let n = e.unsigned_abs();
        Ok(Self {
            num: base.num.pow(n),
            den: base.den.pow(n),
        })
    }

    /// Exact field arithmetic with a runtime-selected operation.
    pub fn arith(&self, rhs: &RatFunc, op: ArithOp) -> Result<Self, FieldError> {
        Ok(match op {
            ArithOp::Add => self + rhs,
            ArithOp::Sub => self - rhs,
            ArithOp::Mul => self * rhs,
            ArithOp::Div => self.checked_div(rhs)?,
        })
    }

    pub fn eval_at(&self, x: &Rational) -> Result<Rational, FieldError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(FieldError::PoleAtPoint(x.clone()));
        }
        Ok(self.num.eval(x) / d)
    }

    /// Value of the reduced fraction at `v = 1`, i.e. the classical `q -> 1` limit.
    pub fn limit_at_v1(&self) -> Result<Rational, FieldError> {
        self.eval_at(&Rational::one())
            .map_err(|_| FieldError::PoleAtOne)
    }

    /// Canonical text: `(NUM) / (DEN)`, or `(NUM)` when the denominator is 1.
    pub fn to_canonical_string(&self) -> String {
        if self.den.is_one() {
            format!("({})", self.num)
        } else {
            format!("({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::normalize(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let g = self.den.gcd(&rhs.den);
        let (ld, rd) = (self.den.exact_div(&g), rhs.den.exact_div(&g));
        let num = &(&self.num * &rd) + &(&rhs.num * &ld);
        let den = &ld * &rhs.den;
        // only factors of g can survive in common
        if num.is_zero() {
            return RatFunc::zero();
        }
        let h = num.gcd(&g);
        if h.is_one() {
            RatFunc::from_coprime(num, den)
        } else {
            RatFunc::from_coprime(num.exact_div(&h), den.exact_div(&h))
        }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let den = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        RatFunc::from_coprime(num, den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

forward_owned!(RatFunc, Add::add, Sub::sub, Mul::mul);

impl std::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(iter: I) -> RatFunc {
        iter.fold(RatFunc::zero(), |acc, x| &acc + &x)
    }
}

impl std::iter::Product for RatFunc {
    fn product<I: Iterator<Item = RatFunc>>(iter: I) -> RatFunc {
        iter.fold(RatFunc::one(), |acc, x| &acc * &x)
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

/// `ratfunc_normalize` under its operation name.
pub fn ratfunc_normalize(num: Poly, den: Poly) -> Result<RatFunc, FieldError> {
    RatFunc::normalize(num, den)
}

pub fn ratfunc_arith(a: &RatFunc, b: &RatFunc, op: ArithOp) -> Result<RatFunc, FieldError> {
    a.arith(b, op)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::normalize(p(n), p(d)).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]), RatFunc::from_poly(p(&[1, 1])));
        let half_v = rf(&[0, 2], &[4]);
        assert_eq!(half_v.num(), &Poly::monomial(r(1, 2), 1));
        assert!(half_v.den().is_one());
        assert_eq!(rf(&[0], &[1, 0, 1]), RatFunc::zero());
        assert_eq!(
            RatFunc::normalize(p(&[1]), Poly::zero()),
            Err(FieldError::ZeroDenominator)
        );
    }

    #[test]
    fn arith_examples() {
        let a = rf(&[1], &[1, -1]);
        let b = rf(&[1], &[1, 1]);
        assert_eq!(&a + &b, rf(&[2], &[1, 0, -1]));
        let c = rf(&[0, 1], &[1, -1]);
        assert_eq!(&c * &RatFunc::from_poly(p(&[1, -1])), RatFunc::v_pow(1));
        assert_eq!(
            ratfunc_arith(&a, &RatFunc::zero(), ArithOp::Div),
            Err(FieldError::DivisionByZeroFunction)
        );
        assert_eq!(ratfunc_arith(&a, &a, ArithOp::Sub).unwrap(), RatFunc::zero());
    }

    #[test]
    fn eval_and_limits() {
        let f = rf(&[1, 1], &[-1, 1]);
        assert_eq!(f.eval_at(&r(2, 1)).unwrap(), r(3, 1));
        assert_eq!(f.eval_at(&r(1, 1)), Err(FieldError::PoleAtPoint(r(1, 1))));
        assert_eq!(RatFunc::zero().eval_at(&r(7, 3)).unwrap(), r(0, 1));
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]).limit_at_v1().unwrap(), r(2, 1));
        assert_eq!(rf(&[-1, 0, 0, 0, 0, 0, 1], &[-1, 0, 1]).limit_at_v1().unwrap(), r(3, 1));
        assert_eq!(rf(&[1], &[-1, 1]).limit_at_v1(), Err(FieldError::PoleAtOne));
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(RatFunc::from_poly(p(&[1, 0, 1])).to_canonical_string(), "(v^2 + 1)");
        // q/(1-q)^2 with q = v^2
        let f = rf(&[0, 0, 1], &[1, 0, -2, 0, 1]);
        assert_eq!(f.to_canonical_string(), "(v^2) / (v^4 - 2*v^2 + 1)");
        assert_eq!(RatFunc::zero().to_canonical_string(), "(0)");
    }

    #[test]
    fn negative_powers() {
        let f = RatFunc::v_pow(-2);
        assert_eq!(f.to_canonical_string(), "(1) / (v^2)");
        assert_eq!(&f * &RatFunc::v_pow(2), RatFunc::one());
        assert_eq!(f.pow(-2).unwrap(), RatFunc::v_pow(4));
    }
}
