//! Sparse univariate polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// A polynomial in one variable with rational coefficients.
///
/// Only nonzero coefficients are stored, keyed by exponent. The zero
/// polynomial has no entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: BTreeMap<u32, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * x^e`.
    pub fn monomial(c: Rational, e: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Self { coeffs }
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `x^e`.
    pub fn pow_var(e: u32) -> Self {
        Self::monomial(Rational::one(), e)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    /// Dense ascending integer coefficients: `[a0, a1, a2]` is `a0 + a1 x + a2 x^2`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(e, &c)| (e as u32, Rational::from_integer(BigInt::from(c)))),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(One::is_one)
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.values().next_back()
    }

    pub fn coeff(&self, e: u32) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &Rational)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub(crate) fn add_term(&mut self, e: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&e) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.coeffs.remove(&e);
                }
            }
            None => {
                self.coeffs.insert(e, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Multiplies by `x^shift`.
    pub fn shift(&self, shift: u32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, a)| (e + shift, a.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Scales so the leading coefficient is 1. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division over the rationals.
    ///
    /// # Panics
    ///
    /// Panics if `divisor` is the zero polynomial.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let db = divisor.degree().expect("polynomial division by zero");
        let lb_inv = divisor.leading_coeff().unwrap().recip();
        let mut q = Poly::zero();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let c = r.leading_coeff().unwrap() * &lb_inv;
            let shift = dr - db;
            for (e, bc) in divisor.terms() {
                r.add_term(e + shift, &(-(&c * bc)));
            }
            debug_assert!(r.degree() != Some(dr));
            q.add_term(shift, &c);
        }
        (q, r)
    }

    /// Division known to be exact.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        if divisor.is_one() {
            return self.clone();
        }
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor; `gcd(p, 0) = monic(p)` and `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.degree() == Some(0) || other.degree() == Some(0) {
            return Poly::one();
        }
        // common power of the variable, then strip it: cheap and frequent here
        let low_a = *self.coeffs.keys().next().unwrap();
        let low_b = *other.coeffs.keys().next().unwrap();
        let low = low_a.min(low_b);
        let a = to_primitive_dense(self, low_a);
        let b = to_primitive_dense(other, low_b);
        let g = primitive_prs_gcd(a, b);
        from_dense(&g).shift(low).monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut prev: Option<u32> = None;
        // Horner over the sparse support, highest exponent first
        for (e, c) in self.coeffs.iter().rev() {
            if let Some(p) = prev {
                acc *= pow_rational(x, p - e);
            }
            acc += c;
            prev = Some(*e);
        }
        if let Some(p) = prev {
            acc *= pow_rational(x, p);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| **e > 0)
                .map(|(e, c)| (e - 1, c * Rational::from_integer(BigInt::from(*e))))
                .collect(),
        }
    }

    /// The antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Poly {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + 1, c / Rational::from_integer(BigInt::from(e + 1))))
                .collect(),
        }
    }

    /// Canonical text with terms in decreasing exponent order, e.g. `v^2 - 1/2*v + 3`.
    pub fn format_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match *e {
                0 => String::new(),
                1 => var.to_string(),
                e => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&format_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format_rational(&mag));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

/// `a` or `a/b`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn pow_rational(x: &Rational, e: u32) -> Rational {
    num_traits::pow::pow(x.clone(), e as usize)
}

fn to_primitive_dense(p: &Poly, low: u32) -> Vec<BigInt> {
    let lcm = p
        .coeffs
        .values()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let deg = (p.degree().unwrap() - low) as usize;
    let mut dense = vec![BigInt::zero(); deg + 1];
    for (e, c) in p.terms() {
        dense[(e - low) as usize] = c.numer() * (&lcm / c.denom());
    }
    make_primitive(dense)
}

fn from_dense(d: &[BigInt]) -> Poly {
    Poly::from_terms(
        d.iter()
            .enumerate()
            .map(|(e, c)| (e as u32, Rational::from_integer(c.clone()))),
    )
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut v);
    let Some(lc) = v.last() else { return v };
    let mut content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if lc.is_negative() {
        content = -content;
    }
    if !content.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &content;
        }
    }
    v
}

/// Pseudo-remainder of `a` by `b`, up to a nonzero integer factor.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lr * bc;
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
        // keep coefficients small
        r = make_primitive(r);
    }
    r
}

fn primitive_prs_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        b = make_primitive(r);
    }
    a
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (mut big, small) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (e, c) in small.terms() {
            big.add_term(e, c);
        }
        big
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, &-c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let mut out = Poly::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { (&self).$m(&rhs) }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty { (&self).$m(rhs) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(Poly, Add::add, Sub::sub, Mul::mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("v"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn gcd_examples() {
        let a = Poly::from_ints(&[-1, 0, 1]);
        let b = Poly::from_ints(&[1, -2, 1]);
        assert_eq!(a.gcd(&b), Poly::from_ints(&[-1, 1]));
        let p = Poly::from_ints(&[2, 4]);
        assert_eq!(p.gcd(&Poly::zero()), Poly::from_terms([(0, r(1, 2)), (1, r(1, 1))]));
        assert_eq!(Poly::var().gcd(&Poly::from_ints(&[1, 1])), Poly::one());
        assert!(Poly::zero().gcd(&Poly::zero()).is_zero());
    }

    #[test]
    fn gcd_with_shared_power_of_variable() {
        // v^3 (v+1) and v^2 (v+1)(v-1)
        let a = Poly::from_ints(&[0, 0, 0, 1, 1]);
        let b = Poly::from_ints(&[0, 0, -1, 0, 1]);
        assert_eq!(a.gcd(&b), Poly::from_ints(&[0, 0, 1, 1]));
    }

    #[test]
    fn division_and_eval() {
        let a = Poly::from_ints(&[-1, 0, 0, 1]);
        let b = Poly::from_ints(&[-1, 1]);
        let (q, rem) = a.div_rem(&b);
        assert_eq!(q, Poly::from_ints(&[1, 1, 1]));
        assert!(rem.is_zero());
        assert_eq!(a.eval(&r(2, 1)), r(7, 1));
        assert_eq!(Poly::from_ints(&[0, 0, 0, 0, 0, 3]).eval(&r(1, 2)), r(3, 32));
    }

    #[test]
    fn formatting() {
        let p = Poly::from_terms([(2, r(1, 1)), (1, r(-1, 2)), (0, r(3, 1))]);
        assert_eq!(p.format_in("v"), "v^2 - 1/2*v + 3");
        assert_eq!((-&p).format_in("k"), "-k^2 + 1/2*k - 3");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn calculus() {
        let p = Poly::from_ints(&[5, 3, 0, 4]);
        assert_eq!(p.derivative(), Poly::from_ints(&[3, 0, 12]));
        assert_eq!(p.derivative().antiderivative(), Poly::from_ints(&[0, 3, 0, 4]));
    }
}
