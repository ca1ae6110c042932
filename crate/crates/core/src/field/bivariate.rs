//! Rational functions in `(v, z)`, used to take regularized limits `z -> 1`.
//!
//! Polynomials are stored as polynomials in `z` whose coefficients are
//! polynomials in `v`. The gcd is the recursive primitive-PRS algorithm with
//! `z` as the main variable and `Q[v]` as the coefficient domain.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::forward_owned;
use super::{FieldError, Poly, RatFunc, Rational};

/// A polynomial in `z` with coefficients in `Q[v]`; index `i` holds the `z^i` coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    coeffs: Vec<Poly>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_v(Poly::one())
    }

    pub fn from_v(p: Poly) -> Self {
        Self::from_coeffs(vec![p])
    }

    pub fn from_coeffs(coeffs: Vec<Poly>) -> Self {
        let mut out = Self { coeffs };
        out.trim();
        out
    }

    /// `c * v^a * z^b`.
    pub fn monomial(c: Rational, v_exp: u32, z_exp: u32) -> Self {
        let mut coeffs = vec![Poly::zero(); z_exp as usize + 1];
        coeffs[z_exp as usize] = Poly::monomial(c, v_exp);
        Self::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Poly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree_z(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Leading coefficient in `z` (a polynomial in `v`).
    pub fn lc_z(&self) -> Option<&Poly> {
        self.coeffs.last()
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn mul_v(&self, p: &Poly) -> Self {
        self.map(|c| c * p)
    }

    /// Divides every coefficient by `p`, which must divide them all.
    fn exact_div_v(&self, p: &Poly) -> Self {
        self.map(|c| c.exact_div(p))
    }

    /// Monic gcd (in `v`) of all `z`-coefficients.
    pub fn content(&self) -> Poly {
        let mut g = Poly::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        if c.is_one() {
            self.clone()
        } else {
            self.exact_div_v(&c)
        }
    }

    /// Pseudo-remainder in `z`, up to a factor in `Q[v]`.
    fn pseudo_rem(&self, b: &BiPoly) -> BiPoly {
        let db = b.degree_z().expect("pseudo-division by zero");
        let lb = b.lc_z().unwrap();
        let mut r = self.clone();
        while let Some(dr) = r.degree_z() {
            if dr < db {
                break;
            }
            let lr = r.lc_z().unwrap().clone();
            let shift = dr - db;
            let mut next: Vec<Poly> = r.coeffs.iter().map(|c| c * lb).collect();
            for (i, bc) in b.coeffs.iter().enumerate() {
                next[i + shift] = &next[i + shift] - &(&lr * bc);
            }
            debug_assert!(next[dr].is_zero());
            r = BiPoly::from_coeffs(next).primitive_part();
        }
        r
    }

    /// Greatest common divisor, normalized by [`BiPoly::normalize_lc`].
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return other.normalize_lc();
        }
        if other.is_zero() {
            return self.normalize_lc();
        }
        let cont = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree_z() < b.degree_z() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree_z() == Some(0) {
                // primitive and free of z: a unit
                a = BiPoly::one();
                break;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().mul_v(&cont).normalize_lc()
    }

    /// Scales so the leading coefficient in `z` has leading coefficient 1 in `v`.
    pub fn normalize_lc(&self) -> BiPoly {
        match self.lc_z().and_then(Poly::leading_coeff) {
            None => BiPoly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Exact division in `Q[v][z]`.
    pub fn exact_div(&self, d: &BiPoly) -> BiPoly {
        let dd = d.degree_z().expect("division by zero");
        let ld = d.lc_z().unwrap();
        let mut r = self.clone();
        let mut q = vec![Poly::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while let Some(dr) = r.degree_z() {
            if dr < dd {
                break;
            }
            let (c, rem) = r.lc_z().unwrap().div_rem(ld);
            debug_assert!(rem.is_zero(), "inexact bivariate division");
            let shift = dr - dd;
            let mut next = r.coeffs.clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                next[i + shift] = &next[i + shift] - &(&c * dc);
            }
            next[dr] = Poly::zero();
            q[shift] = c;
            r = BiPoly::from_coeffs(next);
        }
        debug_assert!(r.is_zero(), "inexact bivariate division");
        BiPoly::from_coeffs(q)
    }

    /// Substitutes `z = 1`.
    pub fn at_z1(&self) -> Poly {
        self.coeffs.iter().fold(Poly::zero(), |acc, c| &acc + c)
    }

    fn format(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*z"),
                i => format!("({c})*z^{i}"),
            })
            .collect();
        parts.join(" + ")
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Poly::zero();
        BiPoly::from_coeffs(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![Poly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPoly::from_coeffs(out)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.map(|c| -c)
    }
}

forward_owned!(BiPoly, Add::add, Sub::sub, Mul::mul);

/// A rational function in `(v, z)`.
///
/// Invariants: `den` is nonzero, `num` and `den` share no common factor, and the
/// leading coefficient of `den` under the `(z, then v)` lexicographic order is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc2 {
    num: BiPoly,
    den: BiPoly,
}

impl RatFunc2 {
    pub fn normalize(num: BiPoly, den: BiPoly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g == BiPoly::one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let lc = den.lc_z().and_then(Poly::leading_coeff).unwrap().clone();
        let inv = lc.recip();
        Ok(Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn zero() -> Self {
        Self {
            num: BiPoly::zero(),
            den: BiPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self {
            num: BiPoly::one(),
            den: BiPoly::one(),
        }
    }

    /// `c * v^a * z^b` for arbitrary integer exponents.
    pub fn monomial(c: Rational, v_exp: i64, z_exp: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let num = BiPoly::monomial(c, v_exp.max(0) as u32, z_exp.max(0) as u32);
        let den = BiPoly::monomial(Rational::one(), (-v_exp).max(0) as u32, (-z_exp).max(0) as u32);
        Self::normalize(num, den).unwrap()
    }

    /// `1 - v^a z^b`.
    pub fn one_minus(v_exp: i64, z_exp: i64) -> Self {
        &Self::one() - &Self::monomial(Rational::one(), v_exp, z_exp)
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZeroFunction);
        }
        Self::normalize(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc2) -> Result<Self, FieldError> {
        Ok(self * &rhs.inv()?)
    }

    /// Reduces, then substitutes `z = 1`. Fails when the reduced denominator
    /// vanishes identically at `z = 1`.
    pub fn subst_z1(&self) -> Result<RatFunc, FieldError> {
        let den = self.den.at_z1();
        if den.is_zero() {
            return Err(FieldError::SingularAtZ1);
        }
        RatFunc::normalize(self.num.at_z1(), den)
    }
}

impl From<&RatFunc> for RatFunc2 {
    fn from(f: &RatFunc) -> Self {
        Self {
            num: BiPoly::from_v(f.num().clone()),
            den: BiPoly::from_v(f.den().clone()),
        }
    }
}

impl Add for &RatFunc2 {
    type Output = RatFunc2;
    fn add(self, rhs: &RatFunc2) -> RatFunc2 {
        if self.den == rhs.den {
            return RatFunc2::normalize(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        RatFunc2::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .unwrap()
    }
}

impl Sub for &RatFunc2 {
    type Output = RatFunc2;
    fn sub(self, rhs: &RatFunc2) -> RatFunc2 {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc2 {
    type Output = RatFunc2;
    fn mul(self, rhs: &RatFunc2) -> RatFunc2 {
        RatFunc2::normalize(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Neg for &RatFunc2 {
    type Output = RatFunc2;
    fn neg(self) -> RatFunc2 {
        RatFunc2 {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

forward_owned!(RatFunc2, Add::add, Sub::sub, Mul::mul);

impl fmt::Display for RatFunc2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / [{}]", self.num.format(), self.den.format())
    }
}

/// `subst_z1` under its operation name.
pub fn subst_z1(f: &RatFunc2) -> Result<RatFunc, FieldError> {
    f.subst_z1()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn one() -> Rational {
        Rational::one()
    }

    #[test]
    fn cancels_z_minus_one() {
        // (z v - v) / (z - 1)
        let num = &BiPoly::monomial(one(), 1, 1) - &BiPoly::monomial(one(), 1, 0);
        let den = &BiPoly::monomial(one(), 0, 1) - &BiPoly::one();
        let f = RatFunc2::normalize(num, den).unwrap();
        assert_eq!(f.subst_z1().unwrap(), RatFunc::v_pow(1));
    }

    #[test]
    fn surviving_pole_is_singular() {
        let f = RatFunc2::one_minus(0, 1).inv().unwrap();
        assert_eq!(f.subst_z1(), Err(FieldError::SingularAtZ1));
    }

    #[test]
    fn z_power_cancels() {
        let f = RatFunc2::normalize(BiPoly::monomial(one(), 1, 2), BiPoly::monomial(one(), 0, 1))
            .unwrap();
        assert_eq!(f.subst_z1().unwrap(), RatFunc::v_pow(1));
    }

    #[test]
    fn gcd_finds_mixed_factor() {
        // (z - v)(z + 1) and (z - v)(v + 1)
        let zv = &BiPoly::monomial(one(), 0, 1) - &BiPoly::monomial(one(), 1, 0);
        let a = &zv * &(&BiPoly::monomial(one(), 0, 1) + &BiPoly::one());
        let b = &zv * &BiPoly::from_v(Poly::from_ints(&[1, 1]));
        assert_eq!(a.gcd(&b), zv);
    }

    #[test]
    fn normalization_is_scale_invariant() {
        let num = &BiPoly::monomial(one(), 2, 1) + &BiPoly::monomial(one(), 0, 0);
        let den = &BiPoly::monomial(one(), 1, 2) - &BiPoly::monomial(one(), 3, 0);
        let c = Rational::new(BigInt::from(-7), BigInt::from(3));
        let a = RatFunc2::normalize(num.clone(), den.clone()).unwrap();
        let b = RatFunc2::normalize(num.scale(&c), den.scale(&c)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn field_roundtrip() {
        let f = &RatFunc2::one_minus(3, -1) * &RatFunc2::monomial(one(), -2, 1);
        let g = RatFunc2::one_minus(-1, 2);
        let h = &(&f + &g) - &g;
        assert_eq!(h, f);
        assert_eq!(&f * &f.inv().unwrap(), RatFunc2::one());
    }
}
