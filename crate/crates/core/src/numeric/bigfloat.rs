use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{Consts, Radix, RoundingMode};

use crate::field::Rational;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Binary floating-point value with an explicit working precision in bits.
/// Binary operations round to the larger of the two precisions.
#[derive(Clone, Debug)]
pub struct BigFloat {
    x: astro_float::BigFloat,
    p: usize,
}

impl BigFloat {
    pub fn from_i64(v: i64, p: usize) -> Self {
        Self { x: astro_float::BigFloat::from_i64(v, p), p }
    }

    pub fn from_f64(v: f64, p: usize) -> Self {
        Self { x: astro_float::BigFloat::from_f64(v, p), p }
    }

    pub fn from_rational(r: &Rational, p: usize) -> Self {
        let parse = |s: String| with_consts(|cc| astro_float::BigFloat::parse(&s, Radix::Dec, p + 64, RM, cc));
        let num = parse(r.numer().to_string());
        let den = parse(r.denom().to_string());
        Self { x: num.div(&den, p, RM), p }
    }

    /// Parses a decimal literal such as `1e-30` or `-0.25`.
    pub fn parse(s: &str, p: usize) -> Option<Self> {
        let x = with_consts(|cc| astro_float::BigFloat::parse(s, Radix::Dec, p, RM, cc));
        (!x.is_nan()).then_some(Self { x, p })
    }

    pub fn precision(&self) -> usize {
        self.p
    }

    /// The same value rounded to `p` bits.
    pub fn round_to(&self, p: usize) -> Self {
        let mut x = self.x.clone();
        x.set_precision(p, RM).expect("precision change");
        Self { x, p }
    }

    pub fn zero(p: usize) -> Self {
        Self::from_i64(0, p)
    }

    pub fn one(p: usize) -> Self {
        Self::from_i64(1, p)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.x.is_negative() && !self.x.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.x.is_nan() && !self.x.is_inf()
    }

    pub fn abs(&self) -> Self {
        Self { x: self.x.abs(), p: self.p }
    }

    pub fn exp(&self) -> Self {
        let x = with_consts(|cc| self.x.exp(self.p, RM, cc));
        Self { x, p: self.p }
    }

    pub fn ln(&self) -> Self {
        let x = with_consts(|cc| self.x.ln(self.p, RM, cc));
        Self { x, p: self.p }
    }

    pub fn sqrt(&self) -> Self {
        Self { x: self.x.sqrt(self.p, RM), p: self.p }
    }

    pub fn powi(&self, n: i64) -> Self {
        let pos = self.x.powi(n.unsigned_abs() as usize, self.p, RM);
        let x = if n < 0 { pos.reciprocal(self.p, RM) } else { pos };
        Self { x, p: self.p }
    }

    pub fn recip(&self) -> Self {
        Self { x: self.x.reciprocal(self.p, RM), p: self.p }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Full-precision decimal text as produced by the backend, `d.ddd...e±x`.
    fn raw_decimal(&self) -> String {
        with_consts(|cc| self.x.format(Radix::Dec, RM, cc)).expect("decimal formatting")
    }

    /// Scientific notation with `digits` significant digits (round half up on
    /// the full decimal expansion), e.g. `-9.2067...e-1`; zero prints as `0`.
    pub fn to_sci_string(&self, digits: usize) -> String {
        if self.x.is_zero() {
            return "0".to_string();
        }
        if !self.is_finite() {
            return if self.x.is_nan() { "nan".into() } else if self.x.is_negative() { "-inf".into() } else { "inf".into() };
        }
        let raw = self.raw_decimal();
        let (sign, body) = match raw.strip_prefix('-') {
            Some(rest) => ("-", rest),
            None => ("", raw.as_str()),
        };
        let (mant, exp) = body.split_once('e').unwrap_or((body, "0"));
        let mut exp: i64 = exp.parse().expect("decimal exponent");
        let mut ds: Vec<u8> = mant.bytes().filter(u8::is_ascii_digit).map(|b| b - b'0').collect();
        // normalise away leading zeros, e.g. "0.0"
        while ds.len() > 1 && ds[0] == 0 {
            ds.remove(0);
            exp -= 1;
        }
        if ds.len() > digits {
            let round_up = ds[digits] >= 5;
            ds.truncate(digits);
            if round_up {
                let mut i = digits;
                loop {
                    if i == 0 {
                        ds.insert(0, 1);
                        ds.truncate(digits);
                        exp += 1;
                        break;
                    }
                    i -= 1;
                    if ds[i] == 9 {
                        ds[i] = 0;
                    } else {
                        ds[i] += 1;
                        break;
                    }
                }
            }
        }
        while ds.len() > 1 && *ds.last().unwrap() == 0 {
            ds.pop();
        }
        let mut out = format!("{sign}{}", ds[0]);
        if ds.len() > 1 {
            out.push('.');
            out.extend(ds[1..].iter().map(|d| char::from(b'0' + d)));
        }
        out.push_str(&format!("e{exp}"));
        out
    }

    pub fn to_f64(&self) -> f64 {
        self.to_sci_string(20).parse().unwrap_or(f64::NAN)
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.x.cmp(&other.x) == Some(0)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.x.cmp(&other.x).map(|c| c.cmp(&0))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for &BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &BigFloat) -> BigFloat {
                let p = self.p.max(rhs.p);
                BigFloat { x: self.x.$m(&rhs.x, p, RM), p }
            }
        }
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat { x: astro_float::BigFloat::neg(&self.x), p: self.p }
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        -&self
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci_string(20))
    }
}
