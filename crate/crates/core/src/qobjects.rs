//! q-integers, q-brackets with half-integer argument, q-powers, q-factorials
//! and Gaussian binomial coefficients.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, ToPrimitive, Zero};

use crate::field::{RatFunc, Rational};

/// An exponent of `q` that may be half-integral, stored doubled so that
/// `q^e = v^(2e)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QExp {
    twice: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QExpError {
    #[error("q-exponent {0} is not a multiple of 1/2")]
    Malformed(Rational),
}

impl QExp {
    pub const ZERO: QExp = QExp { twice: 0 };

    pub fn int(e: i64) -> Self {
        Self { twice: 2 * e }
    }

    /// The exponent `twice / 2`.
    pub fn from_twice(twice: i64) -> Self {
        Self { twice }
    }

    pub fn twice_value(self) -> i64 {
        self.twice
    }

    pub fn is_integral(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(self.twice.into(), 2.into())
    }

    /// Accepts integers and halves; anything with a larger denominator is malformed.
    pub fn from_rational(r: &Rational) -> Result<Self, QExpError> {
        let doubled = r * Rational::from_integer(2.into());
        if !doubled.is_integer() {
            return Err(QExpError::Malformed(r.clone()));
        }
        doubled
            .to_integer()
            .to_i64()
            .map(Self::from_twice)
            .ok_or_else(|| QExpError::Malformed(r.clone()))
    }
}

impl Add for QExp {
    type Output = QExp;
    fn add(self, rhs: QExp) -> QExp {
        QExp::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for QExp {
    type Output = QExp;
    fn sub(self, rhs: QExp) -> QExp {
        QExp::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for QExp {
    type Output = QExp;
    fn neg(self) -> QExp {
        QExp::from_twice(-self.twice)
    }
}

impl fmt::Display for QExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// `q^e` as the monomial `v^(2e)`.
pub fn q_power(e: QExp) -> RatFunc {
    RatFunc::v_pow(e.twice)
}

/// `[e]_{q^base} = (q^(base*e) - 1) / (q^base - 1)`.
///
/// # Panics
///
/// Panics if `base` is zero.
pub fn q_bracket(e: QExp, base: u32) -> RatFunc {
    assert!(base >= 1, "q-bracket base must be positive");
    if e.twice == 0 {
        return RatFunc::zero();
    }
    let b = i64::from(base);
    let num = &RatFunc::v_pow(b * e.twice) - &RatFunc::one();
    let den = &RatFunc::v_pow(2 * b) - &RatFunc::one();
    num.checked_div(&den).expect("q^base - 1 is nonzero")
}

/// `[k]_q` for an integer `k`.
pub fn q_int(k: i64) -> RatFunc {
    q_bracket(QExp::int(k), 1)
}

/// Gaussian binomial via the product `prod_{j=1..k} (1 - q^(n+1-j)) / (1 - q^j)`;
/// zero outside `0 <= k <= n`.
pub fn q_binomial(n: u32, k: i64) -> RatFunc {
    if k < 0 || k > i64::from(n) {
        return RatFunc::zero();
    }
    let n = i64::from(n);
    (1..=k)
        .map(|j| {
            RatFunc::one_minus_v_pow(2 * (n + 1 - j))
                .checked_div(&RatFunc::one_minus_v_pow(2 * j))
                .expect("1 - q^j is nonzero for j >= 1")
        })
        .product()
}

/// `[n]_q! = prod_{j=1..n} [j]_q`.
pub fn q_factorial(n: u32) -> RatFunc {
    (1..=i64::from(n)).map(q_int).product()
}

/// Classical binomial coefficient as a rational, zero outside `0..=n`.
pub fn binomial(n: u64, k: i64) -> Rational {
    if k < 0 || k as u64 > n {
        return Rational::zero();
    }
    let k = k as u64;
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * Rational::from_integer((n - i).into()) / Rational::from_integer((i + 1).into());
    }
    acc
}
