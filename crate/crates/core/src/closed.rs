//! Closed forms for the q-Bernoulli numbers `beta*` and polynomials
//! `beta*(k)`, both as printed and through an independent geometric
//! continuation of the defining series, plus the closed forms of the
//! Warnaar, Schlosser and Kim sums.
//!
//! Exponents that can vanish all contain the half-integer `(n-1)/2`. When one
//! does, that parameter is shifted to `(n-1)/2 + eps` with `q^eps = z`, the
//! affected terms are reduced over `Q(v, z)` and `z = 1` is substituted.
//! Terms whose denominators stay nonzero at `z = 1` are continuous there, so
//! they are summed directly over `Q(v)`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::field::{FieldError, RatFunc, RatFunc2, Rational};
use crate::qobjects::{binomial, q_binomial, q_bracket, q_int, QExp};
use crate::sums::KimVariant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Regular,
    Regularized,
    Singular,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Regular => "regular",
            Status::Regularized => "regularized",
            Status::Singular => "singular",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    Paper,
    Reference,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Paper => "paper",
            Source::Reference => "reference",
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Source {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "paper" => Ok(Source::Paper),
            "reference" => Ok(Source::Reference),
            other => Err(format!("unknown source '{other}' (expected paper|reference)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClosedError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no displayed closed form for m = {0} (supported: 2, 3, 4, 5)")]
    UnsupportedM(u32),
    #[error("pole survives regularization (terms {0:?})")]
    SingularUnresolved(Vec<i64>),
}

/// A value that may have needed regularization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularizedValue {
    pub value: Option<RatFunc>,
    pub status: Status,
    /// Indices of the terms whose denominators vanished.
    pub singular_terms: Vec<i64>,
}

impl RegularizedValue {
    pub fn regular(value: RatFunc) -> Self {
        Self {
            value: Some(value),
            status: Status::Regular,
            singular_terms: Vec::new(),
        }
    }

    pub fn into_value(self) -> Result<RatFunc, ClosedError> {
        self.value.ok_or(ClosedError::SingularUnresolved(self.singular_terms))
    }

    pub fn map(self, f: impl FnOnce(RatFunc) -> RatFunc) -> Self {
        Self {
            value: self.value.map(f),
            ..self
        }
    }
}

/// One term `coeff * v^num_exp * z^z_exp / prod (1 - v^d z^-1)`; the `z`
/// parts only matter on the deformed path.
struct Term {
    index: i64,
    coeff: Rational,
    num_exp: i64,
    z_exp: i64,
    dens: Vec<i64>,
}

impl Term {
    fn hits_zero(&self) -> bool {
        self.dens.contains(&0)
    }

    fn undeformed(&self) -> RatFunc {
        let num = RatFunc::v_pow(self.num_exp).scale(&self.coeff);
        let den: RatFunc = self.dens.iter().map(|&d| RatFunc::one_minus_v_pow(d)).product();
        num.checked_div(&den).expect("nonzero denominator")
    }

    fn deformed(&self) -> RatFunc2 {
        let num = RatFunc2::monomial(self.coeff.clone(), self.num_exp, self.z_exp);
        self.dens.iter().fold(num, |acc, &d| {
            acc.checked_div(&RatFunc2::one_minus(d, -1)).expect("nonzero denominator")
        })
    }
}

/// Sums the terms, regularizing those with a vanishing exponent. Terms with
/// `coeff == 0` are dropped before any division.
fn evaluate(terms: Vec<Term>) -> RegularizedValue {
    let mut singular_terms: Vec<i64> = terms.iter().filter(|t| t.hits_zero()).map(|t| t.index).collect();
    singular_terms.sort_unstable();
    singular_terms.dedup();
    let live: Vec<Term> = terms.into_iter().filter(|t| !t.coeff.is_zero()).collect();
    let (bad, good): (Vec<&Term>, Vec<&Term>) = live.iter().partition(|t| t.hits_zero());
    let regular_part: RatFunc = good.iter().map(|t| t.undeformed()).sum();
    if singular_terms.is_empty() {
        return RegularizedValue::regular(regular_part);
    }
    let deformed = bad
        .iter()
        .map(|t| t.deformed())
        .fold(RatFunc2::zero(), |acc, t| &acc + &t);
    match deformed.subst_z1() {
        Ok(limit) => RegularizedValue {
            value: Some(&regular_part + &limit),
            status: Status::Regularized,
            singular_terms,
        },
        Err(FieldError::SingularAtZ1) => RegularizedValue {
            value: None,
            status: Status::Singular,
            singular_terms,
        },
        Err(e) => unreachable!("unexpected field error {e}"),
    }
}

fn check_nk(n: u32, k: u32) -> Result<(), ClosedError> {
    if n == 0 || k == 0 {
        return Err(ClosedError::InvalidParameter(format!("n and k must be positive (n={n}, k={k})")));
    }
    Ok(())
}

fn signed_binomial(n: i64, m: i64) -> Rational {
    let b = binomial(n as u64, m);
    if m % 2 == 0 { b } else { -b }
}

/// `(1 - q)^(-e)` for any integer `e`.
fn inv_one_minus_q_pow(e: i64) -> RatFunc {
    RatFunc::one_minus_v_pow(2)
        .pow(-(e as i32))
        .expect("1 - q is nonzero")
}

/// The numbers `beta*` as printed:
/// `(1/(1-q))^{n-1} sum_m C(n,m) (-1)^m m q^{(n-1)(k-1)/2+k+m-2} / ((1-q^{m-(n-1)/2-2})(1-q^{m-(n-1)/2}))`.
pub fn beta_star_paper(n: u32, k: u32) -> Result<RegularizedValue, ClosedError> {
    check_nk(n, k)?;
    let (n, k) = (i64::from(n), i64::from(k));
    let h = n - 1; // twice of (n-1)/2
    let terms = (0..=n)
        .map(|m| Term {
            index: m,
            coeff: signed_binomial(n, m) * Rational::from_integer(m.into()),
            num_exp: h * (k - 1) + 2 * (k + m - 2),
            z_exp: k - 1,
            dens: vec![2 * m - h - 4, 2 * m - h],
        })
        .collect();
    Ok(evaluate(terms).map(|v| &v * &inv_one_minus_q_pow(h)))
}

/// The polynomials `beta*(k)` as printed:
/// `1/([2]_q (1-q)^{n-2}) sum_m C(n,m) (-1)^m (m q^{k(m-1)}/(1-q^{m-(n-1)/2-2}) - m q^{k(m+1)}/(1-q^{m-(n-1)/2}))`.
pub fn beta_star_poly_paper(n: u32, k: u32) -> Result<RegularizedValue, ClosedError> {
    check_nk(n, k)?;
    let (n, k) = (i64::from(n), i64::from(k));
    let h = n - 1;
    let mut terms = Vec::with_capacity(2 * n as usize + 2);
    for m in 0..=n {
        let c = signed_binomial(n, m) * Rational::from_integer(m.into());
        terms.push(Term {
            index: m,
            coeff: c.clone(),
            num_exp: 2 * k * (m - 1),
            z_exp: 0,
            dens: vec![2 * m - h - 4],
        });
        terms.push(Term {
            index: m,
            coeff: -c,
            num_exp: 2 * k * (m + 1),
            z_exp: 0,
            dens: vec![2 * m - h],
        });
    }
    let value = evaluate(terms);
    let prefactor = q_int(2).inv().unwrap();
    Ok(value.map(|v| &(&v * &prefactor) * &inv_one_minus_q_pow(n - 2)))
}

/// Geometric-continuation terms of `sum_{j>=0} q^{-j} [j+s]_{q^2} [j+s]_q^{n-1} q^{-(n-1)j/2}`
/// without the common prefactor; `shift` is `s` and is 0 for the numbers.
///
/// `(q^{2x}-1)(q^x-1)^{n-1} = sum_i C(n-1,i) (-1)^{n-1-i} (q^{(i+2)x} - q^{ix})` with `x = j+s`.
fn continuation_terms(n: i64, shift: i64, z_exp: i64) -> Vec<Term> {
    let h = n - 1;
    let mut terms = Vec::with_capacity(2 * n as usize);
    for i in 0..=h {
        // C(n-1, i) (-1)^{n-1-i}
        let c = signed_binomial(h, i) * if h % 2 == 0 { Rational::one() } else { -Rational::one() };
        for (branch, power) in [(2, i + 2), (0, i)] {
            let sign = if branch == 2 { Rational::one() } else { -Rational::one() };
            terms.push(Term {
                index: i,
                coeff: &c * &sign,
                num_exp: 2 * power * shift,
                z_exp,
                // ratio q^{power - 1 - (n-1)/2}
                dens: vec![2 * power - 2 - h],
            });
        }
    }
    terms
}

/// Common prefactor `-n / ((q^2 - 1)(q - 1)^{n-1})`.
fn continuation_prefactor(n: i64) -> RatFunc {
    let den = &(&RatFunc::v_pow(4) - &RatFunc::one())
        * &(&RatFunc::v_pow(2) - &RatFunc::one()).pow((n - 1) as i32).unwrap();
    RatFunc::from_int(-n).checked_div(&den).unwrap()
}

/// The numbers via geometric continuation of
/// `-n sum_{j>=0} q^{k-j} [j]_{q^2} [j]_q^{n-1} q^{(n-1)(k-j)/2}`.
pub fn beta_star_reference(n: u32, k: u32) -> Result<RegularizedValue, ClosedError> {
    check_nk(n, k)?;
    let (n, k) = (i64::from(n), i64::from(k));
    let h = n - 1;
    let value = evaluate(continuation_terms(n, 0, k));
    let front = &RatFunc::v_pow(2 * k + h * k) * &continuation_prefactor(n);
    Ok(value.map(|v| &v * &front))
}

/// The polynomials via geometric continuation of
/// `-n sum_{j>=0} q^{-j} [j+k]_{q^2} [j+k]_q^{n-1} q^{-(n-1)j/2}`.
pub fn beta_star_poly_reference(n: u32, k: u32) -> Result<RegularizedValue, ClosedError> {
    check_nk(n, k)?;
    let (n, k) = (i64::from(n), i64::from(k));
    let value = evaluate(continuation_terms(n, k, 0));
    let front = continuation_prefactor(n);
    Ok(value.map(|v| &v * &front))
}

/// `(beta*(k) - beta*) / n` from the chosen pair of evaluators.
pub fn thm3_rhs(n: u32, k: u32, source: Source) -> Result<RegularizedValue, ClosedError> {
    let (poly, num) = match source {
        Source::Paper => (beta_star_poly_paper(n, k)?, beta_star_paper(n, k)?),
        Source::Reference => (beta_star_poly_reference(n, k)?, beta_star_reference(n, k)?),
    };
    Ok(combine_difference(poly, num, n))
}

fn combine_difference(poly: RegularizedValue, num: RegularizedValue, n: u32) -> RegularizedValue {
    let status = poly.status.max(num.status);
    let mut singular_terms = poly.singular_terms;
    singular_terms.extend(num.singular_terms);
    singular_terms.sort_unstable();
    singular_terms.dedup();
    let value = match (poly.value, num.value) {
        (Some(a), Some(b)) => Some((&a - &b).scale(&Rational::new(1.into(), n.into()))),
        _ => None,
    };
    RegularizedValue {
        value,
        status,
        singular_terms,
    }
}

/// `[n+1 choose 2]_q^2`.
pub fn warnaar_rhs(n: u32) -> RatFunc {
    let b = q_binomial(n + 1, 2);
    &b * &b
}

fn om(twice: i64) -> RatFunc {
    RatFunc::one_minus_v_pow(twice)
}

fn div(a: &RatFunc, b: &RatFunc) -> RatFunc {
    a.checked_div(b).expect("nonzero denominator")
}

/// The displayed closed forms for `m = 2, 3, 4, 5`.
pub fn schlosser_rhs(m: u32, n: u32) -> Result<RatFunc, ClosedError> {
    let nn = i64::from(n);
    let half = |twice: i64| q_bracket(QExp::from_twice(twice), 1);
    let qn = RatFunc::v_pow(2 * nn);
    Ok(match m {
        2 => div(
            &(&(&q_int(nn) * &q_int(nn + 1)) * &half(2 * nn + 1)),
            &(&(&q_int(1) * &q_int(2)) * &half(3)),
        ),
        3 => warnaar_rhs(n),
        4 => {
            let front = div(
                &(&(&om(2 * nn) * &om(2 * nn + 2)) * &om(2 * nn + 1)),
                &(&(&om(2) * &om(4)) * &om(5)),
            );
            let inner = &div(&(&om(2 * nn) * &om(2 * nn + 2)), &(&om(2) * &om(2)))
                - &div(&(&qn * &om(1)), &om(3));
            &front * &inner
        }
        5 => {
            let a = &om(2 * nn) * &om(2 * nn + 2);
            let front = div(&(&a * &a), &(&(&(&om(2) * &om(2)) * &om(4)) * &om(6)));
            let inner = &div(&a, &(&om(2) * &om(2))) - &div(&(&qn * &om(2)), &om(4));
            &front * &inner
        }
        other => return Err(ClosedError::UnsupportedM(other)),
    })
}

/// Linear: `(1/2)([n]^2 - [2n]/[2])`; square: `(1/3)[n]^3 - (1/2)([n]^2 - [2n]/[2]) - (1/3)[3n]/[3]`.
pub fn kim_rhs(n: u32, variant: KimVariant) -> RatFunc {
    let nn = i64::from(n);
    let qn = q_int(nn);
    let half = Rational::new(1.into(), 2.into());
    let third = Rational::new(1.into(), 3.into());
    let linear = (&(&qn * &qn) - &div(&q_int(2 * nn), &q_int(2))).scale(&half);
    match variant {
        KimVariant::Linear => linear,
        KimVariant::Square => {
            let cube = (&(&qn * &qn) * &qn).scale(&third);
            let tail = div(&q_int(3 * nn), &q_int(3)).scale(&third);
            &(&cube - &linear) - &tail
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{frac, Poly};
    use crate::sums::{kim_sum, schlosser_sum, thm3_lhs, warnaar_lhs};

    fn q() -> RatFunc {
        RatFunc::v_pow(2)
    }

    #[test]
    fn paper_numbers_n1_k1() {
        let r = beta_star_paper(1, 1).unwrap();
        assert_eq!(r.status, Status::Regularized);
        assert_eq!(r.singular_terms, vec![0]);
        let expected = div(&q(), &(&om(2) * &om(2)));
        assert_eq!(r.value.unwrap(), expected);
    }

    #[test]
    fn paper_polynomials_n1_k1() {
        let r = beta_star_poly_paper(1, 1).unwrap();
        assert_eq!(r.status, Status::Regularized);
        assert_eq!(r.value.unwrap(), q());
    }

    #[test]
    fn even_n_is_regular() {
        for n in [2, 4, 6, 8] {
            for k in 1..=3 {
                assert_eq!(beta_star_paper(n, k).unwrap().status, Status::Regular);
                assert_eq!(beta_star_poly_paper(n, k).unwrap().status, Status::Regular);
                assert_eq!(beta_star_reference(n, k).unwrap().status, Status::Regular);
            }
        }
    }

    #[test]
    fn zero_parameters_rejected() {
        assert!(matches!(beta_star_paper(0, 1), Err(ClosedError::InvalidParameter(_))));
        assert!(matches!(beta_star_poly_reference(1, 0), Err(ClosedError::InvalidParameter(_))));
    }

    #[test]
    fn thm3_paper_n1_k1_discrepancy() {
        let r = thm3_rhs(1, 1, Source::Paper).unwrap().into_value().unwrap();
        let expected = div(&(&(&q() * &q()) * &(&q() - &RatFunc::from_int(2))), &(&om(2) * &om(2)));
        assert_eq!(r, expected);
        assert_ne!(r, thm3_lhs(1, 1));
    }

    #[test]
    fn reference_n1_agrees_with_paper_numbers() {
        assert_eq!(
            beta_star_reference(1, 1).unwrap().value,
            beta_star_paper(1, 1).unwrap().value
        );
    }

    #[test]
    fn reference_odd_n_is_regularized() {
        for n in [3, 5, 7] {
            let r = beta_star_reference(n, 2).unwrap();
            assert_eq!(r.status, Status::Regularized, "n={n}");
            assert!(r.value.is_some());
        }
    }

    /// The zero-ratio terms cancel pairwise for odd `n`, so dropping them outright
    /// must give the same value as the deformation.
    #[test]
    fn regularization_matches_cancellation() {
        for n in [3u32, 5, 7] {
            for k in 1..=4u32 {
                let (ni, ki) = (i64::from(n), i64::from(k));
                let dropped: RatFunc = continuation_terms(ni, 0, ki)
                    .into_iter()
                    .filter(|t| !t.hits_zero())
                    .map(|t| t.undeformed())
                    .sum();
                let front = &RatFunc::v_pow(2 * ki + (ni - 1) * ki) * &continuation_prefactor(ni);
                assert_eq!(beta_star_reference(n, k).unwrap().value.unwrap(), &dropped * &front);
            }
        }
    }

    /// Summing everything over `Q(v, z)` agrees with the split evaluation.
    #[test]
    fn split_evaluation_matches_full_deformation() {
        for n in [1u32, 3] {
            for k in 1..=2u32 {
                let full: RatFunc2 = continuation_terms(i64::from(n), i64::from(k), 0)
                    .iter()
                    .filter(|t| !t.coeff.is_zero())
                    .map(Term::deformed)
                    .fold(RatFunc2::zero(), |a, t| &a + &t);
                let full = &full.subst_z1().unwrap() * &continuation_prefactor(i64::from(n));
                assert_eq!(Some(full), beta_star_poly_reference(n, k).unwrap().value);
            }
        }
    }

    #[test]
    fn reference_difference_sign() {
        // n=2, k=2: thm3_lhs = v^3, and the continuation gives +n times it.
        let poly = beta_star_poly_reference(2, 2).unwrap().into_value().unwrap();
        let num = beta_star_reference(2, 2).unwrap().into_value().unwrap();
        assert_eq!(&poly - &num, RatFunc::v_pow(3).scale(&frac(2, 1)));
        let poly = beta_star_poly_reference(2, 1).unwrap().into_value().unwrap();
        let num = beta_star_reference(2, 1).unwrap().into_value().unwrap();
        assert_eq!(poly, num);
    }

    #[test]
    fn reference_theorem3_holds() {
        for n in 1..=8 {
            for k in 1..=6 {
                let r = thm3_rhs(n, k, Source::Reference).unwrap();
                assert_ne!(r.status, Status::Singular);
                assert_eq!(r.value.unwrap(), thm3_lhs(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn closed_form_sums() {
        assert_eq!(warnaar_rhs(1), RatFunc::one());
        assert_eq!(schlosser_rhs(2, 1).unwrap(), RatFunc::one());
        assert_eq!(kim_rhs(2, KimVariant::Linear), q());
        assert_eq!(schlosser_rhs(1, 3), Err(ClosedError::UnsupportedM(1)));
        assert_eq!(schlosser_rhs(6, 3), Err(ClosedError::UnsupportedM(6)));
        for n in 1..=10 {
            assert_eq!(warnaar_lhs(n), warnaar_rhs(n));
            for m in 2..=5 {
                assert_eq!(schlosser_sum(m, n), schlosser_rhs(m, n).unwrap(), "m={m} n={n}");
            }
            for variant in KimVariant::ALL {
                assert_eq!(kim_sum(n, variant), kim_rhs(n, variant), "{variant} n={n}");
            }
        }
    }

    #[test]
    fn poly_is_polynomial_in_v() {
        assert!(warnaar_rhs(4).is_polynomial());
        assert_eq!(warnaar_rhs(1).num(), &Poly::one());
    }
}
