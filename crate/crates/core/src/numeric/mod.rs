//! Multiprecision evaluation of the generating functions `F*`, the two q-zeta
//! series, their Mellin-transform integrals, and the Barnes `F_2` comparison.
//!
//! Everything is deterministic for fixed [`NumericParams`]: same inputs, same
//! bits.

mod bigfloat;
pub mod quad;

use std::fmt;
use std::str::FromStr;

use num_traits::One;

pub use bigfloat::BigFloat;

use crate::closed::{beta_star_paper, beta_star_reference, ClosedError, RegularizedValue, Source};
use crate::field::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumericError {
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("invalid numeric parameters: {0}")]
    InvalidParams(String),
    #[error("series did not meet the stopping rule within {0} terms")]
    TruncationNotConverged(u64),
    #[error("quadrature did not converge after {0} refinements")]
    QuadratureNotConverged(u32),
}

type Result<T> = std::result::Result<T, NumericError>;

/// Which generating function or zeta series to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Which {
    Numbers,
    Polynomials,
}

/// Exponent of the polynomial-side zeta series: `-n(s+2)/2` as printed, or
/// `+n(s-2)/2` from integrating `F*(t; k)` term by term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ZetaVariant {
    Paper,
    Derived,
}

impl Which {
    pub fn as_str(self) -> &'static str {
        match self {
            Which::Numbers => "numbers",
            Which::Polynomials => "polynomials",
        }
    }
}

impl ZetaVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            ZetaVariant::Paper => "paper",
            ZetaVariant::Derived => "derived",
        }
    }
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for ZetaVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Which {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "numbers" => Ok(Which::Numbers),
            "polynomials" => Ok(Which::Polynomials),
            other => Err(format!("unknown series '{other}' (expected numbers|polynomials)")),
        }
    }
}

impl FromStr for ZetaVariant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "paper" => Ok(ZetaVariant::Paper),
            "derived" => Ok(ZetaVariant::Derived),
            other => Err(format!("unknown variant '{other}' (expected paper|derived)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericParams {
    pub q: Rational,
    /// Relative truncation tolerance for the series.
    pub tol: f64,
    pub max_terms: u64,
    /// Working precision in bits.
    pub precision: usize,
}

impl NumericParams {
    pub const DEFAULT_TOL: f64 = 1e-30;
    pub const DEFAULT_MAX_TERMS: u64 = 100_000;
    pub const DEFAULT_PRECISION: usize = 256;

    pub fn new(q: Rational) -> Self {
        Self {
            q,
            tol: Self::DEFAULT_TOL,
            max_terms: Self::DEFAULT_MAX_TERMS,
            precision: Self::DEFAULT_PRECISION,
        }
    }

    pub fn with_q(&self, q: Rational) -> Self {
        Self { q, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.q <= Rational::one() {
            return Err(NumericError::DomainError(format!("q must exceed 1 (got {})", self.q)));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(NumericError::InvalidParams(format!("tol must lie in (0, 1) (got {})", self.tol)));
        }
        if self.max_terms == 0 {
            return Err(NumericError::InvalidParams("max_terms must be at least 1".into()));
        }
        if self.precision < 64 {
            return Err(NumericError::InvalidParams(format!(
                "precision must be at least 64 bits (got {})",
                self.precision
            )));
        }
        Ok(())
    }
}

/// Precomputed constants for one parameter set.
struct Ctx {
    p: usize,
    q: BigFloat,
    sq: BigFloat,
    one: BigFloat,
    tol: BigFloat,
    max_terms: u64,
}

impl Ctx {
    fn new(params: &NumericParams) -> Result<Self> {
        params.validate()?;
        let p = params.precision;
        let q = BigFloat::from_rational(&params.q, p);
        Ok(Self {
            p,
            sq: q.sqrt(),
            q,
            one: BigFloat::one(p),
            tol: BigFloat::from_f64(params.tol, p),
            max_terms: params.max_terms,
        })
    }

    fn int(&self, v: i64) -> BigFloat {
        BigFloat::from_i64(v, self.p)
    }

    /// `[x]` given `b^x`, for base `b`: `(b^x - 1)/(b - 1)`.
    fn bracket(&self, bx: &BigFloat, b: &BigFloat) -> BigFloat {
        &(bx - &self.one) / &(b - &self.one)
    }

    /// Sums `term(0), term(1), ...` until three consecutive terms are below
    /// `tol * |partial sum|`.
    fn sum_series(&self, mut term: impl FnMut(u64) -> BigFloat) -> Result<BigFloat> {
        let mut sum = BigFloat::zero(self.p);
        let mut small = 0;
        for i in 0..self.max_terms {
            let t = term(i);
            sum = &sum + &t;
            if t.abs() < &self.tol * &sum.abs() {
                small += 1;
                if small == 3 {
                    return Ok(sum);
                }
            } else {
                small = 0;
            }
        }
        Err(NumericError::TruncationNotConverged(self.max_terms))
    }

    /// `F*(t)` or `F*(t; k)` for `t < 0`.
    fn f_star(&self, t: &BigFloat, k: u32, which: Which) -> Result<BigFloat> {
        let k = i64::from(k);
        let q2 = &self.q * &self.q;
        let qk = self.q.powi(k);
        let sqk = self.sq.powi(k);
        let sum = match which {
            // sum_{j>=1} q^{k-j} [j]_{q^2} exp(t [j]_q q^{(k-j)/2})
            Which::Numbers => {
                let mut qj = self.q.clone();
                let mut sqj = self.sq.clone();
                self.sum_series(|_| {
                    let w = &(&qk / &qj) * &self.bracket(&(&qj * &qj), &q2);
                    let c = &self.bracket(&qj, &self.q) * &(&sqk / &sqj);
                    let term = &w * &(t * &c).exp();
                    qj = &qj * &self.q;
                    sqj = &sqj * &self.sq;
                    term
                })?
            }
            // sum_{j>=0} q^{-j} [j+k]_{q^2} exp(t [j+k]_q q^{-j/2})
            Which::Polynomials => {
                let mut qj = self.one.clone();
                let mut sqj = self.one.clone();
                self.sum_series(|_| {
                    let qjk = &qj * &qk;
                    let w = &self.bracket(&(&qjk * &qjk), &q2) / &qj;
                    let c = &self.bracket(&qjk, &self.q) / &sqj;
                    let term = &w * &(t * &c).exp();
                    qj = &qj * &self.q;
                    sqj = &sqj * &self.sq;
                    term
                })?
            }
        };
        Ok(-(t * &sum))
    }
}

/// The truncated generating-function series at `t < 0`:
/// numbers `-t sum_j q^{k-j}[j]_{q^2} exp(t [j]_q q^{(k-j)/2})`,
/// polynomials `-t sum_j q^{-j}[j+k]_{q^2} exp(t [j+k]_q q^{-j/2})`.
pub fn f_star_numeric(t: &BigFloat, k: u32, params: &NumericParams, which: Which) -> Result<BigFloat> {
    let ctx = Ctx::new(params)?;
    if !t.is_negative() {
        return Err(NumericError::DomainError("t must be negative".into()));
    }
    check_k(k)?;
    ctx.f_star(&t.round_to(ctx.p), k, which)
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        return Err(NumericError::DomainError("k must be positive".into()));
    }
    Ok(())
}

fn check_s(s: u32) -> Result<()> {
    if s < 3 {
        return Err(NumericError::DomainError(format!("s must be an integer >= 3 (got {s})")));
    }
    Ok(())
}

/// The q-zeta series. Numbers: `sum_{n>=1} [n]_{q^2} q^{(k-n)(2-s)/2} / [n]_q^s`.
/// Polynomials: `sum_{n>=0} [n+k]_{q^2} q^{e n} / [n+k]_q^s` with `e` chosen by
/// `variant`; the variant is ignored for the numbers series.
pub fn zeta_star_series(
    s: u32,
    k: u32,
    params: &NumericParams,
    which: Which,
    variant: ZetaVariant,
) -> Result<BigFloat> {
    let ctx = Ctx::new(params)?;
    check_s(s)?;
    check_k(k)?;
    let (s, k) = (i64::from(s), i64::from(k));
    let q2 = &ctx.q * &ctx.q;
    match which {
        Which::Numbers => {
            let mut qn = ctx.q.clone();
            ctx.sum_series(|i| {
                let n = i as i64 + 1;
                let term = &(&ctx.bracket(&(&qn * &qn), &q2) * &ctx.sq.powi((k - n) * (2 - s)))
                    / &ctx.bracket(&qn, &ctx.q).powi(s);
                qn = &qn * &ctx.q;
                term
            })
        }
        Which::Polynomials => {
            let twice_e = match variant {
                ZetaVariant::Paper => -(s + 2),
                ZetaVariant::Derived => s - 2,
            };
            let step = ctx.sq.powi(twice_e);
            let mut qnk = ctx.q.powi(k);
            let mut weight = ctx.one.clone();
            ctx.sum_series(|_| {
                let term = &(&ctx.bracket(&(&qnk * &qnk), &q2) * &weight) / &ctx.bracket(&qnk, &ctx.q).powi(s);
                qnk = &qnk * &ctx.q;
                weight = &weight * &step;
                term
            })
        }
    }
}

/// `(1/(s-1)!) int_0^inf t^{s-2} F*(-t) dt` by composite 32-point Gauss-Legendre.
pub fn mellin_quadrature(s: u32, k: u32, params: &NumericParams, which: Which) -> Result<BigFloat> {
    Ok(mellin_quadrature_many(&[s], k, params, which)?.remove(0))
}

const GL_POINTS: usize = 32;
const BASE_PANELS: u32 = 16;
const GRADING_LEVELS: u32 = 12;
const MAX_REFINEMENTS: u32 = 5;

/// [`mellin_quadrature`] for several `s` sharing one set of `F*` evaluations.
///
/// The range `[0, T]` is cut where the integrand falls below `1e-40` of its
/// sampled peak. The mesh is uniform with the first panel graded
/// geometrically toward 0, where `F*(-t)` carries `t log t` terms; all panels
/// are halved until successive estimates agree to `1e-12` relative.
pub fn mellin_quadrature_many(ss: &[u32], k: u32, params: &NumericParams, which: Which) -> Result<Vec<BigFloat>> {
    let ctx = Ctx::new(params)?;
    check_k(k)?;
    for &s in ss {
        check_s(s)?;
    }
    let p = ctx.p;
    let eval = |t: &BigFloat| ctx.f_star(&-t, k, which);
    let weights = |t: &BigFloat, f: &BigFloat| -> Vec<BigFloat> {
        ss.iter().map(|&s| &t.powi(i64::from(s) - 2) * f).collect()
    };

    // cutoff
    let cutoff = BigFloat::parse("1e-40", p).expect("literal");
    let mut peaks = vec![BigFloat::zero(p); ss.len()];
    let mut t = BigFloat::one(p) / ctx.int(16);
    let mut big_t = None;
    for _ in 0..40 {
        let g = weights(&t, &eval(&t)?);
        for (pk, gi) in peaks.iter_mut().zip(&g) {
            *pk = pk.clone().max(gi.abs());
        }
        let below = g.iter().zip(&peaks).all(|(gi, pk)| gi.abs() < &cutoff * pk);
        if below {
            big_t = Some(t.clone());
            break;
        }
        t = &t * &ctx.int(2);
    }
    let big_t = big_t.ok_or(NumericError::QuadratureNotConverged(0))?;

    let w = &big_t / &ctx.int(i64::from(BASE_PANELS));
    let mut panels: Vec<(BigFloat, BigFloat)> = Vec::new();
    let mut lo = BigFloat::zero(p);
    for i in (0..GRADING_LEVELS).rev() {
        let hi = &w / &ctx.int(1 << i);
        panels.push((lo, hi.clone()));
        lo = hi;
    }
    for i in 1..BASE_PANELS {
        panels.push((&w * &ctx.int(i64::from(i)), &w * &ctx.int(i64::from(i) + 1)));
    }

    let rule = quad::gauss_legendre(GL_POINTS, p);
    let two = ctx.int(2);
    let mut previous: Option<Vec<BigFloat>> = None;
    for round in 0..=MAX_REFINEMENTS {
        let mut totals = vec![BigFloat::zero(p); ss.len()];
        for (a, b) in &panels {
            let half = &(b - a) / &two;
            let mid = &(a + b) / &two;
            for (x, wt) in &rule {
                let t = &mid + &(&half * x);
                let g = weights(&t, &eval(&t)?);
                let scale = wt * &half;
                for (tot, gi) in totals.iter_mut().zip(&g) {
                    *tot = &*tot + &(&scale * gi);
                }
            }
        }
        if let Some(prev) = &previous {
            let rel = BigFloat::parse("1e-12", p).expect("literal");
            let settled = totals
                .iter()
                .zip(prev)
                .all(|(cur, old)| (cur - old).abs() < &rel * &cur.abs());
            if settled {
                return Ok(totals
                    .into_iter()
                    .zip(ss)
                    .map(|(tot, &s)| &tot / &factorial(s - 1, p))
                    .collect());
            }
        }
        if round == MAX_REFINEMENTS {
            break;
        }
        previous = Some(totals);
        panels = panels
            .into_iter()
            .flat_map(|(a, b)| {
                let m = &(&a + &b) / &two;
                [(a, m.clone()), (m, b)]
            })
            .collect();
    }
    Err(NumericError::QuadratureNotConverged(MAX_REFINEMENTS))
}

fn factorial(n: u32, p: usize) -> BigFloat {
    (1..=i64::from(n)).fold(BigFloat::one(p), |acc, i| &acc * &BigFloat::from_i64(i, p))
}

/// `t e^t / (1 - e^t)^2`.
pub fn barnes_f2(t: &BigFloat) -> Result<BigFloat> {
    if t.is_zero() {
        return Err(NumericError::DomainError("pole at t = 0".into()));
    }
    let e = t.exp();
    let d = &BigFloat::one(t.precision()) - &e;
    Ok(&(t * &e) / &(&d * &d))
}

#[derive(Clone, Debug)]
pub struct BarnesGap {
    pub q: Rational,
    pub f_star: BigFloat,
    /// `-F_2(t)`, the claimed `q -> 1` limit.
    pub target: BigFloat,
    pub gap: BigFloat,
}

/// For each `q`, the distance between `F*(t)` (numbers, shift `k`) and
/// `-F_2(t)`. No trend is asserted.
pub fn barnes_limit_diagnostic(
    t: &BigFloat,
    k: u32,
    q_list: &[Rational],
    params: &NumericParams,
) -> Result<Vec<BarnesGap>> {
    q_list
        .iter()
        .map(|q| {
            let pq = params.with_q(q.clone());
            let f_star = f_star_numeric(t, k, &pq, Which::Numbers)?;
            let target = -barnes_f2(&t.round_to(pq.precision))?;
            let gap = (&f_star - &target).abs();
            Ok(BarnesGap {
                q: q.clone(),
                f_star,
                target,
                gap,
            })
        })
        .collect()
}

/// `-beta*/n` from the chosen closed form, keeping its regularization status.
pub fn zeta_special_value(n: u32, k: u32, source: Source) -> std::result::Result<RegularizedValue, ClosedError> {
    let beta = match source {
        Source::Paper => beta_star_paper(n, k)?,
        Source::Reference => beta_star_reference(n, k)?,
    };
    let factor = -Rational::new(1.into(), i64::from(n).into());
    Ok(beta.map(|v| v.scale(&factor)))
}

/// Relative gap `|a/b - 1|`; infinite when `b` is zero and `a` is not.
pub fn relative_gap(a: &BigFloat, b: &BigFloat) -> BigFloat {
    let p = a.precision().max(b.precision());
    if b.is_zero() {
        return if a.is_zero() { BigFloat::zero(p) } else { BigFloat::one(p) / BigFloat::zero(p) };
    }
    (&(a / b) - &BigFloat::one(p)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{frac, rat, RatFunc};

    fn params(q: Rational) -> NumericParams {
        NumericParams::new(q)
    }

    fn close(a: &BigFloat, b: &BigFloat, rel: &str) -> bool {
        relative_gap(a, b) < BigFloat::parse(rel, 256).unwrap()
    }

    #[test]
    fn domain_errors() {
        let p = params(rat(2));
        let t0 = BigFloat::zero(256);
        assert!(matches!(f_star_numeric(&t0, 1, &p, Which::Numbers), Err(NumericError::DomainError(_))));
        let t = BigFloat::from_i64(-1, 256);
        let half = params(frac(1, 2));
        assert!(matches!(f_star_numeric(&t, 1, &half, Which::Numbers), Err(NumericError::DomainError(_))));
        assert!(matches!(
            zeta_star_series(2, 1, &p, Which::Numbers, ZetaVariant::Derived),
            Err(NumericError::DomainError(_))
        ));
        assert!(matches!(mellin_quadrature(2, 1, &p, Which::Numbers), Err(NumericError::DomainError(_))));
        assert!(matches!(barnes_f2(&t0), Err(NumericError::DomainError(_))));
        let bad = NumericParams { precision: 32, ..p.clone() };
        assert!(matches!(bad.validate(), Err(NumericError::InvalidParams(_))));
        let one_term = NumericParams { max_terms: 2, ..p };
        assert!(matches!(
            f_star_numeric(&t, 1, &one_term, Which::Numbers),
            Err(NumericError::TruncationNotConverged(2))
        ));
    }

    #[test]
    fn barnes_value_and_sign() {
        let v = barnes_f2(&BigFloat::from_i64(-1, 256)).unwrap();
        assert!((v.to_f64() + 0.920_673_594_207_8).abs() < 1e-12, "{v}");
        for t in [-7, -3, -1] {
            assert!(barnes_f2(&BigFloat::from_i64(t, 128)).unwrap().is_negative());
        }
        assert!(barnes_limit_diagnostic(&BigFloat::from_i64(-1, 256), 1, &[], &params(rat(2)))
            .unwrap()
            .is_empty());
        assert!(barnes_limit_diagnostic(&BigFloat::from_i64(-1, 256), 1, &[rat(1)], &params(rat(2))).is_err());
    }

    /// Independent f64 oracle for `F*(t)` at a moderate `t`.
    #[test]
    fn f_star_matches_f64_oracle() {
        let (q, k, t) = (2.0f64, 1i32, -1.0f64);
        let mut sum = 0.0;
        for j in 1..200 {
            let jq = (q.powi(j) - 1.0) / (q - 1.0);
            let jq2 = (q.powi(2 * j) - 1.0) / (q * q - 1.0);
            sum += q.powi(k - j) * jq2 * (t * jq * q.powf(f64::from(k - j) / 2.0)).exp();
        }
        let oracle = -t * sum;
        let got = f_star_numeric(&BigFloat::from_f64(t, 256), 1, &params(rat(2)), Which::Numbers).unwrap();
        assert!((got.to_f64() - oracle).abs() < 1e-12 * oracle.abs());
    }

    #[test]
    fn determinism_and_precision_scaling() {
        let t = BigFloat::from_i64(-1, 256);
        let p = params(rat(2));
        let a = f_star_numeric(&t, 1, &p, Which::Numbers).unwrap();
        let b = f_star_numeric(&t, 1, &p, Which::Numbers).unwrap();
        assert_eq!(a.to_sci_string(70), b.to_sci_string(70));
        let p2 = NumericParams { precision: 512, ..p.clone() };
        let c = f_star_numeric(&BigFloat::from_i64(-1, 512), 1, &p2, Which::Numbers).unwrap();
        assert!(relative_gap(&a, &c) < BigFloat::parse("1e-29", 512).unwrap());
        let z1 = zeta_star_series(3, 1, &p, Which::Polynomials, ZetaVariant::Derived).unwrap();
        let z2 = zeta_star_series(3, 1, &p2, Which::Polynomials, ZetaVariant::Derived).unwrap();
        assert!(relative_gap(&z1, &z2) < BigFloat::parse("1e-29", 512).unwrap());
    }

    #[test]
    fn numbers_zeta_matches_f64_oracle() {
        let (q, k, s) = (2.0f64, 2i32, 4i32);
        let mut sum = 0.0;
        for n in 1..120 {
            let nq = (q.powi(n) - 1.0) / (q - 1.0);
            let nq2 = (q.powi(2 * n) - 1.0) / (q * q - 1.0);
            sum += nq2 * q.powf(f64::from((k - n) * (2 - s)) / 2.0) / nq.powi(s);
        }
        let got = zeta_star_series(4, 2, &params(rat(2)), Which::Numbers, ZetaVariant::Paper).unwrap();
        assert!((got.to_f64() - sum).abs() < 1e-12 * sum, "{got} vs {sum}");
    }

    #[test]
    fn mellin_identity_numbers() {
        let p = params(rat(2));
        let quad = mellin_quadrature(3, 1, &p, Which::Numbers).unwrap();
        let series = zeta_star_series(3, 1, &p, Which::Numbers, ZetaVariant::Paper).unwrap();
        assert!(close(&quad, &series, "1e-8"), "{quad} vs {series}");
    }

    #[test]
    fn special_values() {
        let r = zeta_special_value(1, 1, Source::Paper).unwrap();
        let q = RatFunc::v_pow(2);
        let om = RatFunc::one_minus_v_pow(2);
        assert_eq!(r.value.unwrap(), -q.checked_div(&(&om * &om)).unwrap());
        let r = zeta_special_value(2, 1, Source::Reference).unwrap();
        assert!(r.value.is_some());
    }
}
