use num_bigint::BigInt;
use num_traits::Signed;

use super::record::{params, CheckRecord, Params, Verdict};
use super::VerifyError;
use crate::classical::{bernoulli_poly, faulhaber_check, power_sum, power_sum_poly, uniqueness_witness};
use crate::closed::{
    beta_star_paper, beta_star_poly_paper, beta_star_poly_reference, beta_star_reference, kim_rhs, schlosser_rhs,
    warnaar_rhs, ClosedError, RegularizedValue,
};
use crate::field::{frac, rat, FieldError, RatFunc, Rational};
use crate::numeric::{
    barnes_limit_diagnostic, mellin_quadrature_many, relative_gap, zeta_star_series, BigFloat, NumericError,
    NumericParams, Which, ZetaVariant,
};
use crate::qobjects::{q_binomial, q_power, QExp};
use crate::sums::{garrett_hummel_lhs, kim_sum, schlosser_sum, thm3_lhs, warnaar_lhs, KimVariant};

pub const SUITES: [&str; 13] = [
    "warnaar",
    "garrett-hummel",
    "schlosser",
    "kim",
    "faulhaber",
    "index-bridge",
    "classical-limits",
    "theorem3-paper",
    "theorem3-reference",
    "reference-difference",
    "zeta-mellin",
    "zeta-variant",
    "barnes-limit",
];

/// Tolerance of the numeric suites, also written into reports.
pub const NUMERIC_TOLERANCE: &str = "1e-8";

const RANGE_LIMIT: u32 = 40;

/// Upper bounds for the parameter grids. Lower bounds are fixed per suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ranges {
    pub n_max: u32,
    pub k_max: u32,
    pub m_max: u32,
}

impl Default for Ranges {
    fn default() -> Self {
        Self { n_max: 6, k_max: 5, m_max: 5 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub ranges: Ranges,
    /// `v = q^(1/2)` at which symbolic verdicts are re-evaluated exactly.
    pub spot_v: Rational,
    /// Precision and truncation settings for the numeric suites; `q` is
    /// overridden per record.
    pub numeric: NumericParams,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            ranges: Ranges::default(),
            spot_v: frac(3, 2),
            numeric: NumericParams::new(rat(2)),
        }
    }
}

impl VerifyConfig {
    /// Sets the spot-check point from `q`, which must be the square of a positive rational.
    pub fn with_spot_q(mut self, q: &Rational) -> Result<Self, VerifyError> {
        self.spot_v = rational_sqrt(q).ok_or_else(|| {
            VerifyError::InvalidRange(format!("spot-check q must be the square of a positive rational (got {q})"))
        })?;
        Ok(self)
    }

    pub fn spot_q(&self) -> Rational {
        &self.spot_v * &self.spot_v
    }
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if !q.is_positive() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

/// Runs one suite over the configured grid. Records come back sorted.
pub fn run_suite(name: &str, config: &VerifyConfig) -> Result<Vec<CheckRecord>, VerifyError> {
    let r = config.ranges;
    for (label, v) in [("n-max", r.n_max), ("k-max", r.k_max), ("m-max", r.m_max)] {
        if v > RANGE_LIMIT {
            return Err(VerifyError::InvalidRange(format!("{label} = {v} exceeds {RANGE_LIMIT}")));
        }
    }
    let spot = &config.spot_v;
    let mut records = match name {
        "warnaar" => (1..=r.n_max)
            .map(|n| symbolic(name, params([("n", n.to_string())]), &warnaar_lhs(n), &warnaar_rhs(n), spot))
            .collect(),
        "garrett-hummel" => (1..=r.n_max)
            .map(|n| {
                let b = q_binomial(n + 1, 2);
                symbolic(name, params([("n", n.to_string())]), &garrett_hummel_lhs(n), &(&b * &b), spot)
            })
            .collect(),
        "schlosser" => {
            let mut out = Vec::new();
            for m in 2..=r.m_max.min(5) {
                for n in 1..=r.n_max {
                    let rhs = schlosser_rhs(m, n).expect("m in 2..=5");
                    let ps = params([("m", m.to_string()), ("n", n.to_string())]);
                    out.push(symbolic(name, ps, &schlosser_sum(m, n), &rhs, spot));
                }
            }
            out
        }
        "kim" => {
            let mut out = Vec::new();
            for n in 1..=r.n_max {
                for variant in KimVariant::ALL {
                    let ps = params([("n", n.to_string()), ("variant", variant.to_string())]);
                    out.push(symbolic(name, ps, &kim_sum(n, variant), &kim_rhs(n, variant), spot));
                }
            }
            out
        }
        "faulhaber" => faulhaber_suite(r),
        "index-bridge" => {
            let mut out = Vec::new();
            for n in 1..=r.n_max {
                for k in 1..=r.k_max {
                    let bridged = &q_power(QExp::from_twice(i64::from(n) + 1)) * &schlosser_sum(n, k - 1);
                    let ps = params([("k", k.to_string()), ("n", n.to_string())]);
                    out.push(symbolic(name, ps, &thm3_lhs(n, k), &bridged, spot));
                }
            }
            out
        }
        "classical-limits" => classical_limits_suite(r),
        "theorem3-paper" => theorem_paper_suite(r, spot),
        "theorem3-reference" => theorem_reference_suite(r, spot),
        "reference-difference" => reference_difference_suite(r, spot),
        "zeta-mellin" => zeta_mellin_suite(r, &config.numeric),
        "zeta-variant" => zeta_variant_suite(&config.numeric),
        "barnes-limit" => barnes_suite(&config.numeric),
        other => return Err(VerifyError::UnknownSuite(other.to_string())),
    };
    records.sort();
    Ok(records)
}

/// Exact comparison, re-confirmed by evaluating both sides at `v`. A
/// disagreement between the two checks yields verdict `error`.
pub fn symbolic(suite: &str, ps: Params, lhs: &RatFunc, rhs: &RatFunc, v: &Rational) -> CheckRecord {
    let mut rec = CheckRecord::symbolic(suite, ps, lhs, rhs);
    if let (Ok(a), Ok(b)) = (lhs.eval_at(v), rhs.eval_at(v)) {
        let numeric_equal = a == b;
        if numeric_equal != (rec.verdict == Verdict::Pass) {
            rec.verdict = Verdict::Error;
        }
    }
    rec
}

fn regularized(suite: &str, ps: Params, lhs: &RatFunc, rhs: &RegularizedValue, sign: i64, v: &Rational) -> CheckRecord {
    match &rhs.value {
        Some(value) => symbolic(suite, ps, lhs, &value.scale(&rat(sign)), v),
        None => singular_record(suite, ps, lhs, &rhs.singular_terms),
    }
}

fn singular_record(suite: &str, ps: Params, lhs: &RatFunc, terms: &[i64]) -> CheckRecord {
    let terms: Vec<String> = terms.iter().map(i64::to_string).collect();
    CheckRecord {
        suite: suite.to_string(),
        params: ps,
        lhs: lhs.to_canonical_string(),
        rhs: format!("singular (terms {})", terms.join(",")),
        verdict: Verdict::Singular,
        residual: "singular".to_string(),
    }
}

fn faulhaber_suite(r: Ranges) -> Vec<CheckRecord> {
    const SUITE: &str = "faulhaber";
    let mut out = Vec::new();
    for n in 1..=r.n_max {
        out.extend(faulhaber_check(n));
        let integral = bernoulli_poly(n).integral_from_zero();
        for k in 1..=r.k_max {
            let kr = rat(i64::from(k));
            let ps = params([("check", "integral-at".into()), ("k", k.to_string()), ("n", n.to_string())]);
            out.push(CheckRecord::rational(SUITE, ps, &integral.eval(&kr), &power_sum(n, u64::from(k))));
        }
        if n <= 6 {
            let ps = params([("check", "uniqueness".into()), ("n", n.to_string())]);
            out.push(match uniqueness_witness(n) {
                Some(w) => CheckRecord::polynomial(SUITE, ps, &w.0, &bernoulli_poly(n).0, "x"),
                None => CheckRecord::with_verdict(SUITE, ps, Verdict::Fail, "no unique solution"),
            });
        }
    }
    // S_1(3) = 3, S_2(3) = 5, S_3(3) = 9 as listed in the source text
    for (n, value) in [(1u32, 3i64), (2, 5), (3, 9)].into_iter().filter(|(n, _)| *n <= r.n_max) {
        let ps = params([("check", "listed-value".into()), ("k", "3".into()), ("n", n.to_string())]);
        out.push(CheckRecord::rational(SUITE, ps, &power_sum_poly(n).eval(&rat(3)), &rat(value)));
    }
    out
}

fn classical_limits_suite(r: Ranges) -> Vec<CheckRecord> {
    const SUITE: &str = "classical-limits";
    let limit = |f: &RatFunc| f.limit_at_v1().map_err(|e: FieldError| e.to_string());
    let record = |ps: Params, got: Result<Rational, String>, want: Rational| match got {
        Ok(g) => CheckRecord::rational(SUITE, ps, &g, &want),
        Err(e) => CheckRecord::with_verdict(SUITE, ps, Verdict::Error, &e),
    };
    let mut out = Vec::new();
    for m in 1..=r.m_max {
        for n in 0..=r.n_max {
            // sum_{k=1..n} k^m computed directly
            let direct: BigInt = (1..=u64::from(n)).map(|k| num_traits::pow(BigInt::from(k), m as usize)).sum();
            let ps = params([("m", m.to_string()), ("n", n.to_string()), ("sum", "schlosser".into())]);
            out.push(record(ps, limit(&schlosser_sum(m, n)), Rational::from_integer(direct)));
        }
    }
    for n in 1..=r.n_max {
        for k in 0..=r.k_max {
            let ps = params([("k", k.to_string()), ("n", n.to_string()), ("sum", "theorem3".into())]);
            out.push(record(ps, limit(&thm3_lhs(n, k)), power_sum(n, u64::from(k))));
        }
    }
    out
}

struct BetaValues {
    paper: Result<RegularizedValue, ClosedError>,
    poly_paper: Result<RegularizedValue, ClosedError>,
    reference: Result<RegularizedValue, ClosedError>,
    poly_reference: Result<RegularizedValue, ClosedError>,
}

impl BetaValues {
    fn new(n: u32, k: u32, paper: bool, reference: bool) -> Self {
        let skip = || Err(ClosedError::InvalidParameter("not computed".into()));
        Self {
            paper: if paper { beta_star_paper(n, k) } else { skip() },
            poly_paper: if paper { beta_star_poly_paper(n, k) } else { skip() },
            reference: if reference { beta_star_reference(n, k) } else { skip() },
            poly_reference: if reference { beta_star_poly_reference(n, k) } else { skip() },
        }
    }
}

/// `(poly - num) / n` with status propagation.
fn difference(poly: &RegularizedValue, num: &RegularizedValue, n: u32) -> RegularizedValue {
    let mut terms = poly.singular_terms.clone();
    terms.extend(&num.singular_terms);
    terms.sort_unstable();
    terms.dedup();
    RegularizedValue {
        value: match (&poly.value, &num.value) {
            (Some(a), Some(b)) => Some((a - b).scale(&frac(1, i64::from(n)))),
            _ => None,
        },
        status: poly.status.max(num.status),
        singular_terms: terms,
    }
}

fn error_record(suite: &str, ps: Params, e: &ClosedError) -> CheckRecord {
    CheckRecord::with_verdict(suite, ps, Verdict::Error, &e.to_string())
}

fn theorem_paper_suite(r: Ranges, spot: &Rational) -> Vec<CheckRecord> {
    const SUITE: &str = "theorem3-paper";
    let mut out = Vec::new();
    for n in 1..=r.n_max {
        for k in 1..=r.k_max {
            let b = BetaValues::new(n, k, true, true);
            let nk = |formula: &str| {
                params([("formula", formula.to_string()), ("k", k.to_string()), ("n", n.to_string())])
            };
            // printed closed forms against the continuation oracle
            for (formula, printed, oracle) in [
                ("theorem1", &b.paper, &b.reference),
                ("theorem2", &b.poly_paper, &b.poly_reference),
            ] {
                out.push(match (printed, oracle) {
                    (Ok(p), Ok(o)) => match (&p.value, &o.value) {
                        (Some(pv), Some(ov)) => symbolic(SUITE, nk(formula), pv, ov, spot),
                        (None, _) => singular_record(SUITE, nk(formula), &RatFunc::zero(), &p.singular_terms),
                        (_, None) => singular_record(SUITE, nk(formula), &RatFunc::zero(), &o.singular_terms),
                    },
                    (Err(e), _) | (_, Err(e)) => error_record(SUITE, nk(formula), e),
                });
            }
            let lhs = thm3_lhs(n, k);
            for sign in [1i64, -1] {
                let mut ps = nk("theorem3");
                ps.insert("sign".into(), sign.to_string());
                out.push(match (&b.poly_paper, &b.paper) {
                    (Ok(pp), Ok(p)) => regularized(SUITE, ps, &lhs, &difference(pp, p, n), sign, spot),
                    (Err(e), _) | (_, Err(e)) => error_record(SUITE, ps, e),
                });
            }
        }
    }
    out
}

fn theorem_reference_suite(r: Ranges, spot: &Rational) -> Vec<CheckRecord> {
    const SUITE: &str = "theorem3-reference";
    let mut out = Vec::new();
    for n in 1..=r.n_max {
        for k in 1..=r.k_max {
            let b = BetaValues::new(n, k, false, true);
            let lhs = thm3_lhs(n, k);
            for sign in [1i64, -1] {
                let ps = params([("k", k.to_string()), ("n", n.to_string()), ("sign", sign.to_string())]);
                out.push(match (&b.poly_reference, &b.reference) {
                    (Ok(pp), Ok(p)) => regularized(SUITE, ps, &lhs, &difference(pp, p, n), sign, spot),
                    (Err(e), _) | (_, Err(e)) => error_record(SUITE, ps, e),
                });
            }
        }
    }
    out
}

/// `beta*(k)_ref - beta*_ref` against `sign * n * thm3_lhs(n, k)`.
fn reference_difference_suite(r: Ranges, spot: &Rational) -> Vec<CheckRecord> {
    const SUITE: &str = "reference-difference";
    let mut out = Vec::new();
    for n in 1..=r.n_max {
        for k in 1..=r.k_max {
            let b = BetaValues::new(n, k, false, true);
            let target = thm3_lhs(n, k).scale(&rat(i64::from(n)));
            for sign in [1i64, -1] {
                let ps = params([("k", k.to_string()), ("n", n.to_string()), ("sign", sign.to_string())]);
                let rhs = target.scale(&rat(sign));
                out.push(match (&b.poly_reference, &b.reference) {
                    (Ok(pp), Ok(p)) => match (&pp.value, &p.value) {
                        (Some(a), Some(c)) => symbolic(SUITE, ps, &(a - c), &rhs, spot),
                        _ => {
                            let mut terms = pp.singular_terms.clone();
                            terms.extend(&p.singular_terms);
                            singular_record(SUITE, ps, &rhs, &terms)
                        }
                    },
                    (Err(e), _) | (_, Err(e)) => error_record(SUITE, ps, e),
                });
            }
        }
    }
    out
}

fn q_list(values: &[(i64, i64)]) -> Vec<Rational> {
    values.iter().map(|&(a, b)| frac(a, b)).collect()
}

fn numeric_record(suite: &str, ps: Params, lhs: &BigFloat, rhs: &BigFloat) -> CheckRecord {
    let tol = BigFloat::parse(NUMERIC_TOLERANCE, lhs.precision()).expect("literal");
    let gap = relative_gap(lhs, rhs);
    CheckRecord {
        suite: suite.to_string(),
        params: ps,
        lhs: lhs.to_sci_string(20),
        rhs: rhs.to_sci_string(20),
        verdict: if gap < tol { Verdict::Pass } else { Verdict::Fail },
        residual: gap.to_sci_string(3),
    }
}

fn numeric_error(suite: &str, ps: Params, e: &NumericError) -> CheckRecord {
    CheckRecord::with_verdict(suite, ps, Verdict::Error, &e.to_string())
}

fn zeta_mellin_suite(r: Ranges, base: &NumericParams) -> Vec<CheckRecord> {
    const SUITE: &str = "zeta-mellin";
    const S_VALUES: [u32; 2] = [3, 4];
    let mut out = Vec::new();
    for q in q_list(&[(2, 1), (3, 2)]) {
        let p = base.with_q(q.clone());
        for k in 1..=r.k_max.min(2) {
            let quad = mellin_quadrature_many(&S_VALUES, k, &p, Which::Numbers);
            for (i, s) in S_VALUES.into_iter().enumerate() {
                let ps = params([("k", k.to_string()), ("q", q.to_string()), ("s", s.to_string())]);
                let series = zeta_star_series(s, k, &p, Which::Numbers, ZetaVariant::Paper);
                out.push(match (&quad, &series) {
                    (Ok(qv), Ok(sv)) => numeric_record(SUITE, ps, &qv[i], sv),
                    (Err(e), _) | (_, Err(e)) => numeric_error(SUITE, ps, e),
                });
            }
        }
    }
    out
}

/// Quadrature of `F*(t; k)` against both exponent variants of the polynomial
/// zeta series; the passing record names the matching variant.
fn zeta_variant_suite(base: &NumericParams) -> Vec<CheckRecord> {
    const SUITE: &str = "zeta-variant";
    let (s, k, q) = (3u32, 1u32, rat(2));
    let p = base.with_q(q.clone());
    let quad = mellin_quadrature_many(&[s], k, &p, Which::Polynomials);
    [ZetaVariant::Paper, ZetaVariant::Derived]
        .into_iter()
        .map(|variant| {
            let ps = params([
                ("k", k.to_string()),
                ("q", q.to_string()),
                ("s", s.to_string()),
                ("variant", variant.to_string()),
            ]);
            match (&quad, &zeta_star_series(s, k, &p, Which::Polynomials, variant)) {
                (Ok(qv), Ok(sv)) => numeric_record(SUITE, ps, &qv[0], sv),
                (Err(e), _) | (_, Err(e)) => numeric_error(SUITE, ps, e),
            }
        })
        .collect()
}

/// Gap between `F*(t)` and `-F_2(t)` as `q -> 1`; recorded, not judged.
fn barnes_suite(base: &NumericParams) -> Vec<CheckRecord> {
    const SUITE: &str = "barnes-limit";
    let qs = q_list(&[(2, 1), (3, 2), (5, 4)]);
    let t = BigFloat::from_i64(-1, base.precision);
    let k = 1u32;
    let ps = |q: &Rational| params([("k", k.to_string()), ("q", q.to_string()), ("t", "-1".into())]);
    match barnes_limit_diagnostic(&t, k, &qs, base) {
        Ok(gaps) => gaps
            .into_iter()
            .map(|g| CheckRecord {
                suite: SUITE.to_string(),
                params: ps(&g.q),
                lhs: g.f_star.to_sci_string(20),
                rhs: g.target.to_sci_string(20),
                verdict: Verdict::Skipped,
                residual: g.gap.to_sci_string(3),
            })
            .collect(),
        Err(e) => qs.iter().map(|q| numeric_error(SUITE, ps(q), &e)).collect(),
    }
}
