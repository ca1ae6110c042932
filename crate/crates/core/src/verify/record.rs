use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::field::{Poly, RatFunc, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Singular,
    Skipped,
    Error,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Singular => "singular",
            Verdict::Skipped => "skipped",
            Verdict::Error => "error",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub type Params = BTreeMap<String, String>;

/// Builds a parameter map from `(name, value)` pairs.
pub fn params<const N: usize>(pairs: [(&str, String); N]) -> Params {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// One identity-verification outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: String,
    pub params: Params,
    pub lhs: String,
    pub rhs: String,
    pub verdict: Verdict,
    pub residual: String,
}

impl CheckRecord {
    /// Exact comparison of two rational functions in `v`.
    pub fn symbolic(suite: &str, params: Params, lhs: &RatFunc, rhs: &RatFunc) -> Self {
        let residual = lhs - rhs;
        Self {
            suite: suite.to_string(),
            params,
            lhs: lhs.to_canonical_string(),
            rhs: rhs.to_canonical_string(),
            verdict: if residual.is_zero() { Verdict::Pass } else { Verdict::Fail },
            residual: residual.to_canonical_string(),
        }
    }

    /// Exact comparison of two polynomials printed in the variable `var`.
    pub fn polynomial(suite: &str, params: Params, lhs: &Poly, rhs: &Poly, var: &str) -> Self {
        let residual = lhs - rhs;
        Self {
            suite: suite.to_string(),
            params,
            lhs: format!("({})", lhs.format_in(var)),
            rhs: format!("({})", rhs.format_in(var)),
            verdict: if residual.is_zero() { Verdict::Pass } else { Verdict::Fail },
            residual: format!("({})", residual.format_in(var)),
        }
    }

    pub fn rational(suite: &str, params: Params, lhs: &Rational, rhs: &Rational) -> Self {
        Self::polynomial(
            suite,
            params,
            &Poly::constant(lhs.clone()),
            &Poly::constant(rhs.clone()),
            "k",
        )
    }

    pub fn with_verdict(suite: &str, params: Params, verdict: Verdict, detail: &str) -> Self {
        Self {
            suite: suite.to_string(),
            params,
            lhs: detail.to_string(),
            rhs: detail.to_string(),
            verdict,
            residual: detail.to_string(),
        }
    }
}

/// Parameter values compare numerically when both parse as rationals, textually otherwise.
fn cmp_param_value(a: &str, b: &str) -> Ordering {
    match (parse_rational(a), parse_rational(b)) {
        (Some(x), Some(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => a.cmp(b),
    }
}

/// Parses `a` or `a/b` with integer parts; decimals are rejected.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let ok = |t: &str| {
        let t = t.strip_prefix(['-', '+']).unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    match s.split_once('/') {
        Some((n, d)) if ok(n) && ok(d) => {
            let d: num_bigint::BigInt = d.parse().ok()?;
            if d == 0.into() {
                return None;
            }
            Some(Rational::new(n.parse().ok()?, d))
        }
        None if ok(s) => Some(Rational::from_integer(s.parse().ok()?)),
        _ => None,
    }
}

pub(crate) fn cmp_params(a: &Params, b: &Params) -> Ordering {
    let mut ia = a.iter();
    let mut ib = b.iter();
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some((ka, va)), Some((kb, vb))) => {
                let o = ka.cmp(kb).then_with(|| cmp_param_value(va, vb));
                if o != Ordering::Equal {
                    return o;
                }
            }
        }
    }
}

impl Ord for CheckRecord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.suite
            .cmp(&other.suite)
            .then_with(|| cmp_params(&self.params, &other.params))
            .then_with(|| self.verdict.cmp(&other.verdict))
            .then_with(|| self.lhs.cmp(&other.lhs))
            .then_with(|| self.rhs.cmp(&other.rhs))
            .then_with(|| self.residual.cmp(&other.residual))
    }
}

impl PartialOrd for CheckRecord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
