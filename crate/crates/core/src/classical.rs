//! Classical power sums `S_n(k) = 1^n + ... + (k-1)^n`, Bernoulli numbers and
//! polynomials (with `B_1 = -1/2`), and exact checks of the Faulhaber facts.

use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::field::{frac, rat, Poly, Rational};
use crate::qobjects::binomial;
use crate::verify::{params, CheckRecord};

/// A univariate polynomial in an abstract indeterminate (`x` for Bernoulli
/// polynomials, `k` for power sums).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XPoly(pub Poly);

impl XPoly {
    pub fn coeff(&self, e: u32) -> Rational {
        self.0.coeff(e)
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.degree()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.eval(x)
    }

    pub fn is_monic(&self) -> bool {
        self.0.leading_coeff().is_some_and(One::is_one)
    }

    pub fn derivative(&self) -> XPoly {
        XPoly(self.0.derivative())
    }

    /// The antiderivative vanishing at 0, i.e. `k -> integral_0^k p(x) dx`.
    pub fn integral_from_zero(&self) -> XPoly {
        XPoly(self.0.antiderivative())
    }

    pub fn format_in(&self, var: &str) -> String {
        self.0.format_in(var)
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.format_in("x"))
    }
}

static BERNOULLI: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// `B_n` from `sum_{j=0..n} C(n+1, j) B_j = 0`, `B_0 = 1`; memoized.
pub fn bernoulli_number(n: u32) -> Rational {
    let n = n as usize;
    if let Some(b) = BERNOULLI.read().unwrap().get(n) {
        return b.clone();
    }
    let mut cache = BERNOULLI.write().unwrap();
    while cache.len() <= n {
        let m = cache.len();
        let b = if m == 0 {
            Rational::one()
        } else {
            let s: Rational = cache
                .iter()
                .enumerate()
                .map(|(j, bj)| binomial(m as u64 + 1, j as i64) * bj)
                .sum();
            -s / rat(m as i64 + 1)
        };
        cache.push(b);
    }
    cache[n].clone()
}

/// `B_n(x) = sum_j C(n, j) B_j x^(n-j)`.
pub fn bernoulli_poly(n: u32) -> XPoly {
    XPoly(Poly::from_terms((0..=n).map(|j| {
        (n - j, binomial(u64::from(n), i64::from(j)) * bernoulli_number(j))
    })))
}

/// `S_n(k) = sum_{j=1}^{k-1} j^n` by direct summation.
pub fn power_sum(n: u32, k: u64) -> Rational {
    let s: BigInt = (1..k).map(|j| num_traits::pow(BigInt::from(j), n as usize)).sum();
    Rational::from_integer(s)
}

/// `S_n(k)` as a polynomial in `k`: `(B_{n+1}(k) - B_{n+1}) / (n+1)`.
pub fn power_sum_poly(n: u32) -> XPoly {
    let b = bernoulli_poly(n + 1).0;
    let shifted = &b - &Poly::constant(bernoulli_number(n + 1));
    XPoly(shifted.scale(&frac(1, i64::from(n) + 1)))
}

/// Exact checks of the leading coefficient, the vanishing constant term, the
/// `k^n` coefficient, the top of `dS/dk`, and `integral_0^k B_n = S_n(k)`.
pub fn faulhaber_check(n: u32) -> Vec<CheckRecord> {
    const SUITE: &str = "faulhaber";
    let s = power_sum_poly(n);
    let nn = i64::from(n);
    let rec = |check: &str, lhs: Poly, rhs: Poly| {
        CheckRecord::polynomial(
            SUITE,
            params([("check", check.to_string()), ("n", n.to_string())]),
            &lhs,
            &rhs,
            "k",
        )
    };
    let top_term = |p: &Poly| match p.degree() {
        Some(d) => Poly::monomial(p.coeff(d), d),
        None => Poly::zero(),
    };

    let deriv = s.derivative().0;
    let deriv_top = Poly::from_terms([(n, deriv.coeff(n)), (n - 1, deriv.coeff(n - 1))]);
    vec![
        rec("leading", top_term(&s.0), Poly::monomial(frac(1, nn + 1), n + 1)),
        rec("constant", Poly::constant(s.coeff(0)), Poly::zero()),
        rec("k^n", Poly::monomial(s.coeff(n), n), Poly::monomial(frac(-1, 2), n)),
        rec(
            "derivative",
            deriv_top,
            Poly::from_terms([(n, rat(1)), (n - 1, frac(-nn, 2))]),
        ),
        rec("integral", bernoulli_poly(n).integral_from_zero().0, s.0),
    ]
}

/// Solves for the monic degree-`n` polynomial `P` with `integral_0^k P = S_n(k)`
/// for `k = 1..=n+1`, using brute-force power sums only.
///
/// Returns `None` if the system is inconsistent or underdetermined.
pub fn uniqueness_witness(n: u32) -> Option<XPoly> {
    let unknowns = n as usize;
    let rows: Vec<Vec<Rational>> = (1..=u64::from(n) + 1)
        .map(|k| {
            let kr = Rational::from_integer(k.into());
            let mut row: Vec<Rational> = (0..unknowns)
                .map(|i| num_traits::pow(kr.clone(), i + 1) / rat(i as i64 + 1))
                .collect();
            let monic_part = num_traits::pow(kr.clone(), unknowns + 1) / rat(unknowns as i64 + 1);
            row.push(power_sum(n, k) - monic_part);
            row
        })
        .collect();
    let sol = solve_exact(rows, unknowns)?;
    let mut p = Poly::monomial(Rational::one(), n);
    for (i, a) in sol.into_iter().enumerate() {
        p = &p + &Poly::monomial(a, i as u32);
    }
    Some(XPoly(p))
}

/// Gauss-Jordan elimination on an augmented matrix; unique solution or `None`.
fn solve_exact(mut m: Vec<Vec<Rational>>, unknowns: usize) -> Option<Vec<Rational>> {
    let rows = m.len();
    let mut pivot_row = 0;
    for col in 0..unknowns {
        let p = (pivot_row..rows).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot_row, p);
        let inv = m[pivot_row][col].recip();
        for c in col..=unknowns {
            m[pivot_row][c] = &m[pivot_row][c] * &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=unknowns {
                    let delta = &f * &m[pivot_row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivot_row += 1;
    }
    // leftover rows must read 0 = 0
    if m[pivot_row..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    Some((0..unknowns).map(|i| m[i][unknowns].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Verdict;

    #[test]
    fn bernoulli_number_values() {
        assert_eq!(bernoulli_number(0), rat(1));
        assert_eq!(bernoulli_number(1), frac(-1, 2));
        assert_eq!(bernoulli_number(2), frac(1, 6));
        assert_eq!(bernoulli_number(3), rat(0));
        assert_eq!(bernoulli_number(12), frac(-691, 2730));
        for n in (3..30).step_by(2) {
            assert!(bernoulli_number(n).is_zero());
        }
    }

    #[test]
    fn bernoulli_poly_values() {
        assert_eq!(bernoulli_poly(0).0, Poly::one());
        assert_eq!(bernoulli_poly(1).to_string(), "x - 1/2");
        assert_eq!(bernoulli_poly(2).to_string(), "x^2 - x + 1/6");
        for n in 1..=12 {
            let b = bernoulli_poly(n);
            assert!(b.is_monic());
            assert_eq!(b.degree(), Some(n));
            assert!(b.integral_from_zero().eval(&rat(1)).is_zero());
        }
    }

    #[test]
    fn power_sum_values() {
        assert_eq!(power_sum(1, 3), rat(3));
        assert_eq!(power_sum(2, 3), rat(5));
        assert_eq!(power_sum(3, 3), rat(9));
        for n in 1..6 {
            assert_eq!(power_sum(n, 1), rat(0));
            assert_eq!(power_sum(n, 0), rat(0));
        }
    }

    #[test]
    fn power_sum_poly_matches_listed_forms() {
        assert_eq!(power_sum_poly(1).format_in("k"), "1/2*k^2 - 1/2*k");
        assert_eq!(power_sum_poly(2).format_in("k"), "1/3*k^3 - 1/2*k^2 + 1/6*k");
        assert_eq!(power_sum_poly(3).format_in("k"), "1/4*k^4 - 1/2*k^3 + 1/4*k^2");
        assert_eq!(power_sum_poly(3).eval(&rat(3)), rat(9));
    }

    #[test]
    fn closed_form_agrees_with_brute_force() {
        for n in 1..=10 {
            let s = power_sum_poly(n);
            for k in 0..=20u64 {
                assert_eq!(s.eval(&rat(k as i64)), power_sum(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn faulhaber_checks_pass() {
        for n in [1, 2, 10] {
            let recs = faulhaber_check(n);
            assert_eq!(recs.len(), 5);
            assert!(recs.iter().all(|r| r.verdict == Verdict::Pass), "{recs:?}");
        }
        let n1 = faulhaber_check(1);
        assert_eq!(n1[0].lhs, "(1/2*k^2)");
        assert_eq!(n1[2].lhs, "(-1/2*k)");
    }

    #[test]
    fn witness_is_the_bernoulli_polynomial() {
        for n in 1..=6 {
            assert_eq!(uniqueness_witness(n), Some(bernoulli_poly(n)), "n={n}");
        }
    }

    #[test]
    fn cache_is_shared_across_threads() {
        let handles: Vec<_> = (0..4)
            .map(|i| std::thread::spawn(move || bernoulli_number(20 + i)))
            .collect();
        let vals: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert_eq!(vals[0], frac(-174611, 330));
    }
}
