//! Direct finite sums. These are the brute-force sides of every identity and
//! deliberately avoid any closed-form shortcut.

use std::fmt;
use std::str::FromStr;

use crate::field::RatFunc;
use crate::qobjects::{q_bracket, q_int, q_power, QExp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KimVariant {
    Linear,
    Square,
}

impl KimVariant {
    pub const ALL: [KimVariant; 2] = [KimVariant::Linear, KimVariant::Square];

    pub fn as_str(self) -> &'static str {
        match self {
            KimVariant::Linear => "linear",
            KimVariant::Square => "square",
        }
    }
}

impl fmt::Display for KimVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for KimVariant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "linear" => Ok(KimVariant::Linear),
            "square" => Ok(KimVariant::Square),
            other => Err(format!("unknown variant '{other}' (expected linear|square)")),
        }
    }
}

fn pow(f: &RatFunc, e: u32) -> RatFunc {
    (0..e).fold(RatFunc::one(), |acc, _| &acc * f)
}

fn q_sq_int(k: i64) -> RatFunc {
    q_bracket(QExp::int(k), 2)
}

/// `sum_{k=1}^{n} [k]_{q^2} [k]_q^{m-1} q^{(n-k)(m+1)/2}`.
pub fn schlosser_sum(m: u32, n: u32) -> RatFunc {
    assert!(m >= 1, "m must be at least 1");
    let (m, n) = (i64::from(m), i64::from(n));
    (1..=n)
        .map(|k| {
            let w = q_power(QExp::from_twice((n - k) * (m + 1)));
            &(&q_sq_int(k) * &pow(&q_int(k), (m - 1) as u32)) * &w
        })
        .sum()
}

/// `sum_{k=1}^{n} q^{2n-2k} (1-q^k)^2 (1-q^{2k}) / ((1-q)^2 (1-q^2))`.
pub fn warnaar_lhs(n: u32) -> RatFunc {
    let n = i64::from(n);
    let den = &pow(&RatFunc::one_minus_v_pow(2), 2) * &RatFunc::one_minus_v_pow(4);
    (1..=n)
        .map(|k| {
            let num = &(&q_power(QExp::int(2 * n - 2 * k)) * &pow(&RatFunc::one_minus_v_pow(2 * k), 2))
                * &RatFunc::one_minus_v_pow(4 * k);
            num.checked_div(&den).expect("nonzero denominator")
        })
        .sum()
}

/// `sum_{k=1}^{n} q^{k-1} ((1-q^k)/(1-q))^2 ((1-q^{k-1})/(1-q^2) + (1-q^{k+1})/(1-q^2))`.
pub fn garrett_hummel_lhs(n: u32) -> RatFunc {
    let n = i64::from(n);
    let one_minus_q = RatFunc::one_minus_v_pow(2);
    let one_minus_q2 = RatFunc::one_minus_v_pow(4);
    (1..=n)
        .map(|k| {
            let ratio = RatFunc::one_minus_v_pow(2 * k).checked_div(&one_minus_q).unwrap();
            let tail = (&RatFunc::one_minus_v_pow(2 * (k - 1)) + &RatFunc::one_minus_v_pow(2 * (k + 1)))
                .checked_div(&one_minus_q2)
                .unwrap();
            &(&q_power(QExp::int(k - 1)) * &pow(&ratio, 2)) * &tail
        })
        .sum()
}

/// Linear: `sum_{k=0}^{n-1} q^k [k]_q`; square: `sum_{k=0}^{n-1} q^{k+1} [k]_q^2`.
pub fn kim_sum(n: u32, variant: KimVariant) -> RatFunc {
    let n = i64::from(n);
    (0..n)
        .map(|k| match variant {
            KimVariant::Linear => &q_power(QExp::int(k)) * &q_int(k),
            KimVariant::Square => &q_power(QExp::int(k + 1)) * &pow(&q_int(k), 2),
        })
        .sum()
}

/// `sum_{j=0}^{k-1} [j]_{q^2} [j]_q^{n-1} q^{(n+1)(k-j)/2}`.
pub fn thm3_lhs(n: u32, k: u32) -> RatFunc {
    assert!(n >= 1, "n must be at least 1");
    let (n, k) = (i64::from(n), i64::from(k));
    (1..k)
        .map(|j| {
            let w = q_power(QExp::from_twice((n + 1) * (k - j)));
            &(&q_sq_int(j) * &pow(&q_int(j), (n - 1) as u32)) * &w
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::power_sum;
    use crate::field::{rat, Poly};
    use crate::qobjects::q_binomial;

    fn poly(c: &[i64]) -> RatFunc {
        RatFunc::from_poly(Poly::from_ints(c))
    }

    #[test]
    fn schlosser_examples() {
        assert_eq!(schlosser_sum(1, 1), RatFunc::one());
        assert_eq!(schlosser_sum(3, 2), pow(&poly(&[1, 0, 1, 0, 1]), 2));
        assert_eq!(schlosser_sum(2, 3).limit_at_v1().unwrap(), rat(14));
        assert_eq!(schlosser_sum(4, 0), RatFunc::zero());
    }

    #[test]
    fn warnaar_examples() {
        assert_eq!(warnaar_lhs(0), RatFunc::zero());
        assert_eq!(warnaar_lhs(1), RatFunc::one());
        assert_eq!(warnaar_lhs(2), poly(&[1, 0, 2, 0, 3, 0, 2, 0, 1]));
        assert_eq!(warnaar_lhs(3).limit_at_v1().unwrap(), rat(36));
    }

    #[test]
    fn garrett_hummel_examples() {
        assert_eq!(garrett_hummel_lhs(0), RatFunc::zero());
        assert_eq!(garrett_hummel_lhs(1), RatFunc::one());
        assert_eq!(garrett_hummel_lhs(2), pow(&poly(&[1, 0, 1, 0, 1]), 2));
    }

    #[test]
    fn kim_examples() {
        assert_eq!(kim_sum(1, KimVariant::Linear), RatFunc::zero());
        assert_eq!(kim_sum(2, KimVariant::Linear), RatFunc::v_pow(2));
        assert_eq!(kim_sum(1, KimVariant::Square), RatFunc::zero());
        assert_eq!("square".parse::<KimVariant>(), Ok(KimVariant::Square));
        assert!("cubic".parse::<KimVariant>().is_err());
    }

    #[test]
    fn thm3_examples() {
        assert_eq!(thm3_lhs(2, 2), RatFunc::v_pow(3));
        assert_eq!(thm3_lhs(3, 1), RatFunc::zero());
        assert_eq!(thm3_lhs(3, 0), RatFunc::zero());
    }

    #[test]
    fn warnaar_and_garrett_hummel_identities() {
        for n in 1..=12 {
            let rhs = pow(&q_binomial(n + 1, 2), 2);
            assert_eq!(warnaar_lhs(n), rhs, "warnaar n={n}");
            assert_eq!(garrett_hummel_lhs(n), rhs, "garrett-hummel n={n}");
        }
    }

    #[test]
    fn index_bridge() {
        for n in 1..=8 {
            for k in 1..=6 {
                let bridged = &q_power(QExp::from_twice(i64::from(n) + 1)) * &schlosser_sum(n, k - 1);
                assert_eq!(thm3_lhs(n, k), bridged, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn classical_limits() {
        for m in 1..=6 {
            for n in 0..=8 {
                assert_eq!(schlosser_sum(m, n).limit_at_v1().unwrap(), power_sum(m, u64::from(n) + 1));
            }
        }
        for n in 1..=6 {
            for k in 0..=8 {
                assert_eq!(thm3_lhs(n, k).limit_at_v1().unwrap(), power_sum(n, u64::from(k)));
            }
        }
        for n in 1..=6 {
            let n64 = u64::from(n);
            assert_eq!(kim_sum(n, KimVariant::Linear).limit_at_v1().unwrap(), power_sum(1, n64));
            assert_eq!(kim_sum(n, KimVariant::Square).limit_at_v1().unwrap(), power_sum(2, n64));
        }
    }
}
