//! Gauss-Legendre rules computed at working precision.

use super::BigFloat;

/// Nodes and weights of the `n`-point rule on `[-1, 1]`, ascending in the node.
pub fn gauss_legendre(n: usize, p: usize) -> Vec<(BigFloat, BigFloat)> {
    let wp = p + 32;
    let one = BigFloat::one(wp);
    let eps = BigFloat::from_i64(2, wp).powi(-(p as i64) + 8);
    let mut out = Vec::with_capacity(n);
    for i in 1..=n.div_ceil(2) {
        let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut x = BigFloat::from_f64(guess, wp);
        let mut dp = one.clone();
        for _ in 0..40 {
            let (pn, d) = legendre(n, &x);
            dp = d;
            let dx = &pn / &dp;
            x = &x - &dx;
            if dx.abs() < eps {
                break;
            }
        }
        let (_, d) = legendre(n, &x);
        if !d.is_zero() {
            dp = d;
        }
        let w = BigFloat::from_i64(2, wp) / ((&one - &(&x * &x)) * (&dp * &dp));
        out.push((x, w));
    }
    let round = |v: &BigFloat| v.round_to(p);
    let mut nodes: Vec<(BigFloat, BigFloat)> = Vec::with_capacity(n);
    for (i, (x, w)) in out.iter().enumerate() {
        let middle = n % 2 == 1 && i == out.len() - 1;
        if middle {
            nodes.push((BigFloat::zero(p), round(w)));
        } else {
            nodes.push((round(x), round(w)));
            nodes.push((round(&-x), round(w)));
        }
    }
    nodes.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite nodes"));
    nodes
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: &BigFloat) -> (BigFloat, BigFloat) {
    let p = x.precision();
    let mut p0 = BigFloat::one(p);
    let mut p1 = x.clone();
    for j in 2..=n {
        let jf = BigFloat::from_i64(j as i64, p);
        let a = BigFloat::from_i64(2 * j as i64 - 1, p);
        let b = BigFloat::from_i64(j as i64 - 1, p);
        let p2 = (&(&a * &(x * &p1)) - &(&b * &p0)) / jf;
        p0 = p1;
        p1 = p2;
    }
    let one = BigFloat::one(p);
    let nf = BigFloat::from_i64(n as i64, p);
    let d = &(&nf * &(&p0 - &(x * &p1))) / &(&one - &(x * x));
    (p1, d)
}

/// Composite rule over the given panels.
pub fn integrate_panels(
    panels: &[(BigFloat, BigFloat)],
    rule: &[(BigFloat, BigFloat)],
    mut f: impl FnMut(&BigFloat) -> BigFloat,
) -> BigFloat {
    let p = rule[0].0.precision();
    let two = BigFloat::from_i64(2, p);
    let mut total = BigFloat::zero(p);
    for (a, b) in panels {
        let half = &(b - a) / &two;
        let mid = &(a + b) / &two;
        let mut acc = BigFloat::zero(p);
        for (x, w) in rule {
            acc = &acc + &(w * &f(&(&mid + &(&half * x))));
        }
        total = &total + &(&acc * &half);
    }
    total
}
