//! Oracles shared by the integration tests. None of them call into the
//! library's series or AGM code.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Neumaier-compensated sum.
pub fn compensated_sum(terms: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

/// Partial sums of the Gaussian series, run until the terms fall below
/// `1e-18` of the sum (for positive-term series this is where the tail
/// `term/(1-x)` becomes negligible).
pub fn brute_2f1(a: f64, b: f64, c: f64, x: f64) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    let mut term = 1.0f64;
    let mut n = 0usize;
    loop {
        let s = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - s) + term;
        } else {
            comp += (term - s) + sum;
        }
        sum = s;
        let k = n as f64;
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
        n += 1;
        if n > 16 && term.abs() <= 1e-18 * (1.0 - x) * sum.abs() {
            break;
        }
        assert!(n < 50_000_000, "brute-force series too slow at x = {x}");
    }
    sum + comp
}

/// Cubic AGM limit by direct iteration.
pub fn agm_oracle(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..100 {
        if (a - b).abs() <= 1e-16 * a {
            break;
        }
        let next_a = (a + 2.0 * b) / 3.0;
        b = (b * (a * a + a * b + b * b) / 3.0).cbrt();
        a = next_a;
    }
    a
}

/// `μ*(r)` at `a = 1/3` through `F(1/3,2/3;1;1-x³) = 1/AGM(1, x)`.
pub fn mu_star_cubic_oracle(r: f64) -> f64 {
    let r_star = (1.0 - r * r * r).cbrt();
    PI / 3f64.sqrt() * agm_oracle(1.0, r_star) / agm_oracle(1.0, r)
}

/// `μ_a*(r)` from brute-force partial sums.
pub fn mu_star_brute(a: f64, r: f64) -> f64 {
    let x = r * r * r;
    PI / (2.0 * (PI * a).sin()) * brute_2f1(a, 1.0 - a, 1.0, 1.0 - x)
        / brute_2f1(a, 1.0 - a, 1.0, x)
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

pub const SIGNATURES: [f64; 5] = [0.1, 0.2, 1.0 / 3.0, 0.4, 0.5];
