//! Gamma, digamma and beta functions on the positive real axis, plus the
//! Ramanujan constant `R(a, b) = -2γ - Ψ(a) - Ψ(b)`.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

/// The Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Largest argument for which Γ(x) is finite in double precision.
const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

/// B_{2k}/(2k) for k = 1..7, used in the asymptotic expansion of Ψ.
const DIGAMMA_ASYMP: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
];

/// Returns γ.
pub fn euler_gamma() -> f64 {
    EULER_GAMMA
}

fn lanczos_sum(z: f64) -> f64 {
    let mut acc = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    acc
}

/// Γ(x) for x ≥ 1/2 via the Lanczos approximation. The power is split in two
/// halves so that arguments up to the overflow threshold stay finite.
fn gamma_lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    let half_power = t.powf((z + 0.5) / 2.0);
    (2.0 * PI).sqrt() * half_power * (half_power * (-t).exp()) * lanczos_sum(z)
}

/// Gamma function Γ(x) for x > 0.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(
            "gamma_fn",
            format!("argument {x} must be positive and finite"),
        ));
    }
    if x > GAMMA_MAX_ARG {
        return Err(Error::Overflow("gamma_fn"));
    }
    Ok(gamma_real(x))
}

/// Γ on the whole real line except the poles, where it returns ±∞.
pub(crate) fn gamma_real(x: f64) -> f64 {
    if x == x.floor() && (1.0..=30.0).contains(&x) {
        // exact factorial while (x - 1)! fits in the mantissa
        (2..x as u64).fold(1.0, |acc, k| acc * k as f64)
    } else if x >= 0.5 {
        gamma_lanczos(x)
    } else if x > 0.0 {
        // Γ(x) = Γ(x + 1)/x keeps full relative accuracy for tiny x.
        gamma_lanczos(x + 1.0) / x
    } else if x == x.floor() {
        f64::INFINITY
    } else {
        PI / ((PI * x).sin() * gamma_real(1.0 - x))
    }
}

/// 1/Γ(x), zero at the poles of Γ.
pub(crate) fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        0.0
    } else if x < 0.0 {
        (PI * x).sin() * gamma_real(1.0 - x) / PI
    } else {
        1.0 / gamma_real(x)
    }
}

/// log Γ(x) for x > 0.
pub(crate) fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        return gamma_real(x).ln();
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
}

/// Ψ(x) = Γ'(x)/Γ(x) for x > 0.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(
            "digamma",
            format!("argument {x} must be positive and finite"),
        ));
    }
    Ok(digamma_real(x))
}

/// Ψ on the real line; NaN at the poles.
pub(crate) fn digamma_real(x: f64) -> f64 {
    if x <= 0.0 {
        if x == x.floor() {
            return f64::NAN;
        }
        // Ψ(x) = Ψ(1 - x) - π cot(πx)
        return digamma_real(1.0 - x) - PI / (PI * x).tan();
    }
    let mut shift = 0.0;
    let mut y = x;
    while y < 10.0 {
        shift -= 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    let mut tail = 0.0;
    let mut power = inv2;
    for &c in &DIGAMMA_ASYMP {
        tail += c * power;
        power *= inv2;
    }
    shift + y.ln() - 0.5 / y - tail
}

/// Beta function B(x, y) = Γ(x)Γ(y)/Γ(x + y) for x, y > 0.
pub fn beta_fn(x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0 && y > 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(domain(
            "beta_fn",
            format!("arguments ({x}, {y}) must be positive"),
        ));
    }
    let s = x + y;
    if (s - 1.0).abs() <= 4.0 * f64::EPSILON {
        // reflection: B(x, 1 - x) = π/sin(πx)
        return Ok(PI / (PI * x).sin());
    }
    if s < GAMMA_MAX_ARG {
        return Ok(gamma_real(x) * gamma_real(y) / gamma_real(s));
    }
    let value = (ln_gamma(x) + ln_gamma(y) - ln_gamma(s)).exp();
    if value == 0.0 {
        return Err(Error::Overflow("beta_fn"));
    }
    Ok(value)
}

/// Ramanujan's constant R(a, b) = -2γ - Ψ(a) - Ψ(b).
pub fn ramanujan_r(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(domain(
            "ramanujan_r",
            format!("arguments ({a}, {b}) must be positive"),
        ));
    }
    Ok(-2.0 * EULER_GAMMA - digamma_real(a) - digamma_real(b))
}

/// The single-argument form R(a) = R(a, 1 - a), for 0 < a < 1.
pub fn ramanujan_r1(a: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return Err(domain(
            "ramanujan_r1",
            format!("argument {a} must lie in (0, 1)"),
        ));
    }
    ramanujan_r(a, 1.0 - a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_values() {
        assert_eq!(gamma_fn(1.0).unwrap(), 1.0);
        assert!((gamma_fn(0.5).unwrap() - PI.sqrt()).abs() < 1e-15);
        assert!((gamma_fn(5.0).unwrap() - 24.0).abs() < 1e-12);
        assert!((digamma(1.0).unwrap() + EULER_GAMMA).abs() < 1e-15);
        assert!((digamma(2.0).unwrap() - (1.0 - EULER_GAMMA)).abs() < 1e-15);
        assert_eq!(beta_fn(1.0, 1.0).unwrap(), 1.0);
        assert!((beta_fn(2.0, 3.0).unwrap() - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(gamma_fn(0.0), Err(Error::Domain { .. })));
        assert!(matches!(gamma_fn(-1.5), Err(Error::Domain { .. })));
        assert!(matches!(gamma_fn(200.0), Err(Error::Overflow(_))));
        assert!(digamma(-0.5).is_err());
        assert!(beta_fn(0.0, 1.0).is_err());
        assert!(ramanujan_r(1.0, -1.0).is_err());
        assert!(ramanujan_r1(1.0).is_err());
    }

    #[test]
    fn ramanujan_constant_values() {
        let r = ramanujan_r(1.0 / 3.0, 2.0 / 3.0).unwrap();
        assert!((r - 27f64.ln()).abs() < 1e-14);
        let r = ramanujan_r(0.5, 0.5).unwrap();
        assert!((r - 4.0 * 2f64.ln()).abs() < 1e-14);
        assert_eq!(
            ramanujan_r(0.2, 0.7).unwrap(),
            ramanujan_r(0.7, 0.2).unwrap()
        );
    }

    #[test]
    fn ramanujan_r_decreasing() {
        let mut prev = f64::INFINITY;
        for i in 1..=50 {
            let a = 0.01 * i as f64;
            let r = ramanujan_r1(a).unwrap();
            assert!(r < prev);
            prev = r;
        }
    }

    #[test]
    fn signed_gamma_and_reciprocal() {
        // Γ(-1/2) = -2√π
        assert!((gamma_real(-0.5) + 2.0 * PI.sqrt()).abs() < 1e-14);
        assert_eq!(rgamma(-3.0), 0.0);
        assert_eq!(rgamma(0.0), 0.0);
        assert!((rgamma(-0.5) * gamma_real(-0.5) - 1.0).abs() < 1e-14);
        // Ψ(-1/2) = Ψ(3/2) + π cot(-π/2)... = 2 - γ - 2 ln 2
        assert!((digamma_real(-0.5) - (2.0 - EULER_GAMMA - 2.0 * 2f64.ln())).abs() < 1e-13);
    }

    #[test]
    fn ln_gamma_matches_gamma() {
        for &x in &[0.3, 1.7, 12.5, 60.0, 150.0] {
            let rel = (ln_gamma(x) - gamma_real(x).ln()).abs() / gamma_real(x).ln().abs().max(1.0);
            assert!(rel < 1e-13, "x = {x}");
        }
    }
}
