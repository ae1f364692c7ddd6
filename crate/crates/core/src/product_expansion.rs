//! The cubic orbit `r₀ = r*`, `rₙ = φ_3*(rₙ₋₁)` and the log-sum
//!
//! `μ*(r) + (3/2) ln r = (1/2) Σₙ 3⁻ⁿ ln[(1 + 2rₙ)(1 + rₙ + rₙ²)]`,
//!
//! together with the two-sided bounds it gives for `μ_a*` at other
//! signatures and the resulting lower bounds for `φ_{1/K}*(a, r)`.
//!
//! Each log term lies in `[0, ln 9]`, so the remainder after the term of
//! index `n` is at most `Σ_{k>n} 3⁻ᵏ ln 9 = 3⁻ⁿ ln 9 / 2`. Truncation depth is
//! chosen from this bound.

use crate::error::{domain, Error, Result};
use crate::modular::{phi3_star_closed, Signature, UnitRadius};

/// Default truncation tolerance for the log-sum.
pub const DEFAULT_PRODUCT_TOL: f64 = 1e-12;

/// Upper limit on the orbit length.
pub const MAX_ORBIT_LEN: usize = 256;

/// `ln 27 = R(1/3)`.
pub(crate) fn ln27() -> f64 {
    27f64.ln()
}

/// Remainder bound `3⁻ⁿ ln 9 / 2` after the terms `k = 0..=n`.
pub fn tail_bound(n: usize) -> f64 {
    3f64.powi(-(n as i32)) * 9f64.ln() / 2.0
}

fn log_term(r: &UnitRadius) -> f64 {
    let x = r.value();
    ((1.0 + 2.0 * x) * (1.0 + x + x * x)).ln()
}

/// The orbit `r₀ … rₙ` with its weighted log-sum.
///
/// Radii approach 1 cubically fast; once their complement underflows they
/// saturate at exactly 1 and contribute `ln 9` per term.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicOrbit {
    pub r0: UnitRadius,
    /// `r₁ … rₙ`.
    pub terms: Vec<UnitRadius>,
    /// `Σ_{k=0}^{n} 3⁻ᵏ ln[(1 + 2rₖ)(1 + rₖ + rₖ²)]`.
    pub partial_log_sum: f64,
    /// Upper bound on the omitted remainder of the sum.
    pub tail_bound: f64,
}

impl CubicOrbit {
    fn start(r: UnitRadius) -> Self {
        let r0 = r.complement();
        Self {
            r0,
            terms: Vec::new(),
            partial_log_sum: log_term(&r0),
            tail_bound: tail_bound(0),
        }
    }

    fn extend(&mut self) {
        let last = *self.terms.last().unwrap_or(&self.r0);
        let next = phi3_star_closed(last);
        let n = self.terms.len() + 1;
        self.partial_log_sum += 3f64.powi(-(n as i32)) * log_term(&next);
        self.tail_bound = tail_bound(n);
        self.terms.push(next);
    }

    /// Number of orbit points after `r₀`.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Midpoint estimate of the full sum.
    pub fn sum_estimate(&self) -> f64 {
        self.partial_log_sum + 0.5 * self.tail_bound
    }
}

/// Orbit of `r` with `n_max` points after `r₀ = r*`.
pub fn cubic_orbit(r: UnitRadius, n_max: usize) -> Result<CubicOrbit> {
    if n_max == 0 || n_max > MAX_ORBIT_LEN {
        return Err(Error::Config(format!(
            "orbit length {n_max} must lie in 1..={MAX_ORBIT_LEN}"
        )));
    }
    let mut orbit = CubicOrbit::start(r);
    for _ in 0..n_max {
        orbit.extend();
    }
    Ok(orbit)
}

/// Shortest orbit whose half tail bound is at most `tol`.
pub fn adaptive_orbit(r: UnitRadius, tol: f64) -> Result<CubicOrbit> {
    if !(tol > 0.0) {
        return Err(Error::Config(format!("tolerance {tol} must be positive")));
    }
    let mut orbit = CubicOrbit::start(r);
    while orbit.tail_bound / 2.0 > tol {
        if orbit.len() >= MAX_ORBIT_LEN {
            return Err(Error::Config(format!(
                "tolerance {tol} is below the reachable range"
            )));
        }
        orbit.extend();
    }
    Ok(orbit)
}

/// `μ*(r) = μ_{1/3}*(r)` from the log-sum, accurate to `tol`.
pub fn mu_star_product(r: UnitRadius, tol: f64) -> Result<f64> {
    let orbit = adaptive_orbit(r, tol)?;
    Ok(-1.5 * r.value().ln() + 0.5 * orbit.sum_estimate())
}

/// Two-sided bounds `(lower, upper)` on `μ_a*(r)`.
///
/// With `P = -(3/2) ln r + Σ/2` and `δ = (R(a) - ln 27)/2`, the bounds are
/// `[P, P + δ]` for `a ≤ 1/3` and `[P + δ, P]` for `a ≥ 1/3`; they coincide
/// at `a = 1/3`.
pub fn mu_star_bounds(s: Signature, r: UnitRadius, tol: f64) -> Result<(f64, f64)> {
    let base = mu_star_product(r, tol)?;
    let shifted = base + 0.5 * (s.ramanujan_r() - ln27());
    Ok((base.min(shifted), base.max(shifted)))
}

/// Lower bound on `φ_{1/K}*(a, r)` for `K > 1`:
/// `r^K exp{(1-K)/3 · (R(a) - ln 27 + Σ)}` when `a ≤ 1/3` and
/// `r^K exp{(1-K)/3 · Σ}` when `a ≥ 1/3`.
pub fn phi_inv_lower_bound(s: Signature, r: UnitRadius, k: f64) -> Result<f64> {
    if !(k > 1.0 && k.is_finite()) {
        return Err(domain(
            "phi_inv_lower_bound",
            format!("K = {k} must exceed 1"),
        ));
    }
    let sigma = adaptive_orbit(r, 1e-15)?.sum_estimate();
    let shift = if s.a() <= 1.0 / 3.0 {
        s.ramanujan_r() - ln27()
    } else {
        0.0
    };
    Ok(r.value().powf(k) * ((1.0 - k) / 3.0 * (shift + sigma)).exp())
}
