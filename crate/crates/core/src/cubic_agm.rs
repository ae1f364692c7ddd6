//! Borwein's cubic arithmetic–geometric mean
//!
//! `aₙ₊₁ = (aₙ + 2bₙ)/3`, `bₙ₊₁ = [bₙ(aₙ² + aₙbₙ + bₙ²)/3]^{1/3}`,
//!
//! whose common limit satisfies `1/AG(1, x) = F(1/3, 2/3; 1; 1 - x³)` and
//! `1/AG(x, 1) = F(1/3, 1/3; 1; 1 - x³)`, plus the cubic transformation for
//! `F(1/3, 1/3; 1; ·)` and the functional equation behind it.

use crate::error::{domain, Error, Result};
use crate::modular::UnitRadius;
use crate::specialfn::{hyp2f1_with_complement, EvalOptions, SeriesParameters};
use crate::verifier::VerificationReport;

/// Default relative gap at which the iteration stops.
pub const DEFAULT_AGM_TOL: f64 = 1e-15;

/// Hard cap on iteration steps.
pub const MAX_AGM_STEPS: usize = 64;

/// Tolerance of the `F(1/3,1/3;1;·)` cubic transformation check.
pub const CASE_B_TRANSFORM_TOL: f64 = 1e-11;

/// Tolerance of the functional-equation check.
pub const FUNCTIONAL_EQUATION_TOL: f64 = 1e-10;

/// One state `(aₙ, bₙ, n)` of the iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgmState {
    pub a: f64,
    pub b: f64,
    pub n: usize,
}

impl AgmState {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(domain("AgmState", format!("({a}, {b}) must be positive")));
        }
        Ok(Self { a, b, n: 0 })
    }

    pub fn gap(&self) -> f64 {
        (self.a - self.b).abs()
    }
}

/// One step of the cubic iteration.
pub fn agm_step(st: AgmState) -> AgmState {
    let (a, b) = (st.a, st.b);
    let base = b * (a * a + a * b + b * b) / 3.0;
    assert!(base > 0.0, "cube-root base must be positive");
    AgmState {
        a: (a + 2.0 * b) / 3.0,
        b: base.cbrt(),
        n: st.n + 1,
    }
}

/// Iterates until `|aₙ - bₙ| ≤ tol · aₙ` and returns the final state.
pub fn agm_iterate(a: f64, b: f64, tol: f64) -> Result<AgmState> {
    if !(tol > 0.0) {
        return Err(Error::Config(format!("tolerance {tol} must be positive")));
    }
    let mut st = AgmState::new(a, b)?;
    while st.gap() > tol * st.a {
        if st.n >= MAX_AGM_STEPS {
            return Err(Error::NonConvergence {
                what: "cubic AGM",
                iterations: MAX_AGM_STEPS,
            });
        }
        st = agm_step(st);
    }
    Ok(st)
}

/// The common limit `AG(a, b)`, reported as `aₙ` at the stopping step.
pub fn agm_limit(a: f64, b: f64, tol: f64) -> Result<f64> {
    agm_iterate(a, b, tol).map(|st| st.a)
}

fn f_third_third(x: f64, one_minus_x: f64) -> Result<f64> {
    let p = SeriesParameters::new(1.0 / 3.0, 1.0 / 3.0, 1.0)?;
    Ok(hyp2f1_with_complement(&p, x, one_minus_x, &EvalOptions::default())?.value)
}

/// Checks `F(1/3,1/3;1;1-x³) = (3/(x²+x+1))^{1/3} F(1/3,1/3;1;(1-x)³/(9(x²+x+1)))`.
pub fn check_case_b_transformation(x: UnitRadius) -> Result<VerificationReport> {
    let v = x.value();
    let q = v * v + v + 1.0;
    let lhs = f_third_third(x.cube_complement(), x.cube())?;
    let one_minus = x.one_minus();
    // (x + 2)³ + (1 - x)³ = 9(x² + x + 1)
    let arg = one_minus.powi(3) / (9.0 * q);
    let arg_complement = (v + 2.0).powi(3) / (9.0 * q);
    let rhs = (3.0 / q).cbrt() * f_third_third(arg, arg_complement)?;
    Ok(
        VerificationReport::equality("agm.case_b_transformation", lhs, rhs, CASE_B_TRANSFORM_TOL)
            .at(None, Some(v)),
    )
}

/// The contraction `t(x)` with `x̂ = (1-x)^{1/3}` and its derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMap {
    pub x_hat: f64,
    pub t: f64,
    pub one_minus_t: f64,
    pub t_prime: f64,
}

/// `t(x) = (1-x̂)³/(9(x̂²+x̂+1))` and `t'(x) = (1-x̂)²(x̂+2)²/(27x̂²(x̂²+x̂+1)²)`.
pub fn transfer_map(x: f64) -> Result<TransferMap> {
    if !(x > 0.0 && x < 1.0) {
        return Err(domain(
            "transfer_map",
            format!("x = {x} must lie in (0, 1)"),
        ));
    }
    let x_hat = (1.0 - x).cbrt();
    let q = x_hat * x_hat + x_hat + 1.0;
    let gap = x / q;
    Ok(TransferMap {
        x_hat,
        t: gap.powi(3) / (9.0 * q),
        one_minus_t: (x_hat + 2.0).powi(3) / (9.0 * q),
        t_prime: (gap * (x_hat + 2.0)).powi(2) / (27.0 * x_hat * x_hat * q * q),
    })
}

/// `G(x) = x^{1/2} (1-x)^{1/3} F(1/3,1/3;1;x)`.
fn transfer_g(x: f64, one_minus_x: f64) -> Result<f64> {
    Ok(x.sqrt() * one_minus_x.cbrt() * f_third_third(x, one_minus_x)?)
}

/// Checks `G(x)/G(t(x)) = √(3/t'(x))`.
pub fn check_transfer_functional_equation(x: f64) -> Result<VerificationReport> {
    let map = transfer_map(x)?;
    let lhs = transfer_g(x, 1.0 - x)? / transfer_g(map.t, map.one_minus_t)?;
    let rhs = (3.0 / map.t_prime).sqrt();
    Ok(
        VerificationReport::equality("agm.transfer_equation", lhs, rhs, FUNCTIONAL_EQUATION_TOL)
            .at(None, Some(x)),
    )
}
