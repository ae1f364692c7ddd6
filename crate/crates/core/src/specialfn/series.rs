//! Hypergeometric-type power series: Gaussian `₂F₁`, Kummer `Φ` and the
//! generalized Bessel function `u_v`.
//!
//! All three are summed term by term with the same stopping rule: the sum
//! stops once `|term| ≤ rel_tol · |partial sum|` holds for two consecutive
//! terms. For `₂F₁` with `x` above [`CONNECTION_CROSSOVER`] the direct series
//! is replaced by a connection formula in powers of `1 - x`, with the
//! logarithmic expansion for integer `c - a - b` (which covers the
//! zero-balanced case `c = a + b`).

use crate::error::{domain, Error, Result};

use super::gamma::{digamma_real, gamma_real, rgamma};

/// Above this argument `₂F₁` is evaluated through the connection formula.
pub const CONNECTION_CROSSOVER: f64 = 0.75;

/// Distance to an integer below which a float is treated as that integer.
pub const INTEGER_TOLERANCE: f64 = 1e-12;

/// Multiplier on `ε · Σ (n + 1)|tₙ|` used to bound accumulated rounding.
const ROUNDING_FACTOR: f64 = 4.0;

/// Relative error budget attributed to each gamma-function prefactor.
const PREFACTOR_ROUNDING: f64 = 32.0 * f64::EPSILON;

fn nonpositive_integer(x: f64) -> Option<u64> {
    let rounded = x.round();
    if rounded <= 0.0 && (x - rounded).abs() < INTEGER_TOLERANCE {
        Some((-rounded) as u64)
    } else {
        None
    }
}

/// Parameters `(a, b, c)` of a Gaussian hypergeometric series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesParameters {
    a: f64,
    b: f64,
    c: f64,
}

impl SeriesParameters {
    /// Fails if `c` is zero or a negative integer (within [`INTEGER_TOLERANCE`]).
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::Parameter(format!(
                "non-finite parameters ({a}, {b}, {c})"
            )));
        }
        if nonpositive_integer(c).is_some() {
            return Err(Error::Parameter(format!(
                "c = {c} is a non-positive integer"
            )));
        }
        Ok(Self { a, b, c })
    }

    /// The zero-balanced triple `(a, b, a + b)`.
    pub fn zero_balanced(a: f64, b: f64) -> Result<Self> {
        Self::new(a, b, a + b)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn is_zero_balanced(&self) -> bool {
        (self.c - self.a - self.b).abs() < INTEGER_TOLERANCE
    }
}

/// Stopping-rule configuration shared by the series evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    rel_tol: f64,
    max_terms: usize,
}

impl EvalOptions {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(Error::Config(format!(
                "rel_tol = {rel_tol} must lie in (0, 1)"
            )));
        }
        if max_terms == 0 {
            return Err(Error::Config("max_terms must be at least 1".into()));
        }
        Ok(Self { rel_tol, max_terms })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-15,
            max_terms: 10_000,
        }
    }
}

/// A series value with its error estimate and the number of terms consumed.
///
/// `abs_error_estimate` covers the truncation error (twice the last term)
/// plus a running bound on accumulated rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub terms_used: usize,
}

impl EvalResult {
    fn exact(value: f64) -> Self {
        Self {
            value,
            abs_error_estimate: 0.0,
            terms_used: 1,
        }
    }
}

/// Running partial sum implementing the two-consecutive-small-terms rule.
#[derive(Debug, Default)]
struct SeriesSum {
    sum: f64,
    weighted_abs: f64,
    last: f64,
    small_run: u8,
    terms: usize,
}

impl SeriesSum {
    /// Adds a term; `magnitude` is what the stopping rule compares (for
    /// plain series it is `|term|`). Returns true once the rule has fired.
    fn push(&mut self, term: f64, magnitude: f64, rel_tol: f64) -> bool {
        self.sum += term;
        self.terms += 1;
        self.weighted_abs += self.terms as f64 * magnitude;
        self.last = magnitude;
        if magnitude <= rel_tol * self.sum.abs() {
            self.small_run += 1;
        } else {
            self.small_run = 0;
        }
        self.small_run >= 2
    }

    fn abs_error(&self) -> f64 {
        2.0 * self.last + ROUNDING_FACTOR * f64::EPSILON * self.weighted_abs
    }

    fn result(&self) -> EvalResult {
        EvalResult {
            value: self.sum,
            abs_error_estimate: self.abs_error(),
            terms_used: self.terms,
        }
    }
}

fn check_unit_interval(function: &'static str, x: f64) -> Result<()> {
    if !(0.0..1.0).contains(&x) {
        return Err(domain(function, format!("argument {x} must lie in [0, 1)")));
    }
    Ok(())
}

/// Σ (a,n)(b,n)/(c,n) xⁿ/n! summed directly.
fn power_series_2f1(a: f64, b: f64, c: f64, x: f64, opts: &EvalOptions) -> Result<EvalResult> {
    let mut acc = SeriesSum::default();
    let mut term = 1.0;
    for n in 0..opts.max_terms {
        if acc.push(term, term.abs(), opts.rel_tol) {
            return Ok(acc.result());
        }
        let k = n as f64;
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
    }
    Err(Error::NonConvergence {
        what: "hypergeometric series",
        iterations: opts.max_terms,
    })
}

/// Finite sum for a non-positive integer upper parameter `-degree`.
fn polynomial_2f1(a: f64, b: f64, c: f64, x: f64, degree: u64) -> EvalResult {
    let mut acc = SeriesSum::default();
    let mut term = 1.0;
    for n in 0..=degree {
        acc.push(term, term.abs(), 0.0);
        let k = n as f64;
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
    }
    EvalResult {
        abs_error_estimate: ROUNDING_FACTOR * f64::EPSILON * acc.weighted_abs,
        ..acc.result()
    }
}

/// Gaussian hypergeometric function `F(a, b; c; x)` for `0 ≤ x < 1`.
pub fn hyp2f1(p: &SeriesParameters, x: f64, opts: &EvalOptions) -> Result<EvalResult> {
    check_unit_interval("hyp2f1", x)?;
    hyp2f1_with_complement(p, x, 1.0 - x, opts)
}

/// `F(a, b; c; x)` where the caller also supplies `1 - x` exactly.
///
/// Arguments close to 1 usually come from closed forms such as `1 - r³`
/// whose complement is known in factored form; passing it avoids the
/// cancellation in `1 - x` that would otherwise dominate the logarithmic
/// terms near the singularity.
pub fn hyp2f1_with_complement(
    p: &SeriesParameters,
    x: f64,
    one_minus_x: f64,
    opts: &EvalOptions,
) -> Result<EvalResult> {
    if !((0.0..=1.0).contains(&x) && one_minus_x > 0.0 && one_minus_x <= 1.0) {
        return Err(domain(
            "hyp2f1",
            format!("argument pair ({x}, {one_minus_x}) must satisfy 0 ≤ x < 1"),
        ));
    }
    if x == 0.0 {
        return Ok(EvalResult::exact(1.0));
    }
    let (a, b, c) = (p.a, p.b, p.c);
    let degree = [nonpositive_integer(a), nonpositive_integer(b)]
        .into_iter()
        .flatten()
        .min();
    if let Some(degree) = degree {
        return Ok(polynomial_2f1(a, b, c, x, degree));
    }
    if x <= CONNECTION_CROSSOVER {
        power_series_2f1(a, b, c, x, opts)
    } else {
        near_one(a, b, c, x, one_minus_x, opts)
    }
}

fn near_one(a: f64, b: f64, c: f64, x: f64, w: f64, opts: &EvalOptions) -> Result<EvalResult> {
    let s = c - a - b;
    let m = s.round();
    if (s - m).abs() < INTEGER_TOLERANCE && m >= 0.0 {
        return log_connection(a, b, m as u32, w, opts);
    }
    if s < 0.0 {
        // Euler: F(a,b;c;x) = (1-x)^{c-a-b} F(c-a, c-b; c; x)
        let inner = SeriesParameters::new(c - a, c - b, c)?;
        let r = hyp2f1_with_complement(&inner, x, w, opts)?;
        let factor = w.powf(s);
        let value = factor * r.value;
        return Ok(EvalResult {
            value,
            abs_error_estimate: factor * r.abs_error_estimate + PREFACTOR_ROUNDING * value.abs(),
            terms_used: r.terms_used,
        });
    }
    general_connection(a, b, c, s, w, opts)
}

/// Connection formula for non-integer `s = c - a - b > 0`:
///
/// `F = Γ(c)Γ(s)/(Γ(c-a)Γ(c-b)) F(a,b;1-s;w)
///    + w^s Γ(c)Γ(-s)/(Γ(a)Γ(b)) F(c-a,c-b;1+s;w)` with `w = 1 - x`.
fn general_connection(
    a: f64,
    b: f64,
    c: f64,
    s: f64,
    w: f64,
    opts: &EvalOptions,
) -> Result<EvalResult> {
    let gc = gamma_real(c);
    let regular_coeff = gc * gamma_real(s) * rgamma(c - a) * rgamma(c - b);
    let singular_coeff = gc * gamma_real(-s) * rgamma(a) * rgamma(b) * w.powf(s);
    if !(regular_coeff.is_finite() && singular_coeff.is_finite()) {
        return Err(Error::Overflow("hyp2f1 connection coefficients"));
    }
    let regular = if regular_coeff == 0.0 {
        EvalResult::exact(0.0)
    } else {
        power_series_2f1(a, b, 1.0 - s, w, opts)?
    };
    let singular = if singular_coeff == 0.0 {
        EvalResult::exact(0.0)
    } else {
        power_series_2f1(c - a, c - b, 1.0 + s, w, opts)?
    };
    let first = regular_coeff * regular.value;
    let second = singular_coeff * singular.value;
    Ok(EvalResult {
        value: first + second,
        abs_error_estimate: regular_coeff.abs() * regular.abs_error_estimate
            + singular_coeff.abs() * singular.abs_error_estimate
            + PREFACTOR_ROUNDING * (first.abs() + second.abs()),
        terms_used: regular.terms_used + singular.terms_used,
    })
}

/// Logarithmic connection formula for `c = a + b + m`, `m` a non-negative
/// integer. For `m = 0` (zero-balanced) it reduces to
///
/// `F = (1/B(a,b)) Σ (a,n)(b,n)/(n!)² [2Ψ(n+1) - Ψ(a+n) - Ψ(b+n) - ln w] wⁿ`,
///
/// whose constant term is `(R(a,b) - ln w)/B(a,b)`.
fn log_connection(a: f64, b: f64, m: u32, w: f64, opts: &EvalOptions) -> Result<EvalResult> {
    let c = a + b + m as f64;
    let mf = m as f64;
    let gc = gamma_real(c);

    // Finite part: Γ(m)Γ(c)/(Γ(a+m)Γ(b+m)) Σ_{n<m} (a,n)(b,n)/(n!(1-m,n)) wⁿ
    let mut finite = 0.0;
    let mut finite_abs = 0.0;
    if m > 0 {
        let lead = gamma_real(mf) * gc * rgamma(a + mf) * rgamma(b + mf);
        let mut term = 1.0f64;
        let mut partial = 0.0;
        let mut partial_abs = 0.0;
        for n in 0..m {
            partial += term;
            partial_abs += term.abs();
            let k = n as f64;
            term *= (a + k) * (b + k) / ((k + 1.0) * (1.0 - mf + k)) * w;
        }
        finite = lead * partial;
        finite_abs = (lead * partial_abs).abs();
    }

    // Logarithmic part: (-1)^{m+1} wᵐ Γ(c)/(Γ(a)Γ(b)) Σ eₙ wⁿ [ln w - Ψ(n+1) - Ψ(n+m+1) + Ψ(a+n+m) + Ψ(b+n+m)]
    let sign = if m.is_multiple_of(2) { -1.0 } else { 1.0 };
    let outer = sign * w.powi(m as i32) * gc * rgamma(a) * rgamma(b);
    let ln_w = w.ln();
    let mut psi_n1 = digamma_real(1.0);
    let mut psi_nm1 = digamma_real(mf + 1.0);
    let mut psi_a = digamma_real(a + mf);
    let mut psi_b = digamma_real(b + mf);
    let mut coeff = 1.0 / gamma_real(mf + 1.0);
    let mut acc = SeriesSum::default();
    let mut converged = false;
    for n in 0..opts.max_terms {
        let k = n as f64;
        let digammas = -psi_n1 - psi_nm1 + psi_a + psi_b;
        let term = coeff * (ln_w + digammas);
        let magnitude = coeff.abs() * (ln_w.abs() + digammas.abs());
        if acc.push(term, magnitude, opts.rel_tol) {
            converged = true;
            break;
        }
        psi_n1 += 1.0 / (k + 1.0);
        psi_nm1 += 1.0 / (k + mf + 1.0);
        psi_a += 1.0 / (a + mf + k);
        psi_b += 1.0 / (b + mf + k);
        coeff *= (a + mf + k) * (b + mf + k) / ((k + 1.0) * (k + mf + 1.0)) * w;
    }
    if !converged {
        return Err(Error::NonConvergence {
            what: "hypergeometric logarithmic connection series",
            iterations: opts.max_terms,
        });
    }
    let log_part = outer * acc.sum;
    let value = finite + log_part;
    Ok(EvalResult {
        value,
        abs_error_estimate: outer.abs() * acc.abs_error()
            + PREFACTOR_ROUNDING * (finite_abs + log_part.abs())
            + ROUNDING_FACTOR * f64::EPSILON * finite_abs * mf,
        terms_used: acc.terms + m as usize,
    })
}

/// Kummer's confluent function `Φ(p, q; x) = Σ (p,n)/(q,n) xⁿ/n!` on `[0, 1)`.
pub fn kummer_phi(p: f64, q: f64, x: f64, opts: &EvalOptions) -> Result<EvalResult> {
    if nonpositive_integer(q).is_some() || !q.is_finite() || !p.is_finite() {
        return Err(Error::Parameter(format!(
            "q = {q} is a non-positive integer"
        )));
    }
    check_unit_interval("kummer_phi", x)?;
    if x == 0.0 {
        return Ok(EvalResult::exact(1.0));
    }
    let mut acc = SeriesSum::default();
    let mut term = 1.0;
    for n in 0..opts.max_terms {
        if acc.push(term, term.abs(), opts.rel_tol) {
            return Ok(acc.result());
        }
        let k = n as f64;
        term *= (p + k) / ((q + k) * (k + 1.0)) * x;
    }
    Err(Error::NonConvergence {
        what: "Kummer series",
        iterations: opts.max_terms,
    })
}

/// Generalized Bessel function `u_v(x) = Σ (-c/4)ⁿ/(κ,n) xⁿ/n!` with
/// `κ = v + (b + 1)/2`, on `[0, 1)`.
pub fn bessel_u(v: f64, b: f64, c: f64, x: f64, opts: &EvalOptions) -> Result<EvalResult> {
    let kappa = v + (b + 1.0) / 2.0;
    if nonpositive_integer(kappa).is_some() || !kappa.is_finite() || !c.is_finite() {
        return Err(Error::Parameter(format!(
            "κ = {kappa} is a non-positive integer"
        )));
    }
    check_unit_interval("bessel_u", x)?;
    if x == 0.0 || c == 0.0 {
        return Ok(EvalResult::exact(1.0));
    }
    let mut acc = SeriesSum::default();
    let mut term = 1.0;
    for n in 0..opts.max_terms {
        if acc.push(term, term.abs(), opts.rel_tol) {
            return Ok(acc.result());
        }
        let k = n as f64;
        term *= -c / 4.0 / ((kappa + k) * (k + 1.0)) * x;
    }
    Err(Error::NonConvergence {
        what: "generalized Bessel series",
        iterations: opts.max_terms,
    })
}
