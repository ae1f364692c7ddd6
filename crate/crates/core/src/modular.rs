//! Modular quotients `μ_a(r)`, `μ_a*(r)` and the solution operator
//! `φ_K*(a, r) = μ_a*⁻¹(μ_a*(r)/K)`.
//!
//! Radii are carried as [`UnitRadius`], which stores `r`, its cubic
//! complement `r* = (1 - r³)^{1/3}` and both cubes. Every hypergeometric
//! argument in this module is either `r³` or `1 - r³`, so keeping the pair
//! lets evaluations near `r → 0` and `r → 1` use the exact complement
//! instead of a cancelling subtraction.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::specialfn::{
    hyp2f1_with_complement, ramanujan_r1, EvalOptions, EvalResult, SeriesParameters,
};

/// Radii `r` with `r` or `r*` below this are rejected by the modular functions.
pub const ENDPOINT_MARGIN: f64 = 1e-9;

/// Target residual `|μ*(r) - y|` of the inversion.
pub const INVERSE_TOL: f64 = 1e-12;

/// Iteration budget of the inversion.
pub const INVERSE_MAX_ITER: usize = 200;

/// The signature parameter `a ∈ (0, 1/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Signature(f64);

impl Signature {
    pub fn new(a: f64) -> Result<Self> {
        if !(a > 0.0 && a <= 0.5) {
            return Err(domain("Signature", format!("a = {a} must lie in (0, 1/2]")));
        }
        Ok(Self(a))
    }

    /// The cubic signature `a = 1/3`.
    pub fn cubic() -> Self {
        Self(1.0 / 3.0)
    }

    pub fn a(&self) -> f64 {
        self.0
    }

    /// `π / (2 sin πa)`, the value of `μ_a*` at the self-complementary point.
    pub fn half_period(&self) -> f64 {
        PI / (2.0 * (PI * self.0).sin())
    }

    /// `R(a) = R(a, 1 - a)`.
    pub fn ramanujan_r(&self) -> f64 {
        ramanujan_r1(self.0).expect("signature lies in (0, 1/2]")
    }

    pub fn is_cubic(&self) -> bool {
        (self.0 - 1.0 / 3.0).abs() < 1e-12
    }

    pub(crate) fn zero_balanced(&self) -> SeriesParameters {
        SeriesParameters::new(self.0, 1.0 - self.0, 1.0).expect("c = 1 is valid")
    }
}

/// A radius `r ∈ (0, 1)` together with its cubic complement.
///
/// `cube() + cube_complement() = 1` holds by construction; both are kept
/// because one of them underflows relative to the other near the endpoints.
/// [`UnitRadius::value`] may round to `1.0` for radii within `ε` of 1; the
/// cube complement stays exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitRadius {
    r: f64,
    r_star: f64,
    cube: f64,
    cube_complement: f64,
}

impl UnitRadius {
    pub fn new(r: f64) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(domain("UnitRadius", format!("r = {r} must lie in (0, 1)")));
        }
        // the factorised form keeps precision near 1 but can round past 1 for small r
        let cube_complement = if r < 0.5 {
            1.0 - r * r * r
        } else {
            (1.0 - r) * (1.0 + r + r * r)
        };
        Ok(Self {
            r,
            r_star: cube_complement.cbrt(),
            cube: r * r * r,
            cube_complement,
        })
    }

    pub fn value(&self) -> f64 {
        self.r
    }

    /// `r³`.
    pub fn cube(&self) -> f64 {
        self.cube
    }

    /// `1 - r³ = (r*)³`.
    pub fn cube_complement(&self) -> f64 {
        self.cube_complement
    }

    /// `1 - r`, from the factorisation `1 - r³ = (1 - r)(1 + r + r²)`.
    pub fn one_minus(&self) -> f64 {
        self.cube_complement / (1.0 + self.r + self.r * self.r)
    }

    /// `r* = (1 - r³)^{1/3}`; an exact involution on the stored pair.
    pub fn complement(&self) -> Self {
        Self {
            r: self.r_star,
            r_star: self.r,
            cube: self.cube_complement,
            cube_complement: self.cube,
        }
    }

    /// Whether both `r` and `r*` respect [`ENDPOINT_MARGIN`].
    pub fn is_interior(&self) -> bool {
        // slack absorbs rounding in the endpoint radii themselves
        let margin = ENDPOINT_MARGIN * (1.0 - 1e-6);
        self.r >= margin && self.r_star >= margin
    }

    fn check_interior(&self, function: &'static str) -> Result<()> {
        if !self.is_interior() {
            return Err(domain(
                function,
                format!(
                    "r = {} (r* = {}) lies beyond the endpoint margin {ENDPOINT_MARGIN}",
                    self.r, self.r_star
                ),
            ));
        }
        Ok(())
    }
}

/// The degree `K > 0` of the solution operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeK(f64);

impl DegreeK {
    pub fn new(k: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(domain("DegreeK", format!("K = {k} must be positive")));
        }
        Ok(Self(k))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// `r ↦ r*`.
pub fn complement(r: UnitRadius) -> UnitRadius {
    r.complement()
}

fn zero_balanced_at(s: Signature, x: f64, one_minus_x: f64) -> Result<EvalResult> {
    hyp2f1_with_complement(&s.zero_balanced(), x, one_minus_x, &EvalOptions::default())
}

/// `μ_a(r) = π/(2 sin πa) · F(a,1-a;1;1-r²)/F(a,1-a;1;r²)`.
pub fn mu_a(s: Signature, r: UnitRadius) -> Result<f64> {
    r.check_interior("mu_a")?;
    let x = r.value() * r.value();
    let one_minus_x = r.one_minus() * (1.0 + r.value());
    let near = zero_balanced_at(s, x, one_minus_x)?;
    let far = zero_balanced_at(s, one_minus_x, x)?;
    Ok(s.half_period() * far.value / near.value)
}

/// `μ_a*(r)` with a propagated error estimate.
pub fn mu_star_eval(s: Signature, r: UnitRadius) -> Result<EvalResult> {
    r.check_interior("mu_star")?;
    let near = zero_balanced_at(s, r.cube(), r.cube_complement())?;
    let far = zero_balanced_at(s, r.cube_complement(), r.cube())?;
    let value = s.half_period() * far.value / near.value;
    let relative = far.abs_error_estimate / far.value.abs()
        + near.abs_error_estimate / near.value.abs()
        + 4.0 * f64::EPSILON;
    Ok(EvalResult {
        value,
        abs_error_estimate: value.abs() * relative,
        terms_used: near.terms_used + far.terms_used,
    })
}

/// `μ_a*(r) = μ_a(r^{3/2})`, strictly decreasing from `(0, 1)` onto `(0, ∞)`.
pub fn mu_star(s: Signature, r: UnitRadius) -> Result<f64> {
    mu_star_eval(s, r).map(|e| e.value)
}

/// `dμ_a*/dr = -(3/2) / [r (1 - r³) F(a,1-a;1;r³)²]`.
pub fn mu_star_derivative(s: Signature, r: UnitRadius) -> Result<f64> {
    r.check_interior("mu_star_derivative")?;
    let f = zero_balanced_at(s, r.cube(), r.cube_complement())?.value;
    Ok(-1.5 / (r.value() * r.cube_complement() * f * f))
}

/// The unique `r` with `μ_a*(r) = y`.
///
/// For `y ≥ π/(2 sin πa)` the root lies in `(0, 2^{-1/3}]` and is found by
/// bisection safeguarding Newton steps built from [`mu_star_derivative`].
/// Smaller `y` are mapped through `μ_a*(r) μ_a*(r*) = π²/(4 sin² πa)` onto
/// the same half, and the complement of that root is returned, so radii
/// close to 1 keep full precision in `1 - r`.
pub fn mu_star_inverse(s: Signature, y: f64) -> Result<UnitRadius> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(domain(
            "mu_star_inverse",
            format!("y = {y} must be positive"),
        ));
    }
    let half_period = s.half_period();
    if y >= half_period {
        solve_lower_half(s, y)
    } else {
        solve_lower_half(s, half_period * half_period / y).map(|r| r.complement())
    }
}

/// Largest `y` accepted by [`mu_star_inverse`]: `μ_a*` at the endpoint margin.
pub fn mu_star_inverse_limit(s: Signature) -> Result<f64> {
    mu_star(s, UnitRadius::new(ENDPOINT_MARGIN)?)
}

fn solve_lower_half(s: Signature, y: f64) -> Result<UnitRadius> {
    let mut lo = UnitRadius::new(ENDPOINT_MARGIN)?;
    let mut hi = UnitRadius::new(2f64.powf(-1.0 / 3.0))?;
    let y_max = mu_star_inverse_limit(s)?;
    if y > y_max {
        return Err(domain(
            "mu_star_inverse",
            format!(
                "y = {y} has its preimage within {ENDPOINT_MARGIN} of an endpoint (limit {y_max})"
            ),
        ));
    }
    if y <= s.half_period() {
        return Ok(hi);
    }
    // μ* + (3/2) ln r → R(a)/2 as r → 0
    let seed = ((0.5 * s.ramanujan_r() - y) / 1.5).exp();
    let mut r = if seed > lo.value() && seed < hi.value() {
        UnitRadius::new(seed)?
    } else {
        UnitRadius::new(0.5 * (lo.value() + hi.value()))?
    };

    for _ in 0..INVERSE_MAX_ITER {
        let residual = mu_star(s, r)? - y;
        if residual.abs() <= INVERSE_TOL {
            return Ok(r);
        }
        if residual > 0.0 {
            lo = r;
        } else {
            hi = r;
        }
        let width = hi.value() - lo.value();
        if width <= 4.0 * f64::EPSILON * hi.value() {
            // bracket exhausted at double precision
            return Ok(r);
        }
        let newton = r.value() - residual / mu_star_derivative(s, r)?;
        let next = if newton > lo.value() && newton < hi.value() {
            newton
        } else {
            lo.value() + 0.5 * width
        };
        r = UnitRadius::new(next)?;
    }
    Err(Error::NonConvergence {
        what: "mu_star_inverse",
        iterations: INVERSE_MAX_ITER,
    })
}

/// `φ_K*(a, r) = μ_a*⁻¹(μ_a*(r)/K)`.
pub fn phi_star(k: DegreeK, s: Signature, r: UnitRadius) -> Result<UnitRadius> {
    if k.value() == 1.0 {
        r.check_interior("phi_star")?;
        return Ok(r);
    }
    mu_star_inverse(s, mu_star(s, r)? / k.value())
}

/// Closed form of `φ_3*` at `a = 1/3`: `(9r(1+r+r²))^{1/3}/(1+2r)`.
///
/// The complement of the image is `(1 - r)/(1 + 2r)`, so the returned pair
/// stays exact even when the image rounds to 1.
pub fn phi3_star_closed(r: UnitRadius) -> UnitRadius {
    let x = r.value();
    let d = 1.0 + 2.0 * x;
    let image_star = r.one_minus() / d;
    let cube_complement = image_star * image_star * image_star;
    // Near 1 the image cube is taken from its complement so it never rounds past 1.
    let cube = if cube_complement < 0.5 {
        1.0 - cube_complement
    } else {
        9.0 * x * (1.0 + x + x * x) / (d * d * d)
    };
    UnitRadius {
        r: cube.cbrt(),
        r_star: image_star,
        cube,
        cube_complement,
    }
}

/// Closed form of `φ_{1/3}*` at `a = 1/3`: `(1 - r*)/(1 + 2r*)`.
pub fn phi13_star_closed(r: UnitRadius) -> UnitRadius {
    phi3_star_closed(r.complement()).complement()
}

/// `t = (1 - r)/(1 + 2r)`, whose complement is `φ_3*(r)`.
pub fn cubic_reflection(r: UnitRadius) -> UnitRadius {
    phi3_star_closed(r).complement()
}
