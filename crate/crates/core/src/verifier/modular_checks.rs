//! Checks on `μ_a*`, the solution operator `φ_K*`, the product expansion and
//! the cubic AGM.

use std::f64::consts::PI;

use super::{monotone_reports, or_failed, Monotonicity, SweepGrid, VerificationReport};
use crate::cubic_agm::{
    agm_iterate, check_case_b_transformation, check_transfer_functional_equation, DEFAULT_AGM_TOL,
};
use crate::error::Result;
use crate::modular::{
    cubic_reflection, mu_star, mu_star_derivative, mu_star_inverse, mu_star_inverse_limit,
    phi13_star_closed, phi3_star_closed, phi_star, DegreeK, Signature, UnitRadius,
};
use crate::product_expansion::{mu_star_bounds, mu_star_product, phi_inv_lower_bound};

use super::hyp;

/// Tolerance for identities between values of `μ_a*`.
pub const IDENTITY_TOL: f64 = 1e-10;

/// Tolerance for `μ_a*(2^{-1/3}) = π/(2 sin πa)`.
pub const SELF_COMPLEMENTARY_TOL: f64 = 1e-11;

/// Tolerance for constants that are exact at `a = 1/3`.
pub const CONSTANT_TOL: f64 = 1e-13;

/// Tolerance for both cubic AGM limit identities.
pub const AGM_LIMIT_TOL: f64 = 1e-12;

/// Iteration budget for the AGM gap to fall below `1e-15`.
pub const AGM_MAX_ITERATIONS: usize = 8;

/// Relative tolerance for the derivative against finite differences.
pub const DERIVATIVE_REL_TOL: f64 = 1e-6;

/// Truncation tolerance used for the product bounds.
const PRODUCT_TOL: f64 = 1e-14;

fn ln27() -> f64 {
    27f64.ln()
}

/// `C(a) = [1 + (2 sin πa/π)(R(a) - ln 27)]²`.
pub fn triplication_constant(s: Signature) -> f64 {
    let k = 1.0 + 2.0 * (PI * s.a()).sin() / PI * (s.ramanujan_r() - ln27());
    k * k
}

/// `h(r) = μ_a*(r) + (3/2) ln r` decreasing with values in `(0, R(a)/2)`, and
/// `-(3/2) ln 3 < μ_a*(r) + (1/2) ln((1-r*)/(1+2r*)) < R(a)/2`.
pub fn check_log_shifted_mu(s: Signature, grid: &SweepGrid) -> Result<Vec<VerificationReport>> {
    let tol = grid.tolerance();
    let a = Some(s.a());
    let half_r = s.ramanujan_r() / 2.0;
    let mut samples = Vec::new();
    let mut out = Vec::new();
    for &r in grid.r_values() {
        let x = r.value();
        let m = mu_star(s, r)?;
        let h = m + 1.5 * x.ln();
        samples.push((x, h));
        let rc = r.complement();
        // 1 - r* = r³/(1 + r* + r*²) keeps full precision for small r.
        let v = m + 0.5 * (rc.one_minus() / (1.0 + 2.0 * rc.value())).ln();
        out.push(VerificationReport::at_most("log_shifted.positive", 0.0, h, tol).at(a, Some(x)));
        out.push(
            VerificationReport::at_most("log_shifted.below_half_r", h, half_r, tol).at(a, Some(x)),
        );
        out.push(
            VerificationReport::at_most("log_shifted.complement_lower", -1.5 * 3f64.ln(), v, tol)
                .at(a, Some(x)),
        );
        out.push(
            VerificationReport::at_most("log_shifted.complement_upper", v, half_r, tol)
                .at(a, Some(x)),
        );
    }
    out.extend(monotone_reports(
        "log_shifted.monotone",
        a,
        &samples,
        Monotonicity::Decreasing,
        tol,
        &grid.density_note(),
    ));
    Ok(out)
}

struct TriplicationSample {
    r: f64,
    mu: f64,
    mu_image: f64,
    g: f64,
    f: f64,
    reflection_product: f64,
}

fn triplication_sample(s: Signature, r: UnitRadius) -> Result<TriplicationSample> {
    let mu = mu_star(s, r)?;
    let mu_image = mu_star(s, phi3_star_closed(r))?;
    let t = cubic_reflection(r);
    let mu_t = mu_star(s, t)?;
    Ok(TriplicationSample {
        r: r.value(),
        mu,
        mu_image,
        g: 3.0 * mu_image - mu,
        f: mu_t - 3.0 * mu_star(s, r.complement())?,
        reflection_product: mu * mu_t,
    })
}

/// Behaviour of `μ_a*` under the closed-form triplication `x = φ₃*(r)`:
///
/// * `g(r) = 3μ_a*(x) - μ_a*(r)` and `f(r) = μ_a*(t) - 3μ_a*(r*)`,
///   `t = (1-r)/(1+2r)`, are monotone with the stated ranges, and vanish
///   identically at `a = 1/3`;
/// * `3μ_a*(x)` is sandwiched between `μ_a*(r)` and
///   `min{μ_a*(r) + R(a) - ln 27, C₁ μ_a*(r)}` (reversed with `max` and `C`
///   for `a > 1/3`);
/// * `μ_a*(r) μ_a*(t)` is sandwiched around `3π²/(4 sin² πa)`.
pub fn check_triplication_bounds(
    s: Signature,
    grid: &SweepGrid,
) -> Result<Vec<VerificationReport>> {
    let tol = grid.tolerance();
    let a = Some(s.a());
    let note = grid.density_note();
    let d = s.ramanujan_r() - ln27();
    let c = triplication_constant(s);
    let c1 = c.min(3.0);
    let p = 3.0 * PI * PI / (4.0 * (PI * s.a()).sin().powi(2));
    let samples = grid
        .r_values()
        .iter()
        .map(|&r| triplication_sample(s, r))
        .collect::<Result<Vec<_>>>()?;

    let mut out = Vec::new();
    let mut claim = |id: &str, lhs: f64, rhs: f64, r: f64| {
        out.push(VerificationReport::at_most(id, lhs, rhs, tol).at(a, Some(r)));
    };
    let below_third = s.a() < 1.0 / 3.0 && !s.is_cubic();
    let above_third = s.a() > 1.0 / 3.0 && !s.is_cubic();
    for t in &samples {
        if below_third {
            claim("triplication.g_range_lower", 0.0, t.g, t.r);
            claim("triplication.g_range_upper", t.g, d, t.r);
            claim("triplication.f_range_lower", -d, t.f, t.r);
            claim("triplication.f_range_upper", t.f, 0.0, t.r);
            claim("triplication.image_lower", t.mu, 3.0 * t.mu_image, t.r);
            claim(
                "triplication.image_upper_shift",
                3.0 * t.mu_image,
                t.mu + d,
                t.r,
            );
            claim(
                "triplication.image_upper_scale",
                3.0 * t.mu_image,
                c1 * t.mu,
                t.r,
            );
        }
        if above_third {
            claim("triplication.g_range_lower", d, t.g, t.r);
            claim("triplication.g_range_upper", t.g, 0.0, t.r);
            claim("triplication.f_range_lower", 0.0, t.f, t.r);
            claim("triplication.f_range_upper", t.f, -d, t.r);
            claim(
                "triplication.image_lower_shift",
                t.mu + d,
                3.0 * t.mu_image,
                t.r,
            );
            claim(
                "triplication.image_lower_scale",
                c * t.mu,
                3.0 * t.mu_image,
                t.r,
            );
            claim("triplication.image_upper", 3.0 * t.mu_image, t.mu, t.r);
        }
        if s.a() <= 1.0 / 3.0 || s.is_cubic() {
            claim(
                "triplication.product_lower_shift",
                p - d * t.mu,
                t.reflection_product,
                t.r,
            );
            claim(
                "triplication.product_lower_scale",
                p / c1,
                t.reflection_product,
                t.r,
            );
            claim("triplication.product_upper", t.reflection_product, p, t.r);
        }
        if s.a() >= 1.0 / 3.0 || s.is_cubic() {
            claim("triplication.product_lower", p, t.reflection_product, t.r);
            claim(
                "triplication.product_upper_shift",
                t.reflection_product,
                p - d * t.mu,
                t.r,
            );
            claim(
                "triplication.product_upper_scale",
                t.reflection_product,
                p / c,
                t.r,
            );
        }
    }

    if s.is_cubic() {
        let discrepancy = "the statement names the vanishing function f while defining g; \
                           g is the function that vanishes";
        for t in &samples {
            out.push(
                VerificationReport::equality("triplication.g_vanishes", t.g, 0.0, IDENTITY_TOL)
                    .at(a, Some(t.r))
                    .with_note(discrepancy),
            );
            out.push(
                VerificationReport::equality("triplication.f_vanishes", t.f, 0.0, IDENTITY_TOL)
                    .at(a, Some(t.r)),
            );
        }
    } else {
        let direction = if below_third {
            Monotonicity::Decreasing
        } else {
            Monotonicity::Increasing
        };
        let g: Vec<(f64, f64)> = samples.iter().map(|t| (t.r, t.g)).collect();
        let f: Vec<(f64, f64)> = samples.iter().map(|t| (t.r, t.f)).collect();
        out.extend(monotone_reports(
            "triplication.g_monotone",
            a,
            &g,
            direction,
            tol,
            &note,
        ));
        out.extend(monotone_reports(
            "triplication.f_monotone",
            a,
            &f,
            direction,
            tol,
            &note,
        ));
    }
    Ok(out)
}

/// Identities of `μ_a*` and `φ_K*`: complement product, self-complementary
/// value, inverse round trip and derivative at every signature; at `a = 1/3`
/// additionally triplication, reflection product, the closed forms of
/// `φ₃*, φ_{1/3}*`, the fixed point, the cubic constants and the log-sum
/// representation. Checks of `φ_{1/3}*` are skipped where its image lies
/// beyond the endpoint margin; an error at one radius fails only that radius.
pub fn check_modular_identities(s: Signature, grid: &SweepGrid) -> Result<Vec<VerificationReport>> {
    let a = Some(s.a());
    let hp = s.half_period();
    let mut out = Vec::new();
    let self_comp = UnitRadius::new(0.5f64.cbrt())?;
    out.push(
        VerificationReport::equality(
            "modular.self_complementary",
            mu_star(s, self_comp)?,
            hp,
            SELF_COMPLEMENTARY_TOL,
        )
        .at(a, Some(self_comp.value())),
    );
    for &r in grid.r_values() {
        let x = r.value();
        let point = (|| -> Result<Vec<VerificationReport>> {
            let id = |name: &str, lhs: f64, rhs: f64, tol: f64| {
                VerificationReport::equality(name, lhs, rhs, tol).at(a, Some(x))
            };
            let m = mu_star(s, r)?;
            // step shrinks with the distance to the nearer endpoint, where μ* varies like ln
            let h = (1e-3 * x.min(r.one_minus())).min(1e-6);
            let fd = (mu_star(s, UnitRadius::new(x + h)?)? - mu_star(s, UnitRadius::new(x - h)?)?)
                / (2.0 * h);
            let mut pts = vec![
                id(
                    "modular.complement_product",
                    m * mu_star(s, r.complement())?,
                    hp * hp,
                    IDENTITY_TOL,
                ),
                id(
                    "modular.inverse_round_trip",
                    mu_star_inverse(s, m)?.value(),
                    x,
                    IDENTITY_TOL,
                ),
                id(
                    "modular.derivative",
                    mu_star_derivative(s, r)?,
                    fd,
                    DERIVATIVE_REL_TOL * fd.abs(),
                )
                .with_note("relative tolerance"),
            ];
            if !s.is_cubic() {
                return Ok(pts);
            }
            let tripled = phi3_star_closed(r);
            let third = phi13_star_closed(r);
            pts.push(id(
                "modular.triplication",
                m,
                3.0 * mu_star(s, tripled)?,
                IDENTITY_TOL,
            ));
            pts.push(id(
                "modular.reflection_product",
                m * mu_star(s, cubic_reflection(r))?,
                PI * PI,
                IDENTITY_TOL,
            ));
            pts.push(id(
                "modular.phi3_closed_form",
                phi_star(DegreeK::new(3.0)?, s, r)?.value(),
                tripled.value(),
                IDENTITY_TOL,
            ));
            // φ_{1/3}* of small radii lies beyond the endpoint margin and cannot be evaluated
            if third.is_interior() {
                pts.push(id(
                    "modular.inverse_triplication",
                    m,
                    mu_star(s, third)? / 3.0,
                    IDENTITY_TOL,
                ));
                pts.push(id(
                    "modular.phi13_closed_form",
                    phi_star(DegreeK::new(1.0 / 3.0)?, s, r)?.value(),
                    third.value(),
                    IDENTITY_TOL,
                ));
            }
            pts.push(id(
                "modular.closed_form_complement",
                tripled.cube() + phi13_star_closed(r.complement()).cube(),
                1.0,
                IDENTITY_TOL,
            ));
            pts.push(id(
                "product.representation",
                mu_star_product(r, PRODUCT_TOL)?,
                m,
                IDENTITY_TOL,
            ));
            Ok(pts)
        })();
        out.extend(or_failed("modular", a, Some(x), point));
    }
    if s.is_cubic() {
        let fixed = UnitRadius::new((3f64.sqrt() - 1.0) / 2.0)?;
        out.push(
            VerificationReport::equality(
                "modular.fixed_point",
                mu_star(s, fixed)?,
                PI,
                IDENTITY_TOL,
            )
            .at(a, Some(fixed.value())),
        );
        out.push(
            VerificationReport::equality(
                "modular.cubic_constant_c",
                triplication_constant(s),
                1.0,
                CONSTANT_TOL,
            )
            .at(a, None),
        );
        out.push(
            VerificationReport::equality(
                "modular.cubic_constant_r",
                s.ramanujan_r(),
                ln27(),
                CONSTANT_TOL,
            )
            .at(a, None),
        );
    }
    Ok(out)
}

/// Two-sided product bounds on `μ_a*`, the comparison with `μ* = μ_{1/3}*`,
/// and the lower bounds on `φ_{1/K}*` for `K = 2, 3`. The last are skipped at
/// radii whose image lies beyond the endpoint margin.
pub fn check_product_bounds(s: Signature, grid: &SweepGrid) -> Result<Vec<VerificationReport>> {
    let tol = grid.tolerance();
    let a = Some(s.a());
    let shift = 0.5 * (s.ramanujan_r() - ln27());
    let inverse_limit = mu_star_inverse_limit(s)?;
    let mut out = Vec::new();
    for &r in grid.r_values() {
        let x = r.value();
        let m = mu_star(s, r)?;
        let (lower, upper) = mu_star_bounds(s, r, PRODUCT_TOL)?;
        out.push(VerificationReport::at_most("product.bounds_lower", lower, m, tol).at(a, Some(x)));
        out.push(VerificationReport::at_most("product.bounds_upper", m, upper, tol).at(a, Some(x)));
        let cubic = mu_star(Signature::cubic(), r)?;
        let (lo, hi) = if shift >= 0.0 {
            (cubic, cubic + shift)
        } else {
            (cubic + shift, cubic)
        };
        out.push(
            VerificationReport::at_most("product.cubic_comparison_lower", lo, m, tol)
                .at(a, Some(x)),
        );
        out.push(
            VerificationReport::at_most("product.cubic_comparison_upper", m, hi, tol)
                .at(a, Some(x)),
        );
        for k in [2.0, 3.0] {
            // φ_{1/K}* is only computable while K μ_a*(r) stays within the inverse range
            if k * m > inverse_limit {
                continue;
            }
            let bound = phi_inv_lower_bound(s, r, k)?;
            let value = phi_star(DegreeK::new(1.0 / k)?, s, r)?.value();
            out.push(
                VerificationReport::at_most("product.inverse_degree_bound", bound, value, tol)
                    .at(a, Some(x))
                    .with_point(vec![s.a(), x, k]),
            );
        }
    }
    Ok(out)
}

/// Cubic AGM limits for start pairs `(1, x)` and `(x, 1)`, the iteration
/// budget, the cubic transformation encoded by the second limit and the
/// functional equation behind it, at every grid radius used as `x`.
pub fn check_agm_limits(grid: &SweepGrid) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for &r in grid.r_values() {
        let x = r.value();
        let reps = (|| -> Result<Vec<VerificationReport>> {
            let case_a = agm_iterate(1.0, x, DEFAULT_AGM_TOL)?;
            let case_b = agm_iterate(x, 1.0, DEFAULT_AGM_TOL)?;
            let fa = hyp(1.0 / 3.0, 2.0 / 3.0, 1.0, r.cube_complement(), r.cube())?;
            let fb = hyp(1.0 / 3.0, 1.0 / 3.0, 1.0, r.cube_complement(), r.cube())?;
            let steps = case_a.n.max(case_b.n) as f64;
            Ok(vec![
                VerificationReport::equality("agm.case_a_limit", case_a.a * fa, 1.0, AGM_LIMIT_TOL)
                    .at(None, Some(x)),
                VerificationReport::equality("agm.case_b_limit", case_b.a * fb, 1.0, AGM_LIMIT_TOL)
                    .at(None, Some(x)),
                VerificationReport::at_most(
                    "agm.iterations",
                    steps,
                    AGM_MAX_ITERATIONS as f64,
                    0.0,
                )
                .at(None, Some(x)),
                check_case_b_transformation(r)?,
                check_transfer_functional_equation(x)?,
            ])
        })();
        out.extend(or_failed("agm", None, Some(x), reps));
    }
    Ok(out)
}
