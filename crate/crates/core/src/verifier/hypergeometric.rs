//! Checks on the hypergeometric-type series themselves: the cubic
//! transformation, its zero-balanced sandwich, the quotient inequalities
//! against `F(1/3,2/3;1;x)`, and the coefficient-ratio monotonicity sampler.

use super::{hyp, monotone_reports, Monotonicity, SweepGrid, VerificationReport};
use crate::error::{Error, Result};
use crate::modular::{cubic_reflection, phi3_star_closed, UnitRadius};
use crate::specialfn::{bessel_u, beta_fn, kummer_phi, ramanujan_r, EvalOptions};

/// Tolerance for the cubic transformation identity.
pub const CUBIC_TRANSFORM_TOL: f64 = 1e-11;

/// Tolerance for the equivalence of the forward and reflected quotient
/// inequalities, relative to the size of the values involved.
pub const REFLECTION_EQUIVALENCE_TOL: f64 = 1e-12;

/// Slack when testing membership of parameter regions.
const REGION_TOL: f64 = 1e-12;

fn cubic_f(x: f64, one_minus_x: f64) -> Result<f64> {
    hyp(1.0 / 3.0, 2.0 / 3.0, 1.0, x, one_minus_x)
}

/// Checks `F(1/3,2/3;1;1-t³) = (1+2r) F(1/3,2/3;1;r³)` and the reflected
/// form `F(1/3,2/3;1;t³) = (1+2r)/3 · F(1/3,2/3;1;1-r³)`, `t = (1-r)/(1+2r)`.
pub fn check_cubic_transformation(r: UnitRadius) -> Result<Vec<VerificationReport>> {
    let t = cubic_reflection(r);
    let w = 1.0 + 2.0 * r.value();
    let forward = VerificationReport::equality(
        "cubic.transformation",
        cubic_f(t.cube_complement(), t.cube())?,
        w * cubic_f(r.cube(), r.cube_complement())?,
        CUBIC_TRANSFORM_TOL,
    );
    let reflected = VerificationReport::equality(
        "cubic.transformation_reflected",
        cubic_f(t.cube(), t.cube_complement())?,
        w / 3.0 * cubic_f(r.cube_complement(), r.cube())?,
        CUBIC_TRANSFORM_TOL,
    );
    Ok(vec![
        forward.at(None, Some(r.value())),
        reflected.at(None, Some(r.value())),
    ])
}

/// Parameter regions of the zero-balanced sandwich inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SandwichRegion {
    /// `a + b ≤ 1` and `ab ≤ 2(a + b)/9`: `(1+2r)F(r³)` dominates.
    Lower,
    /// `a + b ≥ 1` and `ab ≥ 2(a + b)/9`: the transformed value dominates.
    Upper,
}

impl SandwichRegion {
    /// The region containing `(a, b)`; `Lower` wins on the common boundary.
    pub fn of(a: f64, b: f64) -> Option<Self> {
        if !(a > 0.0 && b > 0.0) {
            return None;
        }
        let s = a + b;
        let d = a * b - 2.0 * s / 9.0;
        if s <= 1.0 + REGION_TOL && d <= REGION_TOL {
            Some(Self::Lower)
        } else if s >= 1.0 - REGION_TOL && d >= -REGION_TOL {
            Some(Self::Upper)
        } else {
            None
        }
    }
}

/// `0 ≤ ±[(1+2r)F(r³) - F(y)] ≤ ±2(R(a,b) - ln 27)/B(a,b)` with
/// `F = F(a,b;a+b;·)` and `y = 9r(1+r+r²)/(1+2r)³`; the sign is `+` in the
/// lower region and `-` in the upper one.
pub fn check_zero_balanced_sandwich(
    a: f64,
    b: f64,
    r: UnitRadius,
    tol: f64,
) -> Result<Vec<VerificationReport>> {
    let region = SandwichRegion::of(a, b).ok_or_else(|| {
        Error::Parameter(format!(
            "(a, b) = ({a}, {b}) lies in neither sandwich region"
        ))
    })?;
    let c = a + b;
    let y = phi3_star_closed(r);
    let diff = (1.0 + 2.0 * r.value()) * hyp(a, b, c, r.cube(), r.cube_complement())?
        - hyp(a, b, c, y.cube(), y.cube_complement())?;
    let bound = 2.0 * (ramanujan_r(a, b)? - 27f64.ln()) / beta_fn(a, b)?;
    let (d, ub) = match region {
        SandwichRegion::Lower => (diff, bound),
        SandwichRegion::Upper => (-diff, -bound),
    };
    let point = vec![a, b, r.value()];
    let at = |rep: VerificationReport| {
        rep.at(Some(a), Some(r.value()))
            .with_point(point.clone())
            .with_note(format!("{region:?} region"))
    };
    Ok(vec![
        at(VerificationReport::at_most(
            "zero_balanced.sandwich_lower",
            0.0,
            d,
            tol,
        )),
        at(VerificationReport::at_most(
            "zero_balanced.sandwich_upper",
            d,
            ub,
            tol,
        )),
    ])
}

/// Power-series coefficients `(a,n)(b,n)/((c,n) n!)` of `F(a,b;c;x)` for
/// `n < len`.
pub fn hyp2f1_coefficients(a: f64, b: f64, c: f64, len: usize) -> Result<Vec<f64>> {
    crate::specialfn::SeriesParameters::new(a, b, c)?;
    Ok(coefficients(len, |n| {
        (a + n) * (b + n) / ((c + n) * (1.0 + n))
    }))
}

/// Coefficients `(p,n)/((q,n) n!)` of the Kummer series.
pub fn kummer_coefficients(p: f64, q: f64, len: usize) -> Vec<f64> {
    coefficients(len, |n| (p + n) / ((q + n) * (1.0 + n)))
}

/// Coefficients `(-c/4)ⁿ/((κ,n) n!)` of the generalized Bessel series.
pub fn bessel_coefficients(kappa: f64, c: f64, len: usize) -> Vec<f64> {
    coefficients(len, |n| -c / 4.0 / ((kappa + n) * (1.0 + n)))
}

fn coefficients(len: usize, ratio: impl Fn(f64) -> f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut c = 1.0;
    for n in 0..len {
        out.push(c);
        c *= ratio(n as f64);
    }
    out
}

fn is_monotone(values: &[f64], direction: Monotonicity, slack: impl Fn(f64, f64) -> f64) -> bool {
    values.windows(2).all(|w| {
        let s = slack(w[0], w[1]);
        match direction {
            Monotonicity::Increasing => w[1] - w[0] >= -s,
            Monotonicity::Decreasing => w[0] - w[1] >= -s,
        }
    })
}

/// Samples the ratio-monotonicity principle for power series: if
/// `num[n]/den[n]` is monotone then `Σ num[n]xⁿ / Σ den[n]xⁿ` is monotone in
/// the same direction. Passes iff that implication is observed on `xs`.
pub fn series_ratio_monotone(
    check_id: &str,
    num: &[f64],
    den: &[f64],
    xs: &[f64],
    tol: f64,
) -> Result<VerificationReport> {
    if num.len() != den.len() {
        return Err(Error::Parameter(format!(
            "coefficient lengths differ: {} vs {}",
            num.len(),
            den.len()
        )));
    }
    if num.len() < 3 {
        return Err(Error::Parameter(
            "at least 3 coefficients are required".into(),
        ));
    }
    if den.iter().any(|&d| !(d > 0.0)) {
        return Err(Error::Parameter(
            "denominator coefficients must be positive".into(),
        ));
    }
    if xs.iter().any(|&x| !(x > 0.0 && x < 1.0)) {
        return Err(Error::Parameter("sample points must lie in (0, 1)".into()));
    }
    let ratios: Vec<f64> = num.iter().zip(den).map(|(n, d)| n / d).collect();
    let eval = |c: &[f64], x: f64| c.iter().rev().fold(0.0, |acc, &k| acc * x + k);
    let quotient: Vec<f64> = xs.iter().map(|&x| eval(num, x) / eval(den, x)).collect();

    let coeff_slack = |u: f64, v: f64| 4.0 * f64::EPSILON * u.abs().max(v.abs());
    let value_slack = |u: f64, v: f64| tol * u.abs().max(v.abs()).max(1.0);
    let directions: Vec<Monotonicity> = [Monotonicity::Increasing, Monotonicity::Decreasing]
        .into_iter()
        .filter(|&d| is_monotone(&ratios, d, coeff_slack))
        .collect();
    let follows = directions
        .iter()
        .all(|&d| is_monotone(&quotient, d, value_slack));
    let premise = if directions.is_empty() { 0.0 } else { 1.0 };
    let conclusion = if follows { 1.0 } else { 0.0 };
    Ok(
        VerificationReport::at_most(check_id, premise, conclusion, 0.0)
            .with_point(xs.to_vec())
            .with_note(format!(
                "coefficient ratios monotone: {directions:?}; {} sample points",
                xs.len()
            )),
    )
}

/// Monotonicity cases of `Q(x) = F(a,b;c;x)/F(1/3,2/3;1;x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientCase {
    /// `a + b ≥ c` and `9ab/2 ≥ max{1, c}`.
    Increasing,
    /// `a + b ≤ c` and `9ab/2 ≤ min{1, c}`.
    Decreasing,
}

impl QuotientCase {
    /// All cases whose hypotheses hold; both when `Q` is constant.
    pub fn of(a: f64, b: f64, c: f64) -> Vec<Self> {
        let s = a + b - c;
        let p = 4.5 * a * b;
        let mut out = Vec::new();
        if s >= -REGION_TOL && p >= 1f64.max(c) - REGION_TOL {
            out.push(Self::Increasing);
        }
        if s <= REGION_TOL && p <= 1f64.min(c) + REGION_TOL {
            out.push(Self::Decreasing);
        }
        out
    }
}

struct QuotientSides {
    forward_small: f64,
    forward_large: f64,
    reflected_small: f64,
    reflected_large: f64,
}

/// Both sides of the forward inequality `(1+2r)F(r³)` vs `F(y)` and of the
/// reflected one `F(t³)` vs `(1+2r)/3 · F(1-r³)`, each ordered so that the
/// increasing case claims `small ≤ large`.
fn quotient_sides(a: f64, b: f64, c: f64, r: UnitRadius) -> Result<QuotientSides> {
    let w = 1.0 + 2.0 * r.value();
    let y = phi3_star_closed(r);
    let t = cubic_reflection(r);
    Ok(QuotientSides {
        forward_small: w * hyp(a, b, c, r.cube(), r.cube_complement())?,
        forward_large: hyp(a, b, c, y.cube(), y.cube_complement())?,
        reflected_small: hyp(a, b, c, t.cube(), t.cube_complement())?,
        reflected_large: w / 3.0 * hyp(a, b, c, r.cube_complement(), r.cube())?,
    })
}

/// Monotonicity of `Q` on the grid radii (used as `x`) and the two cubic
/// inequalities it implies at every grid radius.
pub fn check_quotient_inequalities(
    a: f64,
    b: f64,
    c: f64,
    grid: &SweepGrid,
) -> Result<Vec<VerificationReport>> {
    let cases = QuotientCase::of(a, b, c);
    if cases.is_empty() {
        return Err(Error::Parameter(format!(
            "(a, b, c) = ({a}, {b}, {c}) satisfies neither quotient case"
        )));
    }
    let tol = grid.tolerance();
    let note = grid.density_note();
    let samples = grid
        .r_values()
        .iter()
        .map(|r| {
            let x = r.value();
            Ok((x, hyp(a, b, c, x, 1.0 - x)? / cubic_f(x, 1.0 - x)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let sides = grid
        .r_values()
        .iter()
        .map(|&r| quotient_sides(a, b, c, r).map(|s| (r, s)))
        .collect::<Result<Vec<_>>>()?;

    let mut out = Vec::new();
    for case in cases {
        let direction = match case {
            QuotientCase::Increasing => Monotonicity::Increasing,
            QuotientCase::Decreasing => Monotonicity::Decreasing,
        };
        let case_note = format!("{case:?} case; {note}");
        out.extend(
            monotone_reports(
                "quotient.monotone",
                Some(a),
                &samples,
                direction,
                tol,
                &case_note,
            )
            .into_iter()
            .map(|rep| {
                let mut point = vec![a, b, c];
                point.extend_from_slice(&rep.sample_point[1..]);
                rep.with_point(point)
            }),
        );
        for (r, s) in &sides {
            let claim = |id: &str, small: f64, large: f64| {
                let rep = match case {
                    QuotientCase::Increasing => VerificationReport::at_most(id, small, large, tol),
                    QuotientCase::Decreasing => VerificationReport::at_most(id, large, small, tol),
                };
                rep.at(Some(a), Some(r.value()))
                    .with_point(vec![a, b, c, r.value()])
                    .with_note(format!("{case:?} case"))
            };
            out.push(claim("quotient.forward", s.forward_small, s.forward_large));
            out.push(claim(
                "quotient.reflected",
                s.reflected_small,
                s.reflected_large,
            ));
        }
    }
    Ok(out)
}

/// The forward inequality at `r` and the reflected one at `t = (1-r)/(1+2r)`
/// are the same statement: their residuals agree after scaling by `1 + 2r`.
pub fn check_quotient_reflection_equivalence(
    a: f64,
    b: f64,
    c: f64,
    r: UnitRadius,
) -> Result<VerificationReport> {
    let forward = quotient_sides(a, b, c, r)?;
    let t = cubic_reflection(r);
    let reflected = quotient_sides(a, b, c, t)?;
    let scale = forward.forward_large.abs().max(1.0);
    let lhs = (forward.forward_large - forward.forward_small) / scale;
    let rhs =
        (1.0 + 2.0 * r.value()) * (reflected.reflected_large - reflected.reflected_small) / scale;
    Ok(VerificationReport::equality(
        "quotient.reflection_equivalence",
        lhs,
        rhs,
        REFLECTION_EQUIVALENCE_TOL,
    )
    .at(Some(a), Some(r.value()))
    .with_point(vec![a, b, c, r.value()])
    .with_note("residuals scaled by max(1, F(y))"))
}

/// Cubic inequalities `χ(φ₃(r)) ≤ (1+2r)χ(r)`, `χ(x) = f(x³)`, for the
/// generalized Bessel series `u_v` (parameters `v, b, c`) and the Kummer
/// series `Φ(p, q; ·)`, together with the monotonicity of their quotients by
/// `F(1/3,2/3;1;x)`.
pub fn check_bessel_kummer_inequalities(
    v: f64,
    b: f64,
    c: f64,
    p: f64,
    q: f64,
    grid: &SweepGrid,
) -> Result<Vec<VerificationReport>> {
    let kappa = v + (b + 1.0) / 2.0;
    let kappa_min = (-1f64).max(-9.0 * c / 8.0).max(-2.0 / 9.0 - c / 4.0);
    let q_min = 0f64.max(4.5 * p).max(p + 7.0 / 9.0);
    if kappa < kappa_min {
        return Err(Error::Parameter(format!(
            "κ = {kappa} is below {kappa_min}"
        )));
    }
    if q < q_min {
        return Err(Error::Parameter(format!("q = {q} is below {q_min}")));
    }
    let opts = EvalOptions::default();
    let u = |x: f64| bessel_u(v, b, c, x, &opts).map(|e| e.value);
    let phi = |x: f64| kummer_phi(p, q, x, &opts).map(|e| e.value);
    let tol = grid.tolerance();
    let note = grid.density_note();
    let mut out = Vec::new();
    for (name, f, point) in [
        ("bessel", &u as &dyn Fn(f64) -> Result<f64>, vec![v, b, c]),
        ("kummer", &phi as &dyn Fn(f64) -> Result<f64>, vec![p, q]),
    ] {
        let mut samples = Vec::new();
        for &r in grid.r_values() {
            let x = r.value();
            samples.push((x, f(x)? / cubic_f(x, 1.0 - x)?));
            let y = phi3_star_closed(r);
            let mut pt = point.clone();
            pt.push(x);
            out.push(
                VerificationReport::at_most(
                    &format!("{name}.cubic_inequality"),
                    f(y.cube())?,
                    (1.0 + 2.0 * x) * f(r.cube())?,
                    tol,
                )
                .at(None, Some(x))
                .with_point(pt),
            );
        }
        out.extend(monotone_reports(
            &format!("{name}.quotient_monotone"),
            None,
            &samples,
            Monotonicity::Decreasing,
            tol,
            &note,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ur(r: f64) -> UnitRadius {
        UnitRadius::new(r).unwrap()
    }

    #[test]
    fn cubic_transformation_examples() {
        for r in [2f64.powf(-1.0 / 3.0), 0.4, 0.05] {
            for rep in check_cubic_transformation(ur(r)).unwrap() {
                assert!(rep.pass, "{rep:?}");
                assert!(rep.margin.abs() <= 1e-11);
            }
        }
    }

    #[test]
    fn sandwich_regions() {
        assert_eq!(SandwichRegion::of(0.25, 0.5), Some(SandwichRegion::Lower));
        assert_eq!(SandwichRegion::of(0.6, 0.6), Some(SandwichRegion::Upper));
        assert_eq!(SandwichRegion::of(0.1, 0.2), Some(SandwichRegion::Lower));
        assert_eq!(SandwichRegion::of(0.1, 2.0), None);
        assert!(check_zero_balanced_sandwich(0.1, 2.0, ur(0.5), 1e-12).is_err());
    }

    #[test]
    fn sandwich_examples() {
        let tight = check_zero_balanced_sandwich(1.0 / 3.0, 2.0 / 3.0, ur(0.5), 1e-12).unwrap();
        for rep in &tight {
            assert!(rep.pass && rep.margin.abs() < 1e-11, "{rep:?}");
        }
        for (a, b) in [(0.25, 0.5), (0.6, 0.6)] {
            let reps = check_zero_balanced_sandwich(a, b, ur(0.5), 1e-12).unwrap();
            assert!(reps.iter().all(|r| r.pass && r.margin > 0.0), "{reps:?}");
        }
    }

    #[test]
    fn ratio_sampler_examples() {
        let xs: Vec<f64> = (1..10).map(|i| i as f64 / 10.0).collect();
        let den = hyp2f1_coefficients(1.0 / 3.0, 2.0 / 3.0, 1.0, 30).unwrap();
        let same = series_ratio_monotone("id", &den, &den, &xs, 1e-12).unwrap();
        assert!(same.pass && same.lhs == 1.0);
        let alpha = hyp2f1_coefficients(1.0, 1.0, 1.0, 30).unwrap();
        assert!(
            series_ratio_monotone("q", &alpha, &den, &xs, 1e-12)
                .unwrap()
                .pass
        );
        let kummer = kummer_coefficients(0.1, 1.0, 30);
        let rep = series_ratio_monotone("k", &kummer, &den, &xs, 1e-12).unwrap();
        assert!(rep.pass && rep.lhs == 1.0 && rep.note.contains("Decreasing"));
        assert!(series_ratio_monotone("bad", &[1.0, 2.0], &[1.0, 1.0], &xs, 0.0).is_err());
        assert!(
            series_ratio_monotone("bad", &[1.0, 2.0, 3.0], &[1.0, 0.0, 1.0], &xs, 0.0).is_err()
        );
    }

    #[test]
    fn quotient_cases() {
        assert_eq!(
            QuotientCase::of(1.0, 1.0, 1.0),
            vec![QuotientCase::Increasing]
        );
        assert_eq!(
            QuotientCase::of(0.25, 0.25, 1.0),
            vec![QuotientCase::Decreasing]
        );
        assert_eq!(QuotientCase::of(1.0 / 3.0, 2.0 / 3.0, 1.0).len(), 2);
        assert!(QuotientCase::of(0.1, 0.1, 0.1).is_empty());
    }

    #[test]
    fn quotient_examples() {
        let grid = SweepGrid::new(&[0.2], &[0.5], 1e-12).unwrap();
        for (a, b, c) in [
            (1.0, 1.0, 1.0),
            (0.25, 0.25, 1.0),
            (1.0 / 3.0, 2.0 / 3.0, 1.0),
        ] {
            let reps = check_quotient_inequalities(a, b, c, &grid).unwrap();
            assert!(reps.iter().all(|r| r.pass), "{reps:?}");
            assert!(
                check_quotient_reflection_equivalence(a, b, c, ur(0.5))
                    .unwrap()
                    .pass
            );
        }
    }

    #[test]
    fn bessel_kummer_examples() {
        let grid = SweepGrid::new(&[0.2], &[0.3, 0.5, 0.8], 1e-12).unwrap();
        let reps = check_bessel_kummer_inequalities(1.0, 1.0, 1.0, 0.1, 1.0, &grid).unwrap();
        assert!(reps.iter().all(|r| r.pass), "{reps:?}");
        let flat = check_bessel_kummer_inequalities(1.0, 1.0, 0.0, 0.1, 1.0, &grid).unwrap();
        let bessel: Vec<_> = flat
            .iter()
            .filter(|r| r.check_id == "bessel.cubic_inequality")
            .collect();
        assert!(bessel.iter().all(|r| r.lhs == 1.0 && r.pass));
        assert!(check_bessel_kummer_inequalities(1.0, 1.0, 1.0, 1.0, 1.0, &grid).is_err());
    }
}
