//! Numerical certification of identities and inequalities.
//!
//! Every check evaluates both sides of a claim at sample points and returns
//! [`VerificationReport`]s. Grid checks return one report per sample point
//! and claim; evaluation failures become failing reports instead of errors,
//! so a full run always completes. Monotonicity is certified by comparing
//! neighbouring values on the sorted grid, which covers every 3-point window.

mod hypergeometric;
mod modular_checks;
mod report;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::modular::{Signature, UnitRadius};
use crate::specialfn::{hyp2f1_with_complement, EvalOptions, SeriesParameters};

pub use hypergeometric::{
    bessel_coefficients, check_bessel_kummer_inequalities, check_cubic_transformation,
    check_quotient_inequalities, check_quotient_reflection_equivalence,
    check_zero_balanced_sandwich, hyp2f1_coefficients, kummer_coefficients, series_ratio_monotone,
    QuotientCase, SandwichRegion,
};
pub use modular_checks::{
    check_agm_limits, check_log_shifted_mu, check_modular_identities, check_product_bounds,
    check_triplication_bounds, triplication_constant,
};
pub use report::{format_number, CheckKind, VerificationReport};

/// Default slack for one-sided inequalities.
pub const DEFAULT_ONE_SIDED_TOL: f64 = 1e-12;

/// Radii must stay this far from 0 and 1.
pub const GRID_MARGIN: f64 = 1e-4;

/// Sample points for grid checks.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    a_values: Vec<Signature>,
    r_values: Vec<UnitRadius>,
    tolerance: f64,
}

impl SweepGrid {
    /// Radii are sorted increasingly; duplicates are kept.
    pub fn new(a_values: &[f64], r_values: &[f64], tolerance: f64) -> Result<Self> {
        if a_values.is_empty() || r_values.is_empty() {
            return Err(Error::Config(
                "sweep grid needs at least one a and one r".into(),
            ));
        }
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(Error::Config(format!(
                "grid tolerance {tolerance} must be positive"
            )));
        }
        let a_values = a_values
            .iter()
            .map(|&a| Signature::new(a).map_err(|e| Error::Config(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let mut r_sorted = r_values.to_vec();
        r_sorted.sort_by(f64::total_cmp);
        let r_values = r_sorted
            .iter()
            .map(|&r| {
                if r > GRID_MARGIN && r < 1.0 - GRID_MARGIN {
                    UnitRadius::new(r).map_err(|e| Error::Config(e.to_string()))
                } else {
                    Err(Error::Config(format!(
                        "grid radius {r} must lie in ({GRID_MARGIN}, {})",
                        1.0 - GRID_MARGIN
                    )))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            a_values,
            r_values,
            tolerance,
        })
    }

    /// `n` equally spaced radii from `lo` to `hi` inclusive.
    pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        match n {
            0 => Vec::new(),
            1 => vec![lo],
            _ => (0..n)
                .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
                .collect(),
        }
    }

    /// Same signatures and tolerance with different radii.
    pub fn with_radii(&self, r_values: &[f64]) -> Result<Self> {
        let a: Vec<f64> = self.a_values.iter().map(Signature::a).collect();
        Self::new(&a, r_values, self.tolerance)
    }

    pub fn a_values(&self) -> &[Signature] {
        &self.a_values
    }

    pub fn r_values(&self) -> &[UnitRadius] {
        &self.r_values
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub(crate) fn density_note(&self) -> String {
        let first = self.r_values.first().map_or(0.0, UnitRadius::value);
        let last = self.r_values.last().map_or(0.0, UnitRadius::value);
        format!(
            "sampled on {} radii in [{first}, {last}]",
            self.r_values.len()
        )
    }
}

impl Default for SweepGrid {
    /// `a ∈ {0.1, 0.2, 1/3, 0.4, 0.5}`, 25 radii from 0.05 to 0.95.
    fn default() -> Self {
        Self::new(
            &[0.1, 0.2, 1.0 / 3.0, 0.4, 0.5],
            &Self::linspace(0.05, 0.95, 25),
            DEFAULT_ONE_SIDED_TOL,
        )
        .expect("default grid is valid")
    }
}

/// Direction of a monotonicity claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
}

/// One report per neighbouring pair of `(x, value)` samples.
pub(crate) fn monotone_reports(
    check_id: &str,
    a: Option<f64>,
    samples: &[(f64, f64)],
    direction: Monotonicity,
    tol: f64,
    note: &str,
) -> Vec<VerificationReport> {
    samples
        .windows(2)
        .map(|w| {
            let ((x0, v0), (x1, v1)) = (w[0], w[1]);
            let report = match direction {
                Monotonicity::Increasing => VerificationReport::at_most(check_id, v0, v1, tol),
                Monotonicity::Decreasing => VerificationReport::at_most(check_id, v1, v0, tol),
            };
            report
                .at(a, Some(x1))
                .with_point(a.into_iter().chain([x0, x1]).collect())
                .with_note(note)
        })
        .collect()
}

/// Turns an evaluation error into a failing report.
pub(crate) fn or_failed(
    check_id: &str,
    a: Option<f64>,
    r: Option<f64>,
    result: Result<Vec<VerificationReport>>,
) -> Vec<VerificationReport> {
    result.unwrap_or_else(|e| vec![VerificationReport::failed(check_id, e.to_string()).at(a, r)])
}

/// `F(a, b; c; x)` given `x` and `1 - x` separately.
pub(crate) fn hyp(a: f64, b: f64, c: f64, x: f64, one_minus_x: f64) -> Result<f64> {
    let p = SeriesParameters::new(a, b, c)?;
    Ok(hyp2f1_with_complement(&p, x, one_minus_x, &EvalOptions::default())?.value)
}

type Task<'a> = Box<dyn Fn() -> Vec<VerificationReport> + Send + Sync + 'a>;

/// Runs every check on `grid`, in parallel, and returns the reports sorted
/// by check id. Within one id, reports keep their generation order.
pub fn run_full_suite(grid: &SweepGrid) -> Vec<VerificationReport> {
    let tol = grid.tolerance;
    let mut tasks: Vec<Task<'_>> = Vec::new();

    for r in grid.r_values.iter().copied() {
        tasks.push(Box::new(move || {
            or_failed(
                "cubic.transformation",
                None,
                Some(r.value()),
                check_cubic_transformation(r),
            )
        }));
    }

    let mut pairs: Vec<(f64, f64)> = grid.a_values.iter().map(|s| (s.a(), 1.0 - s.a())).collect();
    pairs.extend([(0.25, 0.5), (0.6, 0.6)]);
    for (a, b) in pairs {
        tasks.push(Box::new(move || {
            grid.r_values
                .iter()
                .flat_map(|&r| {
                    or_failed(
                        "zero_balanced.sandwich",
                        Some(a),
                        Some(r.value()),
                        check_zero_balanced_sandwich(a, b, r, tol),
                    )
                })
                .collect()
        }));
    }

    let mut triples = vec![
        (1.0, 1.0, 1.0),
        (0.25, 0.25, 1.0),
        (1.0 / 3.0, 2.0 / 3.0, 1.0),
    ];
    triples.extend(grid.a_values.iter().map(|s| (s.a(), 1.0 - s.a(), 1.0)));
    for (a, b, c) in triples {
        tasks.push(Box::new(move || {
            or_failed(
                "quotient",
                Some(a),
                None,
                check_quotient_inequalities(a, b, c, grid),
            )
        }));
        tasks.push(Box::new(move || {
            grid.r_values
                .iter()
                .map(|&r| {
                    check_quotient_reflection_equivalence(a, b, c, r).unwrap_or_else(|e| {
                        VerificationReport::failed("quotient.reflection_equivalence", e.to_string())
                            .at(Some(a), Some(r.value()))
                    })
                })
                .collect()
        }));
    }

    tasks.push(Box::new(move || {
        let xs: Vec<f64> = grid.r_values.iter().map(UnitRadius::value).collect();
        let len = 40;
        let samplers: [(&str, Result<Vec<f64>>); 4] = [
            (
                "series_ratio.quotient_1_1_1",
                hyp2f1_coefficients(1.0, 1.0, 1.0, len),
            ),
            (
                "series_ratio.quotient_quarter",
                hyp2f1_coefficients(0.25, 0.25, 1.0, len),
            ),
            (
                "series_ratio.kummer",
                Ok(kummer_coefficients(0.1, 1.0, len)),
            ),
            (
                "series_ratio.bessel",
                Ok(bessel_coefficients(2.0, 1.0, len)),
            ),
        ];
        samplers
            .into_iter()
            .flat_map(|(name, num)| {
                let report = num.and_then(|n| {
                    let den = hyp2f1_coefficients(1.0 / 3.0, 2.0 / 3.0, 1.0, len)?;
                    Ok(vec![series_ratio_monotone(name, &n, &den, &xs, tol)?])
                });
                or_failed(name, None, None, report)
            })
            .collect()
    }));
    for (v, b, c, p, q) in [(1.0, 1.0, 1.0, 0.1, 1.0), (0.5, 1.0, 0.0, 0.2, 2.0)] {
        tasks.push(Box::new(move || {
            or_failed(
                "bessel_kummer",
                None,
                None,
                check_bessel_kummer_inequalities(v, b, c, p, q, grid),
            )
        }));
    }

    for s in grid.a_values.iter().copied() {
        let a = Some(s.a());
        tasks.push(Box::new(move || {
            or_failed("log_shifted", a, None, check_log_shifted_mu(s, grid))
        }));
        tasks.push(Box::new(move || {
            or_failed("triplication", a, None, check_triplication_bounds(s, grid))
        }));
        tasks.push(Box::new(move || {
            or_failed("modular", a, None, check_modular_identities(s, grid))
        }));
        tasks.push(Box::new(move || {
            or_failed("product", a, None, check_product_bounds(s, grid))
        }));
    }
    tasks.push(Box::new(move || {
        or_failed("agm", None, None, check_agm_limits(grid))
    }));

    let mut reports: Vec<VerificationReport> = tasks.par_iter().flat_map_iter(|t| t()).collect();
    reports.sort_by(|x, y| x.check_id.cmp(&y.check_id));
    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(SweepGrid::new(&[], &[0.5], 1e-12).is_err());
        assert!(SweepGrid::new(&[0.2], &[], 1e-12).is_err());
        assert!(SweepGrid::new(&[0.7], &[0.5], 1e-12).is_err());
        assert!(SweepGrid::new(&[0.2], &[0.99995], 1e-12).is_err());
        assert!(SweepGrid::new(&[0.2], &[0.5], 0.0).is_err());
        let g = SweepGrid::new(&[0.2], &[0.7, 0.3], 1e-12).unwrap();
        assert_eq!(g.r_values()[0].value(), 0.3);
        let d = SweepGrid::default();
        assert_eq!(d.a_values().len(), 5);
        assert_eq!(d.r_values().len(), 25);
        assert!((d.r_values()[24].value() - 0.95).abs() < 1e-15);
    }

    #[test]
    fn monotone_pairs() {
        let s = [(0.1, 3.0), (0.2, 2.0), (0.3, 2.5)];
        let r = monotone_reports("m", None, &s, Monotonicity::Decreasing, 0.0, "");
        assert_eq!(r.len(), 2);
        assert!(r[0].pass && !r[1].pass);
    }
}
