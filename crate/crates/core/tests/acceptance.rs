//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::process::Command;
use std::time::Instant;

use cubic_modular::cubic_agm::{
    agm_iterate, check_case_b_transformation, check_transfer_functional_equation,
};
use cubic_modular::modular::{mu_star, mu_star_derivative, mu_star_inverse, Signature, UnitRadius};
use cubic_modular::product_expansion::{adaptive_orbit, mu_star_product, tail_bound};
use cubic_modular::specialfn::{hyp2f1_with_complement, EvalOptions, SeriesParameters};
use cubic_modular::verifier::{
    check_cubic_transformation, check_modular_identities, run_full_suite, CheckKind, SweepGrid,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const SIGNATURES: [f64; 5] = [0.1, 0.2, 1.0 / 3.0, 0.4, 0.5];

fn ur(r: f64) -> UnitRadius {
    UnitRadius::new(r).expect("grid radius is valid")
}

fn sig(a: f64) -> Signature {
    Signature::new(a).expect("grid signature is valid")
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Fails with `what` if `worst > limit`, else reports the worst value.
fn within(what: &str, worst: f64, limit: f64) -> Outcome {
    if worst <= limit {
        Ok(format!("{what}: worst {worst:.3e} ≤ {limit:.0e}"))
    } else {
        Err(format!("{what}: worst {worst:.3e} > {limit:.0e}"))
    }
}

fn combine(parts: Vec<Outcome>) -> Outcome {
    let failed: Vec<String> = parts.iter().filter_map(|p| p.clone().err()).collect();
    let all: Vec<String> = parts.into_iter().map(|p| p.unwrap_or_else(|e| e)).collect();
    if failed.is_empty() {
        Ok(all.join("; "))
    } else {
        Err(all.join("; "))
    }
}

fn f_third(b: f64, x: f64, one_minus_x: f64) -> Result<f64, String> {
    let p = SeriesParameters::new(1.0 / 3.0, b, 1.0).map_err(err)?;
    Ok(
        hyp2f1_with_complement(&p, x, one_minus_x, &EvalOptions::default())
            .map_err(err)?
            .value,
    )
}

fn cubic_transformation() -> Outcome {
    let mut worst = 0f64;
    for r in SweepGrid::linspace(0.02, 0.98, 50) {
        for rep in check_cubic_transformation(ur(r)).map_err(err)? {
            worst = worst.max(rep.margin.abs());
        }
    }
    within("50 radii, both forms", worst, 1e-11)
}

fn agm_limits() -> Outcome {
    let (mut worst_a, mut worst_b, mut steps) = (0f64, 0f64, 0usize);
    for x in SweepGrid::linspace(0.05, 0.95, 20) {
        let r = ur(x);
        let a = agm_iterate(1.0, x, 1e-15).map_err(err)?;
        let b = agm_iterate(x, 1.0, 1e-15).map_err(err)?;
        worst_a =
            worst_a.max((a.a * f_third(2.0 / 3.0, r.cube_complement(), r.cube())? - 1.0).abs());
        worst_b =
            worst_b.max((b.a * f_third(1.0 / 3.0, r.cube_complement(), r.cube())? - 1.0).abs());
        steps = steps.max(a.n).max(b.n);
    }
    let count = if steps <= 8 {
        Ok(format!("at most {steps} steps to a 1e-15 gap"))
    } else {
        Err(format!("{steps} steps exceed 8"))
    };
    combine(vec![
        within("start (1, x)", worst_a, 1e-12),
        within("start (x, 1)", worst_b, 1e-12),
        count,
    ])
}

fn new_transformation() -> Outcome {
    let mut worst = 0f64;
    for x in SweepGrid::linspace(0.05, 0.95, 20) {
        worst = worst.max(
            check_case_b_transformation(ur(x))
                .map_err(err)?
                .margin
                .abs(),
        );
    }
    let mut worst_fe = 0f64;
    for x in SweepGrid::linspace(0.05, 0.95, 10) {
        worst_fe = worst_fe.max(
            check_transfer_functional_equation(x)
                .map_err(err)?
                .margin
                .abs(),
        );
    }
    combine(vec![
        within("transformation, 20 points", worst, 1e-11),
        within("functional equation, 10 points", worst_fe, 1e-10),
    ])
}

fn product_formula() -> Outcome {
    let tol = 1e-12;
    let mut worst = 0f64;
    for r in SweepGrid::linspace(0.02, 0.98, 20) {
        let v = mu_star_product(ur(r), tol).map_err(err)?;
        worst = worst.max((v - mu_star(Signature::cubic(), ur(r)).map_err(err)?).abs());
    }
    let n = adaptive_orbit(ur(0.5), tol).map_err(err)?.len();
    let depth = if tail_bound(n) / 2.0 <= tol && tail_bound(n - 1) / 2.0 > tol {
        Ok(format!("depth {n} set by the 3⁻ⁿ ln 9 / 2 tail bound"))
    } else {
        Err(format!("depth {n} is not the tail-bound depth"))
    };
    combine(vec![within("20 radii", worst, 1e-10), depth])
}

fn identities() -> Outcome {
    let grid = SweepGrid::default();
    let mut parts = Vec::new();
    let mut worst_by_id = std::collections::BTreeMap::<String, (f64, f64)>::new();
    for s in grid.a_values() {
        for rep in check_modular_identities(*s, &grid).map_err(err)? {
            let entry = worst_by_id
                .entry(rep.check_id.clone())
                .or_insert((0.0, rep.tolerance));
            entry.0 = entry.0.max(rep.margin.abs());
        }
    }
    let limits = [
        ("modular.complement_product", 1e-10),
        ("modular.triplication", 1e-10),
        ("modular.inverse_triplication", 1e-10),
        ("modular.reflection_product", 1e-10),
        ("modular.phi3_closed_form", 1e-10),
        ("modular.phi13_closed_form", 1e-10),
        ("modular.closed_form_complement", 1e-10),
        ("modular.fixed_point", 1e-10),
        ("modular.self_complementary", 1e-11),
    ];
    for (id, limit) in limits {
        match worst_by_id.get(id) {
            Some(&(worst, _)) => parts.push(within(id, worst, limit)),
            None => parts.push(Err(format!("{id}: not evaluated"))),
        }
    }
    combine(parts)
}

fn inequalities() -> Outcome {
    let reports = run_full_suite(&SweepGrid::default());
    let one_sided: Vec<_> = reports
        .iter()
        .filter(|r| r.kind == CheckKind::OneSided)
        .collect();
    let worst = one_sided
        .iter()
        .map(|r| r.margin)
        .fold(f64::INFINITY, f64::min);
    let failed = reports.iter().filter(|r| !r.pass).count();
    let tight_families = [
        "zero_balanced.",
        "triplication.product",
        "product.bounds",
        "product.cubic_comparison",
        "triplication.g_vanishes",
        "triplication.f_vanishes",
        "product.representation",
    ];
    let tight = reports
        .iter()
        .filter(|r| r.a.is_some_and(|a| (a - 1.0 / 3.0).abs() < 1e-12))
        .filter(|r| tight_families.iter().any(|f| r.check_id.starts_with(f)))
        .map(|r| r.margin.abs())
        .fold(0f64, f64::max);
    let all = if failed == 0 {
        Ok(format!("{} reports, none failing", reports.len()))
    } else {
        Err(format!("{failed} of {} reports failing", reports.len()))
    };
    let lowest = if worst >= -1e-12 {
        Ok(format!(
            "{} one-sided, lowest margin {worst:.3e} ≥ -1e-12",
            one_sided.len()
        ))
    } else {
        Err(format!("lowest one-sided margin {worst:.3e} < -1e-12"))
    };
    combine(vec![
        all,
        lowest,
        within("equality cases at a = 1/3", tight, 1e-10),
    ])
}

fn inversion() -> Outcome {
    let (mut worst, mut worst_deriv) = (0f64, 0f64);
    let h = 1e-6;
    for a in SIGNATURES {
        let s = sig(a);
        for r in SweepGrid::linspace(0.03, 0.97, 20) {
            let y = mu_star(s, ur(r)).map_err(err)?;
            worst = worst.max((mu_star_inverse(s, y).map_err(err)?.value() - r).abs());
            let fd = (mu_star(s, ur(r + h)).map_err(err)? - mu_star(s, ur(r - h)).map_err(err)?)
                / (2.0 * h);
            let d = mu_star_derivative(s, ur(r)).map_err(err)?;
            worst_deriv = worst_deriv.max(((d - fd) / fd).abs());
        }
    }
    combine(vec![
        within("round trip, 20 radii × 5 signatures", worst, 1e-10),
        within("derivative vs finite differences", worst_deriv, 1e-6),
    ])
}

fn cli_verify() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_cubic-modular"))
            .arg("verify")
            .env_remove("CUBIC_MODULAR_TOL")
            .output()
            .map_err(err)
    };
    let first = run()?;
    let second = run()?;
    let code = first.status.code();
    let parts = vec![
        if code == Some(0) {
            Ok("verify exits 0".to_owned())
        } else {
            Err(format!("verify exits {code:?}"))
        },
        if first.stdout == second.stdout {
            Ok(format!(
                "{} bytes identical across runs",
                first.stdout.len()
            ))
        } else {
            Err("output differs between runs".to_owned())
        },
    ];
    combine(parts)
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("cubic transformation", cubic_transformation),
        ("cubic AGM limits", agm_limits),
        ("second cubic transformation", new_transformation),
        ("log-sum representation", product_formula),
        ("identity suite", identities),
        ("inequality suite", inequalities),
        ("inversion and derivative", inversion),
        ("command line verify", cli_verify),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "PASS criterion {} ({name}): {detail} [{elapsed:.2}s]",
                i + 1
            ),
            Err(detail) => {
                failures += 1;
                println!(
                    "FAIL criterion {} ({name}): {detail} [{elapsed:.2}s]",
                    i + 1
                );
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
