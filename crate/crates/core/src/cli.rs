//! Command-line front end.
//!
//! [`parse_args`] turns an argument vector into a validated [`CliConfig`];
//! [`execute`] runs it and returns the process exit code. Output is CSV with
//! numbers in fixed 17-significant-digit scientific notation, so identical
//! invocations produce identical bytes.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::cubic_agm::agm_iterate;
use crate::error::{Error, Result};
use crate::modular::{
    complement, mu_a, mu_star, mu_star_derivative, mu_star_eval, mu_star_inverse,
    phi13_star_closed, phi3_star_closed, phi_star, DegreeK, Signature, UnitRadius,
};
use crate::product_expansion::{cubic_orbit, mu_star_bounds, mu_star_product, phi_inv_lower_bound};
use crate::specialfn::{
    bessel_u, beta_fn, digamma, gamma_fn, hyp2f1, kummer_phi, ramanujan_r, EvalOptions, EvalResult,
    SeriesParameters,
};
use crate::verifier::{format_number, run_full_suite, SweepGrid, VerificationReport};

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code when a verification fails (or output cannot be written).
pub const EXIT_FAILED: i32 = 1;
/// Exit code for malformed arguments and out-of-domain parameters.
pub const EXIT_USAGE: i32 = 2;
/// Exit code when a numerical routine does not converge.
pub const EXIT_NUMERICAL: i32 = 3;

/// Default tolerance when neither `--tol` nor `CUBIC_MODULAR_TOL` is set.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Default radius grid for `verify` and `sweep`.
pub const DEFAULT_GRID: &str = "0.05:0.95:25";

const OUTPUT_HEADER: &str = "name,value,abs_error_estimate";
const SWEEP_HEADER: &str = "a,r,mu_star,lower,upper,log_shifted,derivative";

#[derive(Debug, Parser)]
#[command(
    name = "cubic-modular",
    version,
    about = "Evaluate cubic modular functions and certify their identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Evaluate one function (μ_a* unless another function flag is given).
    Eval {
        #[command(flatten)]
        function: FunctionFlags,
        #[command(flatten)]
        params: Params,
    },
    /// Solve μ_a*(r) = y for r (needs --a, --y).
    Invert {
        #[command(flatten)]
        params: Params,
    },
    /// The cubic orbit r_0 = r*, r_k = φ_3*(r_{k-1}) with its log-sum (needs --r; --n defaults to 10).
    Orbit {
        #[command(flatten)]
        params: Params,
    },
    /// μ*(r) from the log-sum; with --a also the bounds on μ_a*(r), with --a and --K > 1 the lower bound on φ_{1/K}*.
    Product {
        #[command(flatten)]
        params: Params,
    },
    /// Cubic AGM limits for the start pairs (1, x) and (x, 1) (needs --x).
    Agm {
        #[command(flatten)]
        params: Params,
    },
    /// Run the verification suite and print one CSV row per check; exits 1 if any check fails.
    Verify {
        #[command(flatten)]
        params: Params,
    },
    /// Print μ_a* and its bounds over a radius grid (needs --a).
    ///
    /// Columns: a, r, mu_star = μ_a*(r), lower and upper = the log-sum bounds
    /// on μ_a*(r), log_shifted = μ_a*(r) + (3/2) ln r, derivative = dμ_a*/dr.
    Sweep {
        #[command(flatten)]
        params: Params,
    },
}

#[derive(Debug, Args)]
#[group(multiple = false)]
struct FunctionFlags {
    /// μ_a*(r) (needs --a, --r).
    #[arg(long)]
    mu_star: bool,
    /// μ_a(r) (needs --a, --r).
    #[arg(long)]
    mu: bool,
    /// dμ_a*/dr (needs --a, --r).
    #[arg(long)]
    mu_star_derivative: bool,
    /// φ_K*(a, r) (needs --a, --r, --K).
    #[arg(long)]
    phi_star: bool,
    /// Closed form of φ_3* at a = 1/3 (needs --r).
    #[arg(long)]
    phi3_closed: bool,
    /// Closed form of φ_{1/3}* at a = 1/3 (needs --r).
    #[arg(long)]
    phi13_closed: bool,
    /// r* = (1 - r³)^{1/3} (needs --r).
    #[arg(long)]
    complement: bool,
    /// R(x, y), or R(x) = R(x, 1 - x) without --y (needs --x).
    #[arg(long)]
    ramanujan_r: bool,
    /// Γ(x) (needs --x).
    #[arg(long)]
    gamma: bool,
    /// Ψ(x) (needs --x).
    #[arg(long)]
    digamma: bool,
    /// B(x, y) (needs --x, --y).
    #[arg(long)]
    beta: bool,
    /// F(a, b; c; x) with unrestricted a (needs --a, --b, --c, --x).
    #[arg(long)]
    hyp2f1: bool,
    /// Kummer Φ(p, q; x) (needs --p, --q, --x).
    #[arg(long)]
    kummer: bool,
    /// Generalized Bessel u_v(x) (needs --v, --b, --c, --x).
    #[arg(long)]
    bessel_u: bool,
}

#[derive(Debug, Args)]
struct Params {
    /// Signature a ∈ (0, 1/2] (first series parameter for --hyp2f1).
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    /// Radius r ∈ (0, 1).
    #[arg(long, allow_hyphen_values = true)]
    r: Option<f64>,
    /// Degree K > 0.
    #[arg(long = "K", allow_hyphen_values = true)]
    k: Option<f64>,
    /// Scalar argument.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    /// Second scalar argument, or the target value for `invert`.
    #[arg(long, allow_hyphen_values = true)]
    y: Option<f64>,
    /// Second series parameter (hyp2f1, bessel-u)
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    /// Lower series parameter (hyp2f1, bessel-u)
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    /// Bessel order
    #[arg(long, allow_hyphen_values = true)]
    v: Option<f64>,
    /// Kummer upper parameter
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    /// Kummer lower parameter
    #[arg(long, allow_hyphen_values = true)]
    q: Option<f64>,
    /// Orbit length.
    #[arg(long)]
    n: Option<usize>,
    /// Tolerance: log-sum truncation, AGM gap and one-sided verification slack.
    #[arg(long, env = "CUBIC_MODULAR_TOL", default_value_t = DEFAULT_TOL, allow_hyphen_values = true)]
    tol: f64,
    /// Radius grid "lo:hi:n" for verify and sweep (default 0.05:0.95:25).
    #[arg(long)]
    grid: Option<String>,
    /// Write output to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Function selected by `eval`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalFunction {
    MuStar,
    Mu,
    MuStarDerivative,
    PhiStar,
    Phi3Closed,
    Phi13Closed,
    Complement,
    RamanujanR,
    Gamma,
    Digamma,
    Beta,
    Hyp2f1,
    Kummer,
    BesselU,
}

impl EvalFunction {
    fn from_flags(f: &FunctionFlags) -> Self {
        let table = [
            (f.mu, Self::Mu),
            (f.mu_star_derivative, Self::MuStarDerivative),
            (f.phi_star, Self::PhiStar),
            (f.phi3_closed, Self::Phi3Closed),
            (f.phi13_closed, Self::Phi13Closed),
            (f.complement, Self::Complement),
            (f.ramanujan_r, Self::RamanujanR),
            (f.gamma, Self::Gamma),
            (f.digamma, Self::Digamma),
            (f.beta, Self::Beta),
            (f.hyp2f1, Self::Hyp2f1),
            (f.kummer, Self::Kummer),
            (f.bessel_u, Self::BesselU),
        ];
        table
            .into_iter()
            .find(|(set, _)| *set)
            .map_or(Self::MuStar, |(_, g)| g)
    }

    fn name(self) -> &'static str {
        match self {
            Self::MuStar => "mu_star",
            Self::Mu => "mu",
            Self::MuStarDerivative => "mu_star_derivative",
            Self::PhiStar => "phi_star",
            Self::Phi3Closed => "phi3_closed",
            Self::Phi13Closed => "phi13_closed",
            Self::Complement => "complement",
            Self::RamanujanR => "ramanujan_r",
            Self::Gamma => "gamma",
            Self::Digamma => "digamma",
            Self::Beta => "beta",
            Self::Hyp2f1 => "hyp2f1",
            Self::Kummer => "kummer",
            Self::BesselU => "bessel_u",
        }
    }

    fn uses_signature(self) -> bool {
        matches!(
            self,
            Self::MuStar | Self::Mu | Self::MuStarDerivative | Self::PhiStar
        )
    }

    /// Flags that must be present.
    fn required(self) -> &'static [&'static str] {
        match self {
            Self::MuStar | Self::Mu | Self::MuStarDerivative => &["a", "r"],
            Self::PhiStar => &["a", "r", "K"],
            Self::Phi3Closed | Self::Phi13Closed | Self::Complement => &["r"],
            Self::RamanujanR | Self::Gamma | Self::Digamma => &["x"],
            Self::Beta => &["x", "y"],
            Self::Hyp2f1 => &["a", "b", "c", "x"],
            Self::Kummer => &["p", "q", "x"],
            Self::BesselU => &["v", "b", "c", "x"],
        }
    }
}

/// Command selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Eval(EvalFunction),
    Invert,
    Orbit,
    Product,
    Agm,
    Verify,
    Sweep,
}

/// Validated command-line configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub command: Command,
    pub signature_a: Option<f64>,
    pub r: Option<f64>,
    pub k: Option<f64>,
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub v: Option<f64>,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub n: Option<usize>,
    pub tol: f64,
    /// Radii parsed from `--grid`.
    pub grid: Option<Vec<f64>>,
    pub grid_spec: Option<String>,
    pub output_path: Option<PathBuf>,
}

/// A parse failure (or a help/version request, with code 0).
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub message: String,
    pub code: i32,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

/// Parses `"lo:hi:n"` into `n` equally spaced values.
pub fn parse_grid_spec(spec: &str) -> std::result::Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || CliError::usage(format!("grid '{spec}' must have the form lo:hi:n"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if n == 0 || !(lo <= hi) || (n > 1 && lo == hi) {
        return Err(CliError::usage(format!(
            "grid '{spec}' needs lo < hi and n ≥ 1"
        )));
    }
    Ok(SweepGrid::linspace(lo, hi, n))
}

/// Parses and validates `argv` (including the program name).
pub fn parse_args<I, T>(argv: I) -> std::result::Result<CliConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError {
        message: e.render().to_string(),
        code: if e.use_stderr() { EXIT_USAGE } else { EXIT_OK },
    })?;
    let (command, params) = match cli.command {
        Sub::Eval { function, params } => {
            (Command::Eval(EvalFunction::from_flags(&function)), params)
        }
        Sub::Invert { params } => (Command::Invert, params),
        Sub::Orbit { params } => (Command::Orbit, params),
        Sub::Product { params } => (Command::Product, params),
        Sub::Agm { params } => (Command::Agm, params),
        Sub::Verify { params } => (Command::Verify, params),
        Sub::Sweep { params } => (Command::Sweep, params),
    };
    let cfg = CliConfig {
        command,
        signature_a: params.a,
        r: params.r,
        k: params.k,
        x: params.x,
        y: params.y,
        b: params.b,
        c: params.c,
        v: params.v,
        p: params.p,
        q: params.q,
        n: params.n,
        tol: params.tol,
        grid: params.grid.as_deref().map(parse_grid_spec).transpose()?,
        grid_spec: params.grid,
        output_path: params.output,
    };
    validate(&cfg)?;
    Ok(cfg)
}

fn validate(cfg: &CliConfig) -> std::result::Result<(), CliError> {
    let domain = |msg: String| Err(CliError::usage(format!("domain error: {msg}")));
    let signature_a = !matches!(cfg.command, Command::Eval(EvalFunction::Hyp2f1));
    if let Some(a) = cfg.signature_a.filter(|_| signature_a) {
        if !(a > 0.0 && a <= 0.5) {
            return domain(format!("--a {a} must lie in (0, 1/2]"));
        }
    }
    if let Some(r) = cfg.r {
        if !(r > 0.0 && r < 1.0) {
            return domain(format!("--r {r} must lie in (0, 1)"));
        }
    }
    if let Some(k) = cfg.k {
        if !(k > 0.0 && k.is_finite()) {
            return domain(format!("--K {k} must be positive"));
        }
    }
    if !(cfg.tol > 0.0 && cfg.tol < 1.0) {
        return domain(format!("--tol {} must lie in (0, 1)", cfg.tol));
    }
    if cfg.n == Some(0) {
        return domain("--n must be at least 1".into());
    }
    let required: &[&str] = match cfg.command {
        Command::Eval(f) => f.required(),
        Command::Invert => &["a", "y"],
        Command::Orbit | Command::Product => &["r"],
        Command::Agm => &["x"],
        Command::Verify => &[],
        Command::Sweep => &["a"],
    };
    for &flag in required {
        let present = match flag {
            "a" => cfg.signature_a.is_some(),
            "r" => cfg.r.is_some(),
            "K" => cfg.k.is_some(),
            "x" => cfg.x.is_some(),
            "y" => cfg.y.is_some(),
            "b" => cfg.b.is_some(),
            "c" => cfg.c.is_some(),
            "v" => cfg.v.is_some(),
            "p" => cfg.p.is_some(),
            _ => cfg.q.is_some(),
        };
        if !present {
            return Err(CliError::usage(format!("missing required flag --{flag}")));
        }
    }
    if let Command::Eval(f) = cfg.command {
        if f.uses_signature() && cfg.signature_a.is_none() {
            return Err(CliError::usage("missing required flag --a"));
        }
    }
    if cfg.command == Command::Agm && !(cfg.x.unwrap_or(0.0) > 0.0) {
        return domain("--x must be positive".into());
    }
    Ok(())
}

fn line(out: &mut String, name: &str, value: f64, err: f64) {
    out.push_str(name);
    out.push(',');
    out.push_str(&format_number(value));
    out.push(',');
    out.push_str(&format_number(err));
    out.push('\n');
}

fn series_line(out: &mut String, name: &str, e: EvalResult) {
    line(out, name, e.value, e.abs_error_estimate);
}

/// Relative accuracy claimed for closed-form and Γ-family evaluations.
const CLOSED_FORM_REL: f64 = 4.0 * f64::EPSILON;
const GAMMA_REL: f64 = 1e-13;

struct Inputs<'a>(&'a CliConfig);

impl Inputs<'_> {
    fn signature(&self) -> Result<Signature> {
        Signature::new(self.0.signature_a.unwrap_or(f64::NAN))
    }
    fn radius(&self) -> Result<UnitRadius> {
        UnitRadius::new(self.0.r.unwrap_or(f64::NAN))
    }
    fn get(&self, v: Option<f64>) -> f64 {
        v.unwrap_or(f64::NAN)
    }
}

fn inverse_error(s: Signature, r: UnitRadius, y: f64) -> Result<f64> {
    Ok((mu_star(s, r)? - y).abs() / mu_star_derivative(s, r)?.abs() + CLOSED_FORM_REL * r.value())
}

fn run_eval(cfg: &CliConfig, f: EvalFunction, out: &mut String) -> Result<()> {
    let inp = Inputs(cfg);
    let name = f.name();
    let opts = EvalOptions::default();
    match f {
        EvalFunction::MuStar => {
            series_line(out, name, mu_star_eval(inp.signature()?, inp.radius()?)?)
        }
        EvalFunction::Mu => {
            let (s, r) = (inp.signature()?, inp.radius()?);
            let value = mu_a(s, r)?;
            // μ_a(r) = μ_a*(r^{2/3})
            let star = mu_star_eval(s, UnitRadius::new(r.value().powf(2.0 / 3.0))?)?;
            line(
                out,
                name,
                value,
                star.abs_error_estimate + CLOSED_FORM_REL * value.abs(),
            );
        }
        EvalFunction::MuStarDerivative => {
            let (s, r) = (inp.signature()?, inp.radius()?);
            let value = mu_star_derivative(s, r)?;
            let rel = mu_star_eval(s, r)?;
            line(
                out,
                name,
                value,
                value.abs() * (rel.abs_error_estimate / rel.value + CLOSED_FORM_REL),
            );
        }
        EvalFunction::PhiStar => {
            let (s, r) = (inp.signature()?, inp.radius()?);
            let k = DegreeK::new(inp.get(cfg.k))?;
            let image = phi_star(k, s, r)?;
            let err = if k.value() == 1.0 {
                0.0
            } else {
                inverse_error(s, image, mu_star(s, r)? / k.value())?
            };
            line(out, name, image.value(), err);
        }
        EvalFunction::Phi3Closed | EvalFunction::Phi13Closed | EvalFunction::Complement => {
            let r = inp.radius()?;
            let image = match f {
                EvalFunction::Phi3Closed => phi3_star_closed(r),
                EvalFunction::Phi13Closed => phi13_star_closed(r),
                _ => complement(r),
            };
            line(out, name, image.value(), CLOSED_FORM_REL * image.value());
        }
        EvalFunction::RamanujanR => {
            let x = inp.get(cfg.x);
            let value = ramanujan_r(x, cfg.y.unwrap_or(1.0 - x))?;
            line(out, name, value, GAMMA_REL * value.abs().max(1.0));
        }
        EvalFunction::Gamma => {
            let value = gamma_fn(inp.get(cfg.x))?;
            line(out, name, value, GAMMA_REL * value.abs());
        }
        EvalFunction::Digamma => {
            let value = digamma(inp.get(cfg.x))?;
            line(out, name, value, GAMMA_REL * value.abs().max(1.0));
        }
        EvalFunction::Beta => {
            let value = beta_fn(inp.get(cfg.x), inp.get(cfg.y))?;
            line(out, name, value, GAMMA_REL * value.abs());
        }
        EvalFunction::Hyp2f1 => {
            let p =
                SeriesParameters::new(inp.get(cfg.signature_a), inp.get(cfg.b), inp.get(cfg.c))?;
            series_line(out, name, hyp2f1(&p, inp.get(cfg.x), &opts)?);
        }
        EvalFunction::Kummer => {
            series_line(
                out,
                name,
                kummer_phi(inp.get(cfg.p), inp.get(cfg.q), inp.get(cfg.x), &opts)?,
            );
        }
        EvalFunction::BesselU => {
            let e = bessel_u(
                inp.get(cfg.v),
                inp.get(cfg.b),
                inp.get(cfg.c),
                inp.get(cfg.x),
                &opts,
            )?;
            series_line(out, name, e);
        }
    }
    Ok(())
}

fn sweep_grid(cfg: &CliConfig) -> Result<Vec<f64>> {
    match &cfg.grid {
        Some(g) => Ok(g.clone()),
        None => parse_grid_spec(DEFAULT_GRID).map_err(|e| Error::Config(e.message)),
    }
}

/// Output text and exit code for a validated configuration.
pub fn render(cfg: &CliConfig) -> Result<(String, i32)> {
    let inp = Inputs(cfg);
    let mut out = String::new();
    let mut code = EXIT_OK;
    match cfg.command {
        Command::Eval(f) => {
            out.push_str(OUTPUT_HEADER);
            out.push('\n');
            run_eval(cfg, f, &mut out)?;
        }
        Command::Invert => {
            out.push_str(OUTPUT_HEADER);
            out.push('\n');
            let s = inp.signature()?;
            let y = inp.get(cfg.y);
            let r = mu_star_inverse(s, y)?;
            line(&mut out, "r", r.value(), inverse_error(s, r, y)?);
        }
        Command::Orbit => {
            out.push_str(OUTPUT_HEADER);
            out.push('\n');
            let orbit = cubic_orbit(inp.radius()?, cfg.n.unwrap_or(10))?;
            let points = std::iter::once(orbit.r0).chain(orbit.terms.iter().copied());
            for (k, p) in points.enumerate() {
                line(
                    &mut out,
                    &format!("r_{k}"),
                    p.value(),
                    CLOSED_FORM_REL * (k + 1) as f64,
                );
            }
            line(
                &mut out,
                "partial_log_sum",
                orbit.partial_log_sum,
                orbit.tail_bound,
            );
            line(&mut out, "tail_bound", orbit.tail_bound, 0.0);
        }
        Command::Product => {
            out.push_str(OUTPUT_HEADER);
            out.push('\n');
            let r = inp.radius()?;
            line(
                &mut out,
                "mu_star_product",
                mu_star_product(r, cfg.tol)?,
                cfg.tol,
            );
            if cfg.signature_a.is_some() {
                let s = inp.signature()?;
                let (lower, upper) = mu_star_bounds(s, r, cfg.tol)?;
                line(&mut out, "lower", lower, cfg.tol);
                line(&mut out, "upper", upper, cfg.tol);
                if let Some(k) = cfg.k.filter(|&k| k > 1.0) {
                    let bound = phi_inv_lower_bound(s, r, k)?;
                    line(
                        &mut out,
                        "phi_inv_lower_bound",
                        bound,
                        CLOSED_FORM_REL * bound,
                    );
                }
            }
        }
        Command::Agm => {
            out.push_str(OUTPUT_HEADER);
            out.push('\n');
            let x = inp.get(cfg.x);
            for (name, (a0, b0)) in [("agm_case_a", (1.0, x)), ("agm_case_b", (x, 1.0))] {
                let st = agm_iterate(a0, b0, cfg.tol)?;
                line(&mut out, name, st.a, st.gap().max(CLOSED_FORM_REL * st.a));
                line(&mut out, &format!("{name}_steps"), st.n as f64, 0.0);
            }
        }
        Command::Verify => {
            let radii = sweep_grid(cfg)?;
            let a_values: Vec<f64> = SweepGrid::default()
                .a_values()
                .iter()
                .map(Signature::a)
                .collect();
            let grid = SweepGrid::new(&a_values, &radii, cfg.tol)?;
            let reports = run_full_suite(&grid);
            out.push_str(VerificationReport::CSV_HEADER);
            out.push('\n');
            for rep in &reports {
                out.push_str(&rep.to_csv_row());
                out.push('\n');
            }
            let failed = reports.iter().filter(|r| !r.pass).count();
            eprintln!("{} checks, {failed} failed", reports.len());
            if failed > 0 {
                code = EXIT_FAILED;
            }
        }
        Command::Sweep => {
            let s = inp.signature()?;
            let radii = sweep_grid(cfg)?;
            let rows = radii
                .par_iter()
                .map(|&x| -> Result<String> {
                    let r = UnitRadius::new(x)?;
                    let m = mu_star(s, r)?;
                    let (lower, upper) = mu_star_bounds(s, r, cfg.tol)?;
                    let cols = [
                        s.a(),
                        x,
                        m,
                        lower,
                        upper,
                        m + 1.5 * x.ln(),
                        mu_star_derivative(s, r)?,
                    ];
                    Ok(cols
                        .iter()
                        .map(|&v| format_number(v))
                        .collect::<Vec<_>>()
                        .join(","))
                })
                .collect::<Result<Vec<_>>>()?;
            out.push_str(SWEEP_HEADER);
            out.push('\n');
            for row in rows {
                out.push_str(&row);
                out.push('\n');
            }
        }
    }
    Ok((out, code))
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::NonConvergence { .. } | Error::Overflow(_) => EXIT_NUMERICAL,
        Error::Domain { .. } | Error::Parameter(_) | Error::Config(_) => EXIT_USAGE,
    }
}

/// Runs a validated configuration, writing to standard output or
/// `--output`, and returns the exit code.
pub fn execute(cfg: &CliConfig) -> i32 {
    let (text, code) = match render(cfg) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return error_code(&e);
        }
    };
    let written = match &cfg.output_path {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => code,
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            EXIT_FAILED
        }
    }
}

/// Parses `argv` and executes it; the binary's entry point.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(argv) {
        Ok(cfg) => execute(&cfg),
        Err(e) if e.code == EXIT_OK => {
            print!("{e}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("{}", e.message.trim_end());
            e.code
        }
    }
}
