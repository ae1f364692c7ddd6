//! Scalar special functions and hypergeometric-type series.

mod gamma;
mod series;

pub use gamma::{beta_fn, digamma, euler_gamma, gamma_fn, ramanujan_r, ramanujan_r1, EULER_GAMMA};
pub use series::{
    bessel_u, hyp2f1, hyp2f1_with_complement, kummer_phi, EvalOptions, EvalResult,
    SeriesParameters, CONNECTION_CROSSOVER, INTEGER_TOLERANCE,
};
