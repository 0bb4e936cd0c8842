//! Exact-arithmetic toolkit for Bernoulli polynomials and the Raabe
//! multiplication equation.
//!
//! The equation, for index `n` and integer multiplier `a`, asks that
//!
//! ```text
//! f(ax) = a^{n-1} * (f(x) + f(x + 1/a) + ... + f(x + (a-1)/a))
//! ```
//!
//! and `B_n` satisfies it for every `a`. This crate makes the
//! surrounding theory computational:
//!
//! - [`algebra`]: arbitrary-precision rationals, dense polynomials over
//!   them, and an exact nullspace routine.
//! - [`bernoulli`]: `B_n` generated two independent ways (recurrence
//!   and a generating-function oracle), plus its classical identities
//!   as checkable operations.
//! - [`residual`]: the residual operator of the equation, the
//!   two-modulus generalization, and the exact kernel computation that
//!   exhibits `span{B_n}` as the full polynomial solution space.
//! - [`fourier`]: the complete 1-periodic solution space as coefficient
//!   sequences with `u_{ak} = u_k`, exact discrimination between
//!   multipliers, and tail-bounded numeric series evaluation.
//! - [`probes`]: Riemann-sum limits, floor-sequence approximants of the
//!   dense set `r/(a^s - 1)`, and the sigma/periodic decomposition of
//!   continuous solutions.
//!
//! The `raabe` binary exposes each operation as a subcommand with text
//! or JSON output; exact values serialize as `p/q` strings.

pub mod algebra;
pub mod bernoulli;
pub mod fourier;
pub mod probes;
pub mod report;
pub mod residual;
pub mod summation;

pub use algebra::{kernel_basis, Polynomial, Rational, RationalMatrix};
pub use bernoulli::{bernoulli_poly, bernoulli_poly_oracle, BernoulliTable};
pub use fourier::{
    builtin_spec, coeff_residual_check, fourier_eval, log_sin_check, periodized_bernoulli_eval,
    CoefficientSpec, FourierEvalResult,
};
pub use probes::{
    dense_approximate, left_riemann_sum, periodic_decompose, scaling_limit_probe, ProbeReport,
    SampledFunction,
};
pub use report::{ResidualData, ResidualReport};
pub use residual::{
    carlitz_residual, check_derivative_commutation, check_modulus_composition, raabe_residual,
    solution_kernel, RaabeParams,
};
