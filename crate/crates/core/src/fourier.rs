//! The Fourier-series solution space of the multiplication equation.
//!
//! A 1-periodic function `f(x) = sum_k (u_k cos(2 pi k x) + v_k sin(2 pi k x)) / k^n`
//! solves the equation with multiplier `a` exactly when `u_{ak} = u_k`
//! and `v_{ak} = v_k` for every `k`. That criterion is a statement
//! about exact coefficient sequences, so this module keeps it in exact
//! rational arithmetic and does numeric series evaluation separately,
//! with a guaranteed truncation tail bound for every value it returns.
//!
//! Evaluation order is part of the contract: terms are summed in
//! ascending `k` with compensated accumulation, so ports to other
//! languages reproduce values to within about 1e-12 at default
//! settings.

use std::f64::consts::PI;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{rational_to_f64, Rational};
use crate::report::ResidualReport;
use crate::summation::CompensatedSum;

/// Default ceiling on series truncation length.
pub const DEFAULT_TRUNCATION_CAP: u64 = 10_000_000;

/// Default number of terms for the conditionally convergent log-sin
/// comparison, which has no a-priori bound.
pub const DEFAULT_LOG_SIN_TERMS: u64 = 2_000_000;

#[derive(Debug, Error)]
pub enum FourierError {
    #[error("unknown builtin spec `{0}`")]
    UnknownSpec(String),
    #[error("spec `{name}` requires decay exponent n >= {required}, got {n}")]
    InvalidDecay { name: String, n: u32, required: u32 },
    #[error("decay n={n} under a {envelope:?} envelope admits no guaranteed tail bound")]
    InsufficientDecay { n: u32, envelope: EnvelopeClass },
    #[error("tolerance {tol:.3e} would need more than {cap} terms; loosen it or raise the cap")]
    ToleranceUnreachable { tol: f64, cap: u64 },
    #[error("(n={n}, x={x}) lies outside the validity domain of the series")]
    ExcludedPoint { n: u32, x: f64 },
}

/// Declared growth envelope of a coefficient sequence: a guarantee that
/// `|u_k|, |v_k| <= envelope(k)` for all `k >= 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EnvelopeClass {
    /// `envelope(k) = C`.
    Constant(f64),
    /// `envelope(k) = C * (1 + log2(k))`.
    LogBase2(f64),
    /// `envelope(k) = C * k`.
    Linear(f64),
}

impl EnvelopeClass {
    pub fn value(&self, k: u64) -> f64 {
        match *self {
            EnvelopeClass::Constant(c) => c,
            EnvelopeClass::LogBase2(c) => c * (1.0 + (k as f64).log2()),
            EnvelopeClass::Linear(c) => c * k as f64,
        }
    }

    /// Smallest decay exponent for which a guaranteed tail bound exists.
    fn min_decay(&self) -> u32 {
        match self {
            EnvelopeClass::Constant(_) | EnvelopeClass::LogBase2(_) => 2,
            EnvelopeClass::Linear(_) => 3,
        }
    }

    /// Integral-test bound on `sum_{k>N} 2 * envelope(k) / k^n`.
    ///
    /// Constant class: `2C / ((n-1) N^{n-1})`. Log class:
    /// `2C (1 + log2 N + 1/((n-1) ln 2)) / ((n-1) N^{n-1})`, the exact
    /// value of the tail integral. Linear class: constant class with
    /// the exponent lowered by one. All three require the decay margin
    /// checked by `min_decay`; the integrands are decreasing on
    /// `[1, inf)` in that regime, so the bounds are rigorous for all
    /// `N >= 1`.
    fn tail_bound(&self, n: u32, big_n: u64) -> f64 {
        let nn = big_n as f64;
        match *self {
            EnvelopeClass::Constant(c) => {
                let m = (n - 1) as f64;
                2.0 * c / (m * nn.powf(m))
            }
            EnvelopeClass::LogBase2(c) => {
                let m = (n - 1) as f64;
                2.0 * c * (1.0 + nn.log2() + 1.0 / (m * std::f64::consts::LN_2))
                    / (m * nn.powf(m))
            }
            EnvelopeClass::Linear(c) => {
                let m = (n - 2) as f64;
                2.0 * c / (m * nn.powf(m))
            }
        }
    }
}

/// A named coefficient generator `k -> (u_k, v_k)` with decay exponent
/// `n` and a declared growth envelope.
///
/// In the two-sided exponential form of the same series, the weight on
/// `e^{2 pi i k x}` is `(u_k - i v_k) / (2 k^n)` for `k >= 1`, with the
/// conjugate at `-k` and nothing at `k = 0`.
#[derive(Clone)]
pub struct CoefficientSpec {
    name: String,
    n: u32,
    u: Arc<dyn Fn(u64) -> Rational + Send + Sync>,
    v: Arc<dyn Fn(u64) -> Rational + Send + Sync>,
    envelope: EnvelopeClass,
}

impl std::fmt::Debug for CoefficientSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CoefficientSpec")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("envelope", &self.envelope)
            .finish()
    }
}

impl CoefficientSpec {
    pub fn new(
        name: impl Into<String>,
        n: u32,
        u: impl Fn(u64) -> Rational + Send + Sync + 'static,
        v: impl Fn(u64) -> Rational + Send + Sync + 'static,
        envelope: EnvelopeClass,
    ) -> Result<Self, FourierError> {
        let name = name.into();
        if n < 1 {
            return Err(FourierError::InvalidDecay {
                name,
                n,
                required: 1,
            });
        }
        Ok(CoefficientSpec {
            name,
            n,
            u: Arc::new(u),
            v: Arc::new(v),
            envelope,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn decay(&self) -> u32 {
        self.n
    }

    pub fn envelope(&self) -> EnvelopeClass {
        self.envelope
    }

    /// Cosine weight `u_k`, exact.
    pub fn u(&self, k: u64) -> Rational {
        (self.u)(k)
    }

    /// Sine weight `v_k`, exact.
    pub fn v(&self, k: u64) -> Rational {
        (self.v)(k)
    }
}

/// Number of ones in the binary expansion of `k`.
pub fn binary_digit_sum(k: u64) -> u32 {
    k.count_ones()
}

/// Greatest odd divisor of `k >= 1`.
pub fn odd_part(k: u64) -> u64 {
    assert!(k >= 1);
    k >> k.trailing_zeros()
}

/// Builds one of the named coefficient specs.
///
/// Names: `constant` (u = 1), `conjugate_constant` (v = 1), `s2`
/// (binary digit sum), `odd_part` (greatest odd divisor, needs n >= 3),
/// `pow2_indicator` (1 exactly at powers of two).
pub fn builtin_spec(name: &str, n: u32) -> Result<CoefficientSpec, FourierError> {
    let zero = |_k: u64| Rational::zero();
    match name {
        "constant" => CoefficientSpec::new(name, n, |_k| Rational::one(), zero, EnvelopeClass::Constant(1.0)),
        "conjugate_constant" => {
            CoefficientSpec::new(name, n, zero, |_k| Rational::one(), EnvelopeClass::Constant(1.0))
        }
        "s2" => CoefficientSpec::new(
            name,
            n,
            |k| Rational::from_integer(binary_digit_sum(k).into()),
            zero,
            EnvelopeClass::LogBase2(1.0),
        ),
        "odd_part" => {
            if n < 3 {
                // The k-linear envelope leaves no guaranteed tail below n = 3.
                return Err(FourierError::InvalidDecay {
                    name: name.to_string(),
                    n,
                    required: 3,
                });
            }
            CoefficientSpec::new(
                name,
                n,
                |k| Rational::from_integer(odd_part(k).into()),
                zero,
                EnvelopeClass::Linear(1.0),
            )
        }
        "pow2_indicator" => CoefficientSpec::new(
            name,
            n,
            |k| {
                if k.is_power_of_two() {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            },
            zero,
            EnvelopeClass::Constant(1.0),
        ),
        other => Err(FourierError::UnknownSpec(other.to_string())),
    }
}

/// Exact check that `u_{ak} = u_k` and `v_{ak} = v_k` for all
/// `1 <= k <= k_max / a`, reporting the first failing `k` as witness.
pub fn coeff_residual_check(spec: &CoefficientSpec, a: u64, k_max: u64) -> ResidualReport {
    assert!(a >= 2, "multiplier must be at least 2");
    assert!(k_max >= a, "k_max must reach the multiplier");
    let params = format!(
        "coefficient relation, spec={}, a={a}, k_max={k_max}",
        spec.name
    );
    for k in 1..=k_max / a {
        let found = (spec.u(a * k), spec.v(a * k));
        let expected = (spec.u(k), spec.v(k));
        if found != expected {
            return ResidualReport::coeff_mismatch(params, k, a * k, found, expected);
        }
    }
    ResidualReport::exact_pass(params)
}

/// One evaluated series value with its truncation certificate.
#[derive(Clone, Copy, Debug)]
pub struct FourierEvalResult {
    pub value: f64,
    /// Number of terms summed.
    pub truncation_n: u64,
    /// Rigorous bound on the dropped tail; at most `requested_tol`.
    pub tail_bound: f64,
    pub requested_tol: f64,
}

/// Least `N` in `[1, cap]` with `tail(N) <= tol`, by bisection on a
/// nonincreasing bound.
fn least_truncation(
    tail: impl Fn(u64) -> f64,
    tol: f64,
    cap: u64,
) -> Result<u64, FourierError> {
    if !(tail(cap) <= tol) {
        return Err(FourierError::ToleranceUnreachable { tol, cap });
    }
    let (mut lo, mut hi) = (1u64, cap);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if tail(mid) <= tol {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// Evaluates the spec's series at `x` to within `tol`, using the
/// default truncation cap.
pub fn fourier_eval(
    spec: &CoefficientSpec,
    x: f64,
    tol: f64,
) -> Result<FourierEvalResult, FourierError> {
    fourier_eval_with_cap(spec, x, tol, DEFAULT_TRUNCATION_CAP)
}

/// Evaluates `sum_{k<=N} (u_k cos(2 pi k x) + v_k sin(2 pi k x)) / k^n`
/// with `N` chosen as the least truncation whose envelope tail bound is
/// at most `tol`. The fractional part of `x` is taken first, so values
/// at `x` and `x + m` are bit-identical.
pub fn fourier_eval_with_cap(
    spec: &CoefficientSpec,
    x: f64,
    tol: f64,
    cap: u64,
) -> Result<FourierEvalResult, FourierError> {
    assert!(tol > 0.0, "tolerance must be positive");
    let n = spec.n;
    if n < spec.envelope.min_decay() {
        return Err(FourierError::InsufficientDecay {
            n,
            envelope: spec.envelope,
        });
    }
    let truncation = least_truncation(|big_n| spec.envelope.tail_bound(n, big_n), tol, cap)?;

    let frac = x - x.floor();
    let theta = 2.0 * PI * frac;
    let mut sum = CompensatedSum::new();
    for k in 1..=truncation {
        let u = spec.u(k);
        let v = spec.v(k);
        if u.is_zero() && v.is_zero() {
            continue;
        }
        let angle = theta * k as f64;
        let decay = (k as f64).powi(n as i32);
        let mut term = 0.0;
        if !u.is_zero() {
            term += rational_to_f64(&u) * angle.cos();
        }
        if !v.is_zero() {
            term += rational_to_f64(&v) * angle.sin();
        }
        sum.add(term / decay);
    }
    Ok(FourierEvalResult {
        value: sum.value(),
        truncation_n: truncation,
        tail_bound: spec.envelope.tail_bound(n, truncation),
        requested_tol: tol,
    })
}

/// Which quarter-period phase a shifted trigonometric series lands on.
#[derive(Clone, Copy, PartialEq)]
enum Phase {
    Cos(f64),
    Sin(f64),
}

impl Phase {
    /// `cos(theta - n pi/2)` reduced exactly by `n mod 4`.
    fn shifted_cos(n: u32) -> Phase {
        match n % 4 {
            0 => Phase::Cos(1.0),
            1 => Phase::Sin(1.0),
            2 => Phase::Cos(-1.0),
            _ => Phase::Sin(-1.0),
        }
    }

    /// `sin(theta - n pi/2)` reduced exactly by `n mod 4`.
    fn shifted_sin(n: u32) -> Phase {
        match n % 4 {
            0 => Phase::Sin(1.0),
            1 => Phase::Cos(-1.0),
            2 => Phase::Sin(-1.0),
            _ => Phase::Cos(1.0),
        }
    }

    fn apply(self, angle: f64) -> f64 {
        match self {
            Phase::Cos(s) => s * angle.cos(),
            Phase::Sin(s) => s * angle.sin(),
        }
    }

    /// True when every term vanishes identically at zero angle.
    fn vanishes_at_zero(self) -> bool {
        matches!(self, Phase::Sin(_))
    }
}

/// `2 * n! / (2 pi)^n`, the magnitude of the series prefactor.
fn bernoulli_series_prefactor(n: u32) -> f64 {
    let mut fact = 1.0f64;
    for m in 2..=n as u64 {
        fact *= m as f64;
    }
    2.0 * fact / (2.0 * PI).powi(n as i32)
}

/// Shared evaluator for the two phase-shifted Bernoulli series.
fn bernoulli_series_eval(
    n: u32,
    x: f64,
    tol: f64,
    cap: u64,
    phase: Phase,
) -> Result<FourierEvalResult, FourierError> {
    assert!(tol > 0.0, "tolerance must be positive");
    let frac = x - x.floor();
    if n < 1 || (n == 1 && frac == 0.0) {
        return Err(FourierError::ExcludedPoint { n, x });
    }
    let prefactor = bernoulli_series_prefactor(n);

    // Every term is identically zero on the sine branch at angle zero.
    if frac == 0.0 && phase.vanishes_at_zero() {
        return Ok(FourierEvalResult {
            value: 0.0,
            truncation_n: 0,
            tail_bound: 0.0,
            requested_tol: tol,
        });
    }

    // Tail bound: the integral test ignores the phase and needs n >= 2;
    // the Abel/Dirichlet bound uses the bounded partial sums of the
    // shifted trigonometric terms, |sum| <= 1/|sin(pi x)|, and works
    // for any n >= 1 away from integer x. Take whichever is smaller.
    let sin_px = (PI * frac).sin().abs();
    let tail = |big_n: u64| -> f64 {
        let nn = big_n as f64;
        let mut best = f64::INFINITY;
        if n >= 2 {
            let m = (n - 1) as f64;
            best = best.min(prefactor / (m * nn.powf(m)));
        }
        if sin_px > 0.0 {
            best = best.min(prefactor / ((nn + 1.0).powi(n as i32) * sin_px));
        }
        best
    };
    let truncation = least_truncation(tail, tol, cap)?;

    let theta = 2.0 * PI * frac;
    let mut sum = CompensatedSum::new();
    for k in 1..=truncation {
        let angle = theta * k as f64;
        sum.add(phase.apply(angle) / (k as f64).powi(n as i32));
    }
    Ok(FourierEvalResult {
        value: -prefactor * sum.value(),
        truncation_n: truncation,
        tail_bound: tail(truncation),
        requested_tol: tol,
    })
}

/// Evaluates the periodized Bernoulli function
/// `-2 n!/(2 pi)^n * sum_k cos(2 pi k <x> - n pi/2) / k^n` to within
/// `tol`. Agrees with `B_n` evaluated at the fractional part of `x`.
pub fn periodized_bernoulli_eval(n: u32, x: f64, tol: f64) -> Result<FourierEvalResult, FourierError> {
    periodized_bernoulli_eval_with_cap(n, x, tol, DEFAULT_TRUNCATION_CAP)
}

pub fn periodized_bernoulli_eval_with_cap(
    n: u32,
    x: f64,
    tol: f64,
    cap: u64,
) -> Result<FourierEvalResult, FourierError> {
    bernoulli_series_eval(n, x, tol, cap, Phase::shifted_cos(n))
}

/// Evaluates the conjugate (sine-phase) Bernoulli series
/// `-2 n!/(2 pi)^n * sum_k sin(2 pi k <x> - n pi/2) / k^n` to within
/// `tol`. Undefined at `(n, <x>) = (1, 0)`.
pub fn conjugate_bernoulli_eval(n: u32, x: f64, tol: f64) -> Result<FourierEvalResult, FourierError> {
    conjugate_bernoulli_eval_with_cap(n, x, tol, DEFAULT_TRUNCATION_CAP)
}

pub fn conjugate_bernoulli_eval_with_cap(
    n: u32,
    x: f64,
    tol: f64,
    cap: u64,
) -> Result<FourierEvalResult, FourierError> {
    bernoulli_series_eval(n, x, tol, cap, Phase::shifted_sin(n))
}

/// Compares `log(2 |sin(pi x)|)` against the negated partial sum of
/// `sum_k cos(2 pi k x)/k` with the default number of terms.
///
/// The series converges only conditionally, so no a-priori bound is
/// promised: the report carries the achieved discrepancy, judged
/// against `tol`.
pub fn log_sin_check(x: f64, tol: f64) -> Result<ResidualReport, FourierError> {
    log_sin_check_with_terms(x, tol, DEFAULT_LOG_SIN_TERMS)
}

/// Same as [`log_sin_check`] with an explicit symmetric-partial-sum
/// length (the cosine partial sum is the symmetric partial sum of the
/// underlying two-sided exponential series).
pub fn log_sin_check_with_terms(
    x: f64,
    tol: f64,
    terms: u64,
) -> Result<ResidualReport, FourierError> {
    let frac = x - x.floor();
    if frac == 0.0 {
        return Err(FourierError::ExcludedPoint { n: 1, x });
    }
    let theta = 2.0 * PI * frac;
    let mut sum = CompensatedSum::new();
    for k in 1..=terms {
        sum.add((theta * k as f64).cos() / k as f64);
    }
    let series = -sum.value();
    let direct = (2.0 * (PI * frac).sin().abs()).ln();
    let discrepancy = (direct - series).abs();
    Ok(ResidualReport::numeric(
        format!("log-sin expansion at x={x}, N={terms}"),
        vec![discrepancy],
        tol,
    ))
}
