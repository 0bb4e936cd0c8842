//! Numeric probes for the real-analysis side of the theory: Riemann-sum
//! limits of the rescaled equation, the dense set of fractions
//! `r/(a^s - 1)` with its floor-sequence approximants, and the
//! decomposition of a continuous solution into a polynomial part and a
//! 1-periodic remainder.

use num_bigint::BigInt;
use std::sync::Arc;
use thiserror::Error;

use crate::algebra::{rat_int, rat_pow, rational_to_f64, Polynomial, Rational};
use crate::bernoulli::bernoulli_poly;
use crate::summation::CompensatedSum;

/// Default ceiling on the number of Riemann-sum sample points.
pub const DEFAULT_SAMPLE_CAP: u64 = 1 << 24;

/// Default number of quadrature panels for the decomposition probe.
pub const DEFAULT_QUAD_PANELS: u32 = 1 << 10;

#[derive(Debug, Error)]
pub enum ProbeError {
    #[error("a^k = {requested} sample points exceed the cap {cap}")]
    CapExceeded { requested: u128, cap: u64 },
}

/// A deterministic real function under test.
#[derive(Clone)]
pub struct SampledFunction {
    pub label: String,
    pub known_period: Option<f64>,
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl SampledFunction {
    pub fn new(
        label: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        SampledFunction {
            label: label.into(),
            known_period: None,
            eval: Arc::new(eval),
        }
    }

    pub fn with_period(mut self, period: f64) -> Self {
        self.known_period = Some(period);
        self
    }

    pub fn from_polynomial(label: impl Into<String>, p: &Polynomial) -> Self {
        let p = p.clone();
        SampledFunction::new(label, move |x| p.eval_f64(x))
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }
}

impl std::fmt::Debug for SampledFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SampledFunction")
            .field("label", &self.label)
            .field("known_period", &self.known_period)
            .finish()
    }
}

/// One measured quantity with an optional reference value and an error
/// allowance; on success `|observed - expected| <= bound`.
#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub quantity: String,
    pub observed: f64,
    pub expected: Option<f64>,
    pub bound: f64,
    pub iterations: u64,
}

impl ProbeReport {
    pub fn deviation(&self) -> Option<f64> {
        self.expected.map(|e| (self.observed - e).abs())
    }

    pub fn within_bound(&self) -> bool {
        self.deviation().is_none_or(|d| d <= self.bound)
    }
}

/// Left Riemann sum `(1/a^k) * sum_{0 <= l < a^k} f(x + l/a^k)` over
/// the unit interval starting at `x`.
pub fn left_riemann_sum(f: &SampledFunction, a: u32, x: f64, k: u32) -> Result<f64, ProbeError> {
    left_riemann_sum_with_cap(f, a, x, k, DEFAULT_SAMPLE_CAP)
}

pub fn left_riemann_sum_with_cap(
    f: &SampledFunction,
    a: u32,
    x: f64,
    k: u32,
    cap: u64,
) -> Result<f64, ProbeError> {
    assert!(a >= 2, "base must be at least 2");
    assert!(k >= 1, "exponent must be at least 1");
    let points = (a as u128).pow(k);
    if points > cap as u128 {
        return Err(ProbeError::CapExceeded {
            requested: points,
            cap,
        });
    }
    let points = points as u64;
    let step = 1.0 / points as f64;
    let mut sum = CompensatedSum::new();
    for l in 0..points {
        sum.add(f.eval(x + l as f64 * step));
    }
    Ok(sum.value() * step)
}

/// Tabulates `f(a^k x) / a^{kn}` along `k_list` and reports the final
/// value against `expected`, when given. The `bound` field echoes the
/// final deviation (descriptive, not a convergence guarantee; the
/// polynomial variant below derives a rigorous one).
pub fn scaling_limit_probe(
    f: &SampledFunction,
    n: u32,
    a: u32,
    x: f64,
    k_list: &[u32],
    expected: Option<f64>,
) -> ProbeReport {
    assert!(a >= 2, "base must be at least 2");
    assert!(!k_list.is_empty(), "need at least one exponent");
    let mut last = f64::NAN;
    for &k in k_list {
        let scale = (a as f64).powi((k * n) as i32);
        last = f.eval((a as f64).powi(k as i32) * x) / scale;
    }
    let bound = expected.map_or(f64::INFINITY, |e| (last - e).abs());
    ProbeReport {
        quantity: format!("scaling limit of {} at x={x}, a={a}", f.label),
        observed: last,
        expected,
        bound,
        iterations: k_list.len() as u64,
    }
}

/// Scaling-limit probe for a polynomial, with the reference value
/// computed exactly as the integral over `[x, x+1]` and a rigorous
/// left-sum convergence bound `sup |p'| / (2 a^k)` from the coefficients.
pub fn scaling_limit_probe_poly(
    p: &Polynomial,
    n: u32,
    a: u32,
    x: f64,
    k_list: &[u32],
) -> ProbeReport {
    assert!(!k_list.is_empty(), "need at least one exponent");
    let f = SampledFunction::from_polynomial("polynomial", p);
    let x_rat = Rational::from_float(x).expect("finite x");
    let expected = p.definite_integral(&x_rat, &(x_rat.clone() + Rational::from_integer(1.into())));
    let mut report = scaling_limit_probe(&f, n, a, x, k_list, Some(rational_to_f64(&expected)));

    let reach = x.abs().max((x + 1.0).abs());
    let derivative_sup: f64 = p
        .derivative()
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| rational_to_f64(c).abs() * reach.powi(i as i32))
        .sum();
    let last_k = *k_list.last().expect("nonempty") as i32;
    // Linear integrands attain sup|p'| h/2 exactly, so the comparison
    // against the bound needs headroom for float rounding.
    report.bound = derivative_sup / (2.0 * (a as f64).powi(last_k)) * (1.0 + 1e-9);
    report
}

/// Floor-sequence approximant of a real by a fraction with denominator
/// `a^s - 1`, carried exactly.
#[derive(Clone, Debug)]
pub struct DenseApproximant {
    pub s: u32,
    /// `r = floor((a^s - 1) * u)`.
    pub r: BigInt,
    /// `r / (a^s - 1)`.
    pub value: Rational,
    /// Exact image of the input.
    pub target: Rational,
    /// `target - value`; always in `[0, 1/(a^s - 1))`.
    pub error: Rational,
    /// Set when `(a^s - 1) * u` is within 1e-12 of an integer, where
    /// the floor is decided by the last bits of the input.
    pub boundary: bool,
}

impl DenseApproximant {
    pub fn value_f64(&self) -> f64 {
        rational_to_f64(&self.value)
    }

    pub fn error_f64(&self) -> f64 {
        rational_to_f64(&self.error)
    }
}

/// Approximates `u` by `floor((a^s - 1) u) / (a^s - 1)`.
///
/// The float input is converted to the exact rational it represents, so
/// the floor and the error window are computed exactly; rounding toward
/// negative infinity is inherited from the exact floor.
pub fn dense_approximate(u: f64, a: u32, s: u32) -> DenseApproximant {
    let exact = Rational::from_float(u).expect("finite input");
    dense_approximate_exact(&exact, a, s)
}

/// Exact-input variant of [`dense_approximate`].
pub fn dense_approximate_exact(u: &Rational, a: u32, s: u32) -> DenseApproximant {
    assert!(a >= 2, "base must be at least 2");
    assert!(s >= 1, "exponent must be at least 1");
    let denom = rat_pow(&rat_int(a as i64), s as i64) - rat_int(1);
    let scaled = u * &denom;
    let r = scaled.floor().to_integer();
    let value = Rational::new(r.clone(), denom.to_integer());
    let error = u - &value;

    let distance_to_integer = {
        let frac = &scaled - &scaled.clone().floor();
        let nearer = if frac > Rational::new(1.into(), 2.into()) {
            Rational::from_integer(1.into()) - frac
        } else {
            frac
        };
        rational_to_f64(&nearer)
    };

    DenseApproximant {
        s,
        r,
        value,
        target: u.clone(),
        error,
        boundary: distance_to_integer <= 1e-12,
    }
}

/// Result of splitting a function into `sigma * B_n + (1-periodic part)`.
#[derive(Clone, Debug)]
pub struct PeriodicDecomposition {
    /// Estimated `sigma`, the integral of `f` over `[1, 2]`, with a
    /// Richardson-halving error estimate in `bound`.
    pub sigma: ProbeReport,
    /// Largest `|tau(x+1) - tau(x)|` over a 33-point grid of `[0, 1]`,
    /// where `tau = f - sigma * B_n`.
    pub periodicity: ProbeReport,
}

/// Composite Simpson rule with `panels` subintervals (`panels` even).
fn simpson(f: &SampledFunction, lo: f64, hi: f64, panels: u32) -> f64 {
    assert!(panels >= 2 && panels % 2 == 0, "panels must be even");
    let h = (hi - lo) / panels as f64;
    let mut sum = CompensatedSum::new();
    sum.add(f.eval(lo));
    sum.add(f.eval(hi));
    for i in 1..panels {
        let weight = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum.add(weight * f.eval(lo + i as f64 * h));
    }
    sum.value() * h / 3.0
}

/// Estimates `sigma` by quadrature over `[1, 2]`, forms the remainder
/// `tau = f - sigma * B_n`, and measures how far `tau` is from being
/// 1-periodic. Richardson halving supplies the quadrature error
/// estimate, since `f` may be only piecewise smooth.
pub fn periodic_decompose(f: &SampledFunction, n: u32, quad_panels: u32) -> PeriodicDecomposition {
    assert!(n >= 1, "index must be at least 1");
    let panels = quad_panels.max(4) & !1;
    let coarse = simpson(f, 1.0, 2.0, panels / 2);
    let sigma = simpson(f, 1.0, 2.0, panels);
    let quad_estimate = (sigma - coarse).abs() / 15.0;

    let b_n = bernoulli_poly(n as usize);
    let mut max_defect = 0.0f64;
    for i in 0..=32 {
        let x = i as f64 / 32.0;
        let tau_here = f.eval(x) - sigma * b_n.eval_f64(x);
        let tau_next = f.eval(x + 1.0) - sigma * b_n.eval_f64(x + 1.0);
        max_defect = max_defect.max((tau_next - tau_here).abs());
    }

    PeriodicDecomposition {
        sigma: ProbeReport {
            quantity: format!("sigma of {}", f.label),
            observed: sigma,
            expected: None,
            bound: quad_estimate,
            iterations: panels as u64,
        },
        periodicity: ProbeReport {
            quantity: format!("periodicity defect of {} remainder", f.label),
            observed: max_defect,
            expected: Some(0.0),
            bound: 10.0 * quad_estimate + 1e-9,
            iterations: 33,
        },
    }
}

/// `B_n` evaluated at the fractional part, as a sampled function.
pub fn periodized_bernoulli_function(n: u32) -> SampledFunction {
    let p = bernoulli_poly(n as usize);
    SampledFunction::new(format!("periodized degree-{n} polynomial"), move |x| {
        p.eval_f64(x - x.floor())
    })
    .with_period(1.0)
}
