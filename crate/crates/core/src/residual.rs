//! Residual operators for the multiplication equation and the exact
//! kernel computation that witnesses its polynomial solution space.
//!
//! For index `n` and multiplier `a`, the residual of `p` is
//!
//! ```text
//! R[p](X) = p(aX) - a^{n-1} * (p(X) + p(X + 1/a) + ... + p(X + (a-1)/a))
//! ```
//!
//! so `p` solves the equation exactly when the residual is the zero
//! polynomial. The operator is linear in `p`, which is what makes the
//! kernel computation below meaningful: restricted to polynomials of
//! bounded degree it is a plain linear map on coefficient space.

use num_traits::{One, Zero};

use crate::algebra::{kernel_basis, rat_int, rat_pow, Polynomial, Rational, RationalMatrix};
use crate::bernoulli::bernoulli_poly;
use crate::report::ResidualReport;

/// Index pair of one equation instance: the exponent `n` and the
/// multiplier `a >= 1` (the equation is trivially satisfied at `a = 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RaabeParams {
    pub n: u32,
    pub a: u32,
}

impl RaabeParams {
    pub fn new(n: u32, a: u32) -> Self {
        assert!(a >= 1, "multiplier must be at least 1");
        RaabeParams { n, a }
    }
}

/// `a^(n-1)` as an exact rational; `n = 0` gives `1/a`.
fn multiplier_power(n: u32, a: u32) -> Rational {
    rat_pow(&rat_int(a as i64), n as i64 - 1)
}

/// Exact residual `p(aX) - a^{n-1} * sum_{k<a} p(X + k/a)`.
///
/// ```
/// use raabe::bernoulli::bernoulli_poly;
/// use raabe::residual::{raabe_residual, RaabeParams};
/// let r = raabe_residual(&bernoulli_poly(3), RaabeParams::new(3, 2));
/// assert!(r.is_zero());
/// ```
pub fn raabe_residual(p: &Polynomial, params: RaabeParams) -> Polynomial {
    let RaabeParams { n, a } = params;
    let a_rat = rat_int(a as i64);
    let scaled_arg = p.compose_affine(&a_rat, &Rational::zero());
    let mut sum = Polynomial::zero();
    for k in 0..a {
        let shift = Rational::new(k.into(), a.into());
        sum = &sum + &p.compose_affine(&Rational::one(), &shift);
    }
    &scaled_arg - &sum.scale(&multiplier_power(n, a))
}

/// Exact two-modulus residual with an arbitrary polynomial in place of
/// the Bernoulli entry:
///
/// ```text
/// a^{n-1} * sum_{k<a} p(X/a + bk/a) - b^{n-1} * sum_{l<b} p(X/b + al/b)
/// ```
pub fn carlitz_residual_of(p: &Polynomial, n: u32, a: u32, b: u32) -> Polynomial {
    assert!(a >= 1 && b >= 1, "moduli must be at least 1");
    let side = |outer: u32, inner: u32| -> Polynomial {
        let inv = Rational::new(1.into(), outer.into());
        let mut sum = Polynomial::zero();
        for k in 0..outer {
            let shift = Rational::new((inner as u64 * k as u64).into(), outer.into());
            sum = &sum + &p.compose_affine(&inv, &shift);
        }
        sum.scale(&multiplier_power(n, outer))
    };
    &side(a, b) - &side(b, a)
}

/// The two-modulus residual for the true `B_n`; exactly zero for every
/// `a, b >= 1`.
pub fn carlitz_residual(n: u32, a: u32, b: u32) -> Polynomial {
    carlitz_residual_of(&bernoulli_poly(n as usize), n, a, b)
}

/// Exact check of the operator identity `(R_{n,a}[p])' = a * R_{n-1,a}[p']`,
/// which holds for every polynomial `p`, not only solutions. Requires
/// `n >= 1` so the right-hand side is defined.
pub fn check_derivative_commutation(p: &Polynomial, params: RaabeParams) -> ResidualReport {
    assert!(params.n >= 1, "identity needs n >= 1");
    let lhs = raabe_residual(p, params).derivative();
    let lowered = RaabeParams::new(params.n - 1, params.a);
    let rhs = raabe_residual(&p.derivative(), lowered).scale(&rat_int(params.a as i64));
    ResidualReport::symbolic(
        format!(
            "derivative commutation, n={}, a={}, deg(p)={:?}",
            params.n,
            params.a,
            p.degree()
        ),
        &lhs - &rhs,
    )
}

/// Outcome of the modulus-composition check.
#[derive(Clone, Debug)]
pub enum CompositionCheck {
    /// `p` failed to solve the equation at one of the two hypothesis
    /// moduli; no judgment is passed on the composed modulus.
    HypothesisNotMet {
        failing_modulus: u32,
        residual: Polynomial,
    },
    /// Both hypotheses held; the report carries the residual at `a*b`.
    Concluded(ResidualReport),
}

impl CompositionCheck {
    pub fn concluded_zero(&self) -> bool {
        matches!(self, CompositionCheck::Concluded(r) if r.is_zero)
    }
}

/// If `p` solves the equation at moduli `a` and `b`, checks that it
/// solves it at `a*b`; otherwise reports which hypothesis failed.
pub fn check_modulus_composition(n: u32, a: u32, b: u32, p: &Polynomial) -> CompositionCheck {
    for modulus in [a, b] {
        let r = raabe_residual(p, RaabeParams::new(n, modulus));
        if !r.is_zero() {
            return CompositionCheck::HypothesisNotMet {
                failing_modulus: modulus,
                residual: r,
            };
        }
    }
    let composed = raabe_residual(p, RaabeParams::new(n, a * b));
    CompositionCheck::Concluded(ResidualReport::symbolic(
        format!("composition, n={n}, a={a}, b={b}, ab={}", a * b),
        composed,
    ))
}

/// Matrix of the residual operator on the coefficient space of
/// polynomials of degree at most `max_degree`. Column `j` holds the
/// coefficients of the image of `X^j`.
pub fn residual_operator_matrix(n: u32, a: u32, max_degree: usize) -> RationalMatrix {
    let dim = max_degree + 1;
    let mut m = RationalMatrix::zero(dim, dim);
    for j in 0..dim {
        let image = raabe_residual(&Polynomial::monomial(Rational::one(), j), RaabeParams::new(n, a));
        for i in 0..dim {
            m.set(i, j, image.coeff(i));
        }
    }
    m
}

/// Basis of the space of polynomial solutions of degree at most
/// `max_degree`, by exact kernel computation.
///
/// For `max_degree >= n` (and `a >= 2`) the basis is a single scalar
/// multiple of `B_n`, normalized so its lowest-order nonzero coefficient
/// is 1; for `max_degree < n` it is empty.
pub fn solution_kernel(n: u32, a: u32, max_degree: usize) -> Vec<Polynomial> {
    assert!(a >= 1, "multiplier must be at least 1");
    let m = residual_operator_matrix(n, a, max_degree);
    kernel_basis(&m)
        .into_iter()
        .map(Polynomial::new)
        .collect()
}

/// Scales `p` so its lowest-order nonzero coefficient is 1, matching
/// the normalization of [`solution_kernel`] output. Returns the zero
/// polynomial unchanged.
pub fn normalize_lowest_coeff(p: &Polynomial) -> Polynomial {
    match p.coeffs().iter().find(|c| !c.is_zero()) {
        Some(lead) => p.scale(&lead.clone().recip()),
        None => Polynomial::zero(),
    }
}
