//! Exact Bernoulli polynomials, generated two independent ways.
//!
//! The table route builds `B_n` from `B_0 = 1` by taking the formal
//! antiderivative, scaling by `n`, and fixing the constant so that the
//! integral over `[0, 1]` vanishes. The oracle route expands the
//! exponential generating function `t*e^{Xt}/(e^t - 1)` as a truncated
//! power series in `t`, using an exact series reciprocal of
//! `(e^t - 1)/t`, and reads off the coefficient of `t^n`. The two
//! routes share no code beyond basic polynomial arithmetic, so their
//! agreement is evidence rather than tautology.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{rat_int, Polynomial, Rational};
use crate::report::ResidualReport;

/// Default size of the process-wide cached table.
pub const DEFAULT_TABLE_SIZE: usize = 64;

/// Table of `B_0 .. B_max` built by the antiderivative recurrence.
///
/// Immutable once constructed; safe to share across threads.
#[derive(Clone, Debug)]
pub struct BernoulliTable {
    polys: Vec<Polynomial>,
}

impl BernoulliTable {
    /// Builds `B_0 .. B_{max_index}`.
    pub fn new(max_index: usize) -> Self {
        let mut polys = Vec::with_capacity(max_index + 1);
        polys.push(Polynomial::one());
        for n in 1..=max_index {
            polys.push(next_bernoulli(&polys[n - 1], n));
        }
        BernoulliTable { polys }
    }

    /// Wraps an arbitrary sequence of polynomials as a table.
    ///
    /// Intended for experiments that deliberately replace an entry to
    /// watch the identity checks fail; nothing is validated here.
    pub fn from_polys(polys: Vec<Polynomial>) -> Self {
        assert!(!polys.is_empty(), "table must contain at least B_0");
        BernoulliTable { polys }
    }

    pub fn max_index(&self) -> usize {
        self.polys.len() - 1
    }

    /// The entry for index `n`. Panics when `n` exceeds the table.
    pub fn poly(&self, n: usize) -> &Polynomial {
        &self.polys[n]
    }

    pub fn get(&self, n: usize) -> Option<&Polynomial> {
        self.polys.get(n)
    }

    /// Exact check of the derivative identity `B_n' = n * B_{n-1}`
    /// against the table entries. Requires `1 <= n <= max_index`.
    pub fn check_derivative_identity(&self, n: usize) -> ResidualReport {
        assert!(n >= 1 && n <= self.max_index());
        let residual = &self.polys[n].derivative() - &self.polys[n - 1].scale(&rat_int(n as i64));
        ResidualReport::symbolic(format!("derivative identity, n={n}"), residual)
    }

    /// Exact check of the forward-difference identity
    /// `B_n(X+1) - B_n(X) = n * X^{n-1}` against the table entries.
    pub fn check_difference_identity(&self, n: usize) -> ResidualReport {
        assert!(n >= 1 && n <= self.max_index());
        let p = &self.polys[n];
        let shifted = p.compose_affine(&Rational::one(), &Rational::one());
        let expected = Polynomial::monomial(rat_int(n as i64), n - 1);
        let residual = &(&shifted - p) - &expected;
        ResidualReport::symbolic(format!("difference identity, n={n}"), residual)
    }
}

/// `B_n = n * antiderivative(B_{n-1}) + c`, with `c` fixed by requiring
/// the integral over `[0, 1]` to vanish.
fn next_bernoulli(prev: &Polynomial, n: usize) -> Polynomial {
    let raw = prev.antiderivative().scale(&rat_int(n as i64));
    let c = -raw.definite_integral(&Rational::zero(), &Rational::one());
    &raw + &Polynomial::constant(c)
}

fn cached_table() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(|| BernoulliTable::new(DEFAULT_TABLE_SIZE))
}

/// Exact `B_n(X)`, served from a process-wide table.
///
/// ```
/// use raabe::algebra::{rat, rat_int, Polynomial};
/// use raabe::bernoulli::bernoulli_poly;
/// // B_2 = X^2 - X + 1/6
/// let expected = Polynomial::new(vec![rat(1, 6), rat_int(-1), rat_int(1)]);
/// assert_eq!(bernoulli_poly(2), expected);
/// ```
pub fn bernoulli_poly(n: usize) -> Polynomial {
    let table = cached_table();
    if let Some(p) = table.get(n) {
        return p.clone();
    }
    // Beyond the cache: extend privately from the last cached entry.
    let mut current = table.poly(table.max_index()).clone();
    for m in table.max_index() + 1..=n {
        current = next_bernoulli(&current, m);
    }
    current
}

/// Exact `B_n(X)` by the generating-function route, independent of
/// [`bernoulli_poly`].
pub fn bernoulli_poly_oracle(n: usize) -> Polynomial {
    // g[m] = coefficient of t^m in (e^t - 1)/t = 1/(m+1)!.
    let mut factorial = vec![BigInt::one(); n + 2];
    for m in 1..=n + 1 {
        factorial[m] = &factorial[m - 1] * BigInt::from(m);
    }
    let g: Vec<Rational> = (0..=n)
        .map(|m| Rational::new(BigInt::one(), factorial[m + 1].clone()))
        .collect();

    // h = series reciprocal of g, exact: h[0] = 1, and each later term
    // clears the convolution against the known prefix.
    let mut h = vec![Rational::zero(); n + 1];
    h[0] = Rational::one();
    for m in 1..=n {
        let mut acc = Rational::zero();
        for j in 1..=m {
            acc += &g[j] * &h[m - j];
        }
        h[m] = -acc;
    }

    // Coefficient of t^n in e^{Xt} * h is sum_j X^j/j! * h[n-j];
    // scaling by n! yields B_n.
    let coeffs = (0..=n)
        .map(|j| {
            let binom = Rational::new(factorial[n].clone(), factorial[j].clone());
            binom * &h[n - j]
        })
        .collect();
    Polynomial::new(coeffs)
}

/// Derivative identity check against the cached table.
pub fn check_derivative_identity(n: usize) -> ResidualReport {
    cached_table().check_derivative_identity(n)
}

/// Forward-difference identity check against the cached table.
pub fn check_difference_identity(n: usize) -> ResidualReport {
    cached_table().check_difference_identity(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(coeffs: &[(i64, i64)]) -> Polynomial {
        Polynomial::new(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn oracle_matches_frozen_low_degrees() {
        assert_eq!(bernoulli_poly_oracle(0), Polynomial::one());
        assert_eq!(bernoulli_poly_oracle(1), p(&[(-1, 2), (1, 1)]));
        assert_eq!(bernoulli_poly_oracle(2), p(&[(1, 6), (-1, 1), (1, 1)]));
        assert_eq!(
            bernoulli_poly_oracle(3),
            p(&[(0, 1), (1, 2), (-3, 2), (1, 1)])
        );
    }

    #[test]
    fn recurrence_matches_frozen_sixth_degree() {
        // B_6 = X^6 - 3X^5 + 5/2 X^4 - 1/2 X^2 + 1/42
        let b6 = p(&[
            (1, 42),
            (0, 1),
            (-1, 2),
            (0, 1),
            (5, 2),
            (-3, 1),
            (1, 1),
        ]);
        assert_eq!(bernoulli_poly(6), b6);
        assert_eq!(bernoulli_poly_oracle(6), b6);
    }

    #[test]
    fn two_constructions_agree_up_to_30() {
        for n in 0..=30 {
            assert_eq!(
                bernoulli_poly(n),
                bernoulli_poly_oracle(n),
                "constructions disagree at n={n}"
            );
        }
    }

    #[test]
    fn monic_of_degree_n() {
        for n in 0..=30 {
            let b = bernoulli_poly(n);
            assert_eq!(b.degree(), Some(n));
            assert!(b.leading_coeff().unwrap().is_one());
        }
    }

    #[test]
    fn identity_checks_pass_on_true_table() {
        for n in [1, 9, 12, 30] {
            assert!(check_derivative_identity(n).is_zero, "derivative at n={n}");
            assert!(check_difference_identity(n).is_zero, "difference at n={n}");
        }
    }

    #[test]
    fn mutated_table_fails_with_witness() {
        let mut polys: Vec<Polynomial> = (0..=3).map(bernoulli_poly).collect();
        polys[2] = Polynomial::monomial(rat_int(1), 2); // replace B_2 by X^2
        let table = BernoulliTable::from_polys(polys);

        // difference identity at n=2: (X+1)^2 - X^2 - 2X = 1
        let diff = table.check_difference_identity(2);
        assert!(!diff.is_zero);
        assert_eq!(diff.residual_poly().unwrap(), &Polynomial::one());

        // derivative identity at n=3: B_3' - 3X^2 = -3X + 1/2
        let deriv = table.check_derivative_identity(3);
        assert!(!deriv.is_zero);
        assert_eq!(
            deriv.residual_poly().unwrap(),
            &p(&[(1, 2), (-3, 1)])
        );
        assert!(deriv.witness.is_some());
    }

    #[test]
    fn zero_mean_over_unit_interval() {
        for n in 1..=30 {
            let b = bernoulli_poly(n);
            assert!(b
                .definite_integral(&Rational::zero(), &Rational::one())
                .is_zero());
        }
    }

    #[test]
    fn interval_integral_is_a_power_as_polynomial_identity() {
        // The antiderivative A satisfies A(X+1) - A(X) = X^n exactly.
        for n in 1..=12 {
            let anti = bernoulli_poly(n).antiderivative();
            let shifted = anti.compose_affine(&Rational::one(), &Rational::one());
            assert_eq!(
                &shifted - &anti,
                Polynomial::monomial(Rational::one(), n),
                "integral identity fails at n={n}"
            );
        }
    }

    #[test]
    fn extends_past_the_cache() {
        let direct = BernoulliTable::new(DEFAULT_TABLE_SIZE + 2);
        assert_eq!(
            bernoulli_poly(DEFAULT_TABLE_SIZE + 2),
            *direct.poly(DEFAULT_TABLE_SIZE + 2)
        );
    }

    #[test]
    fn table_reads_are_safe_across_threads() {
        let table = std::sync::Arc::new(BernoulliTable::new(16));
        let handles: Vec<_> = (0..4)
            .map(|offset| {
                let table = std::sync::Arc::clone(&table);
                std::thread::spawn(move || {
                    for n in 1..=16 {
                        assert!(table.check_derivative_identity(n).is_zero);
                        assert_eq!(bernoulli_poly(n + offset), *cached_table().poly(n + offset));
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
    }
}
