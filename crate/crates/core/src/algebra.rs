//! Exact scalars, dense univariate polynomials over them, and exact
//! linear algebra.
//!
//! Every symbolic operation in this crate bottoms out here. The scalar
//! type is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator; polynomials are dense coefficient vectors with
//! trailing zeros trimmed, so structural equality is semantic equality.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational scalar. Always stored reduced with a
/// positive denominator, which `num_rational` guarantees on every
/// construction and arithmetic result.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor for small rationals.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand constructor for small integers as rationals.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `base^exp` for possibly negative exponents. Panics if `base` is zero
/// and `exp` is negative.
pub fn rat_pow(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow::Pow::pow(base.clone(), exp as u64)
    } else {
        num_traits::pow::Pow::pow(base.clone().recip(), (-exp) as u64)
    }
}

fn assert_reduced(c: &Rational) {
    debug_assert!(c.denom().is_positive(), "denominator must be positive");
    debug_assert!(
        c.numer().gcd(c.denom()).is_one() || c.numer().is_zero(),
        "rational not in lowest terms"
    );
}

/// Dense univariate polynomial over [`Rational`].
///
/// `coeffs[i]` is the coefficient of `X^i`. The vector never ends in a
/// zero, so the zero polynomial is the empty vector and
/// [`degree`](Polynomial::degree) returns `None` for it (a genuine
/// "minus infinity" marker rather than a sentinel integer).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    /// Builds a polynomial from coefficients in ascending degree order,
    /// trimming trailing zeros.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        for c in &coeffs {
            assert_reduced(c);
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c * X^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    /// The identity polynomial `X`.
    pub fn x() -> Self {
        Polynomial::monomial(Rational::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `X^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Exact evaluation by Horner's rule.
    ///
    /// ```
    /// use raabe::algebra::{rat, Polynomial};
    /// let p = Polynomial::new(vec![rat(1, 6), rat(-1, 1), rat(1, 1)]); // X^2 - X + 1/6
    /// assert_eq!(p.eval(&rat(0, 1)), rat(1, 6));
    /// ```
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Floating-point Horner evaluation, for the numeric probes.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rational_to_f64(c);
        }
        acc
    }

    /// `c * self`, exact. Scaling by zero yields the zero polynomial.
    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Exact formal derivative.
    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat_int(i as i64))
            .collect();
        Polynomial::new(coeffs)
    }

    /// Formal antiderivative with constant term zero.
    pub fn antiderivative(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / rat_int(i as i64 + 1));
        }
        Polynomial::new(coeffs)
    }

    /// Exact definite integral over `[lo, hi]`.
    pub fn definite_integral(&self, lo: &Rational, hi: &Rational) -> Rational {
        let anti = self.antiderivative();
        anti.eval(hi) - anti.eval(lo)
    }

    /// Exact composition with an affine argument: returns `p(a*X + b)`.
    ///
    /// Accumulates Horner-style in the affine argument, so the cost is
    /// quadratic in the degree.
    ///
    /// ```
    /// use raabe::algebra::{rat, rat_int, Polynomial};
    /// let p = Polynomial::monomial(rat_int(1), 2); // X^2
    /// let q = p.compose_affine(&rat_int(1), &rat(1, 2)); // (X + 1/2)^2
    /// assert_eq!(q, Polynomial::new(vec![rat(1, 4), rat_int(1), rat_int(1)]));
    /// ```
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Polynomial {
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_affine(a, b);
            acc = &acc + &Polynomial::constant(c.clone());
        }
        acc
    }

    /// `(a*X + b) * self`, exact.
    fn mul_affine(&self, a: &Rational, b: &Rational) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let n = self.coeffs.len();
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !b.is_zero() {
                coeffs[i] += c * b;
            }
            if !a.is_zero() {
                coeffs[i + 1] += c * a;
            }
        }
        Polynomial::new(coeffs)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        Polynomial::new(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        Polynomial::new(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", mag)?;
                    }
                    if i == 1 {
                        write!(f, "X")?;
                    } else {
                        write!(f, "X^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Lossy conversion to `f64`, falling back to a quotient of the parts
/// when the direct conversion fails (it cannot for the magnitudes this
/// crate produces, but the fallback is cheap).
pub fn rational_to_f64(c: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN)
}

/// Row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds from nested rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows in matrix constructor"
        );
        RationalMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in apply");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for (c, vc) in v.iter().enumerate() {
                    let e = self.get(r, c);
                    if !e.is_zero() && !vc.is_zero() {
                        acc += e * vc;
                    }
                }
                acc
            })
            .collect()
    }
}

/// Pivot weight used for row selection: |numerator * denominator|.
fn pivot_weight(c: &Rational) -> BigInt {
    (c.numer() * c.denom()).abs()
}

/// Basis of the right nullspace of `m`, computed by exact Gaussian
/// elimination with partial pivoting on the magnitude of the
/// numerator-denominator product.
///
/// Each basis vector is normalized so its first nonzero entry is 1,
/// which makes the returned basis deterministic: which columns are free
/// does not depend on row choices, only on the column space.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);

    // Reduced row echelon form, tracking the pivot column of each used row.
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let candidate = (pivot_row..rows)
            .filter(|&r| !a.get(r, col).is_zero())
            .max_by_key(|&r| pivot_weight(a.get(r, col)));
        let Some(src) = candidate else { continue };
        if src != pivot_row {
            for c in 0..cols {
                let tmp = a.get(src, c).clone();
                a.set(src, c, a.get(pivot_row, c).clone());
                a.set(pivot_row, c, tmp);
            }
        }
        let inv = a.get(pivot_row, col).clone().recip();
        for c in col..cols {
            let v = a.get(pivot_row, c) * &inv;
            a.set(pivot_row, c, v);
        }
        for r in 0..rows {
            if r == pivot_row || a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col).clone();
            for c in col..cols {
                let v = a.get(r, c) - &(a.get(pivot_row, c) * &factor);
                a.set(r, c, v);
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }

    // One basis vector per free column.
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -a.get(row, free).clone();
        }
        let lead = v
            .iter()
            .find(|c| !c.is_zero())
            .expect("kernel vector cannot be zero")
            .clone();
        for c in &mut v {
            *c /= lead.clone();
        }
        basis.push(v);
    }
    basis
}
