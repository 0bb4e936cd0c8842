//! Outcome type for exact and numeric residual checks.
//!
//! Checks in this crate return the residual itself, not a bare boolean,
//! so a failing check carries enough information to locate the failure.

use std::fmt;

use num_traits::Zero;

use crate::algebra::{Polynomial, Rational};

/// What a residual check actually measured.
#[derive(Clone, Debug)]
pub enum ResidualData {
    /// Exact symbolic residual polynomial (zero polynomial on success).
    Poly(Polynomial),
    /// Sampled numeric residuals, judged against a tolerance.
    Samples { values: Vec<f64>, tolerance: f64 },
    /// First failing index of an exact coefficient comparison.
    CoeffMismatch {
        /// Base index `k` at which the relation first fails.
        k: u64,
        /// The compared index `a*k`.
        ak: u64,
        /// `(u, v)` pair at `a*k`.
        found: (Rational, Rational),
        /// `(u, v)` pair at `k`.
        expected: (Rational, Rational),
    },
    /// Nothing to report beyond the verdict.
    Empty,
}

/// Result of a residual check, with a witness of failure when nonzero.
#[derive(Clone, Debug)]
pub struct ResidualReport {
    /// Human-readable description of what was checked.
    pub params: String,
    pub is_zero: bool,
    pub residual: ResidualData,
    /// Description of the first failing index or point, when any.
    pub witness: Option<String>,
}

impl ResidualReport {
    /// Wraps an exact residual polynomial; zero polynomial means success.
    pub fn symbolic(params: impl Into<String>, residual: Polynomial) -> Self {
        let is_zero = residual.is_zero();
        let witness = if is_zero {
            None
        } else {
            let lowest = residual
                .coeffs()
                .iter()
                .position(|c| !c.is_zero())
                .unwrap_or(0);
            Some(format!(
                "lowest nonzero coefficient at X^{}: {}",
                lowest,
                residual.coeff(lowest)
            ))
        };
        ResidualReport {
            params: params.into(),
            is_zero,
            residual: ResidualData::Poly(residual),
            witness,
        }
    }

    /// Wraps sampled numeric residuals judged against `tolerance`.
    pub fn numeric(params: impl Into<String>, values: Vec<f64>, tolerance: f64) -> Self {
        let worst = values
            .iter()
            .cloned()
            .map(f64::abs)
            .fold(0.0f64, f64::max);
        let is_zero = worst <= tolerance;
        let witness = if is_zero {
            None
        } else {
            Some(format!("max |residual| = {worst:.3e} exceeds {tolerance:.3e}"))
        };
        ResidualReport {
            params: params.into(),
            is_zero,
            residual: ResidualData::Samples { values, tolerance },
            witness,
        }
    }

    /// Successful exact comparison with nothing further to show.
    pub fn exact_pass(params: impl Into<String>) -> Self {
        ResidualReport {
            params: params.into(),
            is_zero: true,
            residual: ResidualData::Empty,
            witness: None,
        }
    }

    /// Failed exact coefficient comparison at base index `k`.
    pub fn coeff_mismatch(
        params: impl Into<String>,
        k: u64,
        ak: u64,
        found: (Rational, Rational),
        expected: (Rational, Rational),
    ) -> Self {
        let witness = format!(
            "k={k}: (u,v) at {ak} is ({}, {}) but ({}, {}) at {k}",
            found.0, found.1, expected.0, expected.1
        );
        ResidualReport {
            params: params.into(),
            is_zero: false,
            residual: ResidualData::CoeffMismatch {
                k,
                ak,
                found,
                expected,
            },
            witness: Some(witness),
        }
    }

    /// Base index of the first coefficient mismatch, if this report
    /// came from a coefficient comparison that failed.
    pub fn mismatch_index(&self) -> Option<u64> {
        match &self.residual {
            ResidualData::CoeffMismatch { k, .. } => Some(*k),
            _ => None,
        }
    }

    /// The residual polynomial, if this was a symbolic check.
    pub fn residual_poly(&self) -> Option<&Polynomial> {
        match &self.residual {
            ResidualData::Poly(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for ResidualReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero {
            write!(f, "{}: residual = 0", self.params)?;
            if let ResidualData::Samples { tolerance, .. } = &self.residual {
                write!(f, " (within {tolerance:.3e})")?;
            }
            Ok(())
        } else {
            write!(f, "{}: residual != 0", self.params)?;
            if let Some(w) = &self.witness {
                write!(f, "; {}", w)?;
            }
            if let ResidualData::Poly(p) = &self.residual {
                write!(f, "; residual = {}", p)?;
            }
            Ok(())
        }
    }
}
