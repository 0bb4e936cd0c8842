//! Compensated floating-point accumulation.

/// Neumaier's variant of Kahan summation: tracks a running compensation
/// term so that the error of the whole sum stays near one ulp of the
/// result instead of growing with the number of terms.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        CompensatedSum::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancellation_that_naive_summation_loses() {
        let mut s = CompensatedSum::new();
        s.add(1.0);
        s.add(1e100);
        s.add(1.0);
        s.add(-1e100);
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn matches_exact_sum_of_reciprocals() {
        let mut s = CompensatedSum::new();
        for k in 1..=1_000_000u64 {
            s.add(1.0 / k as f64);
        }
        // Reference value of H_1e6 to 15 digits.
        assert!((s.value() - 14.392726722865724).abs() < 1e-12);
    }
}
