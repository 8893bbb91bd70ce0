//! Base-2 log-space arithmetic.
//!
//! Gauge values of jump families fall far below the smallest positive `f64`
//! (2^{-1/φ} with φ = 2^{-40} is 2^{-2^40}), so every gauge value, count and
//! cover sum travels as its base-2 logarithm. Linear values are produced only
//! on request, together with a flag saying whether they survived conversion.

use serde::{Deserialize, Serialize};

/// A nonnegative real stored as `log2(value)`. Zero is `-inf`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Log2(pub f64);

/// Result of materializing a [`Log2`] in linear space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Linear {
    pub value: f64,
    /// Set when the true value is positive but rounds to zero or to a subnormal.
    pub underflow: bool,
    pub overflow: bool,
}

impl Log2 {
    pub const ZERO: Log2 = Log2(f64::NEG_INFINITY);
    pub const ONE: Log2 = Log2(0.0);

    pub fn from_value(v: f64) -> Log2 {
        Log2(v.log2())
    }

    pub fn from_count(n: u64) -> Log2 {
        Log2((n as f64).log2())
    }

    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }


    pub fn linear(self) -> Linear {
        let value = self.0.exp2();
        Linear {
            value,
            underflow: !self.is_zero() && (value == 0.0 || !value.is_normal()),
            overflow: value.is_infinite(),
        }
    }
}

// multiplying values adds their logarithms
#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Mul for Log2 {
    type Output = Log2;

    fn mul(self, other: Log2) -> Log2 {
        Log2(self.0 + other.0)
    }
}

/// `log2(2^a + 2^b)` without leaving log space.
pub fn log2_add(a: f64, b: f64) -> f64 {
    log2_sum(&[a, b])
}

/// `log2(Σ 2^{x_i})`, shifted by the maximum and accumulated with Neumaier
/// compensation. Empty input gives `-inf`.
pub fn log2_sum(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if max == f64::INFINITY {
        return f64::INFINITY;
    }
    let mut sum = NeumaierSum::default();
    for &x in xs {
        sum.add((x - max).exp2());
    }
    max + sum.total().log2()
}

/// `log2(2^m - 1)` for `m ≥ 0`, accurate for both tiny and huge `m`.
pub fn log2_pow2_minus_one(m: f64) -> f64 {
    if m <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if m > 60.0 {
        // 2^m - 1 = 2^m (1 - 2^-m)
        m + (-(-m).exp2()).ln_1p() / std::f64::consts::LN_2
    } else {
        (m.exp2() - 1.0).log2()
    }
}

/// Compensated (Neumaier) summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = NeumaierSum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_of_equal_terms() {
        let xs = vec![-3.0; 8];
        assert!((log2_sum(&xs) - 0.0).abs() < 1e-15);
    }

    #[test]
    fn sum_handles_deep_underflow() {
        // 2^-5000 + 2^-5000 = 2^-4999, not representable linearly
        assert!((log2_add(-5000.0, -5000.0) + 4999.0).abs() < 1e-12);
        assert_eq!(log2_sum(&[]), f64::NEG_INFINITY);
        assert_eq!(log2_add(f64::NEG_INFINITY, 1.0), 1.0);
    }

    #[test]
    fn pow2_minus_one() {
        assert_eq!(log2_pow2_minus_one(1.0), 0.0);
        assert!((log2_pow2_minus_one(2.0) - 3f64.log2()).abs() < 1e-15);
        assert!((log2_pow2_minus_one(1e6) - 1e6).abs() < 1e-9);
        assert_eq!(log2_pow2_minus_one(0.0), f64::NEG_INFINITY);
    }

    #[test]
    fn linear_flags_underflow() {
        let l = Log2(-2000.0).linear();
        assert_eq!(l.value, 0.0);
        assert!(l.underflow);
        let l = Log2(-1070.0).linear();
        assert!(l.underflow, "subnormal must be flagged");
        assert!(!Log2::ZERO.linear().underflow);
        assert!(!Log2(-2.0).linear().underflow);
    }

    #[test]
    fn neumaier_beats_naive() {
        let s: NeumaierSum = [1.0, 1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(s.total(), 2.0);
    }
}
