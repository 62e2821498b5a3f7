//! Exact integer helpers and log-domain values for display.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Natural log of a big integer, accurate to f64 precision for any size.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn ln_rational(x: &BigRational) -> f64 {
    let (n, d) = (x.numer(), x.denom());
    match (n.to_biguint(), d.to_biguint()) {
        (Some(n), Some(d)) => ln_biguint(&n) - ln_biguint(&d),
        _ => f64::NAN,
    }
}

/// A non-negative real stored by its natural logarithm; `None` is exactly zero.
///
/// Used only for display of quantities that overflow `f64`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogValue {
    pub ln: Option<f64>,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue { ln: None };

    pub fn from_ln(ln: f64) -> Self {
        LogValue { ln: Some(ln) }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self::from_ln(x.ln())
        }
    }

    pub fn from_biguint(x: &BigUint) -> Self {
        if x.is_zero() {
            Self::ZERO
        } else {
            Self::from_ln(ln_biguint(x))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ln.is_none()
    }

    pub fn is_finite(&self) -> bool {
        self.ln.is_none_or(f64::is_finite)
    }

    /// Plain value, or infinity when it does not fit in an `f64`.
    pub fn value(&self) -> f64 {
        self.ln.map_or(0.0, f64::exp)
    }

    pub fn log10(&self) -> Option<f64> {
        self.ln.map(|l| l / std::f64::consts::LN_10)
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(log10) = self.log10() else {
            return write!(f, "0");
        };
        if !log10.is_finite() {
            return write!(f, "{}", if log10 > 0.0 { "inf" } else { "0" });
        }
        if (-4.0..15.0).contains(&log10) {
            let v = 10f64.powf(log10);
            let decimals = (12 - log10.floor() as i64).clamp(0, 16) as usize;
            let s = format!("{v:.decimals$}");
            let s = if s.contains('.') {
                s.trim_end_matches('0').trim_end_matches('.')
            } else {
                &s
            };
            write!(f, "{s}")
        } else {
            let exp = log10.floor();
            let mantissa = 10f64.powf(log10 - exp);
            write!(f, "{mantissa:.12}e{exp:+}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert!((ln_factorial(5) - 120f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn ln_of_huge_integer() {
        let x = BigUint::from(3u32).pow(5000);
        assert!((ln_biguint(&x) - 5000.0 * 3f64.ln()).abs() < 1e-6);
    }

    #[test]
    fn log_value_display() {
        assert_eq!(LogValue::from_f64(6.0).to_string(), "6");
        assert_eq!(LogValue::ZERO.to_string(), "0");
        assert_eq!(LogValue::from_f64(0.5).to_string(), "0.5");
        let big = LogValue::from_ln(300.0 * std::f64::consts::LN_10);
        assert!(big.to_string().ends_with("e+300"), "{big}");
    }
}
