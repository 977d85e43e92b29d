//! Exact closed-form parameters for the constructed families, growth
//! estimates, and comparison reports against published parameter tables.
//!
//! All counts are [`BigUint`] and all ratios [`BigRational`]; floats only
//! appear in estimate columns.

mod closed_forms;
mod tables;

use num::bigint::BigUint;
use num::rational::Ratio;
use num::{One, ToPrimitive, Zero};
use thiserror::Error;

pub use closed_forms::{
    ex3_params, ex42_params, ex50_params, minimal_x, tang_cycle_params, tang_params, IntersectionSide, SchemeRow,
};
pub use tables::{parse_printed_number, table_report, write_csv, PrintedRow, ReportRow, Table};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyticsError {
    #[error("parameters out of range: {0}")]
    Range(&'static str),
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("x = {x} is not the least positive integer with (l+1) | nx; that is {minimal}")]
    XNotMinimal { x: u64, minimal: u64 },
    #[error("cycle length {0} unsupported; use 3 or a multiple of 6")]
    UnsupportedCycle(u64),
    #[error("{0} is outside the open interval (0, 1)")]
    Domain(String),
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn entropy(x: f64) -> f64 {
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

/// `H(x) = -x log2 x - (1-x) log2 (1-x)`.
pub fn binary_entropy(x: Ratio<u64>) -> Result<f64, AnalyticsError> {
    if x.numer().is_zero() || x >= Ratio::one() {
        return Err(AnalyticsError::Domain(x.to_string()));
    }
    Ok(entropy(x.to_f64().expect("ratio of u64 is finite")))
}

/// `2^{n H(k/n)} / sqrt(2 pi n p (1-p))` with `p = k/n`, the usual
/// Stirling approximation of `C(n, k)`. Defined for real `0 < k < n`.
pub fn stirling_binomial_estimate(n: f64, k: f64) -> f64 {
    let p = k / n;
    (n * entropy(p)).exp2() / (2.0 * std::f64::consts::PI * n * p * (1.0 - p)).sqrt()
}
