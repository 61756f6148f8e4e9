//! Factorial prefactors in log space.
//!
//! Every combinatorial weight in the engines is built from `ln n!` and
//! exponentiated once per term, so nothing overflows before the final
//! product is formed.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest `n` for which `n!` is representable as an `f64`.
pub const MAX_FACTORIAL: usize = 170;

fn ln_factorial_table() -> &'static [f64; MAX_FACTORIAL + 1] {
    static TABLE: OnceLock<[f64; MAX_FACTORIAL + 1]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [0.0; MAX_FACTORIAL + 1];
        let mut fact = 1.0_f64;
        for (n, slot) in table.iter_mut().enumerate().skip(1) {
            fact *= n as f64;
            *slot = fact.ln();
        }
        table
    })
}

/// `ln Γ(n + 1)` for integer `n ≤ 170`.
pub fn ln_factorial(n: usize) -> Result<f64> {
    ln_factorial_table()
        .get(n)
        .copied()
        .ok_or(Error::FactorialOverflow(n))
}

/// `ln n!` for any `n`, continuing the table by direct summation. Only used
/// for error bounds, where the result is never exponentiated back.
pub fn ln_factorial_unbounded(n: usize) -> f64 {
    match ln_factorial(n) {
        Ok(v) => v,
        Err(_) => {
            ln_factorial_table()[MAX_FACTORIAL]
                + ((MAX_FACTORIAL + 1)..=n).map(|k| (k as f64).ln()).sum::<f64>()
        }
    }
}

/// Natural log of the binomial coefficient `C(n, k)`; `-inf` when `k > n`.
pub fn ln_binomial(n: usize, k: usize) -> Result<f64> {
    if k > n {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(ln_factorial(n)? - ln_factorial(k)? - ln_factorial(n - k)?)
}

/// `√(n!)` evaluated through the log table.
pub fn sqrt_factorial(n: usize) -> Result<f64> {
    Ok((0.5 * ln_factorial(n)?).exp())
}
