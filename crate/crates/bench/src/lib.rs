//! Fixtures shared by the engine benchmarks.

use beamsplit_core::{BeamSplitter, Complex, TwoModeFock};

/// Unbalanced splitter with complex coefficients.
pub fn skewed_splitter() -> BeamSplitter {
    BeamSplitter::new(
        Complex::from_polar(0.3f64.sqrt(), 0.4),
        Complex::from_polar(0.7f64.sqrt(), 0.4 + std::f64::consts::FRAC_PI_2),
        1e-12,
    )
    .expect("unitary")
}

/// Deterministic dense state supported on total photon number ≤ `n_max`.
pub fn dense_state(n_max: usize) -> TwoModeFock {
    let dim = n_max + 1;
    let amps = (0..dim * dim)
        .map(|idx| {
            let (m, n) = (idx / dim, idx % dim);
            if m + n <= n_max {
                Complex::new(
                    ((m * 7 + n * 3) % 11) as f64 - 5.0,
                    ((m * 5 + n) % 7) as f64 - 3.0,
                )
            } else {
                Complex::new(0.0, 0.0)
            }
        })
        .collect();
    TwoModeFock::from_row_major(n_max, amps)
        .expect("square")
        .renormalized()
        .expect("nonzero")
}
