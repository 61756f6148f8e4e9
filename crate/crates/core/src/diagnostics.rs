//! Entanglement and overlap diagnostics on two-mode states.

use crate::error::{Error, Result};
use crate::state::{FockVector, TwoModeFock, ZERO_NORM};

/// Schmidt form of a normalised two-mode state: coefficients in
/// nonincreasing order and the leading pair of mode functions.
#[derive(Debug, Clone)]
pub struct Schmidt {
    pub values: Vec<f64>,
    /// Leading mode-`a` vector (unit norm).
    pub leading_a: FockVector,
    /// Leading mode-`b` vector (unit norm), so the state is
    /// `≈ values[0]·leading_a ⊗ leading_b` when the rank is one.
    pub leading_b: FockVector,
}

/// Singular value decomposition of the normalised amplitude matrix.
pub fn schmidt_decomposition(state: &TwoModeFock) -> Result<Schmidt> {
    let norm = state.norm_sqr().sqrt();
    if norm < ZERO_NORM {
        return Err(Error::ZeroState);
    }
    let normalized = state.renormalized()?;
    let dim = state.n_max() + 1;
    let svd = normalized
        .matrix()
        .clone()
        .try_svd(true, true, f64::EPSILON, 0)
        .ok_or(Error::ConvergenceFailure(dim))?;
    let u = svd.u.as_ref().expect("requested");
    let v_t = svd.v_t.as_ref().expect("requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let lead = order[0];
    Ok(Schmidt {
        values: order.iter().map(|&i| svd.singular_values[i]).collect(),
        leading_a: FockVector::new(u.column(lead).iter().copied().collect())?,
        leading_b: FockVector::new(v_t.row(lead).iter().copied().collect())?,
    })
}

/// Nonincreasing singular values of the normalised amplitude matrix.
pub fn schmidt_singular_values(state: &TwoModeFock) -> Result<Vec<f64>> {
    Ok(schmidt_decomposition(state)?.values)
}

/// Von Neumann entropy (nats) of the squared Schmidt coefficients.
pub fn entanglement_entropy(values: &[f64]) -> f64 {
    values
        .iter()
        .map(|v| v * v)
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.ln())
        .sum()
}

/// `|⟨a|b⟩|² / (‖a‖²‖b‖²)`.
pub fn fidelity(a: &TwoModeFock, b: &TwoModeFock) -> Result<f64> {
    let overlap = a.inner(b)?;
    let (na, nb) = (a.norm_sqr(), b.norm_sqr());
    if na.sqrt() < ZERO_NORM || nb.sqrt() < ZERO_NORM {
        return Err(Error::ZeroState);
    }
    Ok((overlap.norm_sqr() / (na * nb)).clamp(0.0, 1.0))
}

/// Largest amplitude difference after removing the global phase of `b`
/// relative to `a`. Both vectors are compared as given (no renormalisation).
pub fn max_abs_diff_up_to_phase(a: &FockVector, b: &FockVector) -> Result<f64> {
    let overlap = b.inner(a)?;
    if overlap.norm() < ZERO_NORM {
        return Err(Error::ZeroState);
    }
    let phase = overlap / overlap.norm();
    let aligned = FockVector::new(b.amps().iter().map(|x| x * phase).collect())?;
    a.max_abs_diff(&aligned)
}
