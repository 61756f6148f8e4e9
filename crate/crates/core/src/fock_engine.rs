//! Operator-expansion engine on the truncated number basis.
//!
//! Input states are written as polynomials in the input creation operators,
//! each creation operator is replaced by its output-mode expansion, and the
//! resulting double binomial sum is evaluated term by term with log-space
//! prefactors.

use std::f64::consts::{PI, TAU};

use crate::beam_splitter::BeamSplitter;
use crate::error::{Error, Result};
use crate::special::{ln_binomial, ln_factorial, MAX_FACTORIAL};
use crate::state::{FockVector, TwoModeFock};
use crate::Complex;

/// Default bound on probability mass allowed to fall outside a truncation.
pub const DEFAULT_TAIL_TOL: f64 = 1e-10;

/// Default truncation for squeezed-state work.
pub const DEFAULT_SQUEEZE_N_MAX: usize = 32;

/// Squeezing strength `s`, phase `φ`, and the Gaussian width `γ` of the
/// straight-line coherent-state representation.
///
/// The squeeze parameter is `ζ = s·e^{iφ}` with `S(ζ) = exp(−ζ/2·a†² + ζ*/2·a²)`.
/// The width obeys `γ² = 1/(e^{2s} − 1)`; `s = 0` gives `γ = ∞` (the vacuum).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParams {
    s: f64,
    phi: f64,
    gamma: f64,
}

impl SqueezeParams {
    pub fn new(s: f64, phi: f64) -> Result<Self> {
        if !(s >= 0.0 && s.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "squeezing strength must be finite and non-negative, got {s}"
            )));
        }
        if !phi.is_finite() {
            return Err(Error::InvalidArgument(format!("phase must be finite, got {phi}")));
        }
        let gamma = if s == 0.0 {
            f64::INFINITY
        } else {
            (2.0 * s).exp_m1().recip().sqrt()
        };
        Ok(Self {
            s,
            phi: phi.rem_euclid(TAU),
            gamma,
        })
    }

    /// Inverse of the width relation: `s = ½·ln((γ² + 1)/γ²)`.
    pub fn from_gamma(gamma: f64, phi: f64) -> Result<Self> {
        if gamma.is_nan() || gamma <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "gaussian width must be positive, got {gamma}"
            )));
        }
        Self::new(0.5 * (gamma * gamma).recip().ln_1p(), phi)
    }

    /// Input pair for two-squeezer interference at relative phase `φ`.
    ///
    /// Mode `a` carries `ζ_a = s·e^{iφ}` and mode `b` carries `ζ_b = s`. On a
    /// balanced splitter `φ = π` leaves the outputs in a product of squeezed
    /// vacua (mode `a` with phase π, mode `b` with phase 0) and `φ = 0` gives
    /// the two-mode squeezed vacuum `sech s·∑(−e^{i·arg tr}·tanh s)ⁿ|n,n⟩`.
    pub fn interference_pair(s: f64, phi: f64) -> Result<(Self, Self)> {
        Ok((Self::new(s, phi)?, Self::new(s, 0.0)?))
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `tanh s` recovered from the width: `1/(2(γ² + ½))`.
    pub fn tanh_from_gamma(&self) -> f64 {
        if self.gamma.is_infinite() {
            return 0.0;
        }
        1.0 / (2.0 * (self.gamma * self.gamma + 0.5))
    }

    /// `e^{2s}` recovered from the width: `(γ² + 1)/γ²`.
    pub fn e2s_from_gamma(&self) -> f64 {
        if self.gamma.is_infinite() {
            return 1.0;
        }
        let g2 = self.gamma * self.gamma;
        (g2 + 1.0) / g2
    }
}

/// A scattered two-mode state together with the probability dropped because
/// its photon-number block exceeded the truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct Scattered {
    pub state: TwoModeFock,
    pub dropped_mass: f64,
}

fn check_tail(deficit: f64, tail_tol: f64) -> Result<()> {
    if deficit > tail_tol {
        Err(Error::TruncationInsufficient {
            dropped: deficit,
            tol: tail_tol,
        })
    } else {
        Ok(())
    }
}

fn check_n_max(n_max: usize) -> Result<()> {
    if n_max > MAX_FACTORIAL {
        Err(Error::FactorialOverflow(n_max))
    } else {
        Ok(())
    }
}

/// Number-basis amplitudes of the coherent state `|α⟩`:
/// `e^{−|α|²/2}·αⁿ/√(n!)`.
pub fn coherent_fock(alpha: Complex, n_max: usize, tail_tol: f64) -> Result<FockVector> {
    check_n_max(n_max)?;
    let v = FockVector::new(coherent_amplitudes(alpha, n_max))?;
    check_tail(v.norm_deficit(), tail_tol)?;
    Ok(v)
}

/// `⟨n|α⟩` for `n = 0..=n_max`, evaluated per term in log space.
pub(crate) fn coherent_amplitudes(alpha: Complex, n_max: usize) -> Vec<Complex> {
    let r2 = alpha.norm_sqr();
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(Complex::new((-0.5 * r2).exp(), 0.0));
    if r2 == 0.0 {
        out.resize(n_max + 1, Complex::new(0.0, 0.0));
        return out;
    }
    let ln_r = 0.5 * r2.ln();
    let theta = alpha.arg();
    for n in 1..=n_max {
        let ln_mag = -0.5 * r2 + n as f64 * ln_r - 0.5 * ln_factorial(n).unwrap_or(f64::INFINITY);
        out.push(Complex::from_polar(ln_mag.exp(), n as f64 * theta));
    }
    out
}

/// Squeezed vacuum `S(s·e^{iφ})|0⟩`:
/// `⟨2n|ζ⟩ = √(sech s)·√((2n)!)/n!·(−e^{iφ}·tanh s/2)ⁿ`, odd amplitudes zero.
pub fn squeezed_vacuum_fock(p: &SqueezeParams, n_max: usize, tail_tol: f64) -> Result<FockVector> {
    check_n_max(n_max)?;
    let mut amps = vec![Complex::new(0.0, 0.0); n_max + 1];
    let ln_sech_half = -0.5 * p.s.cosh().ln();
    amps[0] = Complex::new(ln_sech_half.exp(), 0.0);
    if p.s > 0.0 {
        let ln_half_tanh = (0.5 * p.s.tanh()).ln();
        // −e^{iφ} = e^{i(φ+π)}
        let step_phase = p.phi + PI;
        for n in 1..=n_max / 2 {
            let ln_mag =
                ln_sech_half + 0.5 * ln_factorial(2 * n)? - ln_factorial(n)? + n as f64 * ln_half_tanh;
            amps[2 * n] = Complex::from_polar(ln_mag.exp(), n as f64 * step_phase);
        }
    }
    let v = FockVector::new(amps)?;
    check_tail(v.norm_deficit(), tail_tol)?;
    Ok(v)
}

/// Two-mode squeezed vacuum `sech s·∑(−e^{i·phase}·tanh s)ⁿ|n⟩|n⟩`.
pub fn two_mode_squeezed_fock(s: f64, phase: f64, n_max: usize, tail_tol: f64) -> Result<TwoModeFock> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "squeezing strength must be finite and non-negative, got {s}"
        )));
    }
    let mut state = TwoModeFock::zeros(n_max);
    let sech = s.cosh().recip();
    let ratio = -Complex::from_polar(s.tanh(), phase);
    let mut term = Complex::new(sech, 0.0);
    for n in 0..=n_max {
        state.matrix_mut()[(n, n)] = term;
        term *= ratio;
    }
    check_tail(state.norm_deficit(), tail_tol)?;
    Ok(state)
}

fn powers(z: Complex, max: usize) -> Vec<Complex> {
    let mut out = Vec::with_capacity(max + 1);
    let mut acc = Complex::new(1.0, 0.0);
    out.push(acc);
    for _ in 0..max {
        acc *= z;
        out.push(acc);
    }
    out
}

/// Adds `weight · U|m⟩|n⟩` into `out`, where `U` is the splitter.
///
/// `(t·a† + r·b†)^m (r·a† + t·b†)^n |00⟩/√(m!n!)` expands into terms with `k`
/// photons from the first factor and `l` from the second landing in mode `a`.
fn accumulate_basis_output(
    out: &mut TwoModeFock,
    m: usize,
    n: usize,
    weight: Complex,
    t_pow: &[Complex],
    r_pow: &[Complex],
) -> Result<()> {
    let total = m + n;
    let ln_norm = -0.5 * (ln_factorial(m)? + ln_factorial(n)?);
    let amps = out.matrix_mut();
    for k in 0..=m {
        let ln_ck = ln_binomial(m, k)?;
        for l in 0..=n {
            let j = k + l;
            let ln_coef =
                ln_ck + ln_binomial(n, l)? + ln_norm + 0.5 * (ln_factorial(j)? + ln_factorial(total - j)?);
            let term = t_pow[k + n - l] * r_pow[m - k + l] * ln_coef.exp();
            amps[(j, total - j)] += weight * term;
        }
    }
    Ok(())
}

/// Output of the basis input `|m⟩_a|n⟩_b`, truncated at `m + n`.
pub fn bs_output_of_basis(m: usize, n: usize, bs: &BeamSplitter) -> Result<TwoModeFock> {
    let total = m + n;
    check_n_max(total)?;
    let mut out = TwoModeFock::zeros(total);
    let t_pow = powers(bs.t(), total);
    let r_pow = powers(bs.r(), total);
    accumulate_basis_output(&mut out, m, n, Complex::new(1.0, 0.0), &t_pow, &r_pow)?;
    Ok(out)
}

/// Scatters an arbitrary two-mode state by linearity over its basis amplitudes.
///
/// Blocks with `m + n > n_max` cannot be represented at the output truncation
/// and are dropped; their probability is returned as `dropped_mass`.
pub fn bs_transform(state: &TwoModeFock, bs: &BeamSplitter, tail_tol: f64) -> Result<Scattered> {
    let n_max = state.n_max();
    check_n_max(n_max)?;
    let t_pow = powers(bs.t(), n_max);
    let r_pow = powers(bs.r(), n_max);
    let mut out = TwoModeFock::zeros(n_max);
    let mut dropped = 0.0;
    for m in 0..=n_max {
        for n in 0..=n_max {
            let amp = state.amp(m, n);
            if amp == Complex::new(0.0, 0.0) {
                continue;
            }
            if m + n > n_max {
                dropped += amp.norm_sqr();
                continue;
            }
            accumulate_basis_output(&mut out, m, n, amp, &t_pow, &r_pow)?;
        }
    }
    check_tail(dropped, tail_tol)?;
    Ok(Scattered {
        state: out,
        dropped_mass: dropped,
    })
}

/// Coincidence probability `|t² + r²|²` for one photon in each input.
pub fn hom_coincidence_probability(bs: &BeamSplitter) -> f64 {
    let (t, r) = (bs.t(), bs.r());
    (t * t + r * r).norm_sqr()
}

/// Output of two squeezed-vacuum inputs, built from their number-basis
/// amplitudes and scattered with [`bs_transform`].
pub fn squeezed_inputs_output(
    p_a: &SqueezeParams,
    p_b: &SqueezeParams,
    bs: &BeamSplitter,
    n_max: usize,
    tail_tol: f64,
) -> Result<Scattered> {
    let a = squeezed_vacuum_fock(p_a, n_max, tail_tol)?;
    let b = squeezed_vacuum_fock(p_b, n_max, tail_tol)?;
    bs_transform(&a.tensor(&b), bs, tail_tol)
}

/// Single-mode photon-number probabilities of a squeezed vacuum, untruncated
/// up to the factorial limit.
fn squeezed_probabilities(s: f64) -> Vec<f64> {
    let p = SqueezeParams::new(s, 0.0).expect("validated by caller");
    squeezed_vacuum_fock(&p, MAX_FACTORIAL, f64::INFINITY)
        .expect("within factorial range")
        .amps()
        .iter()
        .map(|a| a.norm_sqr())
        .collect()
}

/// Smallest truncation at which two squeezed vacua of strength `s` lose at
/// most `tail_tol` when scattered by [`squeezed_inputs_output`].
pub fn suggest_n_max(s: f64, tail_tol: f64) -> Result<usize> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "squeezing strength must be finite and non-negative, got {s}"
        )));
    }
    let p = squeezed_probabilities(s);
    for n_max in 0..=MAX_FACTORIAL {
        let mut kept = 0.0;
        for (j, pj) in p.iter().enumerate().take(n_max + 1) {
            kept += pj * p[..=n_max - j].iter().sum::<f64>();
        }
        if 1.0 - kept <= tail_tol {
            return Ok(n_max);
        }
    }
    Err(Error::TruncationInsufficient {
        dropped: f64::NAN,
        tol: tail_tol,
    })
}
