//! The lossless symmetric beam splitter.
//!
//! Output annihilation operators are `a_out = t·a_in + r·b_in` and
//! `b_out = r·a_in + t·b_in`. Equivalently, input creation operators expand as
//! `a_in† = t·a_out† + r·b_out†`, `b_in† = r·a_out† + t·b_out†`, which is the
//! form both engines use.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::Complex;

/// Default tolerance for the unitarity constraints.
pub const DEFAULT_UNITARITY_TOL: f64 = 1e-12;

/// A validated `(t, r)` pair with `|t|² + |r|² = 1` and `t·r* + r·t* = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitter {
    t: Complex,
    r: Complex,
    tol: f64,
}

impl BeamSplitter {
    pub fn new(t: Complex, r: Complex, tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "unitarity tolerance must be positive and finite, got {tol}"
            )));
        }
        if !(t.re.is_finite() && t.im.is_finite() && r.re.is_finite() && r.im.is_finite()) {
            return Err(Error::InvalidArgument(
                "beam splitter coefficients must be finite".into(),
            ));
        }
        let norm_defect = t.norm_sqr() + r.norm_sqr() - 1.0;
        let phase_defect = (t * r.conj() + r * t.conj()).norm();
        if norm_defect.abs() > tol || phase_defect > tol {
            return Err(Error::NonUnitary {
                norm_defect,
                phase_defect,
                tol,
            });
        }
        Ok(Self { t, r, tol })
    }

    /// `t = 1, r = 0`.
    pub fn identity() -> Self {
        Self {
            t: Complex::new(1.0, 0.0),
            r: Complex::new(0.0, 0.0),
            tol: DEFAULT_UNITARITY_TOL,
        }
    }

    /// The 50:50 splitter `t = 1/√2, r = i/√2`.
    pub fn balanced() -> Self {
        Self {
            t: Complex::new(FRAC_1_SQRT_2, 0.0),
            r: Complex::new(0.0, FRAC_1_SQRT_2),
            tol: DEFAULT_UNITARITY_TOL,
        }
    }

    /// Real transmission amplitude `√T` with reflection `i√(1−T)`.
    pub fn from_transmittance(transmittance: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&transmittance) {
            return Err(Error::InvalidArgument(format!(
                "transmittance must lie in [0, 1], got {transmittance}"
            )));
        }
        Self::new(
            Complex::new(transmittance.sqrt(), 0.0),
            Complex::new(0.0, (1.0 - transmittance).sqrt()),
            DEFAULT_UNITARITY_TOL,
        )
    }

    pub fn t(&self) -> Complex {
        self.t
    }

    pub fn r(&self) -> Complex {
        self.r
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// The splitter with coefficients `(t*, r*)`, which undoes this one.
    pub fn inverse(&self) -> Self {
        Self {
            t: self.t.conj(),
            r: self.r.conj(),
            tol: self.tol,
        }
    }

    /// Classical combination law for coherent amplitudes: `(α, β) ↦ (tα + rβ, tβ + rα)`.
    pub fn transform_labels(&self, alpha: Complex, beta: Complex) -> (Complex, Complex) {
        (self.t * alpha + self.r * beta, self.t * beta + self.r * alpha)
    }
}
