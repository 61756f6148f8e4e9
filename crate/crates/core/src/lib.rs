//! Two-mode beam splitter simulation with two independent engines.
//!
//! * [`fock_engine`] expands input states in the truncated number basis and
//!   scatters them by substituting the output-mode expansion of each input
//!   creation operator.
//! * [`janszky`] writes input states as finite superpositions of coherent
//!   states on circles or straight lines, scatters them by the classical
//!   amplitude law `(α, β) ↦ (tα + rβ, tβ + rα)`, and projects back onto the
//!   number basis.
//!
//! Both engines produce [`TwoModeFock`] states, which the [`diagnostics`]
//! module compares (fidelity) and analyses (Schmidt coefficients).

pub mod beam_splitter;
pub mod diagnostics;
pub mod error;
pub mod fock_engine;
pub mod janszky;
pub mod quadrature;
pub mod special;
pub mod state;

/// Complex amplitude used for states, coherent labels and splitter coefficients.
pub type Complex = num_complex::Complex64;

pub use beam_splitter::{BeamSplitter, DEFAULT_UNITARITY_TOL};
pub use diagnostics::{
    entanglement_entropy, fidelity, schmidt_decomposition, schmidt_singular_values, Schmidt,
};
pub use error::{Error, Result};
pub use fock_engine::{SqueezeParams, DEFAULT_SQUEEZE_N_MAX, DEFAULT_TAIL_TOL};
pub use janszky::{CoherentAtom, LineSuperposition, PathMeta, TwoModeAtom, TwoModeSuperposition};
pub use quadrature::{CircleRule, HermiteRule};
pub use state::{FockVector, TwoModeFock};
