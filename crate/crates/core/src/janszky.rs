//! Coherent-state line-superposition engine.
//!
//! A single-mode state is written as a weighted integral of coherent states
//! `|α⟩` along a path in the complex plane: a circle about the origin for
//! number states, a straight line through the origin for squeezed vacua.
//! Discretising the integral gives a finite list of atoms `(w, α)`.
//!
//! Coherent states scatter classically, `|α⟩|β⟩ ↦ |tα + rβ⟩|tβ + rα⟩`, so a
//! beam splitter acts on a two-mode superposition by relabelling atoms. Output
//! number-basis amplitudes are recovered by projecting every atom.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::beam_splitter::BeamSplitter;
use crate::error::{Error, Result};
use crate::fock_engine::SqueezeParams;
use crate::quadrature::{circle_rule, hermite_rule, scaled_hermite, MIN_GAMMA};
use crate::special::{ln_factorial, ln_factorial_unbounded, MAX_FACTORIAL};
use crate::state::{FockVector, TwoModeFock};
use crate::Complex;

/// Largest tolerated first-alias amplitude bound for circle superpositions.
pub const ALIAS_BOUND_TOL: f64 = 1e-12;

/// Default cap on the number of atoms in a two-mode superposition.
pub const DEFAULT_ATOM_BUDGET: usize = 65_536;

/// One quadrature node: weight (all prefactors included) and coherent label.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentAtom {
    pub weight: Complex,
    pub label: Complex,
}

/// Which path a superposition discretises.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathMeta {
    /// Circle of the given radius carrying the number state `|n⟩`.
    Circle { radius: f64, n: usize },
    /// Straight line through the origin at angle `half_angle + π/2`, Gaussian
    /// width `gamma`. `gamma = ∞` is the single atom at the origin.
    Line { gamma: f64, half_angle: f64 },
}

/// A discretised single-mode coherent-state path integral.
#[derive(Debug, Clone, PartialEq)]
pub struct LineSuperposition {
    atoms: Vec<CoherentAtom>,
    path: PathMeta,
}

impl LineSuperposition {
    pub fn atoms(&self) -> &[CoherentAtom] {
        &self.atoms
    }

    pub fn path(&self) -> PathMeta {
        self.path
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Arbitrary atom list; used for hand-built superpositions.
    pub fn from_atoms(atoms: Vec<CoherentAtom>, path: PathMeta) -> Result<Self> {
        if atoms.iter().any(|a| !(finite(a.weight) && finite(a.label))) {
            return Err(Error::InvalidArgument(
                "atom weights and labels must be finite".into(),
            ));
        }
        Ok(Self { atoms, path })
    }
}

/// Two-mode atom `(w, α, β)` standing for `w·|α⟩_a|β⟩_b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeAtom {
    pub weight: Complex,
    pub label_a: Complex,
    pub label_b: Complex,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TwoModeSuperposition {
    atoms: Vec<TwoModeAtom>,
}

impl TwoModeSuperposition {
    pub fn new(atoms: Vec<TwoModeAtom>) -> Result<Self> {
        if atoms
            .iter()
            .any(|a| !(finite(a.weight) && finite(a.label_a) && finite(a.label_b)))
        {
            return Err(Error::InvalidArgument(
                "atom weights and labels must be finite".into(),
            ));
        }
        Ok(Self { atoms })
    }

    pub fn atoms(&self) -> &[TwoModeAtom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

fn finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Radius `√max(n, 1)`, where the weight magnitude `e^{R²/2}·√(n!)/Rⁿ` is
/// stationary in `R`.
pub fn default_circle_radius(n: usize) -> f64 {
    (n.max(1) as f64).sqrt()
}

/// Bound on the first aliased amplitude of an `N`-node circle carrying `|n⟩`:
/// `e^{R²/2}·√(n!)·R^N / (Rⁿ·√((n+N)!))`.
pub fn circle_alias_bound(n: usize, radius: f64, nodes: usize) -> f64 {
    let ln_r = radius.ln();
    let ln_bound = 0.5 * radius * radius + 0.5 * ln_factorial_unbounded(n) + (nodes as f64 - n as f64) * ln_r
        - 0.5 * ln_factorial_unbounded(n + nodes);
    ln_bound.exp()
}

/// Number state `|n⟩` as `N` coherent states on a circle of the given radius:
///
/// `|n⟩ = e^{R²/2}·√(n!)/(2πRⁿ) ∫ dθ e^{−inθ} |R·e^{iθ}⟩`.
///
/// Photon numbers `n ± N, n ± 2N, …` alias onto `n`. The rule is rejected when
/// `n ≥ N`, or when the first alias `n + N` falls inside `intended_n_max` with
/// an amplitude bound above [`ALIAS_BOUND_TOL`].
pub fn circle_number_superposition(
    n: usize,
    radius: f64,
    nodes: usize,
    intended_n_max: usize,
) -> Result<LineSuperposition> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "circle radius must be positive and finite, got {radius}"
        )));
    }
    if n > MAX_FACTORIAL {
        return Err(Error::FactorialOverflow(n));
    }
    let rule = circle_rule(nodes)?;
    if n >= nodes {
        return Err(Error::AliasingRisk {
            n,
            nodes,
            bound: f64::INFINITY,
        });
    }
    if n + nodes <= intended_n_max {
        let bound = circle_alias_bound(n, radius, nodes);
        if bound > ALIAS_BOUND_TOL {
            return Err(Error::AliasingRisk { n, nodes, bound });
        }
    }
    // (2π/N)·e^{R²/2}·√(n!)/(2πRⁿ) = e^{R²/2}·√(n!)/(N·Rⁿ)
    let ln_mag =
        0.5 * radius * radius + 0.5 * ln_factorial(n)? - n as f64 * radius.ln() - (nodes as f64).ln();
    let mag = ln_mag.exp();
    let atoms = (0..nodes)
        .map(|k| CoherentAtom {
            weight: rule.harmonic(-(n as i64), k) * mag,
            label: rule.harmonic(1, k) * radius,
        })
        .collect();
    Ok(LineSuperposition {
        atoms,
        path: PathMeta::Circle { radius, n },
    })
}

/// Squeezed vacuum `S(s·e^{iφ})|0⟩` as a Gaussian-weighted line of coherent
/// states along the direction `i·e^{iφ/2}`:
///
/// `|ζ⟩ = π^{−1/2}·γ^{1/2}·(γ²+1)^{1/4} ∫ dx e^{−γ²x²} |i·x·e^{iφ/2}⟩`.
///
/// The coherent state's own factor `e^{−x²/2}` is folded into the quadrature
/// weight, so the nodes come from a Hermite rule for `e^{−(γ²+½)x²}` and each
/// atom weight carries a compensating `e^{x²/2}`. Every projected amplitude is
/// then a polynomial integrated exactly for degree `< 2N`. Atoms are emitted in
/// `±x` pairs so odd amplitudes cancel exactly in [`synthesize`].
///
/// `s = 0` gives the single atom `(1, 0)`.
pub fn line_squeezed_superposition(p: &SqueezeParams, nodes: usize) -> Result<LineSuperposition> {
    let half_angle = 0.5 * p.phi();
    let gamma = p.gamma();
    if gamma.is_infinite() {
        return Ok(LineSuperposition {
            atoms: vec![CoherentAtom {
                weight: Complex::new(1.0, 0.0),
                label: Complex::new(0.0, 0.0),
            }],
            path: PathMeta::Line { gamma, half_angle },
        });
    }
    if gamma < MIN_GAMMA {
        return Err(Error::DegenerateGamma(gamma));
    }
    let rule = hermite_rule(nodes)?;
    let g2 = gamma * gamma;
    let scaled = scaled_hermite(&rule, (g2 + 0.5).sqrt())?;
    let ln_prefactor = -0.5 * PI.ln() + 0.5 * gamma.ln() + 0.25 * (g2 + 1.0).ln();
    let direction = Complex::new(0.0, 1.0) * Complex::from_polar(1.0, half_angle);
    let atoms = rule
        .symmetric_order()
        .into_iter()
        .map(|k| {
            let x = scaled.nodes[k];
            let w = (ln_prefactor + scaled.weights[k].ln() + 0.5 * x * x).exp();
            CoherentAtom {
                weight: Complex::new(w, 0.0),
                label: direction * x,
            }
        })
        .collect();
    Ok(LineSuperposition {
        atoms,
        path: PathMeta::Line { gamma, half_angle },
    })
}

/// `⟨m|α⟩` for `m = 0..=n_max`. Magnitudes come from log space; the phase
/// factor is a running product of `α/|α|`, so `⟨m|−α⟩ = (−1)^m⟨m|α⟩` holds
/// bit for bit.
pub(crate) fn coherent_projection(alpha: Complex, n_max: usize) -> Vec<Complex> {
    let r2 = alpha.norm_sqr();
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(Complex::new((-0.5 * r2).exp(), 0.0));
    if r2 == 0.0 {
        out.resize(n_max + 1, Complex::new(0.0, 0.0));
        return out;
    }
    let r = r2.sqrt();
    let unit = alpha / r;
    let ln_r = r.ln();
    let mut phase = Complex::new(1.0, 0.0);
    for m in 1..=n_max {
        phase *= unit;
        let ln_mag = -0.5 * r2 + m as f64 * ln_r - 0.5 * ln_factorial_unbounded(m);
        out.push(phase * ln_mag.exp());
    }
    out
}

/// Number-basis amplitudes `∑_atoms w·⟨n|α⟩`, accumulated in atom order.
pub fn synthesize(sup: &LineSuperposition, n_max: usize) -> FockVector {
    let mut amps = vec![Complex::new(0.0, 0.0); n_max + 1];
    for atom in &sup.atoms {
        let proj = coherent_projection(atom.label, n_max);
        for (acc, c) in amps.iter_mut().zip(proj) {
            *acc += atom.weight * c;
        }
    }
    FockVector::new(amps).expect("n_max + 1 > 0")
}

/// All atom pairs with multiplied weights, capped at [`DEFAULT_ATOM_BUDGET`].
pub fn tensor(a: &LineSuperposition, b: &LineSuperposition) -> Result<TwoModeSuperposition> {
    tensor_with_budget(a, b, DEFAULT_ATOM_BUDGET)
}

pub fn tensor_with_budget(
    a: &LineSuperposition,
    b: &LineSuperposition,
    budget: usize,
) -> Result<TwoModeSuperposition> {
    let count = a.len().saturating_mul(b.len());
    if count > budget {
        return Err(Error::AtomBudgetExceeded { count, budget });
    }
    let mut atoms = Vec::with_capacity(count);
    for x in &a.atoms {
        for y in &b.atoms {
            atoms.push(TwoModeAtom {
                weight: x.weight * y.weight,
                label_a: x.label,
                label_b: y.label,
            });
        }
    }
    Ok(TwoModeSuperposition { atoms })
}

/// Relabels every atom `(w, α, β) ↦ (w, tα + rβ, tβ + rα)`.
pub fn bs_transform_atoms(sup: &TwoModeSuperposition, bs: &BeamSplitter) -> TwoModeSuperposition {
    TwoModeSuperposition {
        atoms: sup
            .atoms
            .iter()
            .map(|atom| {
                let (label_a, label_b) = bs.transform_labels(atom.label_a, atom.label_b);
                TwoModeAtom {
                    weight: atom.weight,
                    label_a,
                    label_b,
                }
            })
            .collect(),
    }
}

/// `amps[(m, n)] = ∑_atoms w·⟨m|α⟩·⟨n|β⟩`, evaluated as one matrix product.
pub fn synthesize_two_mode(sup: &TwoModeSuperposition, n_max: usize) -> TwoModeFock {
    let dim = n_max + 1;
    if sup.atoms.is_empty() {
        return TwoModeFock::zeros(n_max);
    }
    let count = sup.atoms.len();
    let mut left = DMatrix::<Complex>::zeros(dim, count);
    let mut right = DMatrix::<Complex>::zeros(count, dim);
    for (j, atom) in sup.atoms.iter().enumerate() {
        for (m, c) in coherent_projection(atom.label_a, n_max).into_iter().enumerate() {
            left[(m, j)] = atom.weight * c;
        }
        for (n, c) in coherent_projection(atom.label_b, n_max).into_iter().enumerate() {
            right[(j, n)] = c;
        }
    }
    TwoModeFock::new(left * right).expect("square by construction")
}

/// Two squeezed vacua on straight lines, scattered by relabelling and
/// projected onto the number basis.
pub fn interfere_squeezed(
    p_a: &SqueezeParams,
    p_b: &SqueezeParams,
    bs: &BeamSplitter,
    nodes: usize,
    n_max: usize,
) -> Result<TwoModeFock> {
    let a = line_squeezed_superposition(p_a, nodes)?;
    let b = line_squeezed_superposition(p_b, nodes)?;
    let input = tensor(&a, &b)?;
    Ok(synthesize_two_mode(&bs_transform_atoms(&input, bs), n_max))
}

/// Number-state input `|m⟩|n⟩` on circles of the default radii, scattered by
/// relabelling and projected onto the number basis.
pub fn interfere_number_states(
    m: usize,
    n: usize,
    bs: &BeamSplitter,
    nodes: usize,
    n_max: usize,
) -> Result<TwoModeFock> {
    // Output amplitudes carry harmonics up to m + n + … ≤ 2·n_max.
    let a = circle_number_superposition(m, default_circle_radius(m), nodes, 2 * n_max)?;
    let b = circle_number_superposition(n, default_circle_radius(n), nodes, 2 * n_max)?;
    let input = tensor(&a, &b)?;
    Ok(synthesize_two_mode(&bs_transform_atoms(&input, bs), n_max))
}
