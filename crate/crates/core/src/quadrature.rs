//! Fixed quadrature rules: equally spaced nodes on the circle and
//! Gauss–Hermite nodes on the real line.
//!
//! Both rules are exact on the integrands the coherent-state engine produces
//! (trigonometric polynomials of bounded degree on the circle, polynomials
//! against a Gaussian on the line), so no adaptivity is used.

use std::f64::consts::{PI, TAU};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::Complex;

/// Largest supported Gauss–Hermite order.
pub const MAX_HERMITE_NODES: usize = 200;

/// Smallest Gaussian width accepted by [`scaled_hermite`].
pub const MIN_GAMMA: f64 = 1e-8;

/// `N` equally spaced angles `θ_k = 2πk/N` with common weight `2π/N`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleRule {
    node_count: usize,
}

impl CircleRule {
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn weight(&self) -> f64 {
        TAU / self.node_count as f64
    }

    pub fn angle(&self, k: usize) -> f64 {
        TAU * k as f64 / self.node_count as f64
    }

    pub fn angles(&self) -> Vec<f64> {
        (0..self.node_count).map(|k| self.angle(k)).collect()
    }

    /// `e^{i·j·θ_k}` with the product `j·k` reduced mod `N` before the
    /// trigonometric call, so large harmonics lose no accuracy.
    pub fn harmonic(&self, j: i64, k: usize) -> Complex {
        let n = self.node_count as i64;
        let reduced = (j.rem_euclid(n) * k as i64).rem_euclid(n);
        Complex::from_polar(1.0, TAU * reduced as f64 / n as f64)
    }

    /// `∑_k w·e^{i·j·θ_k}`: `2π` when `N | j`, otherwise 0.
    pub fn integrate_harmonic(&self, j: i64) -> Complex {
        let w = self.weight();
        (0..self.node_count).map(|k| self.harmonic(j, k) * w).sum()
    }

    pub fn integrate<F: Fn(f64) -> Complex>(&self, f: F) -> Complex {
        let w = self.weight();
        (0..self.node_count).map(|k| f(self.angle(k)) * w).sum()
    }
}

pub fn circle_rule(node_count: usize) -> Result<CircleRule> {
    if node_count == 0 {
        return Err(Error::InvalidArgument(
            "circle rule needs at least one node".into(),
        ));
    }
    Ok(CircleRule { node_count })
}

/// Gauss–Hermite rule for `∫ e^{−x²} f(x) dx`.
///
/// Nodes are ascending and symmetric (`x_k = −x_{N−1−k}`), weights likewise;
/// odd `N` has a node at exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl HermiteRule {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Index pairs `(k, N−1−k)` for the negative/positive node pairs, plus the
    /// centre index for odd `N`. Summing in this order cancels odd integrands
    /// exactly.
    pub fn symmetric_order(&self) -> Vec<usize> {
        symmetric_order(self.nodes.len())
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.symmetric_order()
            .into_iter()
            .map(|k| self.weights[k] * f(self.nodes[k]))
            .sum()
    }

    /// `∑ w_k x_k^d`, paired symmetrically so odd moments vanish exactly.
    pub fn moment(&self, degree: u32) -> f64 {
        self.integrate(|x| x.powi(degree as i32))
    }
}

fn symmetric_order(n: usize) -> Vec<usize> {
    let mut order = Vec::with_capacity(n);
    if n % 2 == 1 {
        order.push(n / 2);
    }
    for k in (0..n / 2).rev() {
        order.push(k);
        order.push(n - 1 - k);
    }
    order
}

/// Values `p_0(x), …, p_{N−1}(x)` of the Hermite polynomials orthonormal
/// against `e^{−x²}`, plus `p_N(x)`.
fn orthonormal_hermite(x: f64, n: usize) -> (Vec<f64>, f64) {
    let mut values = Vec::with_capacity(n);
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25);
    for k in 0..n {
        values.push(cur);
        // x·p_k = √((k+1)/2)·p_{k+1} + √(k/2)·p_{k−1}
        let next = (x * cur - (k as f64 / 2.0).sqrt() * prev) / ((k as f64 + 1.0) / 2.0).sqrt();
        prev = cur;
        cur = next;
    }
    (values, cur)
}

/// Gauss–Hermite rule of order `N` by the Golub–Welsch construction.
///
/// The Jacobi matrix of the Hermite recurrence (zero diagonal, off-diagonal
/// `√(k/2)`) is diagonalised; its eigenvalues are the nodes. Each node is then
/// polished with a Newton step on `p_N`, and its weight is taken from the
/// normalised first eigenvector component `w_k = √π·v_{0k}²`, evaluated as
/// `1/∑_j p_j(x_k)²` so tail weights keep full relative precision.
pub fn hermite_rule(node_count: usize) -> Result<HermiteRule> {
    if node_count == 0 || node_count > MAX_HERMITE_NODES {
        return Err(Error::InvalidArgument(format!(
            "hermite rule order must lie in 1..={MAX_HERMITE_NODES}, got {node_count}"
        )));
    }
    let n = node_count;
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let off = (k as f64 / 2.0).sqrt();
        jacobi[(k - 1, k)] = off;
        jacobi[(k, k - 1)] = off;
    }
    let eigen = jacobi
        .try_symmetric_eigen(f64::EPSILON, 10_000)
        .ok_or(Error::ConvergenceFailure(n))?;
    let mut nodes: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
    nodes.sort_by(f64::total_cmp);

    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (values, p_n) = orthonormal_hermite(*x, n);
            // p_N' = √(2N)·p_{N−1}
            let deriv = (2.0 * n as f64).sqrt() * values[n - 1];
            if deriv == 0.0 || !deriv.is_finite() {
                break;
            }
            let step = p_n / deriv;
            *x -= step;
            if step.abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
                break;
            }
        }
        if !x.is_finite() {
            return Err(Error::ConvergenceFailure(n));
        }
    }

    // Enforce exact mirror symmetry.
    for k in 0..n / 2 {
        let mag = 0.5 * (nodes[n - 1 - k] - nodes[k]);
        nodes[k] = -mag;
        nodes[n - 1 - k] = mag;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    let mut weights: Vec<f64> = nodes
        .iter()
        .map(|&x| {
            let (values, _) = orthonormal_hermite(x, n);
            1.0 / values.iter().map(|p| p * p).sum::<f64>()
        })
        .collect();
    for k in 0..n / 2 {
        let w = 0.5 * (weights[k] + weights[n - 1 - k]);
        weights[k] = w;
        weights[n - 1 - k] = w;
    }
    Ok(HermiteRule { nodes, weights })
}

/// A Hermite rule rescaled to the weight `e^{−γ²x²}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledHermite {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl ScaledHermite {
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        symmetric_order(self.nodes.len())
            .into_iter()
            .map(|k| self.weights[k] * f(self.nodes[k]))
            .sum()
    }
}

/// Substitutes `u = γx`: nodes `x_k/γ`, weights `w_k/γ`.
pub fn scaled_hermite(rule: &HermiteRule, gamma: f64) -> Result<ScaledHermite> {
    if !gamma.is_finite() || gamma < MIN_GAMMA {
        return Err(Error::DegenerateGamma(gamma));
    }
    Ok(ScaledHermite {
        nodes: rule.nodes.iter().map(|x| x / gamma).collect(),
        weights: rule.weights.iter().map(|w| w / gamma).collect(),
    })
}

/// `∫ e^{−x²} x^d dx`: zero for odd `d`, `(d−1)!!·√π/2^{d/2}` for even `d`.
pub fn gaussian_moment(degree: u32) -> f64 {
    if degree % 2 == 1 {
        return 0.0;
    }
    let mut value = PI.sqrt();
    let mut k = 1;
    while k < degree {
        value *= k as f64 / 2.0;
        k += 2;
    }
    value
}
