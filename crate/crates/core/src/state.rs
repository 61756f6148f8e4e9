//! Truncated number-basis states.
//!
//! Amplitudes are stored raw. Constructors never normalise, so probability
//! lost to truncation stays visible through [`FockVector::norm_deficit`].

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::Complex;

/// Single-mode amplitudes `⟨n|ψ⟩` for `n = 0..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amps: DVector<Complex>,
}

impl FockVector {
    pub fn new(amps: Vec<Complex>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidArgument(
                "a Fock vector needs at least the vacuum amplitude".into(),
            ));
        }
        Ok(Self {
            amps: DVector::from_vec(amps),
        })
    }

    pub fn zeros(n_max: usize) -> Self {
        Self {
            amps: DVector::zeros(n_max + 1),
        }
    }

    /// The number state `|n⟩` truncated at `n_max`.
    pub fn basis(n: usize, n_max: usize) -> Result<Self> {
        if n > n_max {
            return Err(Error::InvalidArgument(format!(
                "basis state {n} lies above truncation {n_max}"
            )));
        }
        let mut v = Self::zeros(n_max);
        v.amps[n] = Complex::new(1.0, 0.0);
        Ok(v)
    }

    pub fn n_max(&self) -> usize {
        self.amps.len() - 1
    }

    pub fn amps(&self) -> &[Complex] {
        self.amps.as_slice()
    }

    pub fn amp(&self, n: usize) -> Complex {
        self.amps[n]
    }

    pub fn as_vector(&self) -> &DVector<Complex> {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `1 − ‖ψ‖²`: probability that lies beyond the truncation.
    pub fn norm_deficit(&self) -> f64 {
        1.0 - self.norm_sqr()
    }

    pub fn renormalized(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm < ZERO_NORM {
            return Err(Error::ZeroState);
        }
        Ok(Self {
            amps: &self.amps / Complex::new(norm, 0.0),
        })
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex> {
        check_same(self.n_max(), other.n_max())?;
        Ok(self.amps.dotc(&other.amps))
    }

    /// Largest `|aₙ − bₙ|`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        check_same(self.n_max(), other.n_max())?;
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Tensor product `|self⟩_a ⊗ |other⟩_b`, truncated at the larger level.
    pub fn tensor(&self, other: &Self) -> TwoModeFock {
        let n_max = self.n_max().max(other.n_max());
        let mut amps = DMatrix::zeros(n_max + 1, n_max + 1);
        for (m, a) in self.amps.iter().enumerate() {
            for (n, b) in other.amps.iter().enumerate() {
                amps[(m, n)] = a * b;
            }
        }
        TwoModeFock { amps }
    }
}

/// Two-mode amplitudes `⟨m|_a⟨n|_b |ψ⟩` on the square `0..=n_max` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeFock {
    amps: DMatrix<Complex>,
}

pub(crate) const ZERO_NORM: f64 = 1e-14;

impl TwoModeFock {
    pub fn new(amps: DMatrix<Complex>) -> Result<Self> {
        if amps.nrows() != amps.ncols() {
            return Err(Error::DimensionMismatch(amps.nrows(), amps.ncols()));
        }
        if amps.nrows() == 0 {
            return Err(Error::InvalidArgument(
                "a two-mode state needs at least the vacuum amplitude".into(),
            ));
        }
        Ok(Self { amps })
    }

    /// Builds from a row-major list of length `(n_max + 1)²`.
    pub fn from_row_major(n_max: usize, amps: Vec<Complex>) -> Result<Self> {
        let dim = n_max + 1;
        if amps.len() != dim * dim {
            return Err(Error::DimensionMismatch(amps.len(), dim * dim));
        }
        Self::new(DMatrix::from_row_slice(dim, dim, &amps))
    }

    pub fn zeros(n_max: usize) -> Self {
        Self {
            amps: DMatrix::zeros(n_max + 1, n_max + 1),
        }
    }

    pub fn vacuum(n_max: usize) -> Self {
        Self::basis(0, 0, n_max).expect("vacuum lies inside any truncation")
    }

    /// `|m⟩_a|n⟩_b`.
    pub fn basis(m: usize, n: usize, n_max: usize) -> Result<Self> {
        if m > n_max || n > n_max {
            return Err(Error::InvalidArgument(format!(
                "basis state ({m}, {n}) lies above truncation {n_max}"
            )));
        }
        let mut s = Self::zeros(n_max);
        s.amps[(m, n)] = Complex::new(1.0, 0.0);
        Ok(s)
    }

    pub fn n_max(&self) -> usize {
        self.amps.nrows() - 1
    }

    pub fn amp(&self, m: usize, n: usize) -> Complex {
        self.amps[(m, n)]
    }

    pub fn matrix(&self) -> &DMatrix<Complex> {
        &self.amps
    }

    pub(crate) fn matrix_mut(&mut self) -> &mut DMatrix<Complex> {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm_deficit(&self) -> f64 {
        1.0 - self.norm_sqr()
    }

    pub fn renormalized(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm < ZERO_NORM {
            return Err(Error::ZeroState);
        }
        Ok(Self {
            amps: &self.amps / Complex::new(norm, 0.0),
        })
    }

    /// Exchanges the two modes.
    pub fn swap_modes(&self) -> Self {
        Self {
            amps: self.amps.transpose(),
        }
    }

    /// Zeroes every amplitude with `m + n > max_total`.
    pub fn truncated_total(&self, max_total: usize) -> Self {
        let mut out = self.clone();
        for m in 0..=self.n_max() {
            for n in 0..=self.n_max() {
                if m + n > max_total {
                    out.amps[(m, n)] = Complex::new(0.0, 0.0);
                }
            }
        }
        out
    }

    /// Probability `∑|a_{m,n}|²` with `m + n > max_total`.
    pub fn mass_above_total(&self, max_total: usize) -> f64 {
        let mut mass = 0.0;
        for m in 0..=self.n_max() {
            for n in 0..=self.n_max() {
                if m + n > max_total {
                    mass += self.amps[(m, n)].norm_sqr();
                }
            }
        }
        mass
    }

    /// Probability carried by amplitudes with `m ≠ n`.
    pub fn off_diagonal_mass(&self) -> f64 {
        let mut mass = 0.0;
        for m in 0..=self.n_max() {
            for n in 0..=self.n_max() {
                if m != n {
                    mass += self.amps[(m, n)].norm_sqr();
                }
            }
        }
        mass
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex> {
        check_same(self.n_max(), other.n_max())?;
        Ok(self.amps.dotc(&other.amps))
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        check_same(self.n_max(), other.n_max())?;
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Sum of two states with equal truncation.
    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same(self.n_max(), other.n_max())?;
        Ok(Self {
            amps: &self.amps + &other.amps,
        })
    }

    pub fn scale(&self, factor: Complex) -> Self {
        Self {
            amps: &self.amps * factor,
        }
    }

    /// Reduced single-mode photon-number distribution of mode `a`.
    pub fn marginal_a(&self) -> Vec<f64> {
        self.amps
            .row_iter()
            .map(|row| row.iter().map(|a| a.norm_sqr()).sum())
            .collect()
    }

    /// Reduced single-mode photon-number distribution of mode `b`.
    pub fn marginal_b(&self) -> Vec<f64> {
        self.amps
            .column_iter()
            .map(|col| col.iter().map(|a| a.norm_sqr()).sum())
            .collect()
    }
}

fn check_same(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(a, b))
    }
}
