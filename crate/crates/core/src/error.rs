use thiserror::Error;

/// Errors produced by the simulation engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("beam splitter is not unitary: |t|²+|r|²-1 = {norm_defect:.3e}, t·r*+r·t* = {phase_defect:.3e} (tol {tol:.1e})")]
    NonUnitary {
        norm_defect: f64,
        phase_defect: f64,
        tol: f64,
    },

    #[error("truncation too small: {dropped:.3e} probability mass lost, tolerance {tol:.1e}")]
    TruncationInsufficient { dropped: f64, tol: f64 },

    #[error("state has zero norm")]
    ZeroState,

    #[error("eigenvalue iteration did not converge for a {0}-node rule")]
    ConvergenceFailure(usize),

    #[error("gaussian width {0:.3e} is too small; increase the truncation instead")]
    DegenerateGamma(f64),

    #[error(
        "circle rule with {nodes} nodes aliases photon number {n}: first alias amplitude bound {bound:.3e}"
    )]
    AliasingRisk { n: usize, nodes: usize, bound: f64 },

    #[error("tensor product would hold {count} atoms, budget is {budget}")]
    AtomBudgetExceeded { count: usize, budget: usize },

    #[error("truncation levels differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("photon number {0} exceeds the factorial range (max 170)")]
    FactorialOverflow(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable variant name for machine-facing messages.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonUnitary { .. } => "NonUnitary",
            Error::TruncationInsufficient { .. } => "TruncationInsufficient",
            Error::ZeroState => "ZeroState",
            Error::ConvergenceFailure(_) => "ConvergenceFailure",
            Error::DegenerateGamma(_) => "DegenerateGamma",
            Error::AliasingRisk { .. } => "AliasingRisk",
            Error::AtomBudgetExceeded { .. } => "AtomBudgetExceeded",
            Error::DimensionMismatch(..) => "DimensionMismatch",
            Error::FactorialOverflow(_) => "FactorialOverflow",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
