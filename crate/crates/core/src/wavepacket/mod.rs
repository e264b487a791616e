//! Numerical layer: deformed inner product, free evolution, and expectation
//! values of the realized operators on Gaussian packets.

mod analysis;
mod grid;
mod observable;
mod packet;

use thiserror::Error;

pub use analysis::{
    convergence_gate, ehrenfest, evolution_table, hamiltonian_split_check, uncertainty_report, write_csv,
    EhrenfestReport, EvolutionRow, GateEntry, GateReport, SplitFit, UncertaintyReport,
};
pub use grid::{AxisRule, QuadratureGrid};
pub use observable::{expectation, hermiticity_check, moment, observable, spread, NumericObservable};
pub use packet::{evolve, free_hamiltonian, inner_product, measure_density, GaussianParams, WavePacket};

use crate::momentum::{FieldError, MomentumError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WaveError {
    #[error("packets live on different grids")]
    GridMismatch,
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("deformation parameter must be finite and >= 0, got {0}")]
    BadDeformation(f64),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("output: {0}")]
    Output(String),
    #[error(transparent)]
    Momentum(#[from] MomentumError),
}

impl From<FieldError> for WaveError {
    fn from(e: FieldError) -> Self {
        WaveError::Momentum(MomentumError::Field(e))
    }
}

/// Default tolerance for inner products and expectation values.
pub const EXPECTATION_TOL: f64 = 1e-8;
/// Default tolerance for extrapolated limits.
pub const LIMIT_TOL: f64 = 1e-6;
