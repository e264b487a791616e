//! Exact momentum-space realization of the quantum algebra by differential
//! operators with spin-1/2 matrix coefficients.

mod field;
mod operator;
mod realize;

use thiserror::Error;

pub use field::{Axis, Coeff, FieldError, NumericCoeff, Point, Var};
pub use operator::{DerivIndex, DiffOperator, SpinMatrix};
pub use realize::{
    casimir_eval, diffop_commutator, generator_images, hamiltonian_reconstruction, hermitian_bracket_suite,
    hermitization, index_assignment_check, pair_suite, pauli_lubanski_scalar, position_bracket_table,
    position_operator, quantum_spin, realization_defect_suite, spin_report, FVariant, IndexAssignment, PairDefect,
    PositionBracket, PositionChoice, Realization, SpinReport, SpinTriple,
};

use crate::algdef::AlgdefError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MomentumError {
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("not realizable: {0}")]
    Unsupported(String),
    #[error("invalid spin matrices: {0}")]
    BadSpin(String),
    #[error("invalid position function: {0}")]
    BadPositionFunction(String),
    #[error(transparent)]
    Field(FieldError),
    #[error(transparent)]
    Algdef(#[from] AlgdefError),
}

/// Realized generator in the quantum algebra with spin 1/2, mass symbol `m`.
pub fn realize(name: &str, variant: FVariant) -> Result<DiffOperator, MomentumError> {
    Realization::quantum(variant)?.generator(name).cloned()
}
