//! Noncommutative polynomial algebra over [`ZSeries`](crate::kernel::ZSeries):
//! PBW normal ordering by rewriting, tensor powers, morphism extension and
//! the Hopf-axiom defect computations built on top of them.

mod element;
mod hopf;
mod morphism;
mod normal;
mod table;
mod tensor;
mod word;

pub use element::{AlgebraElement, ElementDisplay};
pub(crate) use element::fmt_coefficient_term;
pub use hopf::{
    antipode_axiom_defect, coassociativity_defect, conjugate_by_exp, coproduct_homomorphism_defect,
    counit_defect, jacobi_defect, AntipodeDefect, CounitDefect,
};
pub use morphism::{Image, MorphismKind, MorphismTable};
pub use normal::{Engine, DEFAULT_STEP_BUDGET};
pub use table::BracketTable;
pub use tensor::{TensorDisplay, TensorElement, TensorKey};
pub use word::{GenId, Generator, Word};

use thiserror::Error;

use crate::kernel::KernelError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("unknown generator id {0}")]
    UnknownGenerator(GenId),
    #[error("rewriting step budget of {0} exceeded; the bracket table does not terminate")]
    StepBudgetExceeded(u64),
    #[error("morphism has no image for generator `{0}`")]
    MissingImage(String),
    #[error("morphism image kinds are inconsistent: {0}")]
    ImageKind(&'static str),
    #[error("tensor rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}
