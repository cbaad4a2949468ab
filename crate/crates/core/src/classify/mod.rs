//! Solution families of the integral sine subtraction and addition laws:
//! descriptors, validators, constructors, and classifiers that recover a
//! family from a given solution.

use alloc::string::String;

use thiserror::Error;

use crate::equations::EquationError;
use crate::functions::FunctionError;

mod decompose;
mod family;
mod lemmas;
mod prop31;
mod tree;

pub use decompose::{
    decompose_sine_addition, decompose_sine_subtraction, SineAddDecomposition, SineSubDecomposition,
};
pub use family::{
    build_pair, construct, construct_t36, construct_t44, validate_descriptor, ConstraintLine,
    ConstraintReport, FamilyDescriptor, FamilyTag,
};
pub use lemmas::{lemma_suite_t36, lemma_suite_t44, LemmaCheck, LemmaReport};
pub use prop31::{verify_prop31, Prop31Report};
pub use tree::{classify, classify_t36, classify_t44, ClassificationTrace};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    #[error("input is not a solution (residual {residual:e})")]
    NotASolution { residual: f64 },
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("no family shape fits: {0}")]
    Unrepresentable(String),
    #[error("{0}")]
    ConstraintViolation(ConstraintReport),
    #[error("unknown or mismatched family tag {0}")]
    UnknownTag(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error(transparent)]
    Equation(#[from] EquationError),
    #[error(transparent)]
    Function(#[from] FunctionError),
}
