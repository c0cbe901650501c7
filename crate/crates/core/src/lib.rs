//! Mechanical verification of multiplier Hopf and weak multiplier Hopf
//! structures built from integrals: canonical maps, coassociativity, legs,
//! integrals, counit and antipode constructions, separability idempotents and
//! classification.

pub mod algebra;
pub mod coproduct;
pub mod corpus;
pub mod instance;
pub mod integrals;
pub mod ls_engine;
pub mod report;
pub mod weak_engine;

use thiserror::Error;

pub use algebra::{
    Algebra, DenseAlgebra, Element, SupportedAlgebra, SupportedRule, Tensor2, Tensor3,
};
pub use coproduct::{Coproduct, CoproductRule, Regularity, Which};
pub use instance::{Instance, Scope};
pub use integrals::Functional;
pub use report::{Check, Classification, Status, Verdict};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HopfError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{map} is not regular{}", witness.as_ref().map(|w| format!(" (witness {w})")).unwrap_or_default())]
    NotRegular { map: Which, witness: Option<String> },
    #[error("{0} requires a dense algebra")]
    NotDense(&'static str),
    #[error("{0} requires a unital algebra")]
    NotUnital(&'static str),
    #[error("inconsistent results: {0}")]
    Inconsistency(String),
    #[error("unknown functional {0:?}")]
    UnknownFunctional(String),
    #[error(transparent)]
    Linalg(#[from] hopfforge_linalg::LinalgError),
}

/// Classifies through the weak pipeline when the instance supplies or requests
/// an idempotent other than `1⊗1`, and through the multiplier Hopf pipeline otherwise.
pub fn classify_instance(inst: &Instance) -> Result<Classification, HopfError> {
    if inst.wants_weak() {
        weak_engine::classify_weak(inst)
    } else {
        ls_engine::classify(inst)
    }
}
