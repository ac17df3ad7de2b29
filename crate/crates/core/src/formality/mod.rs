//! Formality machinery: triple Massey products, degree-truncated minimal
//! models, the s-formality test and the combined manifold verdict.

mod massey;
mod model;
mod sformal;
mod verdict;

use thiserror::Error;

use crate::dga::DgaError;

pub use massey::{
    indeterminacy, massey_representative, massey_scan, massey_search, rechoose, triple_massey,
    ClassIndex, MasseyHit, MasseyResult, Rechoice,
};
pub use model::{build_minimal_model, GeneratorRole, MinimalModel, MinimalModelStage, MAX_ROUNDS};
pub use sformal::{check_s_formality, SFormalityReport, SFormalityVerdict, Witness};
pub use verdict::{formality_stage, formality_verdict, FormalityVerdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormalityError {
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error("primitive does not bound the required product")]
    BadPrimitive,
    #[error("Massey products need classes of positive degree")]
    DegreeZeroClass,
    #[error("input is not connected: betti(0) = {0}")]
    Disconnected(usize),
    #[error("minimal model did not stabilise in degree {degree} after {rounds} rounds")]
    NotStabilised { degree: usize, rounds: usize },
    #[error("cap {cap} must be at least s + 1 = {}", s + 1)]
    CapTooSmall { s: usize, cap: usize },
    #[error("model built through degree {built}, but stage {requested} was requested")]
    ModelTooShort { built: usize, requested: usize },
}
