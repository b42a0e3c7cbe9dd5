//! λ-brackets induced by Adler-type operators.
//!
//! [`h_entry`] computes single entries of the bracket matrix from the Adler map,
//! [`master_bracket`] extends a [`BracketMatrix`] to arbitrary differential
//! polynomials, and the `check_*` functions report exact residuals.

mod adler;
mod checks;
mod lambda;
mod matrix;

use diffalg::{DiffError, GenId};
use psido::PsiError;
use thiserror::Error;

pub use adler::{adler, adler_negative_form, h_entry};
pub use checks::{all_pairs, all_pass, all_triples, check_jacobi, check_skew, jacobi_residual, par_map, CheckRecord};
pub use lambda::LambdaPoly;
pub use matrix::{master_bracket, BracketMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PvaError {
    #[error("generator {0} is not in the bracket table")]
    UnknownGenerator(GenId),
    #[error(transparent)]
    Psi(#[from] PsiError),
    #[error(transparent)]
    Diff(#[from] DiffError),
}

impl PvaError {
    pub fn is_horizon(&self) -> bool {
        matches!(self, PvaError::Psi(PsiError::HorizonExhausted { .. }))
    }
}
