//! Miura generators, the Harish-Chandra projection, and the Feigin-Frenkel
//! correspondence between Segal-Sugawara vectors and W-algebra generators.

mod cartan;
#[cfg(feature = "center-bracket")]
mod center;
mod check;
mod miura;

pub use cartan::{CartanElement, CartanVar};
#[cfg(feature = "center-bracket")]
pub use center::{center_bracket, center_bracket_vacuum};
pub use check::{check_ff, check_ff_corrupted, check_square, hc_project, weight};
pub use miura::{
    apply_symmetric, apply_word, dual_coefficients, miura_coefficients, miura_generators, miura_operator, Kind, Shape,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FfError {
    #[error("not of weight zero: {0}")]
    NotWeightZero(String),
    #[error("not central at the critical level: {0}")]
    NotCentral(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Current(#[from] current::CurrentError),
    #[error(transparent)]
    W(#[from] winterp::WError),
    #[error(transparent)]
    Scalar(#[from] scalars::ScalarError),
}
