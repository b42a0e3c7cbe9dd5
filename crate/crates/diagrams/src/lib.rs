//! Brauer and walled Brauer diagrams with loop parameter `α`, and their
//! realization as tensors on `N`-dimensional coordinate space.

mod diagram;
mod realize;
mod sum;

pub use diagram::{hom_basis, Color, Diagram, Word};
pub use realize::{interp_rank_check, rank, realize, realize_diagram, RankReport, Tensor};
pub use sum::{braiding, cap, compose, cup, identity, symmetrizer, tensor, DiagramSum};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagError {
    #[error("word mismatch: {left} vs {right}")]
    WordMismatch { left: String, right: String },
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("coefficient {0} still depends on α")]
    NotEvaluated(String),
    #[error("symplectic realization needs even N, got {0}")]
    OddDimension(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Which interpolating category the diagrams live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    GL,
    O,
    Sp,
}

impl std::str::FromStr for Family {
    type Err = DiagError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(Family::GL),
            "o" | "so" => Ok(Family::O),
            "sp" => Ok(Family::Sp),
            _ => Err(DiagError::Parse(format!("unknown family {s}"))),
        }
    }
}
