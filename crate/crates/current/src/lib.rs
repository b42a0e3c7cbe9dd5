//! Classical Lie algebras, the vacuum module `U(g[t^{-1}]t^{-1})` in PBW form,
//! the affine action at a given level, and Segal-Sugawara vectors.

mod affine;
mod lie;
mod ssvec;
mod uenv;

pub use affine::{affine_act, affine_act_form, central_defects, is_central};
pub use lie::{LieData, LieFamily, Part};
pub use ssvec::{
    cycle_class_size, partition_sum, partitions, ss_vector_a, ss_vector_bc, ss_vector_interp, ss_vector_interp_bc,
    trace_term, weight_a, weight_bc, z_lambda, Variant,
};
pub use uenv::{Factor, SymElement, UEnvElement};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurrentError {
    #[error("m = {0} must be even and positive for types B and C")]
    OddM(u32),
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("sp_N needs even N, got {0}")]
    OddSymplectic(usize),
    #[error("operation not defined for {0}")]
    WrongFamily(String),
    #[error("parse error: {0}")]
    Parse(String),
}
