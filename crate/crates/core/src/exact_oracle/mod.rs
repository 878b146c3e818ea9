//! Independent checks on honest elliptic curves over prime fields.
//!
//! Each component is realized as a curve with `Q = O` and `P` a rational
//! point whose order matches the component's torsion (or is large, standing
//! in for infinite order). Sections become explicit rational functions built
//! from chord and vertical lines; spaces `L(D)` come from [`rr_basis`] and
//! ranks from evaluation at enough rational points.

mod curve;
mod divisor;
mod field;
mod function;
mod linalg;
mod petri;
mod realization;
mod riemann_roch;
mod verify;

pub use curve::{Curve, Pt};
pub use divisor::Divisor;
pub use field::{is_prime, next_prime, Fp};
pub use function::{merge_function, miller, FunctionRep, Line};
pub use linalg::{eval_rank, rank_and_nullspace, sample_bound, RankResult};
pub use petri::{component_petri, PetriMatrix};
pub use realization::{find_realization, realize_at_prime, CurveRealization, SearchLimits};
pub use riemann_roch::{aspect_divisor, rr_basis};
pub use verify::{
    default_p_min, inject_fault, verify_instance, CheckRecord, ComponentReport, Fault, OracleConfig, OracleSession,
    VerificationReport,
};

use crate::chain_sections::ChainError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("the zero function has no divisor")]
    ZeroFunction,
    #[error("intersection of {0} is not defined over the base field")]
    NonRationalDivisor(String),
    #[error("declared divisor {declared} differs from computed {computed}")]
    DivisorMismatch { declared: String, computed: String },
    #[error("need {needed} pole-free sample points, only {available} available; use a larger prime")]
    InsufficientPoints { needed: usize, available: usize },
    #[error("no realization for {what} within {budget} curves")]
    SearchExhausted { what: String, budget: usize },
    #[error("torsion order {0} is below 2")]
    InvalidTorsion(u32),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
}
