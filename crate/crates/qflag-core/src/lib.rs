//! Exact symbolic engine for the small quantum cohomology of flag manifolds
//! `G/B`.
//!
//! The crate computes quantum Chevalley products over any finite-type root
//! system, certifies the flatness of the Dubrovin connection and the degree
//! two relation that together pin down the quantum product, and carries out
//! the quantization / straightening machinery for the full flag manifold
//! `Fl_n`: quantum elementary polynomials, the standard-monomial
//! straightening algorithm, multiplication matrices in the quantum basis,
//! quantum Giambelli polynomials, and the Heisenberg-algebra (Toda) layer
//! acting on quantum cohomology. All arithmetic is exact over the rationals.

pub mod chevalley;
pub mod groebner;
pub mod heisenberg;
pub mod perm;
pub mod poly;
pub mod presentation;
pub mod rat;
pub mod report;
pub mod roots;
pub mod schubert;

use thiserror::Error as ThisError;

/// Errors surfaced by the engine. Verification failures are not errors; they
/// are reported through [`report::VerifyReport`].
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("not finite type: positive-root closure exceeded {0} roots")]
    NotFiniteType(usize),
    #[error("{what} index {index} out of range (max {max})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("rank {n} out of range (supported: 2..={max})")]
    RankOutOfRange { n: usize, max: usize },
    #[error("straightening step budget exceeded")]
    StraighteningBudget,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
