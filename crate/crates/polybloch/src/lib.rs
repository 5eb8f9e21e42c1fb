//! Lifted polylogarithms on the branched cover of ℂ∖{0,1}, exact discovery of
//! their functional relations from quiver mutations, and numeric verification
//! of relation constants modulo period lattices.
//!
//! The crate is organized around an exact substrate (`exact`), the numeric
//! evaluator for the lifted polylogarithms (`polylog`), exact symbolic
//! machinery for differential relations (`symbolic`), a cluster/quiver engine
//! (`quiver`), kernel-based relation discovery (`discovery`), numeric
//! realization and scenario verification (`realize`), and the Grassmannian
//! regulator maps (`regulator`). The `cli` module ties everything together
//! for batch use.

pub mod cli;
pub mod discovery;
pub mod exact;
pub mod polylog;
pub mod quiver;
pub mod realize;
pub mod regulator;
pub mod symbolic;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Laurent division with no exact quotient.
    #[error("no exact Laurent quotient exists")]
    NonDivisible,
    /// Mutation requested at a frozen vertex.
    #[error("vertex {0} is frozen")]
    FrozenVertex(usize),
    /// Mutation class enumeration exceeded the seed cap.
    #[error("mutation class exceeded cap of {cap} seeds ({found} found)")]
    CapExceeded { cap: usize, found: usize },
    /// Evaluation at a branch point or outside the domain.
    #[error("domain error: {0}")]
    DomainError(String),
    /// Series evaluation at a branch point.
    #[error("branch point at z = {0}")]
    BranchPoint(f64),
    /// A real input sits on a cut of the requested component and no side
    /// flag was supplied.
    #[error("input on the cut interval {0}; an explicit ±0i side flag is required")]
    RequiresSideFlag(&'static str),
    /// Relation and realization refer to different generator registries.
    #[error("mismatched registries: {0}")]
    MismatchedRegistry(String),
    /// A realized point's signs contradict the declared sign pair.
    #[error("component mismatch at term {term}: {detail}")]
    ComponentMismatch { term: usize, detail: String },
    /// A configuration has a vanishing coordinate where genericity is needed.
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    /// Malformed input (CLI or JSON).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
