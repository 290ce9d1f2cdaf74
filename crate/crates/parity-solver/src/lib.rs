//! Parity game solving.
//!
//! The crate provides the classic recursive attractor-decomposition solver
//! (Zielonka's algorithm) and a precision-bounded variant whose number of
//! nontrivial procedure executions is quasi-polynomially bounded, together
//! with the machinery needed to trust and measure them: a brute-force
//! oracle over positional strategies, dominion enumeration, positional
//! strategy extraction and verification, PGSolver-format I/O, seeded game
//! generators, and call/depth instrumentation with an exact-arithmetic
//! bound check.

pub mod attractor;
pub mod batch;
pub mod game;
pub mod generate;
pub mod instrument;
pub mod node_set;
pub mod oracle;
pub mod pgsolver;
pub mod report;
pub mod solvers;

#[cfg(test)]
pub(crate) mod testutil;

pub use game::{Game, GameError, NodeId, NodeSpec, Owner, Priority, SubgameView};
pub use node_set::NodeSet;
pub use solvers::{Algorithm, Precision, Regions, SolveOutcome, SolverConfig, Strategy, solve};
