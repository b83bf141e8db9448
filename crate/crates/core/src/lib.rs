//! Record-dependent probability measures on symmetric groups and on orders
//! of the natural numbers.
//!
//! * [`perm`]: permutations, record words, rank coordinates, projections.
//! * [`graph`]: the graded graph of record words and central measures.
//! * [`measures`]: elementary measures, the uniform apex, the boundary
//!   measures `P^(α,p)` with their samplers and exact marginals.
//! * [`oracle`]: brute-force enumeration over `S_n` for small `n`.
//! * [`experiments`]: Monte Carlo harness for the limit laws.
//! * [`posets`]: the causal set attached to `α` and the Young-Fibonacci graph.
//! * [`verify`]: the end-to-end check suite behind `rdperm verify`.

pub mod error;
mod fenwick;
pub mod experiments;
pub mod graph;
pub mod measures;
pub mod oracle;
pub mod par;
pub mod perm;
pub mod posets;
pub mod rng;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{GraphLevel, PathPrefix};
pub use measures::{AlphaSpec, FiniteDistribution, OmegaPoint, OrderPrefix};
pub use par::Execution;
pub use perm::{Permutation, RankVector, RecordWord};
