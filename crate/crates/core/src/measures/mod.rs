//! Probability measures on permutations and on orders of `ℕ`.
//!
//! The elementary measures `P^ρ` live on a single `S_n`. The boundary points
//! form the space `Ω`: the uniform apex `*` and pairs `(α, p)`. Exact answers
//! are rational whenever every factor involved is rational.

mod alpha;
mod classify;
mod dist;
mod dual;
mod elementary;
mod marginal;
mod nu;
mod sample;

pub use alpha::{AlphaSpec, OmegaPoint, Tail, TailRule, UpdateCase};
pub use classify::{classify_limit, Classification, ClassifyConfig, DesignedPath, Growth};
pub use dist::FiniteDistribution;
pub use dual::{dual_step, sample_order_prefix_dual, DualState, OrderPrefix, UsedPositions};
pub use elementary::{
    conditional_position_distribution, elementary_pmf, elementary_projection, elementary_projection_with,
    l_statistic,
    l_statistic_f64, position_of_one_distribution, sample_elementary, sample_elementary_projection,
    ProjectionMode,
};
pub use marginal::{exact_marginal, mixed_marginal, prefix_to_projection};
pub use nu::{nu_distribution, NuDistribution};
pub use sample::{keys_to_permutation, sample_order_keys, sample_projection, sample_uniform, OrderKey};

/// Default truncation tolerance for infinite products.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;
