//! The causal set `(ℕ, ◁)` attached to `α` and the Young-Fibonacci graph.

mod causal;
mod differential;
mod yf;

pub use causal::{
    causal_order_window, is_natural_extension, linear_extensions, order_invariance_check, CausalSetSpec,
    CausalWindow,
};
pub use differential::{differential_poset_check, DifferentialReport, GradedFamily, Violation};
pub use yf::{yf_adjacency_export, yf_dimension, yf_level, yf_predecessors, yf_successors, FibWord};
