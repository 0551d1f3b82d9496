//! Perfect H-tilings in randomly perturbed dense graphs.
//!
//! Density invariants of a template, seeded samplers for `G ∪ G(n,p)`,
//! exact and heuristic tiling search with checkable certificates,
//! regularity-style pair tools, and coupled Monte Carlo sweeps.

pub mod density;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod pattern;
pub mod random;
pub mod rational;
pub mod regularity;
pub mod tiling;

pub use density::{classify, Category, DensityProfile};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use pattern::Pattern;
pub use random::Seed;
pub use rational::Rational;
pub use tiling::{perfect_tiling, Tiling, TilingResult, TilingStatus};
