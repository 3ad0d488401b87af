//! Cadlag-path toolkit: finite-breakpoint right-continuous paths on
//! `[0, T]`, the Skorokhod M1 distance via monotone graph couplings,
//! canonical parametric representations with slope-bounded time components,
//! the Lipschitz integral map `y = x + ∫ h(y)`, representation
//! regularization, and a many-server G/M/n+M heavy-traffic simulator.

pub mod error;
pub mod io;
pub mod levy;
pub mod m1;
pub mod path;
pub mod queue;
pub mod regularize;
pub mod rep;
pub mod solve;
pub mod stats;

pub use error::{Error, Result};
pub use path::{segment_dist, CadlagPath, CompletedGraph, Jump, PathKind};
