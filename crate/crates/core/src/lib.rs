//! Distance graphs of finite spaces under the Rosenbloom-Tsfasman metric.
//!
//! The crate builds `G(X, D)` by brute force for words over `Z_q`, direct
//! products and permutations, produces the closed-form structure of the same
//! graph as a [`GraphExpr`], and certifies that the two agree together with
//! the derived facts (degree, connectivity, chromatic number, recovery of `D`
//! from the degree).

pub mod coloring;
pub mod error;
pub mod expr;
pub mod formula;
pub mod graph;
pub mod isomorphism;
pub mod limits;
pub mod space;
pub mod verify;

pub use coloring::{chromatic_number, ChromaticResult, Coloring};
pub use error::{Error, Result};
pub use expr::GraphExpr;
pub use graph::{build_distance_graph, verify_embedding, ComponentPartition, Graph, GraphDocument};
pub use isomorphism::{find_isomorphism, is_isomorphism};
pub use limits::Limits;
pub use space::{DistanceSet, Point, SpaceSpec};
