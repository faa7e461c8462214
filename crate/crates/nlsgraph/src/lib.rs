//! Numerical toolkit for the mass-constrained focusing NLS energy
//!
//! ```text
//! E(u) = 1/2 ||u'||^2_{L2(G)} - 1/p ||u||^p_{Lp(G)},      2 < p < 6,
//! ```
//!
//! on non-compact metric graphs, under the mass constraint `||u||^2_{L2} = mu`.
//! The crate decides, numerically and structurally, whether the constrained
//! infimum is attained: it provides the closed-form reference levels of the
//! line and half-line, monotone and symmetric rearrangements with preimage
//! counting, a projected-gradient solver with stationarity certification,
//! topological nonexistence tests (Assumption (H), bubble towers), and the
//! cut-and-paste competitor constructions used to certify existence.

pub mod closed_forms;
pub mod error;
pub mod graph;
pub mod mesh;
pub mod minimize;
pub mod rearrange;
pub mod report;
pub mod surgery;

pub use error::{GraphError, RearrangeError, SolveError};
pub use graph::{Edge, EdgeKind, GraphBuilder, MetricGraph, VertexId, Violation};
pub use mesh::{EnergyReport, GraphFunction, Mesh};
pub use minimize::{Existence, ExistenceVerdict, MinimizeResult, SolveOptions};
