//! Proper list edge-colorings of loopless multigraphs under local list-size
//! bounds, built by repeatedly shifting colors along augmenting chains.
//!
//! Three bounds are supported, each with its own chain construction:
//!
//! * Shannon-local, |f(x, L)| ≥ ⌊3·deg(x)/2⌋: two-edge fans ([`shannon`]);
//! * Vizing-local, |f(x, L)| ≥ deg(x) + μ(x): multi-edge fans ([`vizing`]);
//! * König-local on bipartite graphs, |f(x, L)| ≥ deg(x): alternating paths
//!   only ([`bipartite`]).
//!
//! where f(x, L) is the set of colors common to every list at `x`. The
//! [`engine`] drives any of them to a total coloring and checks the
//! potential certificate at every step; [`oracle`] is an exhaustive search
//! for cross-checking small instances.

pub mod bipartite;
pub mod chain;
pub mod coloring;
pub mod engine;
pub mod error;
pub mod gen;
pub mod graph;
pub mod io;
pub mod lists;
pub mod oracle;
pub mod shannon;
pub mod vizing;

pub use chain::{Chain, PathChain, ResolveOutcome};
pub use coloring::{PartialColoring, Potential};
pub use engine::{color_graph, Algorithm, RunStats};
pub use error::{Error, Result};
pub use graph::{EdgeId, Multigraph, VertexId};
pub use lists::{BoundMode, Color, ColorSet, ListAssignment};
