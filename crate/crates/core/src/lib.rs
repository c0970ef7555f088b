//! Alon-Tarsi numbers of graphs and the orientations that certify them.
//!
//! * [`graph`]: labelled simple graphs, standard families, Cartesian and corona products.
//! * [`eulerian`]: orientations and the signed Eulerian subdigraph count.
//! * [`density`]: exact maximum subgraph density via minimum cuts.
//! * [`atsolver`]: lower bounds, the bipartite closed form, exhaustive search, chromatic number.
//! * [`construct`]: product and corona orientations built from factor orientations.
//! * [`theorems`]: one checker per claim about hypercube products and coronas.

pub mod atsolver;
pub mod budget;
pub mod construct;
pub mod density;
pub mod error;
pub mod eulerian;
pub mod graph;
pub mod theorems;

pub use budget::Budget;
pub use error::{Error, Result};
pub use eulerian::{Engine, EulerianTally, Orientation};
pub use graph::{Bipartition, Graph, Label};
