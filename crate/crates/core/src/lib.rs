//! Mechanized constructions in square complexes covered by products of trees.
//!
//! * [`complex`]: VH square-complex presentations, the completeness (CSC)
//!   check and a small census of one-vertex examples.
//! * [`develop`]: deterministic rectangle development from a bottom and a
//!   left word.
//! * [`antitorus`]: bounded anti-torus screening and the overlap `γ` of a
//!   `w1`-geodesic with the flat spanned by two axes.
//! * [`obstruction`]: projection diameters that rule out a factor system,
//!   and well-separation numbers of the strip hyperplanes.
//! * [`staircase`]: the finite staircase window, its walls and contact graph,
//!   and a certificate that the contact-graph action is not acylindrical.

pub mod antitorus;
pub mod complex;
pub mod develop;
pub mod obstruction;
pub mod staircase;
mod unionfind;
pub mod word;

pub use antitorus::{AntiTorusError, AntiTorusQuery, Budgets, GammaResult};
pub use complex::{EdgeClass, OrientedEdge, Square, SquareComplexPresentation};
pub use word::{PeriodicWord, Word};
