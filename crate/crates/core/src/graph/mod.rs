//! Double-point graphs of 2-knot diagrams, their regular colorings and the
//! partition function `χ_φ(s; Γ)`.

mod coloring;
pub mod fixtures;
mod model;

pub use coloring::{chi, count_colorings, enumerate_colorings, ChiValue, ColoringPlan, Step};
pub use model::{Edge, EdgeKind, End, GraphBuilder, Resolution, SingularGraph, Vertex1, Vertex6};
