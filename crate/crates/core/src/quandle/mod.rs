//! Quandles, their low-degree (co)homology and the cocycle state sum of a
//! broken surface diagram.

pub mod diagram;
mod homology;
mod structure;

pub use diagram::{color_diagram, state_sum, ArcRelation, KnotDiagram, TriplePoint};
pub use homology::{
    degenerate_subcomplex_violation, is_degenerate, quandle_boundary, verify_q3cocycle, Q3Report, QuandleBoundary,
    QuandleCochain2, QuandleCochain3,
};
pub use structure::{verify_quandle, GroupTable, Quandle, QuandleReport};
