//! The tetrahedral complex: faces of `I^N`, admissible colorings, boundary
//! matrices, homology dimensions and multiplicative 3-cocycles.

mod boundary;
mod cocycle;
mod coloring;
mod face;
pub mod linalg;

pub use boundary::{
    basis_size, boundary_matrix, homology_dims, homology_from, BoundaryMatrix, Coefficients, HomologyDims,
};
pub use cocycle::{
    build_a, check_normalized, search_monomial_cocycles, verify_cocycle, verify_cocycle_with, Cocycle3,
    CocycleCounterexample, CocycleReport, Contraction, MonomialCocycle, NormalizationReport, SearchHit,
};
pub use coloring::{extend_coloring, CubeColoring, CubeSchedule, Step};
pub use face::{classify_subface, kappa, Cell, Face, Incidence};
