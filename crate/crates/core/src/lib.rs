pub mod algebra;
pub mod error;
pub mod exec;
pub mod guards;
pub mod tetramap;
pub mod cube;
pub mod graph;
pub mod lattice;
pub mod quandle;
pub mod roseman;

pub use error::{Error, Result};
pub use guards::Guards;
