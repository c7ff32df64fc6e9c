//! Enumeration limits. Every brute-force routine checks its workload against
//! one of these before starting and fails with `Error::TooLarge` naming it.

#[derive(Clone, Debug, PartialEq)]
pub struct Guards {
    /// Tuples enumerated by a word identity check (h^N).
    pub word_tuples: f64,
    /// Colorings in one basis of the cube complex (h^{n(n-1)/2}).
    pub cube_basis: f64,
    /// Estimated search nodes for graph coloring enumeration.
    pub graph_colorings: f64,
    /// Estimated search nodes for the direct lattice sum.
    pub lattice_direct: f64,
    /// Dimension of the dense transfer matrix (h^{KM}).
    pub transfer_dim: f64,
    /// Tuples in one quandle chain group (|Q|^n) or colorings scanned.
    pub quandle: f64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            word_tuples: 1e8,
            cube_basis: 1e6,
            graph_colorings: 1e8,
            lattice_direct: 1e7,
            transfer_dim: 2048.0,
            quandle: 1e7,
        }
    }
}
