use std::collections::BTreeMap;

use crate::error::{guard, Error, Result};
use crate::exec;
use crate::guards::Guards;
use crate::tetramap::TetraMap;

use super::coloring::CubeSchedule;
use super::face::kappa;
use super::linalg::{rank_mod, rank_rational, SparseColumn};

/// Integer matrix stored by sparse columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    rows: usize,
    columns: Vec<SparseColumn>,
}

impl BoundaryMatrix {
    pub fn new(rows: usize, columns: Vec<SparseColumn>) -> Self {
        BoundaryMatrix { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.columns.len())
    }

    pub fn columns(&self) -> &[SparseColumn] {
        &self.columns
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.columns[col]
            .binary_search_by_key(&(row as u32), |&(r, _)| r)
            .map_or(0, |i| self.columns[col][i].1)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &BoundaryMatrix) -> Result<BoundaryMatrix> {
        if self.cols() != rhs.rows {
            return Err(Error::ArityMismatch { left: self.cols(), right: rhs.rows });
        }
        let columns = rhs
            .columns
            .iter()
            .map(|c| {
                let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
                for &(k, v) in c {
                    for &(r, w) in &self.columns[k as usize] {
                        *acc.entry(r).or_insert(0) += v * w;
                    }
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        Ok(BoundaryMatrix { rows: self.rows, columns })
    }

    pub fn rank_rational(&self) -> usize {
        rank_rational(self.rows, &self.columns)
    }

    pub fn rank_mod(&self, q: u64) -> usize {
        rank_mod(self.rows, &self.columns, q)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> i64 {
        self.columns.iter().flatten().map(|&(_, v)| v.abs()).max().unwrap_or(0)
    }
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of admissible colorings of `I^n`.
pub fn basis_size(n: usize, h: usize) -> f64 {
    (h as f64).powi(binom(n, 2) as i32)
}

/// Matrix of `d_n = Σ_k (d^i_k − d^o_k)` from colorings of `I^n` to colorings of
/// `I^{n-1}`, both indexed lexicographically by their seed colors.
///
/// For `n = 2` the target is the single empty coloring of `I^1` and the matrix is zero.
pub fn boundary_matrix(n: usize, phi: &TetraMap, guards: &Guards) -> Result<BoundaryMatrix> {
    if n < 2 {
        return Err(Error::invalid("boundary matrices start at n = 2"));
    }
    let h = phi.h();
    guard("cube_basis", basis_size(n, h), guards.cube_basis)?;
    let cols = basis_size(n, h) as u64;
    if n == 2 {
        return Ok(BoundaryMatrix { rows: 1, columns: vec![Vec::new(); cols as usize] });
    }
    let sched = CubeSchedule::new(n)?;
    let sub = CubeSchedule::new(n - 1)?;
    let rows = basis_size(n - 1, h) as usize;
    let faces = sched.faces2().clone();
    let sub_faces = sub.faces2();
    // For each facet (coordinate k fixed to v): sign and the 2-faces of I^n that
    // carry the seeds of the facet, read as I^{n-1}.
    let facets: Vec<(i64, Vec<usize>)> = (0..n)
        .flat_map(|k| [0u8, 1].map(|v| (k, v)))
        .map(|(k, v)| {
            let sign = if v == kappa(k + 1) { 1 } else { -1 };
            let lift = |j: usize| if j < k { j } else { j + 1 };
            let seeds = sub
                .seeds()
                .iter()
                .map(|&f| {
                    let (stars, bits) = sub_faces.face(f);
                    let stars: Vec<usize> = stars.into_iter().map(lift).collect();
                    let mut full = vec![0u8; n];
                    for (j, &b) in bits.iter().enumerate() {
                        full[lift(j)] = b;
                    }
                    full[k] = v;
                    faces.index(&stars, &full)
                })
                .collect();
            (sign, seeds)
        })
        .collect();
    let m = sched.seeds().len();
    let columns = exec::map_collect(cols, |c| {
        let mut seed = vec![0u32; m];
        let mut rest = c;
        for slot in (0..m).rev() {
            seed[slot] = (rest % h as u64) as u32;
            rest /= h as u64;
        }
        let mut colors = vec![0u32; sched.num_faces()];
        sched.run_into(phi, &seed, &mut colors).map_err(|_| ())?;
        let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
        for (sign, seeds) in &facets {
            let row = seeds.iter().fold(0u32, |r, &f| r * h as u32 + colors[f]);
            *acc.entry(row).or_insert(0) += sign;
        }
        Ok(acc.into_iter().filter(|&(_, v)| v != 0).collect::<SparseColumn>())
    });
    let columns = columns
        .into_iter()
        .collect::<std::result::Result<Vec<_>, ()>>()
        .map_err(|_| Error::Inconsistent("map does not solve the tetrahedron equation".into()))?;
    Ok(BoundaryMatrix { rows, columns })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Rational,
    Prime(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomologyDims {
    pub kernel: usize,
    pub image: usize,
    pub homology: usize,
}

/// `dim ker d_n`, `rank d_{n+1}` and `dim H_n`.
pub fn homology_dims(n: usize, phi: &TetraMap, coefficients: Coefficients, guards: &Guards) -> Result<HomologyDims> {
    let dn = boundary_matrix(n, phi, guards)?;
    let up = boundary_matrix(n + 1, phi, guards)?;
    Ok(homology_from(&dn, &up, coefficients))
}

pub fn homology_from(dn: &BoundaryMatrix, up: &BoundaryMatrix, coefficients: Coefficients) -> HomologyDims {
    let rank = |m: &BoundaryMatrix| match coefficients {
        Coefficients::Rational => m.rank_rational(),
        Coefficients::Prime(q) => m.rank_mod(q),
    };
    let kernel = dn.cols() - rank(dn);
    let image = rank(up);
    HomologyDims { kernel, image, homology: kernel - image }
}
