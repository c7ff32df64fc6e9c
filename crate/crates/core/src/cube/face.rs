use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    Zero,
    One,
    Star,
}

/// A face of `I^N`, written as a word in `{0, 1, *}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    cells: Vec<Cell>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Incidence {
    Incoming,
    Outgoing,
}

/// `κ_k = 0, 1, 0, 1, ...` for `k = 1, 2, 3, ...`.
pub fn kappa(k: usize) -> u8 {
    ((k + 1) % 2) as u8
}

impl Face {
    pub fn new(cells: Vec<Cell>) -> Self {
        Face { cells }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn ambient(&self) -> usize {
        self.cells.len()
    }

    pub fn dimension(&self) -> usize {
        self.cells.iter().filter(|&&c| c == Cell::Star).count()
    }

    /// 1-based positions of the asterisks, increasing.
    pub fn asterisks(&self) -> Vec<usize> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == Cell::Star)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Subface obtained by setting the `k`-th asterisk to `value`.
    pub fn subface(&self, k: usize, value: u8) -> Result<Face> {
        let j = *self
            .asterisks()
            .get(k.wrapping_sub(1))
            .ok_or_else(|| Error::invalid(format!("face {self} has no asterisk number {k}")))?;
        let mut cells = self.cells.clone();
        cells[j - 1] = if value == 0 { Cell::Zero } else { Cell::One };
        Ok(Face { cells })
    }
}

/// Incoming iff the value put at the `k`-th asterisk of `face` equals `κ_k`.
pub fn classify_subface(face: &Face, k: usize, value: u8) -> Result<Incidence> {
    if k == 0 || k > face.dimension() {
        return Err(Error::invalid(format!("face {face} has no asterisk number {k}")));
    }
    if value > 1 {
        return Err(Error::invalid("subface value must be 0 or 1"));
    }
    Ok(if value == kappa(k) { Incidence::Incoming } else { Incidence::Outgoing })
}

impl FromStr for Face {
    type Err = Error;

    fn from_str(s: &str) -> Result<Face> {
        let cells = s
            .chars()
            .filter(|c| !matches!(c, ',' | ' ' | '(' | ')'))
            .map(|c| match c {
                '0' => Ok(Cell::Zero),
                '1' => Ok(Cell::One),
                '*' => Ok(Cell::Star),
                other => Err(Error::invalid(format!("`{other}` is not 0, 1 or *"))),
            })
            .collect::<Result<_>>()?;
        Ok(Face { cells })
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cells {
            f.write_str(match c {
                Cell::Zero => "0",
                Cell::One => "1",
                Cell::Star => "*",
            })?;
        }
        Ok(())
    }
}

/// Lexicographically ordered `r`-subsets of `0..n`.
pub(crate) fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Indexing of the `d`-faces of `I^n`: lexicographic rank of the asterisk set,
/// then the fixed coordinates read as a binary number (leftmost most significant).
#[derive(Clone, Debug)]
pub(crate) struct FaceIndex {
    n: usize,
    d: usize,
    sets: Vec<Vec<usize>>,
}

impl FaceIndex {
    pub fn new(n: usize, d: usize) -> Self {
        FaceIndex { n, d, sets: subsets(n, d) }
    }

    pub fn len(&self) -> usize {
        self.sets.len() << (self.n - self.d)
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// Index of the face with 0-based asterisks `stars` and fixed values `bits`
    /// (one entry per coordinate; entries at asterisks are ignored).
    pub fn index(&self, stars: &[usize], bits: &[u8]) -> usize {
        let rank = self.sets.binary_search_by(|s| s.as_slice().cmp(stars)).expect("asterisk set");
        let mut b = 0usize;
        for (j, &v) in bits.iter().enumerate() {
            if !stars.contains(&j) {
                b = b << 1 | v as usize;
            }
        }
        rank << (self.n - self.d) | b
    }

    /// Asterisks and fixed values of face `i`.
    pub fn face(&self, i: usize) -> (Vec<usize>, Vec<u8>) {
        let free = self.n - self.d;
        let stars = self.sets[i >> free].clone();
        let mut bits = vec![0u8; self.n];
        let mut b = i & ((1 << free) - 1);
        for j in (0..self.n).rev() {
            if !stars.contains(&j) {
                bits[j] = (b & 1) as u8;
                b >>= 1;
            }
        }
        (stars, bits)
    }

    pub fn to_face(&self, i: usize) -> Face {
        let (stars, bits) = self.face(i);
        Face::new(
            (0..self.n)
                .map(|j| {
                    if stars.contains(&j) {
                        Cell::Star
                    } else if bits[j] == 0 {
                        Cell::Zero
                    } else {
                        Cell::One
                    }
                })
                .collect(),
        )
    }
}
