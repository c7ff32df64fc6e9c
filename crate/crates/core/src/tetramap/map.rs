use std::fmt;

use crate::algebra::{is_bijection, partial_transpose_perm, TupleIndex};
use crate::error::{Error, Result};
use crate::exec;

use super::colorset::ColorSet;

/// Bijection of `X³`, stored as a table on triple indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TetraMap {
    set: ColorSet,
    table: Vec<u32>,
}

/// Renders a transpose mask as `123`, `13`, ...
pub fn dirs_label(mask: u32) -> String {
    (0..3).filter(|i| mask >> i & 1 == 1).map(|i| char::from(b'1' + i as u8)).collect()
}

impl TetraMap {
    /// Builds a map from a table on triple indices (`(a·h + b)·h + c`).
    pub fn from_table(set: ColorSet, table: Vec<u32>) -> Result<Self> {
        let size = set.len().pow(3);
        if table.len() != size {
            return Err(Error::invalid(format!("table must have {size} rows")));
        }
        if !is_bijection(&table) {
            return Err(Error::NotBijective("table is not a bijection of X^3".into()));
        }
        Ok(TetraMap { set, table })
    }

    /// Builds a map from a function on color indices.
    pub fn from_fn(set: ColorSet, f: impl Fn([u32; 3]) -> [u32; 3]) -> Result<Self> {
        let ix = TupleIndex::new(set.len(), 3);
        let table = (0..ix.size())
            .map(|i| {
                let t = ix.decode(i);
                ix.encode(&f([t[0], t[1], t[2]])) as u32
            })
            .collect();
        Self::from_table(set, table)
    }

    pub fn identity(set: ColorSet) -> Self {
        let size = set.len().pow(3) as u32;
        TetraMap { set, table: (0..size).collect() }
    }

    /// `(x, y, z) ↦ (x, y + xz, z)` on `Z/h`.
    pub fn bilinear(h: usize) -> Result<Self> {
        let set = ColorSet::explicit(h)?;
        let n = h as u32;
        Self::from_fn(set, |[x, y, z]| [x, (y + x * z) % n, z])
    }

    /// The electric solution
    /// `(x,y,z) ↦ (xy/D, D, yz/D)`, `D = x + z + xyz`, on the reduced set of `Z/p^k`.
    pub fn electric(p: u64, k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::invalid("the electric solution needs k >= 2"));
        }
        let set = ColorSet::reduced(p, k)?;
        let m = set.modulus().expect("reduced set");
        let h = set.len();
        let mut table = Vec::with_capacity(h.pow(3));
        for &x in set.elements() {
            for &y in set.elements() {
                for &z in set.elements() {
                    let (xm, ym, zm) = (m.elem(x as i64), m.elem(y as i64), m.elem(z as i64));
                    let d = xm + zm + xm * ym * zm;
                    let dinv = d
                        .inverse()
                        .map_err(|_| Error::DenominatorNotInvertible { x, y, z })?;
                    let out = [(xm * ym * dinv).value(), d.value(), (ym * zm * dinv).value()];
                    let mut idx = 0usize;
                    for v in out {
                        let i = set.index_of(v).ok_or_else(|| {
                            Error::invalid(format!(
                                "image {v} of ({x}, {y}, {z}) lies outside the color set"
                            ))
                        })?;
                        idx = idx * h + i as usize;
                    }
                    table.push(idx as u32);
                }
            }
        }
        Self::from_table(set, table)
    }

    pub fn set(&self) -> &ColorSet {
        &self.set
    }

    pub fn h(&self) -> usize {
        self.set.len()
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn index(&self) -> TupleIndex {
        TupleIndex::new(self.h(), 3)
    }

    /// Image of a triple of color indices.
    pub fn apply(&self, t: [u32; 3]) -> [u32; 3] {
        let h = self.h() as u32;
        let mut y = self.table[((t[0] * h + t[1]) * h + t[2]) as usize];
        let c = y % h;
        y /= h;
        [y / h, y % h, c]
    }

    /// Image of a triple of color values.
    pub fn apply_values(&self, v: [u64; 3]) -> Result<[u64; 3]> {
        let mut t = [0u32; 3];
        for (slot, &x) in v.iter().enumerate() {
            t[slot] = self
                .set
                .index_of(x)
                .ok_or_else(|| Error::invalid(format!("{x} is not a color")))?;
        }
        Ok(self.apply(t).map(|i| self.set.value(i)))
    }

    pub fn inverse(&self) -> TetraMap {
        let mut table = vec![0u32; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            table[y as usize] = x as u32;
        }
        TetraMap { set: self.set.clone(), table }
    }

    /// `Φ^{t_dirs}` for `dirs ⊆ {1,2,3}` as a bit mask (bit 0 = direction 1).
    pub fn partial_transpose(&self, mask: u32) -> Result<TetraMap> {
        let (table, _) = partial_transpose_perm(self.index(), &self.table, mask & 7).map_err(|reason| {
            Error::TransposeUndefined { dirs: dirs_label(mask), reason }
        })?;
        Ok(TetraMap { set: self.set.clone(), table })
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &y)| i == y as usize)
    }

    /// `self` first, then `then`.
    pub fn compose(&self, then: &TetraMap) -> Result<TetraMap> {
        if self.h() != then.h() {
            return Err(Error::invalid("maps act on color sets of different size"));
        }
        let table = self.table.iter().map(|&y| then.table[y as usize]).collect();
        Ok(TetraMap { set: self.set.clone(), table })
    }

    /// Fixed points, as triples of color values.
    pub fn fixed_points(&self) -> Vec<[u64; 3]> {
        let ix = self.index();
        self.table
            .iter()
            .enumerate()
            .filter(|&(i, &y)| i == y as usize)
            .map(|(i, _)| {
                let t = ix.decode(i);
                [self.set.value(t[0]), self.set.value(t[1]), self.set.value(t[2])]
            })
            .collect()
    }

    /// Returns a copy with the images of two table rows exchanged.
    pub fn with_swapped_rows(&self, a: usize, b: usize) -> TetraMap {
        let mut table = self.table.clone();
        table.swap(a, b);
        TetraMap { set: self.set.clone(), table }
    }

    /// Exhaustive check of `Φ₁₂₃Φ₁₄₅Φ₂₄₆Φ₃₅₆ = Φ₃₅₆Φ₂₄₆Φ₁₄₅Φ₁₂₃` on `X⁶`.
    pub fn verify_te(&self) -> TeReport {
        let h = self.h() as u64;
        let total = h.pow(6);
        let lhs = [[0, 1, 2], [0, 3, 4], [1, 3, 5], [2, 4, 5]];
        let rhs = [[2, 4, 5], [1, 3, 5], [0, 3, 4], [0, 1, 2]];
        let run = |i: u64, word: &[[usize; 3]; 4]| {
            let mut s = decode6(i, h);
            for slots in word {
                let out = self.apply([s[slots[0]], s[slots[1]], s[slots[2]]]);
                for (k, &slot) in slots.iter().enumerate() {
                    s[slot] = out[k];
                }
            }
            s
        };
        let bad = exec::find_first(total, |i| run(i, &lhs) != run(i, &rhs));
        let values = |s: [u32; 6]| s.map(|c| self.set.value(c));
        TeReport {
            tuples: total,
            counterexample: bad.map(|i| TeCounterexample {
                input: values(decode6(i, h)),
                lhs: values(run(i, &lhs)),
                rhs: values(run(i, &rhs)),
            }),
        }
    }
}

fn decode6(mut i: u64, h: u64) -> [u32; 6] {
    let mut s = [0u32; 6];
    for slot in (0..6).rev() {
        s[slot] = (i % h) as u32;
        i /= h;
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeCounterexample {
    pub input: [u64; 6],
    pub lhs: [u64; 6],
    pub rhs: [u64; 6],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeReport {
    pub tuples: u64,
    /// Lexicographically smallest failing input.
    pub counterexample: Option<TeCounterexample>,
}

impl TeReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for TeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "te=holds tuples={}", self.tuples),
            Some(c) => write!(
                f,
                "te=fails tuples={} input={:?} lhs={:?} rhs={:?}",
                self.tuples, c.input, c.lhs, c.rhs
            ),
        }
    }
}

/// All eight partial transposes of a map, indexed by mask.
#[derive(Clone, Debug)]
pub struct TransposeFamily {
    maps: Vec<std::result::Result<TetraMap, Error>>,
}

impl TransposeFamily {
    pub fn new(phi: &TetraMap) -> Self {
        TransposeFamily { maps: (0..8).map(|m| phi.partial_transpose(m)).collect() }
    }

    pub fn get(&self, mask: u32) -> Result<&TetraMap> {
        self.maps[(mask & 7) as usize].as_ref().map_err(Clone::clone)
    }

    /// Masks whose transpose exists.
    pub fn existing(&self) -> Vec<u32> {
        (0..8).filter(|&m| self.maps[m as usize].is_ok()).collect()
    }

    pub fn all_exist(&self) -> bool {
        self.maps.iter().all(|m| m.is_ok())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn electric_5_2_values() {
        let phi = TetraMap::electric(5, 2).unwrap();
        assert_eq!(phi.h(), 5);
        assert_eq!(phi.apply_values([2, 2, 2]).unwrap(), [17, 12, 17]);
    }

    #[test]
    fn electric_denominators_stay_in_class() {
        // Oracle: direct modular evaluation of x + z + xyz over the 125 triples.
        let set = ColorSet::reduced(5, 2).unwrap();
        for &x in set.elements() {
            for &y in set.elements() {
                for &z in set.elements() {
                    assert_eq!((x + z + x * y * z) % 5, 2);
                }
            }
        }
    }

    #[test]
    fn electric_rejects_k1() {
        assert!(TetraMap::electric(5, 1).is_err());
        assert!(matches!(TetraMap::electric(3, 2), Err(Error::NoRoot { .. })));
    }

    #[test]
    fn te_holds_for_identity_and_electric() {
        assert!(TetraMap::identity(ColorSet::explicit(3).unwrap()).verify_te().holds());
        for (p, k) in [(5, 2), (2, 2), (2, 3)] {
            let r = TetraMap::electric(p, k).unwrap().verify_te();
            assert!(r.holds(), "({p},{k}): {r}");
        }
    }

    #[test]
    fn te_fails_for_swapped_rows() {
        let phi = TetraMap::electric(5, 2).unwrap().with_swapped_rows(0, 1);
        let r = phi.verify_te();
        assert!(!r.holds());
        let c = r.counterexample.unwrap();
        assert_ne!(c.lhs, c.rhs);
    }

    #[test]
    fn transpose_defining_relation() {
        // Φ^{t2}(x,y,z) = (x',y',z') iff Φ(x,y',z) = (x',y,z'), checked on all triples.
        let phi = TetraMap::electric(5, 2).unwrap();
        let t2 = phi.partial_transpose(0b010).unwrap();
        for i in 0..125u32 {
            let t = [i / 25, i / 5 % 5, i % 5];
            let o = t2.apply(t);
            assert_eq!(phi.apply([t[0], o[1], t[2]]), [o[0], t[1], o[2]]);
        }
    }

    #[test]
    fn transpose_algebra() {
        let phi = TetraMap::electric(5, 2).unwrap();
        let fam = TransposeFamily::new(&phi);
        assert!(fam.all_exist());
        assert_eq!(fam.get(0b111).unwrap(), &phi.inverse());
        for i in 0..3 {
            let ti = fam.get(1 << i).unwrap();
            assert_eq!(&ti.partial_transpose(1 << i).unwrap(), &phi);
            assert_eq!(&ti.inverse(), fam.get(0b111 ^ (1 << i)).unwrap());
        }
    }

    #[test]
    fn identity_transposes() {
        let id = TetraMap::identity(ColorSet::explicit(3).unwrap());
        for m in 0..8 {
            assert!(id.partial_transpose(m).unwrap().is_identity());
        }
    }

    #[test]
    fn inverse_examples() {
        let phi = TetraMap::electric(5, 2).unwrap();
        assert!(phi.compose(&phi.inverse()).unwrap().is_identity());
        let set = ColorSet::explicit(3).unwrap();
        let rev = TetraMap::from_fn(set, |[a, b, c]| [c, b, a]).unwrap();
        assert_eq!(rev.inverse(), rev);
    }

    #[test]
    fn missing_transpose_reported() {
        // Φ(x,y,z) = (y,x,z): the first output does not depend on the first input.
        let set = ColorSet::explicit(2).unwrap();
        let swap = TetraMap::from_fn(set, |[a, b, c]| [b, a, c]).unwrap();
        assert!(matches!(
            swap.partial_transpose(0b001),
            Err(Error::TransposeUndefined { .. })
        ));
    }
}
