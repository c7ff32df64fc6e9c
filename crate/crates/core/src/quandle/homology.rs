use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::TupleIndex;
use crate::cube::BoundaryMatrix;
use crate::error::{guard, Error, Result};
use crate::guards::Guards;
use crate::tetramap::content_lines;

use super::structure::Quandle;

/// `x_i = x_{i+1}` for some `i`.
pub fn is_degenerate(t: &[u32]) -> bool {
    t.windows(2).any(|w| w[0] == w[1])
}

/// The rack differential `∂_n` and its restriction to the quotient by
/// degenerate tuples. Tuples are indexed lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuandleBoundary {
    pub n: usize,
    /// `∂_n: C^R_n → C^R_{n-1}`.
    pub rack: BoundaryMatrix,
    /// Nondegenerate `n`-tuples (columns of `quotient`).
    pub cols: Vec<usize>,
    /// Nondegenerate `(n−1)`-tuples (rows of `quotient`).
    pub rows: Vec<usize>,
    /// `∂_n: C^Q_n → C^Q_{n-1}`.
    pub quotient: BoundaryMatrix,
}

/// `∂_n` on one tuple as a map from `(n−1)`-tuple index to coefficient.
fn boundary_of(q: &Quandle, lower: TupleIndex, t: &[u32]) -> BTreeMap<usize, i64> {
    let n = t.len();
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    let mut face = Vec::with_capacity(n - 1);
    for i in 1..n {
        let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
        face.clear();
        face.extend(t.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x));
        *acc.entry(lower.encode(&face)).or_insert(0) += sign;
        face.clear();
        face.extend(t[..i].iter().map(|&x| q.op(x, t[i])));
        face.extend_from_slice(&t[i + 1..]);
        *acc.entry(lower.encode(&face)).or_insert(0) -= sign;
    }
    acc.retain(|_, v| *v != 0);
    acc
}

/// `∂_n` for `2 ≤ n ≤ 4`.
pub fn quandle_boundary(n: usize, q: &Quandle, guards: &Guards) -> Result<QuandleBoundary> {
    if !(2..=4).contains(&n) {
        return Err(Error::invalid("quandle boundary degree must be 2, 3 or 4"));
    }
    let h = q.len();
    guard("quandle", (h as f64).powi(n as i32), guards.quandle)?;
    let upper = TupleIndex::new(h, n);
    let lower = TupleIndex::new(h, n - 1);
    let mut columns = Vec::with_capacity(upper.size());
    for c in 0..upper.size() {
        let t = upper.decode(c);
        columns.push(boundary_of(q, lower, &t).into_iter().map(|(r, v)| (r as u32, v)).collect());
    }
    let rack = BoundaryMatrix::new(lower.size(), columns);
    let cols: Vec<usize> = (0..upper.size()).filter(|&c| !is_degenerate(&upper.decode(c))).collect();
    let rows: Vec<usize> = (0..lower.size()).filter(|&r| !is_degenerate(&lower.decode(r))).collect();
    let pos: BTreeMap<usize, u32> = rows.iter().enumerate().map(|(i, &r)| (r, i as u32)).collect();
    let qcols = cols
        .iter()
        .map(|&c| rack.columns()[c].iter().filter_map(|&(r, v)| pos.get(&(r as usize)).map(|&i| (i, v))).collect())
        .collect();
    let quotient = BoundaryMatrix::new(rows.len(), qcols);
    Ok(QuandleBoundary { n, rack, cols, rows, quotient })
}

/// First degenerate `n`-tuple whose boundary leaves the degenerate span.
pub fn degenerate_subcomplex_violation(b: &QuandleBoundary, h: usize) -> Option<Vec<u32>> {
    let upper = TupleIndex::new(h, b.n);
    let lower = TupleIndex::new(h, b.n - 1);
    (0..upper.size()).find_map(|c| {
        let t = upper.decode(c);
        let leaks = is_degenerate(&t) && b.rack.columns()[c].iter().any(|&(r, _)| !is_degenerate(&lower.decode(r as usize)));
        leaks.then_some(t)
    })
}

/// A 3-cochain `θ: Q³ → Z/m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuandleCochain3 {
    n: usize,
    modulus: u64,
    values: Vec<u64>,
}

/// A 2-cochain `η: Q² → Z/m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuandleCochain2 {
    n: usize,
    modulus: u64,
    values: Vec<u64>,
}

impl QuandleCochain2 {
    /// Values on nondegenerate pairs taken from `f`, zero on the diagonal.
    pub fn from_fn(n: usize, modulus: u64, f: impl Fn(u32, u32) -> u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::invalid("coefficient modulus must be positive"));
        }
        let values = (0..(n * n) as u32)
            .map(|i| {
                let (a, b) = (i / n as u32, i % n as u32);
                if a == b { 0 } else { f(a, b) % modulus }
            })
            .collect();
        Ok(QuandleCochain2 { n, modulus, values })
    }

    pub fn value(&self, a: u32, b: u32) -> u64 {
        self.values[a as usize * self.n + b as usize]
    }

    /// `δη = η ∘ ∂_3`.
    pub fn coboundary(&self, q: &Quandle) -> Result<QuandleCochain3> {
        if q.len() != self.n {
            return Err(Error::invalid("cochain and quandle sizes differ"));
        }
        let lower = TupleIndex::new(self.n, 2);
        let upper = TupleIndex::new(self.n, 3);
        let m = self.modulus as i64;
        let values = (0..upper.size())
            .map(|c| {
                let t = upper.decode(c);
                let s: i64 = boundary_of(q, lower, &t)
                    .into_iter()
                    .map(|(r, v)| v * self.values[r] as i64)
                    .sum();
                s.rem_euclid(m) as u64
            })
            .collect();
        Ok(QuandleCochain3 { n: self.n, modulus: self.modulus, values })
    }
}

impl QuandleCochain3 {
    pub fn zero(n: usize, modulus: u64) -> Result<Self> {
        Self::from_fn(n, modulus, |_, _, _| 0)
    }

    pub fn from_fn(n: usize, modulus: u64, f: impl Fn(u32, u32, u32) -> u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::invalid("coefficient modulus must be positive"));
        }
        let n32 = n as u32;
        let values = (0..n32.pow(3)).map(|i| f(i / (n32 * n32), i / n32 % n32, i % n32) % modulus).collect();
        Ok(QuandleCochain3 { n, modulus, values })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn value(&self, a: u32, b: u32, c: u32) -> u64 {
        let n = self.n;
        self.values[(a as usize * n + b as usize) * n + c as usize]
    }

    /// Copy with one value replaced.
    pub fn with_value(&self, t: [u32; 3], v: u64) -> Self {
        let mut out = self.clone();
        let n = self.n;
        out.values[(t[0] as usize * n + t[1] as usize) * n + t[2] as usize] = v % self.modulus;
        out
    }

    /// `qcocycle n=<size> m=<modulus>` then lines `a b c -> v`; absent entries are 0.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| Error::syntax(1, "empty cochain file"))?;
        let words: Vec<&str> = header.split_whitespace().collect();
        if words.first() != Some(&"qcocycle") {
            return Err(Error::syntax(ln, "expected `qcocycle n=<size> m=<modulus>`"));
        }
        let num = |key: &str| -> Result<u64> {
            words
                .iter()
                .find_map(|w| w.strip_prefix(key))
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::syntax(ln, format!("missing or bad {key}")))
        };
        let mut out = Self::zero(num("n=")? as usize, num("m=")?)?;
        for (ln, line) in lines {
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| Error::syntax(ln, "expected `a b c -> v`"))?;
            let t: Vec<u32> = lhs
                .split_whitespace()
                .map(|w| w.parse::<u32>().ok().filter(|&x| (x as usize) < out.n))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::syntax(ln, "bad quandle element"))?;
            let v: u64 = rhs.trim().parse().map_err(|_| Error::syntax(ln, "bad coefficient"))?;
            let [a, b, c] = t[..] else { return Err(Error::syntax(ln, "expected three elements")) };
            out = out.with_value([a, b, c], v);
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("qcocycle n={} m={}\n", self.n, self.modulus);
        let n = self.n as u32;
        for (i, &v) in self.values.iter().enumerate() {
            if v != 0 {
                let i = i as u32;
                out.push_str(&format!("{} {} {} -> {v}\n", i / (n * n), i / n % n, i % n));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q3Report {
    /// `(p, q, r, s)` violating the cocycle condition.
    pub witness: Option<[u32; 4]>,
    /// Degenerate triple with a nonzero value.
    pub degenerate: Option<[u32; 3]>,
}

impl Q3Report {
    pub fn holds(&self) -> bool {
        self.witness.is_none() && self.degenerate.is_none()
    }
}

impl fmt::Display for Q3Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.witness, self.degenerate) {
            (None, None) => write!(f, "q3cocycle=holds"),
            (Some(w), _) => write!(f, "q3cocycle=fails witness={w:?}"),
            (None, Some(d)) => write!(f, "q3cocycle=fails degenerate={d:?}"),
        }
    }
}

/// Exhaustive check over `Q⁴` of
/// `θ(p,r,s)+θ(p∗r,q∗r,s)+θ(p,q,r) = θ(p∗q,r,s)+θ(p,q,s)+θ(p∗s,q∗s,r∗s)`,
/// plus vanishing on degenerate triples.
pub fn verify_q3cocycle(theta: &QuandleCochain3, q: &Quandle) -> Result<Q3Report> {
    if theta.n != q.len() {
        return Err(Error::invalid("cochain and quandle sizes differ"));
    }
    let n = q.len() as u32;
    let m = theta.modulus;
    let th = |a, b, c| theta.value(a, b, c);
    let o = |a, b| q.op(a, b);
    let total = (n as u64).pow(4);
    let witness = crate::exec::find_first(total, |i| {
        let n = n as u64;
        let [p, qq, r, s] = [i / (n * n * n), i / (n * n) % n, i / n % n, i % n].map(|x| x as u32);
        let lhs = (th(p, r, s) + th(o(p, r), o(qq, r), s) + th(p, qq, r)) % m;
        let rhs = (th(o(p, qq), r, s) + th(p, qq, s) + th(o(p, s), o(qq, s), o(r, s))) % m;
        lhs != rhs
    })
    .map(|i| {
        let n = n as u64;
        [i / (n * n * n), i / (n * n) % n, i / n % n, i % n].map(|x| x as u32)
    });
    let degenerate = (0..n.pow(3))
        .map(|i| [i / (n * n), i / n % n, i % n])
        .find(|t| is_degenerate(t) && th(t[0], t[1], t[2]) != 0);
    Ok(Q3Report { witness, degenerate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::GroupTable;

    fn fixtures() -> Vec<Quandle> {
        vec![
            Quandle::trivial(3).unwrap(),
            Quandle::alexander(3, -1).unwrap(),
            Quandle::alexander(5, 2).unwrap(),
            Quandle::conjugation(&GroupTable::s3(), 1).unwrap(),
        ]
    }

    #[test]
    fn trivial_quandle_d2_vanishes() {
        let b = quandle_boundary(2, &Quandle::trivial(4).unwrap(), &Guards::default()).unwrap();
        assert!(b.rack.is_zero());
    }

    #[test]
    fn boundary_squares_to_zero() {
        let g = Guards::default();
        for q in fixtures() {
            for n in 3..=4 {
                let a = quandle_boundary(n - 1, &q, &g).unwrap();
                let b = quandle_boundary(n, &q, &g).unwrap();
                assert!(a.rack.mul(&b.rack).unwrap().is_zero());
                assert!(a.quotient.mul(&b.quotient).unwrap().is_zero());
                assert_eq!(degenerate_subcomplex_violation(&b, q.len()), None);
            }
        }
    }

    #[test]
    fn explicit_boundary_entry() {
        // ∂_2(a, b) = (a) − (a∗b).
        let q = Quandle::alexander(3, -1).unwrap();
        let b = quandle_boundary(2, &q, &Guards::default()).unwrap();
        // column (0, 1): (0) − (0∗1 = 2)
        let col = 1;
        assert_eq!(b.rack.entry(0, col), 1);
        assert_eq!(b.rack.entry(2, col), -1);
    }

    #[test]
    fn coboundaries_are_cocycles() {
        for q in fixtures() {
            let n = q.len();
            assert!(verify_q3cocycle(&QuandleCochain3::zero(n, 7).unwrap(), &q).unwrap().holds());
            for seed in 0..4u64 {
                let eta = QuandleCochain2::from_fn(n, 7, |a, b| (seed * 31 + a as u64 * 5 + b as u64 * 3 + (a * b) as u64) % 7).unwrap();
                let theta = eta.coboundary(&q).unwrap();
                let r = verify_q3cocycle(&theta, &q).unwrap();
                assert!(r.holds(), "{r}");
            }
        }
    }

    #[test]
    fn perturbation_has_witness() {
        let q = Quandle::alexander(3, -1).unwrap();
        let theta = QuandleCochain3::zero(3, 5).unwrap().with_value([0, 1, 2], 1);
        let r = verify_q3cocycle(&theta, &q).unwrap();
        assert!(r.witness.is_some());
        let text = theta.to_text();
        assert_eq!(QuandleCochain3::parse(&text).unwrap(), theta);
    }
}
