use std::fmt;

use crate::error::{Error, Result};
use crate::tetramap::content_lines;

/// Finite group by its multiplication table on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    n: usize,
    table: Vec<u32>,
    identity: u32,
    inverse: Vec<u32>,
}

impl GroupTable {
    /// Checks closure, associativity, identity and inverses.
    pub fn new(n: usize, table: Vec<u32>) -> Result<Self> {
        if n == 0 || table.len() != n * n || table.iter().any(|&x| x as usize >= n) {
            return Err(Error::invalid("group table must be n×n with entries in 0..n"));
        }
        let mul = |a: usize, b: usize| table[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or_else(|| Error::invalid("group table has no identity"))?;
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| mul(a, b) == identity)
                .ok_or_else(|| Error::invalid(format!("element {a} has no inverse")))? as u32;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::invalid(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(GroupTable { n, table, identity: identity as u32, inverse })
    }

    /// The symmetric group on three letters, permutations in lexicographic order.
    pub fn s3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).expect("permutation") as u32;
        let mut table = Vec::with_capacity(36);
        for a in &perms {
            for b in &perms {
                // (a·b)(i) = a(b(i))
                table.push(idx([a[b[0]], a[b[1]], a[b[2]]]));
            }
        }
        GroupTable::new(6, table).expect("S3 is a group")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.n + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn pow(&self, a: u32, e: i64) -> u32 {
        let base = if e < 0 { self.inv(a) } else { a };
        (0..e.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }
}

/// Finite set `0..n` with a binary operation `a ∗ b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quandle {
    n: usize,
    table: Vec<u32>,
}

/// First violation of each quandle axiom, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuandleReport {
    /// `a` with `a ∗ a ≠ a`.
    pub idempotence: Option<u32>,
    /// `(a, b)` such that `c ∗ b = a` has no unique solution `c`.
    pub right_invertibility: Option<(u32, u32)>,
    /// `(a, b, c)` with `(a∗b)∗c ≠ (a∗c)∗(b∗c)`.
    pub self_distributivity: Option<(u32, u32, u32)>,
}

impl QuandleReport {
    pub fn holds(&self) -> bool {
        self.idempotence.is_none() && self.right_invertibility.is_none() && self.self_distributivity.is_none()
    }
}

impl fmt::Display for QuandleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |o: Option<String>| o.map_or("holds".to_string(), |w| format!("fails@{w}"));
        write!(
            f,
            "idempotence={} right_invertibility={} self_distributivity={}",
            show(self.idempotence.map(|a| a.to_string())),
            show(self.right_invertibility.map(|(a, b)| format!("{a},{b}"))),
            show(self.self_distributivity.map(|(a, b, c)| format!("{a},{b},{c}"))),
        )
    }
}

impl Quandle {
    /// Operation table without axiom checks; see [`verify_quandle`].
    pub fn from_table(n: usize, table: Vec<u32>) -> Result<Self> {
        if table.len() != n * n || table.iter().any(|&x| x as usize >= n) {
            return Err(Error::invalid("quandle table must be n×n with entries in 0..n"));
        }
        Ok(Quandle { n, table })
    }

    fn checked(self) -> Result<Self> {
        let r = verify_quandle(&self);
        if r.holds() {
            Ok(self)
        } else {
            Err(Error::NotAQuandle(r.to_string()))
        }
    }

    /// `a ∗ b = a`.
    pub fn trivial(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("quandle must be nonempty"));
        }
        Quandle::from_table(n, (0..n * n).map(|i| (i / n) as u32).collect())
    }

    /// `a ∗ b = t·a + (1−t)·b` on `Z/n`.
    pub fn alexander(n: u64, t: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("Alexander quandle needs n >= 1"));
        }
        let ni = n as i64;
        let t = t.rem_euclid(ni);
        if gcd(t, ni) != 1 {
            return Err(Error::NotAQuandle(format!("t = {t} is not invertible mod {n}")));
        }
        let table = (0..ni * ni)
            .map(|i| {
                let (a, b) = (i / ni, i % ni);
                ((t * a + (1 - t) * b).rem_euclid(ni)) as u32
            })
            .collect();
        Quandle::from_table(n as usize, table)?.checked()
    }

    /// `a ∗ b = b^{-k} a b^k` on a group.
    pub fn conjugation(g: &GroupTable, k: i64) -> Result<Self> {
        let n = g.len();
        let table = (0..(n * n) as u32)
            .map(|i| {
                let (a, b) = (i / n as u32, i % n as u32);
                g.mul(g.mul(g.pow(b, -k), a), g.pow(b, k))
            })
            .collect();
        Quandle::from_table(n, table)?.checked()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn op(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.n + b as usize]
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// `quandle n=<size>` followed by `n` rows; row `a` lists `a ∗ b` for `b = 0..n`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| Error::syntax(1, "empty quandle file"))?;
        let n: usize = header
            .strip_prefix("quandle")
            .and_then(|r| r.trim().strip_prefix("n="))
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::syntax(ln, "expected `quandle n=<size>`"))?;
        let mut table = Vec::with_capacity(n * n);
        let mut rows = 0;
        for (ln, line) in lines {
            let row: Vec<u32> = line
                .split_whitespace()
                .map(|w| w.parse::<u32>().ok().filter(|&x| (x as usize) < n))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::syntax(ln, format!("row entries must be integers in 0..{n}")))?;
            if row.len() != n {
                return Err(Error::syntax(ln, format!("row must have {n} entries")));
            }
            rows += 1;
            if rows > n {
                return Err(Error::syntax(ln, "too many rows"));
            }
            table.extend(row);
        }
        if rows != n {
            return Err(Error::syntax(0, format!("expected {n} rows, found {rows}")));
        }
        Quandle::from_table(n, table)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("quandle n={}\n", self.n);
        for row in self.table.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// Exhaustive check of the three axioms.
pub fn verify_quandle(q: &Quandle) -> QuandleReport {
    let n = q.n as u32;
    let idempotence = (0..n).find(|&a| q.op(a, a) != a);
    let mut right_invertibility = None;
    'outer: for b in 0..n {
        let mut hits = vec![0u32; n as usize];
        for c in 0..n {
            hits[q.op(c, b) as usize] += 1;
        }
        for a in 0..n {
            if hits[a as usize] != 1 {
                right_invertibility = Some((a, b));
                break 'outer;
            }
        }
    }
    let mut self_distributivity = None;
    'sd: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if q.op(q.op(a, b), c) != q.op(q.op(a, c), q.op(b, c)) {
                    self_distributivity = Some((a, b, c));
                    break 'sd;
                }
            }
        }
    }
    QuandleReport { idempotence, right_invertibility, self_distributivity }
}
