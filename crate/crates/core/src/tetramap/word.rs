use std::fmt;

use crate::algebra::{MonomialOperator, WeightGroup};
use crate::error::{guard, Error, Result};
use crate::exec;
use crate::guards::Guards;

use super::map::{TetraMap, TransposeFamily};

/// One factor `Φ_{ijk}` of a word, optionally inverted and partially transposed.
///
/// `transpose` is a local mask: bit `i` transposes the factor's `i+1`-th slot,
/// i.e. global slot `slots[i]`. An inverted factor is `(Φ^{-1})^{t}`, which
/// coincides with `(Φ^{t})^{-1}` whenever the transposes exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub inverse: bool,
    pub transpose: u32,
    pub slots: [usize; 3],
}

impl Factor {
    pub fn plain(slots: [usize; 3]) -> Self {
        Factor { inverse: false, transpose: 0, slots }
    }

    pub fn inverted(self) -> Self {
        Factor { inverse: !self.inverse, ..self }
    }

    /// Local transpose mask of a set of global slots (bit `w-1` = slot `w`).
    pub fn local_mask(&self, global: u64) -> u32 {
        (0..3).filter(|&i| global >> (self.slots[i] - 1) & 1 == 1).fold(0, |m, i| m | 1 << i)
    }

    /// Parses `F_123`, `Fi_356`, `F^t35_356`, `F^t3_213'` (`A` may replace `F`).
    ///
    /// Transpose directions are global slot numbers; a trailing `'` inverts the factor.
    pub fn parse(token: &str) -> std::result::Result<Self, String> {
        let bad = || format!("malformed factor `{token}`");
        let mut rest = token;
        let inverse_suffix = rest.ends_with('\'');
        if inverse_suffix {
            rest = &rest[..rest.len() - 1];
        }
        rest = rest.strip_prefix('F').or_else(|| rest.strip_prefix('A')).ok_or_else(bad)?;
        let mut inverse = false;
        if let Some(r) = rest.strip_prefix('i') {
            inverse = true;
            rest = r;
        }
        let (sup, sub) = rest.split_once('_').ok_or_else(bad)?;
        let digits = |s: &str| -> std::result::Result<Vec<usize>, String> {
            s.chars()
                .map(|c| c.to_digit(10).filter(|&d| d > 0).map(|d| d as usize).ok_or_else(bad))
                .collect()
        };
        let slots = digits(sub)?;
        if slots.len() != 3 || slots[0] == slots[1] || slots[0] == slots[2] || slots[1] == slots[2] {
            return Err(format!("factor `{token}` needs three distinct slots"));
        }
        let mut f = Factor::plain([slots[0], slots[1], slots[2]]);
        if !sup.is_empty() {
            let dirs = sup.strip_prefix("^t").ok_or_else(bad)?;
            for g in digits(dirs)? {
                let i = f.slots.iter().position(|&s| s == g).ok_or_else(|| {
                    format!("factor `{token}` transposes slot {g}, which it does not touch")
                })?;
                f.transpose ^= 1 << i;
            }
        }
        f.inverse = inverse ^ inverse_suffix;
        Ok(f)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", if self.inverse { "i" } else { "" })?;
        if self.transpose != 0 {
            let mut dirs: Vec<usize> =
                (0..3).filter(|i| self.transpose >> i & 1 == 1).map(|i| self.slots[i]).collect();
            dirs.sort_unstable();
            write!(f, "^t")?;
            for d in dirs {
                write!(f, "{d}")?;
            }
        }
        write!(f, "_{}{}{}", self.slots[0], self.slots[1], self.slots[2])
    }
}

/// Word of factors acting on `X^N`, evaluated left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SlotMap {
    arity: usize,
    factors: Vec<Factor>,
}

impl SlotMap {
    pub fn new(arity: usize, factors: Vec<Factor>) -> Result<Self> {
        if arity > 9 {
            return Err(Error::invalid("words act on at most 9 slots"));
        }
        for f in &factors {
            if f.slots.iter().any(|&s| s == 0 || s > arity) {
                return Err(Error::invalid(format!("factor {f} leaves X^{arity}")));
            }
        }
        Ok(SlotMap { arity, factors })
    }

    /// Whitespace-separated factors, see [`Factor::parse`].
    pub fn parse(arity: usize, text: &str) -> Result<Self> {
        let factors = text
            .split_whitespace()
            .map(Factor::parse)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(Error::invalid)?;
        Self::new(arity, factors)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn reversed(&self) -> SlotMap {
        SlotMap { arity: self.arity, factors: self.factors.iter().rev().copied().collect() }
    }

    /// The inverse word.
    pub fn inverse(&self) -> SlotMap {
        SlotMap {
            arity: self.arity,
            factors: self.factors.iter().rev().map(|f| f.inverted()).collect(),
        }
    }
}

impl fmt::Display for SlotMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.factors.iter().map(Factor::to_string).collect();
        write!(f, "{}", items.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordSide {
    pub output: Vec<u64>,
    /// Accumulated phase for operator words.
    pub phase: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordCounterexample {
    pub input: Vec<u64>,
    pub lhs: WordSide,
    pub rhs: WordSide,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordReport {
    pub tuples: u64,
    /// Lexicographically smallest failing input.
    pub counterexample: Option<WordCounterexample>,
}

impl WordReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for WordReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "holds tuples={}", self.tuples),
            Some(c) => {
                write!(f, "fails tuples={} input={:?} lhs={:?}", self.tuples, c.input, c.lhs.output)?;
                if let Some(p) = &c.lhs.phase {
                    write!(f, "*{p}")?;
                }
                write!(f, " rhs={:?}", c.rhs.output)?;
                if let Some(p) = &c.rhs.phase {
                    write!(f, "*{p}")?;
                }
                Ok(())
            }
        }
    }
}

struct Resolved<'a> {
    perm: &'a [u32],
    phase: Option<&'a [u64]>,
    slots: [usize; 3],
}

struct Evaluator<'a> {
    h: u64,
    arity: usize,
    group: Option<WeightGroup>,
    lhs: Vec<Resolved<'a>>,
    rhs: Vec<Resolved<'a>>,
}

impl Evaluator<'_> {
    fn decode(&self, mut i: u64) -> Vec<u32> {
        let mut s = vec![0u32; self.arity];
        for slot in (0..self.arity).rev() {
            s[slot] = (i % self.h) as u32;
            i /= self.h;
        }
        s
    }

    fn run(&self, i: u64, word: &[Resolved<'_>]) -> (Vec<u32>, u64) {
        let h = self.h as u32;
        let mut s = self.decode(i);
        let mut g = self.group.map_or(0, |gr| gr.identity());
        for f in word {
            let [a, b, c] = f.slots.map(|x| x - 1);
            let x = ((s[a] * h + s[b]) * h + s[c]) as usize;
            if let (Some(ph), Some(gr)) = (f.phase, self.group) {
                g = gr.op(g, ph[x]);
            }
            let mut y = f.perm[x];
            s[c] = y % h;
            y /= h;
            s[b] = y % h;
            s[a] = y / h;
        }
        (s, g)
    }

    fn verify(&self, values: impl Fn(u32) -> u64) -> WordReport {
        let total = self.h.pow(self.arity as u32);
        let bad = exec::find_first(total, |i| self.run(i, &self.lhs) != self.run(i, &self.rhs));
        let side = |(s, g): (Vec<u32>, u64)| WordSide {
            output: s.into_iter().map(&values).collect(),
            phase: self.group.map(|gr| gr.render(g)),
        };
        WordReport {
            tuples: total,
            counterexample: bad.map(|i| WordCounterexample {
                input: self.decode(i).into_iter().map(&values).collect(),
                lhs: side(self.run(i, &self.lhs)),
                rhs: side(self.run(i, &self.rhs)),
            }),
        }
    }
}

fn check_shapes(h: usize, lhs: &SlotMap, rhs: &SlotMap, guards: &Guards) -> Result<()> {
    if lhs.arity != rhs.arity {
        return Err(Error::ArityMismatch { left: lhs.arity, right: rhs.arity });
    }
    guard("word_tuples", (h as f64).powi(lhs.arity as i32), guards.word_tuples)
}

/// Exhaustive comparison of two words in `Φ` and its transposes on `X^N`.
pub fn verify_word(phi: &TetraMap, lhs: &SlotMap, rhs: &SlotMap, guards: &Guards) -> Result<WordReport> {
    verify_word_with(phi, &TransposeFamily::new(phi), lhs, rhs, guards)
}

/// As [`verify_word`], reusing precomputed transposes.
pub fn verify_word_with(
    phi: &TetraMap,
    family: &TransposeFamily,
    lhs: &SlotMap,
    rhs: &SlotMap,
    guards: &Guards,
) -> Result<WordReport> {
    check_shapes(phi.h(), lhs, rhs, guards)?;
    // At set level Φ^{-1} = Φ^{t123}, so inversion is one more transpose.
    let resolve = |w: &SlotMap| -> Result<Vec<Resolved<'_>>> {
        w.factors
            .iter()
            .map(|f| {
                let mask = if f.inverse { f.transpose ^ 7 } else { f.transpose };
                Ok(Resolved { perm: family.get(mask)?.table(), phase: None, slots: f.slots })
            })
            .collect()
    };
    let ev = Evaluator {
        h: phi.h() as u64,
        arity: lhs.arity,
        group: None,
        lhs: resolve(lhs)?,
        rhs: resolve(rhs)?,
    };
    Ok(ev.verify(|c| phi.set().value(c)))
}

/// `A`, `A^{-1}` and all their partial transposes.
#[derive(Clone, Debug)]
pub struct MonomialFamily {
    ops: Vec<std::result::Result<MonomialOperator, Error>>,
}

impl MonomialFamily {
    pub fn new(a: &MonomialOperator) -> Result<Self> {
        if a.arity() != 3 {
            return Err(Error::ArityMismatch { left: a.arity(), right: 3 });
        }
        let inv = a.inverse();
        let ops = (0..16u32)
            .map(|key| {
                let base = if key & 8 != 0 { &inv } else { a };
                base.partial_transpose(key & 7).map_err(|e| match e {
                    Error::NotMonomial(reason) => Error::TransposeUndefined {
                        dirs: super::map::dirs_label(key & 7),
                        reason,
                    },
                    other => other,
                })
            })
            .collect();
        Ok(MonomialFamily { ops })
    }

    pub fn get(&self, inverse: bool, mask: u32) -> Result<&MonomialOperator> {
        self.ops[(mask & 7 | if inverse { 8 } else { 0 }) as usize].as_ref().map_err(Clone::clone)
    }
}

/// Exhaustive comparison of two words in a monomial operator `A` on basis
/// vectors of `V^{⊗N}`: images and accumulated phases must agree.
pub fn verify_monomial_word(
    a: &MonomialOperator,
    lhs: &SlotMap,
    rhs: &SlotMap,
    guards: &Guards,
) -> Result<WordReport> {
    verify_monomial_word_with(&MonomialFamily::new(a)?, lhs, rhs, guards)
}

pub fn verify_monomial_word_with(
    family: &MonomialFamily,
    lhs: &SlotMap,
    rhs: &SlotMap,
    guards: &Guards,
) -> Result<WordReport> {
    let a = family.get(false, 0)?;
    check_shapes(a.h(), lhs, rhs, guards)?;
    let resolve = |w: &SlotMap| -> Result<Vec<Resolved<'_>>> {
        w.factors
            .iter()
            .map(|f| {
                let op = family.get(f.inverse, f.transpose)?;
                Ok(Resolved { perm: op.perm(), phase: Some(op.phases()), slots: f.slots })
            })
            .collect()
    };
    let ev = Evaluator {
        h: a.h() as u64,
        arity: lhs.arity,
        group: Some(a.group()),
        lhs: resolve(lhs)?,
        rhs: resolve(rhs)?,
    };
    Ok(ev.verify(u64::from))
}
