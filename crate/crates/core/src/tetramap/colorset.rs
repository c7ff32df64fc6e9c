use std::collections::HashMap;
use std::fmt;

use crate::algebra::{sqrt_minus_one, Modulus};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColorSetKind {
    /// Residues `x ≡ ε (mod p)` in `Z/p^k`, `ε² ≡ −1 (mod p)`.
    Reduced { modulus: Modulus, epsilon: u64 },
    /// Abstract colors `0..h`.
    Explicit,
}

/// Finite color set, elements kept in ascending canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorSet {
    kind: ColorSetKind,
    elements: Vec<u64>,
    index: HashMap<u64, u32>,
}

impl ColorSet {
    pub fn reduced(p: u64, k: u32) -> Result<Self> {
        let modulus = Modulus::new(p, k)?;
        let epsilon = sqrt_minus_one(p, 1)?.value();
        let elements: Vec<u64> = (0..p.pow(k - 1)).map(|j| epsilon + j * p).collect();
        Ok(Self::build(ColorSetKind::Reduced { modulus, epsilon }, elements))
    }

    pub fn explicit(h: usize) -> Result<Self> {
        if h == 0 {
            return Err(Error::invalid("color set must be nonempty"));
        }
        Ok(Self::build(ColorSetKind::Explicit, (0..h as u64).collect()))
    }

    fn build(kind: ColorSetKind, elements: Vec<u64>) -> Self {
        let index = elements.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        ColorSet { kind, elements, index }
    }

    pub fn kind(&self) -> &ColorSetKind {
        &self.kind
    }

    pub fn modulus(&self) -> Option<Modulus> {
        match self.kind {
            ColorSetKind::Reduced { modulus, .. } => Some(modulus),
            ColorSetKind::Explicit => None,
        }
    }

    pub fn epsilon(&self) -> Option<u64> {
        match self.kind {
            ColorSetKind::Reduced { epsilon, .. } => Some(epsilon),
            ColorSetKind::Explicit => None,
        }
    }

    /// Cardinality `h`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn value(&self, i: u32) -> u64 {
        self.elements[i as usize]
    }

    pub fn index_of(&self, v: u64) -> Option<u32> {
        self.index.get(&v).copied()
    }

    pub fn contains(&self, v: u64) -> bool {
        self.index.contains_key(&v)
    }

    /// Header line of the text formats.
    pub fn header(&self) -> String {
        match self.kind {
            ColorSetKind::Reduced { modulus, .. } => format!("p={} k={}", modulus.p(), modulus.k()),
            ColorSetKind::Explicit => format!("explicit h={}", self.len()),
        }
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.elements.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Closure of a reduced color set under three involutions of `Z/p^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    /// `x ↦ x⁻¹`; first element whose image leaves the set, if any.
    pub inversion: Option<u64>,
    /// `x ↦ −x`.
    pub negation: Option<u64>,
    /// `x ↦ −x⁻¹`.
    pub negated_inversion: Option<u64>,
}

impl ClosureReport {
    pub fn closed_under_inversion(&self) -> bool {
        self.inversion.is_none()
    }

    pub fn closed_under_negation(&self) -> bool {
        self.negation.is_none()
    }

    pub fn closed_under_negated_inversion(&self) -> bool {
        self.negated_inversion.is_none()
    }
}

pub fn closure_report(set: &ColorSet) -> Result<ClosureReport> {
    let m = set
        .modulus()
        .ok_or_else(|| Error::invalid("closure report needs a reduced color set"))?;
    let escape = |f: &dyn Fn(u64) -> Result<u64>| -> Result<Option<u64>> {
        for &x in set.elements() {
            if !set.contains(f(x)?) {
                return Ok(Some(x));
            }
        }
        Ok(None)
    };
    Ok(ClosureReport {
        inversion: escape(&|x| Ok(m.elem(x as i64).inverse()?.value()))?,
        negation: escape(&|x| Ok((-m.elem(x as i64)).value()))?,
        negated_inversion: escape(&|x| Ok((-m.elem(x as i64).inverse()?).value()))?,
    })
}
