use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use super::group::WeightGroup;

/// Formal integer combination of weight-group elements.
///
/// Terms are kept in ascending order of representative and zero multiplicities
/// are dropped, so `==` and `Display` are canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingElem {
    group: WeightGroup,
    terms: BTreeMap<u64, i64>,
}

impl GroupRingElem {
    pub fn zero(group: WeightGroup) -> Self {
        GroupRingElem { group, terms: BTreeMap::new() }
    }

    /// `n · identity`.
    pub fn scalar(group: WeightGroup, n: i64) -> Self {
        Self::from_element(group, group.identity(), n)
    }

    pub fn one(group: WeightGroup) -> Self {
        Self::scalar(group, 1)
    }

    pub fn from_element(group: WeightGroup, g: u64, n: i64) -> Self {
        let mut x = Self::zero(group);
        x.add_term(g, n);
        x
    }

    pub fn from_terms(group: WeightGroup, terms: impl IntoIterator<Item = (u64, i64)>) -> Self {
        let mut x = Self::zero(group);
        for (g, n) in terms {
            x.add_term(g, n);
        }
        x
    }

    pub fn group(&self) -> WeightGroup {
        self.group
    }

    pub fn add_term(&mut self, g: u64, n: i64) {
        debug_assert!(self.group.contains(g), "{g} not in {}", self.group);
        if n == 0 {
            return;
        }
        let e = self.terms.entry(g).or_insert(0);
        *e += n;
        if *e == 0 {
            self.terms.remove(&g);
        }
    }

    /// `(element, multiplicity)` pairs in ascending element order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.terms.iter().map(|(&g, &n)| (g, n))
    }

    pub fn coefficient(&self, g: u64) -> i64 {
        self.terms.get(&g).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of multiplicities (value under the trivial character).
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Left multiplication by a group element; permutes the keys.
    pub fn shift(&self, g: u64) -> Self {
        let terms = self.terms.iter().map(|(&x, &n)| (self.group.op(g, x), n)).collect();
        GroupRingElem { group: self.group, terms }
    }

    pub fn scale(&self, n: i64) -> Self {
        if n == 0 {
            return Self::zero(self.group);
        }
        let terms = self.terms.iter().map(|(&g, &c)| (g, c * n)).collect();
        GroupRingElem { group: self.group, terms }
    }

    /// True when every multiplicity is divisible by `d`.
    pub fn divisible_by(&self, d: i64) -> bool {
        self.terms.values().all(|&c| c % d == 0)
    }

    pub(crate) fn divide_exact(&self, d: i64) -> Self {
        let terms = self.terms.iter().map(|(&g, &c)| (g, c / d)).collect();
        GroupRingElem { group: self.group, terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.group);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add<&GroupRingElem> for &GroupRingElem {
    type Output = GroupRingElem;
    fn add(self, rhs: &GroupRingElem) -> GroupRingElem {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for GroupRingElem {
    type Output = GroupRingElem;
    fn add(mut self, rhs: GroupRingElem) -> GroupRingElem {
        self += &rhs;
        self
    }
}

impl AddAssign<&GroupRingElem> for GroupRingElem {
    fn add_assign(&mut self, rhs: &GroupRingElem) {
        assert_eq!(self.group, rhs.group, "group ring elements over different groups");
        for (g, n) in rhs.terms() {
            self.add_term(g, n);
        }
    }
}

impl Neg for &GroupRingElem {
    type Output = GroupRingElem;
    fn neg(self) -> GroupRingElem {
        self.scale(-1)
    }
}

impl Sub<&GroupRingElem> for &GroupRingElem {
    type Output = GroupRingElem;
    fn sub(self, rhs: &GroupRingElem) -> GroupRingElem {
        self + &(-rhs)
    }
}

impl Mul<&GroupRingElem> for &GroupRingElem {
    type Output = GroupRingElem;
    fn mul(self, rhs: &GroupRingElem) -> GroupRingElem {
        assert_eq!(self.group, rhs.group, "group ring elements over different groups");
        let mut out = GroupRingElem::zero(self.group);
        for (a, m) in self.terms() {
            for (b, n) in rhs.terms() {
                out.add_term(self.group.op(a, b), m * n);
            }
        }
        out
    }
}

impl Mul for GroupRingElem {
    type Output = GroupRingElem;
    fn mul(self, rhs: GroupRingElem) -> GroupRingElem {
        &self * &rhs
    }
}

/// Renders `n1*g1 + n2*g2 + ...`; unit multiplicities are omitted and the
/// zero element prints as `0`.
impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, n)) in self.terms().enumerate() {
            let elem = self.group.render(g);
            let mag = n.unsigned_abs();
            let body = if mag == 1 { elem } else { format!("{mag}*{elem}") };
            match (i, n < 0) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

/// `numerator / base^exp` with `base = |X|`.
#[derive(Clone, Debug)]
pub struct ScaledGroupRing {
    numerator: GroupRingElem,
    base: u64,
    exp: u32,
}

impl ScaledGroupRing {
    pub fn new(numerator: GroupRingElem, base: u64, exp: u32) -> Self {
        assert!(base > 0, "denominator base must be positive");
        ScaledGroupRing { numerator, base, exp }
    }

    pub fn numerator(&self) -> &GroupRingElem {
        &self.numerator
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn denominator(&self) -> i128 {
        (self.base as i128).pow(self.exp)
    }

    /// Cancels common factors of `base` from numerator and denominator.
    pub fn reduced(&self) -> Self {
        let mut out = self.clone();
        let b = self.base as i64;
        while out.exp > 0 && b > 1 && out.numerator.divisible_by(b) {
            out.numerator = out.numerator.divide_exact(b);
            out.exp -= 1;
        }
        if out.numerator.is_zero() {
            out.exp = 0;
        }
        out
    }

    pub fn to_complex(&self, chi: &super::Character) -> num_complex::Complex64 {
        chi.eval(&self.numerator) / (self.base as f64).powi(self.exp as i32)
    }
}

impl Mul for &ScaledGroupRing {
    type Output = ScaledGroupRing;
    fn mul(self, rhs: &ScaledGroupRing) -> ScaledGroupRing {
        if self.base == rhs.base || rhs.exp == 0 || self.exp == 0 {
            let base = if self.exp == 0 { rhs.base } else { self.base };
            ScaledGroupRing::new(&self.numerator * &rhs.numerator, base, self.exp + rhs.exp)
        } else {
            panic!("cannot multiply scaled group ring elements with bases {} and {}", self.base, rhs.base);
        }
    }
}

/// Equality after cross-multiplying denominators.
impl PartialEq for ScaledGroupRing {
    fn eq(&self, other: &Self) -> bool {
        if self.numerator.group != other.numerator.group {
            return false;
        }
        let (da, db) = (self.denominator(), other.denominator());
        let lhs: BTreeMap<u64, i128> =
            self.numerator.terms().map(|(g, n)| (g, n as i128 * db)).collect();
        let rhs: BTreeMap<u64, i128> =
            other.numerator.terms().map(|(g, n)| (g, n as i128 * da)).collect();
        lhs == rhs
    }
}

impl Eq for ScaledGroupRing {}

impl fmt::Display for ScaledGroupRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        if r.exp == 0 {
            write!(f, "{}", r.numerator)
        } else {
            write!(f, "({}) / {}^{}", r.numerator, r.base, r.exp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z25() -> WeightGroup {
        WeightGroup::units(5, 2).unwrap()
    }

    #[test]
    fn render_canonical() {
        let g = z25();
        let x = GroupRingElem::from_terms(g, [(7, 2), (1, 5), (24, -1), (3, 0)]);
        assert_eq!(x.to_string(), "5*1 + 2*7 - 24");
        assert_eq!(GroupRingElem::zero(g).to_string(), "0");
        assert_eq!(GroupRingElem::one(g).to_string(), "1");
        let c = WeightGroup::cyclic(5).unwrap();
        let y = GroupRingElem::from_terms(c, [(0, 3), (1, 1), (4, -2)]);
        assert_eq!(y.to_string(), "3*1 + t - 2*t^4");
    }

    #[test]
    fn scaled_reduction_and_equality() {
        let g = z25();
        let a = ScaledGroupRing::new(GroupRingElem::scalar(g, 5), 5, 1);
        assert_eq!(a.to_string(), "1");
        assert_eq!(a, ScaledGroupRing::new(GroupRingElem::one(g), 5, 0));
        let b = ScaledGroupRing::new(GroupRingElem::from_terms(g, [(1, 3), (7, 2)]), 5, 2);
        assert_eq!(b.to_string(), "(3*1 + 2*7) / 5^2");
        assert_ne!(a, b);
    }

    #[test]
    fn shift_permutes_keys() {
        let g = z25();
        let x = GroupRingElem::from_terms(g, [(1, 2), (7, 1)]);
        let y = x.shift(7);
        assert_eq!(y, GroupRingElem::from_terms(g, [(7, 2), (24, 1)]));
    }

    fn arb_elem() -> impl Strategy<Value = GroupRingElem> {
        proptest::collection::vec((0u64..6, -3i64..4), 0..5)
            .prop_map(|ts| GroupRingElem::from_terms(WeightGroup::Cyclic(6), ts))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!((&a * &b).augmentation(), a.augmentation() * b.augmentation());
        }
    }
}
