use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use super::modint::{pow_mod, Modulus};
use super::GroupRingElem;
use crate::error::{Error, Result};

/// Finite abelian group holding Boltzmann weights.
///
/// Elements are plain `u64` canonical representatives: units in `[1, p^k)` for
/// `(Z/p^k)^*` (written multiplicatively) or residues in `[0, m)` for `Z/m`
/// (written additively). Canonical order is ascending representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightGroup {
    Units(Modulus),
    Cyclic(u64),
}

impl WeightGroup {
    pub fn units(p: u64, k: u32) -> Result<Self> {
        Ok(WeightGroup::Units(Modulus::new(p, k)?))
    }

    pub fn cyclic(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("cyclic group order must be positive"));
        }
        Ok(WeightGroup::Cyclic(m))
    }

    pub fn identity(&self) -> u64 {
        match self {
            WeightGroup::Units(_) => 1,
            WeightGroup::Cyclic(_) => 0,
        }
    }

    pub fn order(&self) -> u64 {
        match self {
            WeightGroup::Units(m) => m.totient(),
            WeightGroup::Cyclic(m) => *m,
        }
    }

    pub fn contains(&self, g: u64) -> bool {
        match self {
            WeightGroup::Units(m) => g < m.value() && m.is_unit(g),
            WeightGroup::Cyclic(m) => g < *m,
        }
    }

    pub fn op(&self, a: u64, b: u64) -> u64 {
        match self {
            WeightGroup::Units(m) => (a as u128 * b as u128 % m.value() as u128) as u64,
            WeightGroup::Cyclic(m) => (a + b) % m,
        }
    }

    pub fn inv(&self, a: u64) -> u64 {
        self.pow(a, -1)
    }

    /// `a^e` (multiplicatively) or `e·a` (additively).
    pub fn pow(&self, a: u64, e: i64) -> u64 {
        match self {
            WeightGroup::Units(m) => {
                let mv = m.value();
                let base = if e < 0 {
                    pow_mod(a, m.totient() - 1, mv)
                } else {
                    a
                };
                pow_mod(base, e.unsigned_abs(), mv)
            }
            WeightGroup::Cyclic(m) => {
                let r = (a as i128 * e as i128).rem_euclid(*m as i128);
                r as u64
            }
        }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> Vec<u64> {
        match self {
            WeightGroup::Units(m) => (1..m.value()).filter(|&g| m.is_unit(g)).collect(),
            WeightGroup::Cyclic(m) => (0..*m).collect(),
        }
    }

    pub fn element_order(&self, a: u64) -> u64 {
        let id = self.identity();
        let mut x = a;
        let mut n = 1;
        while x != id {
            x = self.op(x, a);
            n += 1;
        }
        n
    }

    /// A fixed generating set with element orders; the group is the direct
    /// product of the cyclic subgroups they generate.
    pub fn generators(&self) -> Vec<(u64, u64)> {
        match self {
            WeightGroup::Cyclic(1) => vec![],
            WeightGroup::Cyclic(m) => vec![(1, *m)],
            WeightGroup::Units(md) => {
                let (p, k, mv) = (md.p(), md.k(), md.value());
                if p == 2 {
                    match k {
                        1 => vec![],
                        2 => vec![(3, 2)],
                        _ => vec![(mv - 1, 2), (5, mv / 4)],
                    }
                } else {
                    let n = md.totient();
                    let g = (2..mv)
                        .find(|&g| md.is_unit(g) && self.element_order(g) == n)
                        .expect("unit group of an odd prime power is cyclic");
                    vec![(g, n)]
                }
            }
        }
    }

    pub fn render(&self, g: u64) -> String {
        match self {
            WeightGroup::Units(_) => g.to_string(),
            WeightGroup::Cyclic(_) => {
                if g == 0 {
                    "1".to_string()
                } else if g == 1 {
                    "t".to_string()
                } else {
                    format!("t^{g}")
                }
            }
        }
    }
}

impl fmt::Display for WeightGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightGroup::Units(m) => write!(f, "(Z/{}^{})*", m.p(), m.k()),
            WeightGroup::Cyclic(m) => write!(f, "Z/{m}"),
        }
    }
}

/// How generator images are chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharacterSpec {
    Trivial,
    /// Every generator of order `o` goes to `exp(2πi/o)`; `root_order` must be
    /// a multiple of every generator order.
    Primitive { root_order: u64 },
    /// Generator `j` goes to `exp(2πi·images[j]/root_order)`.
    Explicit { root_order: u64, images: Vec<u64> },
}

impl CharacterSpec {
    /// Parses `trivial`, `N:primitive`, `N:a` or `N:a1,a2,...`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "trivial" {
            return Ok(CharacterSpec::Trivial);
        }
        let (n, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("character `{s}`: expected N:primitive or N:a1,a2")))?;
        let root_order: u64 = n
            .parse()
            .map_err(|_| Error::invalid(format!("character `{s}`: bad root order")))?;
        if root_order == 0 {
            return Err(Error::invalid("character root order must be positive"));
        }
        if rest == "primitive" {
            return Ok(CharacterSpec::Primitive { root_order });
        }
        let images = rest
            .split(',')
            .map(|t| t.trim().parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::invalid(format!("character `{s}`: bad generator image")))?;
        Ok(CharacterSpec::Explicit { root_order, images })
    }
}

/// A homomorphism from a weight group to the unit circle, stored as an exponent
/// table over the group's generators.
#[derive(Clone, Debug)]
pub struct Character {
    group: WeightGroup,
    root_order: u64,
    /// element -> exponent k with chi(element) = exp(2πi·k/root_order)
    table: HashMap<u64, u64>,
}

impl Character {
    pub fn new(group: WeightGroup, spec: &CharacterSpec) -> Result<Self> {
        let gens = group.generators();
        let (root_order, images) = match spec {
            CharacterSpec::Trivial => (1, vec![0; gens.len()]),
            CharacterSpec::Primitive { root_order } => {
                let mut images = Vec::with_capacity(gens.len());
                for &(g, o) in &gens {
                    if root_order % o != 0 {
                        return Err(Error::NotHomomorphism(format!(
                            "generator {} has order {o}, which does not divide {root_order}",
                            group.render(g)
                        )));
                    }
                    images.push(root_order / o);
                }
                (*root_order, images)
            }
            CharacterSpec::Explicit { root_order, images } => {
                if images.len() != gens.len() {
                    return Err(Error::NotHomomorphism(format!(
                        "{} generator images given, group {group} has {} generators",
                        images.len(),
                        gens.len()
                    )));
                }
                for (&a, &(g, o)) in images.iter().zip(&gens) {
                    if (a as u128 * o as u128) % *root_order as u128 != 0 {
                        return Err(Error::NotHomomorphism(format!(
                            "generator {} has order {o} but exp(2πi·{a}/{root_order})^{o} != 1",
                            group.render(g)
                        )));
                    }
                }
                (*root_order, images.clone())
            }
        };
        // Enumerate every product of generator powers with its exponent.
        let mut table = HashMap::with_capacity(group.order() as usize);
        table.insert(group.identity(), 0u64);
        for (&(g, o), &a) in gens.iter().zip(&images) {
            let current: Vec<(u64, u64)> = table.iter().map(|(&x, &e)| (x, e)).collect();
            let mut power = group.identity();
            for i in 1..o {
                power = group.op(power, g);
                let shift = (a as u128 * i as u128 % root_order as u128) as u64;
                for &(x, e) in &current {
                    table.insert(group.op(x, power), (e + shift) % root_order);
                }
            }
        }
        if table.len() as u64 != group.order() {
            return Err(Error::NotHomomorphism(format!(
                "generators of {group} produced {} of {} elements",
                table.len(),
                group.order()
            )));
        }
        Ok(Character { group, root_order, table })
    }

    pub fn group(&self) -> WeightGroup {
        self.group
    }

    pub fn root_order(&self) -> u64 {
        self.root_order
    }

    pub fn exponent(&self, g: u64) -> u64 {
        self.table[&g]
    }

    pub fn eval_element(&self, g: u64) -> Complex64 {
        let k = self.exponent(g) as f64;
        Complex64::from_polar(1.0, 2.0 * PI * k / self.root_order as f64)
    }

    /// Linear extension to the group ring.
    pub fn eval(&self, x: &GroupRingElem) -> Complex64 {
        x.terms()
            .map(|(g, n)| self.eval_element(g) * n as f64)
            .sum()
    }
}

/// `character_eval` as a free function.
pub fn character_eval(x: &GroupRingElem, chi: &Character) -> Complex64 {
    chi.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_group_generators_cover_group() {
        for (p, k) in [(5, 1), (5, 2), (2, 1), (2, 2), (2, 3), (2, 5), (13, 2), (3, 3)] {
            let g = WeightGroup::units(p, k).unwrap();
            let chi = Character::new(g, &CharacterSpec::Trivial).unwrap();
            assert_eq!(chi.table.len() as u64, g.order());
        }
    }

    #[test]
    fn pow_and_inverse() {
        let g = WeightGroup::units(5, 2).unwrap();
        assert_eq!(g.inv(12), 23);
        assert_eq!(g.pow(12, -2), g.op(23, 23));
        let c = WeightGroup::cyclic(7).unwrap();
        assert_eq!(c.pow(3, -1), 4);
        assert_eq!(c.inv(0), 0);
    }

    #[test]
    fn primitive_character_on_units_25() {
        let g = WeightGroup::units(5, 2).unwrap();
        let chi = Character::new(g, &CharacterSpec::parse("20:primitive").unwrap()).unwrap();
        let (gen, _) = g.generators()[0];
        assert_eq!(chi.exponent(gen), 1);
        // -1 has order 2, so it maps to -1.
        let v = chi.eval_element(24);
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn character_rejects_bad_images() {
        let g = WeightGroup::cyclic(4).unwrap();
        assert!(matches!(
            Character::new(g, &CharacterSpec::Explicit { root_order: 4, images: vec![2] }),
            Ok(_)
        ));
        assert!(matches!(
            Character::new(g, &CharacterSpec::Explicit { root_order: 3, images: vec![1] }),
            Err(Error::NotHomomorphism(_))
        ));
        assert!(matches!(
            Character::new(g, &CharacterSpec::Primitive { root_order: 6 }),
            Err(Error::NotHomomorphism(_))
        ));
    }

    #[test]
    fn character_eval_examples() {
        let g = WeightGroup::cyclic(4).unwrap();
        let chi = Character::new(g, &CharacterSpec::parse("4:1").unwrap()).unwrap();
        // g -> i, g^{-1} -> -i
        let x = GroupRingElem::from_element(g, 1, 1) + GroupRingElem::from_element(g, 3, 1);
        assert!(chi.eval(&x).norm() < 1e-12);
        let triv = Character::new(g, &CharacterSpec::Trivial).unwrap();
        let y = GroupRingElem::from_element(g, 2, 3) + GroupRingElem::from_element(g, 1, -1);
        assert!((triv.eval(&y) - Complex64::new(2.0, 0.0)).norm() < 1e-12);
    }
}
