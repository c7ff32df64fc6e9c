use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::{MonomialOperator, WeightGroup};
use crate::error::{Error, Result};
use crate::exec;
use crate::tetramap::{content_lines, parse_color, ColorSet, TetraMap};

use super::coloring::CubeSchedule;
use super::face::{kappa, FaceIndex};

/// `φ(x,y,z) = s·x^a·y^b·z^c` in `(Z/p^k)^*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialCocycle {
    pub sign: i8,
    pub a: i32,
    pub b: i32,
    pub c: i32,
}

impl MonomialCocycle {
    pub fn constant(sign: i8) -> Self {
        MonomialCocycle { sign, a: 0, b: 0, c: 0 }
    }
}

impl fmt::Display for MonomialCocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={:+} a={} b={} c={}", self.sign, self.a, self.b, self.c)
    }
}

/// A 3-cochain `φ: X³ → G`, stored on triple indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle3 {
    group: WeightGroup,
    h: usize,
    values: Vec<u64>,
    monomial: Option<MonomialCocycle>,
}

impl Cocycle3 {
    pub fn constant(group: WeightGroup, h: usize, g: u64) -> Self {
        Cocycle3 { group, h, values: vec![g; h.pow(3)], monomial: None }
    }

    pub fn trivial(group: WeightGroup, h: usize) -> Self {
        Self::constant(group, h, group.identity())
    }

    pub fn from_fn(group: WeightGroup, h: usize, f: impl Fn([u32; 3]) -> u64) -> Result<Self> {
        let values: Vec<u64> = (0..h.pow(3) as u32)
            .map(|i| f([i / (h * h) as u32, i / h as u32 % h as u32, i % h as u32]))
            .collect();
        if let Some(&g) = values.iter().find(|&&g| !group.contains(g)) {
            return Err(Error::invalid(format!("{g} is not an element of {group}")));
        }
        Ok(Cocycle3 { group, h, values, monomial: None })
    }

    /// Monomial cochain on a reduced color set, valued in `(Z/p^k)^*`.
    pub fn monomial(set: &ColorSet, m: MonomialCocycle) -> Result<Self> {
        let modulus = set.modulus().ok_or_else(|| Error::invalid("monomial cocycles need a reduced color set"))?;
        if m.sign != 1 && m.sign != -1 {
            return Err(Error::invalid("monomial sign must be +1 or -1"));
        }
        let group = WeightGroup::units(modulus.p(), modulus.k())?;
        let sign = modulus.elem(m.sign as i64).value();
        let pw = |i: u32, e: i32| group.pow(set.value(i), e as i64);
        let mut c = Self::from_fn(group, set.len(), |[x, y, z]| {
            group.op(group.op(sign, pw(x, m.a)), group.op(pw(y, m.b), pw(z, m.c)))
        })?;
        c.monomial = Some(m);
        Ok(c)
    }

    pub fn group(&self) -> WeightGroup {
        self.group
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn monomial_form(&self) -> Option<MonomialCocycle> {
        self.monomial
    }

    pub fn value(&self, t: [u32; 3]) -> u64 {
        let h = self.h as u32;
        self.values[((t[0] * h + t[1]) * h + t[2]) as usize]
    }

    /// Copy with one value replaced.
    pub fn with_value(&self, t: [u32; 3], g: u64) -> Result<Self> {
        if !self.group.contains(g) {
            return Err(Error::invalid(format!("{g} is not an element of {}", self.group)));
        }
        let h = self.h as u32;
        let mut c = self.clone();
        c.values[((t[0] * h + t[1]) * h + t[2]) as usize] = g;
        c.monomial = None;
        Ok(c)
    }

    fn group_header(&self) -> String {
        match self.group {
            WeightGroup::Units(m) => format!("(Z/{}^{})*", m.p(), m.k()),
            WeightGroup::Cyclic(m) => format!("Z/{m}"),
        }
    }

    fn parse_group(s: &str) -> Option<WeightGroup> {
        if let Some(inner) = s.strip_prefix("(Z/").and_then(|r| r.strip_suffix(")*")) {
            let (p, k) = inner.split_once('^').unwrap_or((inner, "1"));
            return WeightGroup::units(p.parse().ok()?, k.parse().ok()?).ok();
        }
        WeightGroup::cyclic(s.strip_prefix("Z/")?.parse().ok()?).ok()
    }

    /// Parses `cocycle group=(Z/p^k)*` (or `group=Z/m`) followed by
    /// `x y z -> g` lines, or `cocycle monomial s=<±1> a=<int> b=<int> c=<int>`.
    pub fn parse(text: &str, set: &ColorSet) -> Result<Self> {
        let mut lines = content_lines(text);
        let (n, header) = lines.next().ok_or_else(|| Error::syntax(1, "empty cocycle file"))?;
        let words: Vec<&str> = header.split_whitespace().collect();
        if words.first() != Some(&"cocycle") {
            return Err(Error::syntax(n, "expected `cocycle` header"));
        }
        let kv = |key: &str| words.iter().find_map(|w| w.strip_prefix(key));
        if words.get(1) == Some(&"monomial") {
            let int = |key: &str| -> Result<i32> {
                kv(key)
                    .ok_or_else(|| Error::syntax(n, format!("missing {key}")))?
                    .parse()
                    .map_err(|_| Error::syntax(n, format!("bad value for {key}")))
            };
            let m = MonomialCocycle { sign: int("s=")? as i8, a: int("a=")?, b: int("b=")?, c: int("c=")? };
            if let Some((extra, _)) = lines.next() {
                return Err(Error::syntax(extra, "monomial cocycle takes no table"));
            }
            return Self::monomial(set, m);
        }
        let group = kv("group=")
            .and_then(Self::parse_group)
            .ok_or_else(|| Error::syntax(n, "expected group=(Z/p^k)* or group=Z/m"))?;
        let h = set.len();
        let mut values = vec![u64::MAX; h.pow(3)];
        for (n, line) in lines {
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| Error::syntax(n, "expected `x y z -> g`"))?;
            let t: Vec<u32> = lhs.split_whitespace().map(|w| parse_color(set, n, w)).collect::<Result<_>>()?;
            if t.len() != 3 {
                return Err(Error::syntax(n, "expected three colors"));
            }
            let g: u64 = rhs.trim().parse().map_err(|_| Error::syntax(n, "bad group element"))?;
            if !group.contains(g) {
                return Err(Error::syntax(n, format!("{g} is not an element of {group}")));
            }
            let i = (t[0] as usize * h + t[1] as usize) * h + t[2] as usize;
            if values[i] != u64::MAX {
                return Err(Error::syntax(n, "duplicate row"));
            }
            values[i] = g;
        }
        if values.contains(&u64::MAX) {
            return Err(Error::syntax(0, "cocycle table is incomplete"));
        }
        Ok(Cocycle3 { group, h, values, monomial: None })
    }

    pub fn to_text(&self, set: &ColorSet) -> String {
        let mut out = format!("cocycle group={}\n", self.group_header());
        let h = self.h as u32;
        for (i, &g) in self.values.iter().enumerate() {
            let i = i as u32;
            let t = [i / (h * h), i / h % h, i % h].map(|c| set.value(c));
            out.push_str(&format!("{} {} {} -> {g}\n", t[0], t[1], t[2]));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleCounterexample {
    /// Seed colors of `I⁴`, pairs 12, 13, 14, 23, 24, 34.
    pub seed: Vec<u64>,
    pub incoming: String,
    pub outgoing: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleReport {
    pub seeds: u64,
    pub counterexample: Option<CocycleCounterexample>,
}

impl CocycleReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for CocycleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "cocycle=holds seeds={}", self.seeds),
            Some(c) => write!(
                f,
                "cocycle=fails seeds={} seed={:?} incoming={} outgoing={}",
                self.seeds, c.seed, c.incoming, c.outgoing
            ),
        }
    }
}

/// The eight 3-faces of `I⁴` as `(incoming?, colors of their incoming 2-faces)`.
struct Faces4 {
    sched: CubeSchedule,
    /// Per 3-face of `I⁴`: incoming flag and its three incoming 2-faces.
    faces: Vec<(bool, [usize; 3])>,
}

impl Faces4 {
    fn new() -> Self {
        let sched = CubeSchedule::new(4).expect("I^4 schedule");
        let f3 = FaceIndex::new(4, 3);
        let faces = sched
            .steps()
            .iter()
            .map(|st| {
                let (stars, bits) = f3.face(st.face3);
                let j = (0..4).find(|j| !stars.contains(j)).expect("fixed coordinate");
                (bits[j] == kappa(j + 1), st.inputs)
            })
            .collect();
        Faces4 { sched, faces }
    }

    fn decode(&self, i: u64, h: u64) -> Vec<u32> {
        let mut seed = vec![0u32; 6];
        let mut r = i;
        for s in (0..6).rev() {
            seed[s] = (r % h) as u32;
            r /= h;
        }
        seed
    }

    /// Incoming and outgoing products for seed number `i`.
    fn sides(&self, phi: &TetraMap, coc: &Cocycle3, i: u64, colors: &mut [u32]) -> Option<(u64, u64)> {
        let seed = self.decode(i, phi.h() as u64);
        self.sched.run_into(phi, &seed, colors).ok()?;
        let g = coc.group;
        let (mut a, mut b) = (g.identity(), g.identity());
        for &(incoming, ins) in &self.faces {
            let v = coc.value(ins.map(|f| colors[f]));
            if incoming {
                a = g.op(a, v);
            } else {
                b = g.op(b, v);
            }
        }
        Some((a, b))
    }
}

/// Exhaustive check of the multiplicative cocycle condition over all
/// admissible colorings of `I⁴`: the product of `φ` over the incoming 3-faces
/// equals the product over the outgoing ones, each evaluated on the colors of
/// that 3-face's incoming 2-faces.
pub fn verify_cocycle(phi: &TetraMap, coc: &Cocycle3) -> Result<CocycleReport> {
    verify_cocycle_with(phi, coc, u64::MAX)
}

/// As [`verify_cocycle`], stopping after `limit` seeds.
pub fn verify_cocycle_with(phi: &TetraMap, coc: &Cocycle3, limit: u64) -> Result<CocycleReport> {
    if coc.h != phi.h() {
        return Err(Error::invalid("cocycle and map use color sets of different size"));
    }
    let f4 = Faces4::new();
    let total = (phi.h() as u64).pow(6).min(limit);
    let n = f4.sched.num_faces();
    let bad = exec::find_first(total, |i| {
        let mut colors = vec![0u32; n];
        match f4.sides(phi, coc, i, &mut colors) {
            Some((a, b)) => a != b,
            None => true,
        }
    });
    let counterexample = bad.map(|i| {
        let mut colors = vec![0u32; n];
        let seed = f4.decode(i, phi.h() as u64).into_iter().map(|c| phi.set().value(c)).collect();
        let (incoming, outgoing) = match f4.sides(phi, coc, i, &mut colors) {
            Some((a, b)) => (coc.group.render(a), coc.group.render(b)),
            None => ("inconsistent coloring".into(), String::new()),
        };
        CocycleCounterexample { seed, incoming, outgoing }
    });
    Ok(CocycleReport { seeds: total, counterexample })
}

/// `A(s)`: `e_x ⊗ e_y ⊗ e_z ↦ φ(x,y,z)^s e_{x'} ⊗ e_{y'} ⊗ e_{z'}`.
pub fn build_a(phi: &TetraMap, coc: &Cocycle3, s: i64) -> Result<MonomialOperator> {
    if coc.h != phi.h() {
        return Err(Error::invalid("cocycle and map use color sets of different size"));
    }
    let phase = coc.values.iter().map(|&g| coc.group.pow(g, s)).collect();
    MonomialOperator::new(phi.h(), 3, coc.group, phi.table().to_vec(), phase)
}

/// Outcome of one contraction `A^i_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Contraction {
    /// Monomial result: is it the identity, and are all its weights trivial?
    Monomial { identity: bool, unit_weight: bool },
    NotMonomial(String),
}

impl Contraction {
    pub fn is_identity(&self) -> bool {
        matches!(self, Contraction::Monomial { identity: true, .. })
    }

    pub fn has_unit_weight(&self) -> bool {
        matches!(self, Contraction::Monomial { unit_weight: true, .. })
    }
}

impl fmt::Display for Contraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Contraction::Monomial { identity, unit_weight } => {
                write!(f, "monomial(identity={identity},unit_weight={unit_weight})")
            }
            Contraction::NotMonomial(_) => write!(f, "not-monomial"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationReport {
    pub direction: (usize, usize),
    /// Lower index `i` contracted with upper index `j`.
    pub forward: Contraction,
    /// Lower index `j` contracted with upper index `i`.
    pub backward: Contraction,
}

impl NormalizationReport {
    /// Both contractions are the identity on `X²`.
    pub fn normalized(&self) -> bool {
        self.forward.is_identity() && self.backward.is_identity()
    }

    /// Both contractions are monomial with every weight equal to 1.
    pub fn unit_weight(&self) -> bool {
        self.forward.has_unit_weight() && self.backward.has_unit_weight()
    }
}

/// Both contractions `A^i_j` and `A^j_i`, compared with the identity on `X²`.
pub fn check_normalized(a: &MonomialOperator, direction: (usize, usize)) -> Result<NormalizationReport> {
    if a.arity() != 3 {
        return Err(Error::ArityMismatch { left: a.arity(), right: 3 });
    }
    let (i, j) = direction;
    let side = |lo, up| match a.convolve(lo, up) {
        Ok(b) => {
            let one = b.group().identity();
            Ok(Contraction::Monomial { identity: b.is_identity(), unit_weight: b.phases().iter().all(|&p| p == one) })
        }
        Err(Error::NotMonomial(reason)) => Ok(Contraction::NotMonomial(reason)),
        Err(e) => Err(e),
    };
    Ok(NormalizationReport { direction, forward: side(i, j)?, backward: side(j, i)? })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchHit {
    pub cocycle: MonomialCocycle,
    /// Normalization of `A(1)` in directions (1,2), (2,3), (1,3).
    pub normalization: Vec<NormalizationReport>,
}

/// All monomial cocycles `s·x^a y^b z^c`, `|a|,|b|,|c| ≤ bound`, in
/// lexicographic order of `(s, a, b, c)`.
///
/// Each side of the cocycle condition has four factors, so the sign cancels
/// and the condition reads `X^a Y^b Z^c = 1` where `X`, `Y`, `Z` are the ratios
/// of incoming to outgoing products of first, second and third arguments.
pub fn search_monomial_cocycles(phi: &TetraMap, bound: u32) -> Result<Vec<SearchHit>> {
    let set = phi.set();
    let modulus = set.modulus().ok_or_else(|| Error::invalid("monomial search needs a reduced color set"))?;
    let group = WeightGroup::units(modulus.p(), modulus.k())?;
    let f4 = Faces4::new();
    let h = phi.h() as u64;
    let n = f4.sched.num_faces();
    let ratios: Vec<[u64; 3]> = exec::map_collect(h.pow(6), |i| {
        let mut colors = vec![0u32; n];
        let seed = f4.decode(i, h);
        if f4.sched.run_into(phi, &seed, &mut colors).is_err() {
            return [0; 3];
        }
        let mut r = [group.identity(); 3];
        for &(incoming, ins) in &f4.faces {
            for (slot, &f) in ins.iter().enumerate() {
                let v = set.value(colors[f]);
                r[slot] = group.op(r[slot], if incoming { v } else { group.inv(v) });
            }
        }
        r
    });
    if ratios.contains(&[0; 3]) {
        return Err(Error::Inconsistent("map does not solve the tetrahedron equation".into()));
    }
    let distinct: BTreeSet<[u64; 3]> = ratios.into_iter().collect();
    let b = bound as i32;
    let mut hits = Vec::new();
    for sign in [-1i8, 1] {
        for a in -b..=b {
            for bb in -b..=b {
                for c in -b..=b {
                    let ok = distinct.iter().all(|r| {
                        group.op(group.op(group.pow(r[0], a as i64), group.pow(r[1], bb as i64)), group.pow(r[2], c as i64))
                            == group.identity()
                    });
                    if ok {
                        let m = MonomialCocycle { sign, a, b: bb, c };
                        let op = build_a(phi, &Cocycle3::monomial(set, m)?, 1)?;
                        let normalization = [(1, 2), (2, 3), (1, 3)]
                            .into_iter()
                            .map(|d| check_normalized(&op, d))
                            .collect::<Result<_>>()?;
                        hits.push(SearchHit { cocycle: m, normalization });
                    }
                }
            }
        }
    }
    Ok(hits)
}
