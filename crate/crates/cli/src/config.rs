//! Resolution of command-line descriptors into library objects, and the
//! report header that records every effective setting.

use std::fs;
use std::path::Path;

use clap::Args;
use tetra_core::algebra::{Character, CharacterSpec, WeightGroup};
use tetra_core::cube::{Cocycle3, MonomialCocycle};
use tetra_core::graph::{fixtures as graph_fixtures, SingularGraph};
use tetra_core::quandle::{diagram::fixtures as diagram_fixtures, GroupTable, KnotDiagram, Quandle, QuandleCochain2, QuandleCochain3};
use tetra_core::tetramap::{ColorSetKind, TetraMap};
use tetra_core::{Error, Guards, Result};

/// Effective settings of one run, printed as the first report line.
#[derive(Default)]
pub struct Header {
    fields: Vec<(String, String)>,
    defaulted: Vec<String>,
}

impl Header {
    pub fn new(command: &str) -> Self {
        let mut h = Header::default();
        h.set("command", command);
        h
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    /// Records `value`, or `default` when absent.
    pub fn pick<T: ToString + Clone>(&mut self, key: &str, value: Option<T>, default: T) -> T {
        let v = match value {
            Some(v) => v,
            None => {
                self.defaulted.push(key.to_string());
                default
            }
        };
        self.set(key, v.clone());
        v
    }

    pub fn render(&self) -> String {
        let mut line = String::from("config");
        for (k, v) in &self.fields {
            line.push_str(&format!(" {k}={v}"));
        }
        if !self.defaulted.is_empty() {
            line.push_str(&format!(" defaults={}", self.defaulted.join(",")));
        }
        line
    }
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(Path::new(path)).map_err(|e| Error::InvalidParameter(format!("cannot read `{path}`: {e}")))
}

#[derive(Args, Clone, Debug, Default)]
pub struct SolutionArgs {
    /// `electric`, `identity`, `bilinear` or a tetramap file.
    #[arg(long)]
    pub solution: Option<String>,
    /// Prime of the electric solution.
    #[arg(long)]
    pub p: Option<u64>,
    /// Exponent of the electric solution.
    #[arg(long)]
    pub k: Option<u32>,
    /// Number of colors for `identity` and `bilinear`.
    #[arg(long)]
    pub h: Option<usize>,
}

impl SolutionArgs {
    pub fn resolve(&self, header: &mut Header) -> Result<TetraMap> {
        let name = header.pick("solution", self.solution.clone(), "electric".to_string());
        match name.as_str() {
            "electric" => {
                let p = header.pick("p", self.p, 5);
                let k = header.pick("k", self.k, 2);
                TetraMap::electric(p, k)
            }
            "identity" => {
                let h = header.pick("h", self.h, 2);
                Ok(TetraMap::identity(tetra_core::tetramap::ColorSet::explicit(h)?))
            }
            "bilinear" => {
                let h = header.pick("h", self.h, 3);
                TetraMap::bilinear(h)
            }
            path => TetraMap::parse(&read(path)?),
        }
    }
}

#[derive(Args, Clone, Debug, Default)]
pub struct CocycleArgs {
    /// `trivial`, `monomial:S,A,B,C`, `form:M:A,B,C,D` or a cocycle file.
    #[arg(long)]
    pub cocycle: Option<String>,
    /// Exponent applied to every weight.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<i64>,
}

/// Weight group used by `trivial` on a given color set.
fn default_group(phi: &TetraMap) -> Result<WeightGroup> {
    match phi.set().kind() {
        ColorSetKind::Reduced { modulus, .. } => WeightGroup::units(modulus.p(), modulus.k()),
        ColorSetKind::Explicit => WeightGroup::cyclic(phi.h() as u64),
    }
}

fn ints<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| t.trim().parse::<T>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::InvalidParameter(format!("{what} `{s}`: expected comma-separated integers")))
}

impl CocycleArgs {
    pub fn resolve(&self, phi: &TetraMap, header: &mut Header) -> Result<Cocycle3> {
        let desc = header.pick("cocycle", self.cocycle.clone(), "trivial".to_string());
        parse_cocycle(&desc, phi)
    }

    pub fn exponent(&self, header: &mut Header) -> i64 {
        header.pick("s", self.s, 1)
    }
}

pub fn parse_cocycle(desc: &str, phi: &TetraMap) -> Result<Cocycle3> {
    if desc == "trivial" {
        return Ok(Cocycle3::trivial(default_group(phi)?, phi.h()));
    }
    if let Some(rest) = desc.strip_prefix("monomial:") {
        let v: Vec<i32> = ints(rest, "monomial cocycle")?;
        let [sign, a, b, c] = v[..] else {
            return Err(Error::InvalidParameter("monomial cocycle needs S,A,B,C".into()));
        };
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidParameter("monomial sign must be 1 or -1".into()));
        }
        return Cocycle3::monomial(phi.set(), MonomialCocycle { sign: sign as i8, a, b, c });
    }
    // Exponent `A·x + B·y + C·z + D·x·z` of a generator of Z/M, on color indices.
    if let Some(rest) = desc.strip_prefix("form:") {
        let (m, coeffs) = rest
            .split_once(':')
            .ok_or_else(|| Error::InvalidParameter("form cocycle: expected form:M:A,B,C,D".into()))?;
        let m: u64 = m.parse().map_err(|_| Error::InvalidParameter(format!("form cocycle: bad modulus `{m}`")))?;
        let v: Vec<u64> = ints(coeffs, "form cocycle")?;
        let [a, b, c, d] = v[..] else {
            return Err(Error::InvalidParameter("form cocycle needs A,B,C,D".into()));
        };
        let group = WeightGroup::cyclic(m)?;
        return Cocycle3::from_fn(group, phi.h(), |[x, y, z]| {
            let (x, y, z) = (x as u64, y as u64, z as u64);
            (a * x + b * y + c * z + d * x * z) % m
        });
    }
    Cocycle3::parse(&read(desc)?, phi.set())
}

pub fn character(desc: Option<&str>, group: WeightGroup, header: &mut Header) -> Result<Option<Character>> {
    match desc {
        None => Ok(None),
        Some(d) => {
            header.set("character", d);
            Ok(Some(Character::new(group, &CharacterSpec::parse(d)?)?))
        }
    }
}

pub fn graph(desc: &str) -> Result<SingularGraph> {
    if let Some(name) = desc.strip_prefix("fixture:") {
        return graph_fixtures::named()
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, g)| g)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown graph fixture `{name}`")));
    }
    SingularGraph::parse(&read(desc)?)
}

pub fn diagram(desc: &str) -> Result<KnotDiagram> {
    if let Some(name) = desc.strip_prefix("fixture:") {
        return diagram_fixtures::all()
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, d)| d)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown diagram fixture `{name}`")));
    }
    KnotDiagram::parse(&read(desc)?)
}

/// `trivial:N`, `alexander:N,T`, `s3:K` (conjugation `b^{-K} a b^K` in S3) or a quandle file.
pub fn quandle(desc: &str) -> Result<Quandle> {
    if let Some(n) = desc.strip_prefix("trivial:") {
        let n: usize = n.parse().map_err(|_| Error::InvalidParameter(format!("bad quandle size `{n}`")))?;
        return Quandle::trivial(n);
    }
    if let Some(rest) = desc.strip_prefix("alexander:") {
        let v: Vec<i64> = ints(rest, "alexander quandle")?;
        let [n, t] = v[..] else {
            return Err(Error::InvalidParameter("alexander quandle needs N,T".into()));
        };
        if n < 1 {
            return Err(Error::InvalidParameter("alexander modulus must be positive".into()));
        }
        return Quandle::alexander(n as u64, t);
    }
    if let Some(k) = desc.strip_prefix("s3:") {
        let k: i64 = k.parse().map_err(|_| Error::InvalidParameter(format!("bad conjugation power `{k}`")))?;
        return Quandle::conjugation(&GroupTable::s3(), k);
    }
    Quandle::parse(&read(desc)?)
}

/// `zero`, `coboundary:A,B,C` (the coboundary of `η(a,b) = A·a + B·b + C`
/// off the diagonal) or a quandle cochain file.
pub fn theta(desc: &str, q: &Quandle, m: u64) -> Result<QuandleCochain3> {
    if desc == "zero" {
        return QuandleCochain3::zero(q.len(), m);
    }
    if let Some(rest) = desc.strip_prefix("coboundary:") {
        let v: Vec<u64> = ints(rest, "coboundary")?;
        let [a, b, c] = v[..] else {
            return Err(Error::InvalidParameter("coboundary needs A,B,C".into()));
        };
        let eta = QuandleCochain2::from_fn(q.len(), m, |x, y| (a * x as u64 + b * y as u64 + c) % m)?;
        return eta.coboundary(q);
    }
    let t = QuandleCochain3::parse(&read(desc)?)?;
    if t.len() != q.len() {
        return Err(Error::InvalidParameter(format!("cochain is on {} elements, quandle has {}", t.len(), q.len())));
    }
    Ok(t)
}

/// Applies `NAME=LIMIT` overrides.
pub fn guards(overrides: &[String]) -> Result<Guards> {
    let mut g = Guards::default();
    for o in overrides {
        let (name, value) = o
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("guard `{o}`: expected NAME=LIMIT")))?;
        let v: f64 = value
            .parse()
            .ok()
            .filter(|v: &f64| *v >= 0.0)
            .ok_or_else(|| Error::InvalidParameter(format!("guard `{o}`: bad limit")))?;
        let slot = match name {
            "word_tuples" => &mut g.word_tuples,
            "cube_basis" => &mut g.cube_basis,
            "graph_colorings" => &mut g.graph_colorings,
            "lattice_direct" => &mut g.lattice_direct,
            "transfer_dim" => &mut g.transfer_dim,
            "quandle" => &mut g.quandle,
            _ => return Err(Error::InvalidParameter(format!("unknown guard `{name}`"))),
        };
        *slot = v;
    }
    Ok(g)
}
