use std::collections::BTreeMap;

use crate::algebra::{GroupRingElem, WeightGroup};
use crate::error::{guard, Error, Result};
use crate::exec;
use crate::guards::Guards;
use crate::tetramap::content_lines;

use super::homology::QuandleCochain3;
use super::structure::Quandle;

/// `c(under_right) = c(under_left) ∗ c(over)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArcRelation {
    pub under_left: usize,
    pub over: usize,
    pub under_right: usize,
}

/// Signed triple point with its top, middle and bottom leaves in the
/// outgoing octant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriplePoint {
    pub name: String,
    pub sign: i8,
    pub leaves: [usize; 3],
}

/// Combinatorial presentation of a broken surface diagram.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KnotDiagram {
    pub leaves: Vec<String>,
    pub arcs: Vec<ArcRelation>,
    pub triples: Vec<TriplePoint>,
}

impl KnotDiagram {
    fn leaf(&self, ln: usize, name: &str) -> Result<usize> {
        self.leaves.iter().position(|l| l == name).ok_or_else(|| Error::syntax(ln, format!("unknown leaf `{name}`")))
    }

    /// `leaf <id>`, `arc <underLeft> <over> <underRight>`,
    /// `triple <id> sign=<±1> top=<leaf> mid=<leaf> bot=<leaf>`.
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = content_lines(text).collect();
        let mut d = KnotDiagram::default();
        for &(ln, line) in &lines {
            let w: Vec<&str> = line.split_whitespace().collect();
            if w[0] == "leaf" {
                let [_, name] = w[..] else { return Err(Error::syntax(ln, "expected `leaf <id>`")) };
                if d.leaves.iter().any(|l| l == name) {
                    return Err(Error::syntax(ln, format!("leaf `{name}` declared twice")));
                }
                d.leaves.push(name.to_string());
            }
        }
        for &(ln, line) in &lines {
            let w: Vec<&str> = line.split_whitespace().collect();
            match w[0] {
                "leaf" => {}
                "arc" => {
                    let [_, l, o, r] = w[..] else {
                        return Err(Error::syntax(ln, "expected `arc <underLeft> <over> <underRight>`"));
                    };
                    d.arcs.push(ArcRelation { under_left: d.leaf(ln, l)?, over: d.leaf(ln, o)?, under_right: d.leaf(ln, r)? });
                }
                "triple" => {
                    let name = w.get(1).ok_or_else(|| Error::syntax(ln, "triple needs an id"))?;
                    let mut fields: BTreeMap<&str, &str> = BTreeMap::new();
                    for kv in &w[2..] {
                        let (k, v) = kv.split_once('=').ok_or_else(|| Error::syntax(ln, format!("expected key=value, got `{kv}`")))?;
                        fields.insert(k, v);
                    }
                    let sign = match fields.get("sign") {
                        Some(&"+1") | Some(&"1") | Some(&"+") => 1,
                        Some(&"-1") | Some(&"-") => -1,
                        _ => return Err(Error::syntax(ln, "triple needs sign=+1 or sign=-1")),
                    };
                    let mut leaves = [0; 3];
                    for (i, key) in ["top", "mid", "bot"].iter().enumerate() {
                        let v = fields.get(key).ok_or_else(|| Error::syntax(ln, format!("triple needs {key}=")))?;
                        leaves[i] = d.leaf(ln, v)?;
                    }
                    d.triples.push(TriplePoint { name: name.to_string(), sign, leaves });
                }
                other => return Err(Error::syntax(ln, format!("unknown declaration `{other}`"))),
            }
        }
        Ok(d)
    }

    pub fn to_text(&self) -> String {
        let mut out: String = self.leaves.iter().map(|l| format!("leaf {l}\n")).collect();
        let name = |i: usize| self.leaves[i].as_str();
        for a in &self.arcs {
            out.push_str(&format!("arc {} {} {}\n", name(a.under_left), name(a.over), name(a.under_right)));
        }
        for t in &self.triples {
            out.push_str(&format!(
                "triple {} sign={:+} top={} mid={} bot={}\n",
                t.name,
                t.sign,
                name(t.leaves[0]),
                name(t.leaves[1]),
                name(t.leaves[2])
            ));
        }
        out
    }
}

#[derive(Clone, Debug)]
enum QStep {
    Free(usize),
    /// Apply relation `arc`; assign its right leaf or check it.
    Apply { arc: usize, assign: bool },
}

/// Enumeration order: generating leaves free, then relations applied as
/// their inputs become known; leaves left on a cycle of relations are freed
/// one at a time.
struct QuandlePlan {
    steps: Vec<QStep>,
    free: usize,
}

fn plan(d: &KnotDiagram) -> Result<QuandlePlan> {
    let mut arcs: Vec<ArcRelation> = Vec::new();
    for a in &d.arcs {
        if !arcs.contains(a) {
            arcs.push(*a);
        }
    }
    let mut defined: BTreeMap<usize, ArcRelation> = BTreeMap::new();
    for a in &arcs {
        if a.over == a.under_left || a.over == a.under_right {
            return Err(Error::InconsistentPresentation(format!(
                "leaf `{}` is both the over-leaf and an under-leaf of one relation",
                d.leaves[a.over]
            )));
        }
        defined.entry(a.under_right).or_insert(*a);
    }
    let n = d.leaves.len();
    let mut known = vec![false; n];
    let mut steps = Vec::new();
    for (i, k) in known.iter_mut().enumerate() {
        if !defined.contains_key(&i) {
            *k = true;
            steps.push(QStep::Free(i));
        }
    }
    let arc_index: Vec<usize> = arcs.iter().map(|a| d.arcs.iter().position(|b| b == a).expect("own arc")).collect();
    let mut applied = vec![false; arcs.len()];
    loop {
        let ready = (0..arcs.len()).find(|&i| !applied[i] && known[arcs[i].under_left] && known[arcs[i].over]);
        match ready {
            Some(i) => {
                applied[i] = true;
                let r = arcs[i].under_right;
                steps.push(QStep::Apply { arc: arc_index[i], assign: !known[r] });
                known[r] = true;
            }
            None => match (0..n).find(|&l| !known[l]) {
                Some(l) => {
                    known[l] = true;
                    steps.push(QStep::Free(l));
                }
                None => break,
            },
        }
    }
    let free = steps.iter().filter(|s| matches!(s, QStep::Free(_))).count();
    Ok(QuandlePlan { steps, free })
}

impl QuandlePlan {
    fn run(&self, d: &KnotDiagram, q: &Quandle, i: u64, colors: &mut [u32]) -> bool {
        let h = q.len() as u64;
        let mut div = h.pow(self.free as u32);
        for s in &self.steps {
            match *s {
                QStep::Free(l) => {
                    div /= h;
                    colors[l] = (i / div % h) as u32;
                }
                QStep::Apply { arc, assign } => {
                    let a = d.arcs[arc];
                    let v = q.op(colors[a.under_left], colors[a.over]);
                    if assign {
                        colors[a.under_right] = v;
                    } else if colors[a.under_right] != v {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Every coloring `L → Q` satisfying all arc relations, in lexicographic
/// order of the freely chosen leaves.
pub fn color_diagram(d: &KnotDiagram, q: &Quandle, guards: &Guards) -> Result<Vec<Vec<u32>>> {
    let p = plan(d)?;
    guard("quandle", (q.len() as f64).powi(p.free as i32), guards.quandle)?;
    let total = (q.len() as u64).pow(p.free as u32);
    let mut colors = vec![0u32; d.leaves.len()];
    let mut out = Vec::new();
    for i in 0..total {
        if p.run(d, q, i, &mut colors) {
            out.push(colors.clone());
        }
    }
    Ok(out)
}

/// `S(D, θ) = Σ_C Π_τ θ(top, mid, bot)^{ε(τ)}` in `Z[Z/m]`.
pub fn state_sum(d: &KnotDiagram, theta: &QuandleCochain3, q: &Quandle, guards: &Guards) -> Result<GroupRingElem> {
    if theta.len() != q.len() {
        return Err(Error::invalid("cochain and quandle sizes differ"));
    }
    let p = plan(d)?;
    guard("quandle", (q.len() as f64).powi(p.free as i32), guards.quandle)?;
    let group = WeightGroup::cyclic(theta.modulus())?;
    let total = (q.len() as u64).pow(p.free as u32);
    let nl = d.leaves.len();
    Ok(exec::fold_chunks(
        total,
        || (GroupRingElem::zero(group), vec![0u32; nl]),
        |(mut acc, mut colors), i| {
            if p.run(d, q, i, &mut colors) {
                let w = d.triples.iter().fold(group.identity(), |w, t| {
                    let [a, b, c] = t.leaves.map(|l| colors[l]);
                    group.op(w, group.pow(theta.value(a, b, c), t.sign as i64))
                });
                acc.add_term(w, 1);
            }
            (acc, colors)
        },
        |a, b| (&a.0 + &b.0, a.1),
    )
    .0)
}

/// Synthetic diagrams for tests and the command line.
pub mod fixtures {
    use super::KnotDiagram;

    fn parse(text: &str) -> KnotDiagram {
        KnotDiagram::parse(text).expect("fixture is well formed")
    }

    pub fn one_leaf() -> KnotDiagram {
        parse("leaf a\n")
    }

    pub fn single_relation() -> KnotDiagram {
        parse("leaf l\nleaf o\nleaf r\narc l o r\n")
    }

    /// Three under-leaves cut cyclically by one over-leaf. A presentation
    /// only; it is not the diagram of a closed surface.
    pub fn cyclic_chain() -> KnotDiagram {
        parse("leaf x\nleaf a\nleaf b\nleaf c\narc a x b\narc b x c\narc c x a\ntriple t sign=+1 top=x mid=a bot=b\n")
    }

    /// One positive and one negative triple point on the same leaves.
    pub fn cancelling_pair() -> KnotDiagram {
        parse(
            "leaf a\nleaf b\nleaf c\nleaf d\narc c a d\n\
             triple t1 sign=+1 top=a mid=b bot=c\ntriple t2 sign=-1 top=a mid=b bot=c\n",
        )
    }

    /// Two over-leaves cutting each other's under-leaves, with two triple
    /// points. A presentation only.
    pub fn braided() -> KnotDiagram {
        parse(
            "leaf p\nleaf q\nleaf p2\nleaf q2\nleaf r\nleaf r2\n\
             arc p q p2\narc q p2 q2\narc r p r2\n\
             triple t1 sign=+1 top=p mid=q bot=r\ntriple t2 sign=+1 top=q2 mid=p2 bot=r2\n",
        )
    }

    /// Three round spheres at constant heights A over B over C, pairwise
    /// meeting in circles that cross at two triple points of opposite sign.
    /// B is cut by A into an inner and outer leaf; C is cut into four.
    pub fn three_spheres() -> KnotDiagram {
        parse(
            "leaf A\nleaf Bo\nleaf Bi\nleaf C0\nleaf CA\nleaf CB\nleaf CAB\n\
             arc Bo A Bi\narc C0 A CA\narc C0 Bo CB\narc CA Bi CAB\narc CB A CAB\n\
             triple upper sign=+1 top=A mid=Bi bot=CAB\ntriple lower sign=-1 top=A mid=Bi bot=CAB\n",
        )
    }

    /// Fixtures that are diagrams of closed surfaces.
    pub fn surfaces() -> Vec<(&'static str, KnotDiagram)> {
        vec![("one-leaf", one_leaf()), ("single-relation", single_relation()), ("three-spheres", three_spheres())]
    }

    pub fn all() -> Vec<(&'static str, KnotDiagram)> {
        vec![
            ("three-spheres", three_spheres()),
            ("one-leaf", one_leaf()),
            ("single-relation", single_relation()),
            ("cyclic-chain", cyclic_chain()),
            ("cancelling-pair", cancelling_pair()),
            ("braided", braided()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::{GroupTable, QuandleCochain2};

    /// Independent oracle: scan all `|Q|^|L|` maps.
    fn brute(d: &KnotDiagram, q: &Quandle) -> Vec<Vec<u32>> {
        let n = q.len() as u64;
        let l = d.leaves.len() as u32;
        (0..n.pow(l))
            .map(|i| (0..l).map(|j| (i / n.pow(l - 1 - j) % n) as u32).collect::<Vec<u32>>())
            .filter(|c| d.arcs.iter().all(|a| q.op(c[a.under_left], c[a.over]) == c[a.under_right]))
            .collect()
    }

    fn quandles() -> Vec<Quandle> {
        vec![Quandle::trivial(3).unwrap(), Quandle::alexander(3, -1).unwrap(), Quandle::conjugation(&GroupTable::s3(), 1).unwrap()]
    }

    #[test]
    fn counts_match_exhaustive_scan() {
        let g = Guards::default();
        for q in quandles() {
            for (name, d) in fixtures::all() {
                let mut got = color_diagram(&d, &q, &g).unwrap();
                let mut want = brute(&d, &q);
                got.sort();
                want.sort();
                assert_eq!(got, want, "{name}");
            }
        }
        let t = Quandle::trivial(4).unwrap();
        assert_eq!(color_diagram(&fixtures::one_leaf(), &t, &g).unwrap().len(), 4);
        assert_eq!(color_diagram(&fixtures::single_relation(), &t, &g).unwrap().len(), 16);
        let a = Quandle::alexander(3, -1).unwrap();
        // Three reflections around x cycle a → b → c → a only when a = x.
        assert_eq!(color_diagram(&fixtures::cyclic_chain(), &a, &g).unwrap().len(), 3);
    }

    #[test]
    fn self_crossing_relation_rejected() {
        let d = KnotDiagram::parse("leaf a\nleaf b\narc a b b\n").unwrap();
        let err = color_diagram(&d, &Quandle::trivial(2).unwrap(), &Guards::default()).unwrap_err();
        assert!(matches!(err, Error::InconsistentPresentation(_)));
    }

    #[test]
    fn zero_and_coboundary_state_sums() {
        let g = Guards::default();
        for q in quandles() {
            let zero = QuandleCochain3::zero(q.len(), 6).unwrap();
            let eta = QuandleCochain2::from_fn(q.len(), 6, |a, b| (2 * a + 5 * b + 1) as u64).unwrap();
            let cob = eta.coboundary(&q).unwrap();
            for (name, d) in fixtures::all() {
                let n = color_diagram(&d, &q, &g).unwrap().len() as i64;
                let grp = WeightGroup::cyclic(6).unwrap();
                let s0 = state_sum(&d, &zero, &q, &g).unwrap();
                assert_eq!(s0, GroupRingElem::scalar(grp, n), "{name}");
                if name == "cancelling-pair" {
                    let bumped = zero.with_value([0, 1, 2], 1);
                    assert_eq!(state_sum(&d, &bumped, &q, &g).unwrap(), s0);
                }
                if fixtures::surfaces().iter().any(|(n, _)| *n == name) {
                    assert_eq!(state_sum(&d, &cob, &q, &g).unwrap(), s0, "{name}");
                }
            }
        }
    }

    #[test]
    fn roundtrip() {
        for (_, d) in fixtures::all() {
            assert_eq!(KnotDiagram::parse(&d.to_text()).unwrap(), d);
        }
    }
}
