use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::tetramap::content_lines;

/// End of an oriented edge; edges run from tail to head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Head,
    Tail,
}

impl End {
    pub fn as_str(self) -> &'static str {
        match self {
            End::Head => "head",
            End::Tail => "tail",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Open,
    /// Closed component without vertices.
    Circle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub kind: EdgeKind,
}

/// Triple point: three lines, each an (incoming, outgoing) pair of edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex6 {
    pub name: String,
    pub sign: i8,
    pub lines: [(usize, usize); 3],
}

impl Vertex6 {
    pub fn ins(&self) -> [usize; 3] {
        self.lines.map(|l| l.0)
    }

    pub fn outs(&self) -> [usize; 3] {
        self.lines.map(|l| l.1)
    }
}

/// Branch point terminating one edge end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex1 {
    pub name: String,
    pub edge: usize,
    pub end: End,
}

/// The double-point graph of a diagram: degree-6 and degree-1 vertices joined
/// by oriented edges, plus vertex-free circles.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SingularGraph {
    edges: Vec<Edge>,
    vertices6: Vec<Vertex6>,
    vertices1: Vec<Vertex1>,
}

/// Incrementally assembles a [`SingularGraph`]; `build` checks that every end
/// of every open edge is attached exactly once.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    graph: SingularGraph,
    names: BTreeMap<String, usize>,
    vertex_names: BTreeMap<String, usize>,
    attached: BTreeMap<(usize, End), usize>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn add_edge(&mut self, line: usize, name: &str, kind: EdgeKind) -> Result<usize> {
        if self.names.contains_key(name) {
            return Err(Error::syntax(line, format!("edge `{name}` declared twice")));
        }
        let id = self.graph.edges.len();
        self.graph.edges.push(Edge { name: name.to_string(), kind });
        self.names.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn edge(&mut self, name: &str) -> Result<usize> {
        self.add_edge(0, name, EdgeKind::Open)
    }

    pub fn circle(&mut self, name: &str) -> Result<usize> {
        self.add_edge(0, name, EdgeKind::Circle)
    }

    fn lookup(&self, line: usize, name: &str) -> Result<usize> {
        self.names.get(name).copied().ok_or_else(|| Error::syntax(line, format!("unknown edge `{name}`")))
    }

    fn claim_vertex(&mut self, line: usize, name: &str) -> Result<()> {
        if self.vertex_names.insert(name.to_string(), line).is_some() {
            return Err(Error::syntax(line, format!("vertex `{name}` declared twice")));
        }
        Ok(())
    }

    fn attach(&mut self, line: usize, edge: usize, end: End) -> Result<()> {
        if self.attached.insert((edge, end), line).is_some() {
            return Err(Error::DoubleAttachment { line, edge: self.graph.edges[edge].name.clone(), end: end.as_str() });
        }
        Ok(())
    }

    fn vertex6_at(&mut self, line: usize, name: &str, sign: i8, lines: [(&str, &str); 3]) -> Result<usize> {
        if sign != 1 && sign != -1 {
            return Err(Error::BadLinePairing { line, vertex: name.into(), msg: "sign must be +1 or -1".into() });
        }
        self.claim_vertex(line, name)?;
        let mut ids = [(0, 0); 3];
        for (k, (a, b)) in lines.iter().enumerate() {
            let (a, b) = (self.lookup(line, a)?, self.lookup(line, b)?);
            for e in [a, b] {
                if self.graph.edges[e].kind == EdgeKind::Circle {
                    return Err(Error::BadLinePairing {
                        line,
                        vertex: name.into(),
                        msg: format!("circle `{}` cannot pass through a vertex", self.graph.edges[e].name),
                    });
                }
            }
            self.attach(line, a, End::Head)?;
            self.attach(line, b, End::Tail)?;
            ids[k] = (a, b);
        }
        self.graph.vertices6.push(Vertex6 { name: name.into(), sign, lines: ids });
        Ok(self.graph.vertices6.len() - 1)
    }

    /// Triple point with `lines[k] = (incoming edge, outgoing edge)` for line `k+1`.
    pub fn vertex6(&mut self, name: &str, sign: i8, lines: [(&str, &str); 3]) -> Result<usize> {
        self.vertex6_at(0, name, sign, lines)
    }

    fn vertex1_at(&mut self, line: usize, name: &str, edge: &str, end: End) -> Result<usize> {
        self.claim_vertex(line, name)?;
        let e = self.lookup(line, edge)?;
        if self.graph.edges[e].kind == EdgeKind::Circle {
            return Err(Error::syntax(line, format!("circle `{edge}` has no ends")));
        }
        self.attach(line, e, end)?;
        self.graph.vertices1.push(Vertex1 { name: name.into(), edge: e, end });
        Ok(self.graph.vertices1.len() - 1)
    }

    pub fn vertex1(&mut self, name: &str, edge: &str, end: End) -> Result<usize> {
        self.vertex1_at(0, name, edge, end)
    }

    pub fn build(self) -> Result<SingularGraph> {
        for (e, edge) in self.graph.edges.iter().enumerate() {
            if edge.kind == EdgeKind::Circle {
                continue;
            }
            for end in [End::Tail, End::Head] {
                if !self.attached.contains_key(&(e, end)) {
                    return Err(Error::DanglingEnd { edge: edge.name.clone(), end: end.as_str() });
                }
            }
        }
        Ok(self.graph)
    }
}

/// Circle and segment counts of the resolved singular set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Resolution {
    pub circles: usize,
    pub segments: usize,
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "circles={} segments={}", self.circles, self.segments)
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }

    fn classes(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.find(x) == x).count()
    }
}

impl SingularGraph {
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices6(&self) -> &[Vertex6] {
        &self.vertices6
    }

    pub fn vertices1(&self) -> &[Vertex1] {
        &self.vertices1
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    /// Parses the line-oriented graph format. Declarations may appear in any
    /// order; edges are registered before vertices are attached.
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = content_lines(text).collect();
        let mut b = GraphBuilder::new();
        for &(n, line) in &lines {
            let words: Vec<&str> = line.split_whitespace().collect();
            match words[0] {
                "edge" | "circle" => {
                    let [_, name] = words[..] else {
                        return Err(Error::syntax(n, format!("expected `{} <id>`", words[0])));
                    };
                    let kind = if words[0] == "edge" { EdgeKind::Open } else { EdgeKind::Circle };
                    b.add_edge(n, name, kind)?;
                }
                "vertex6" | "vertex1" => {}
                other => return Err(Error::syntax(n, format!("unknown declaration `{other}`"))),
            }
        }
        for &(n, line) in &lines {
            let words: Vec<&str> = line.split_whitespace().collect();
            match words[0] {
                "vertex6" => parse_vertex6(&mut b, n, &words)?,
                "vertex1" => parse_vertex1(&mut b, n, &words)?,
                _ => {}
            }
        }
        b.build()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let kw = if e.kind == EdgeKind::Open { "edge" } else { "circle" };
            out.push_str(&format!("{kw} {}\n", e.name));
        }
        let name = |e: usize| self.edges[e].name.as_str();
        for v in &self.vertices6 {
            out.push_str(&format!("vertex6 {} sign={:+}", v.name, v.sign));
            for (k, &(a, b)) in v.lines.iter().enumerate() {
                out.push_str(&format!(" line{}={}:{}", k + 1, name(a), name(b)));
            }
            out.push('\n');
        }
        for v in &self.vertices1 {
            out.push_str(&format!("vertex1 {} edge={} end={}\n", v.name, name(v.edge), v.end.as_str()));
        }
        out
    }

    /// Connected components of the underlying 1-complex.
    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.edges.len());
        for v in &self.vertices6 {
            for &(a, b) in &v.lines {
                uf.union(v.lines[0].0, a);
                uf.union(v.lines[0].0, b);
            }
        }
        uf.classes()
    }

    /// Splits every triple point into three pass-throughs along its lines.
    pub fn resolve_singular_set(&self) -> Resolution {
        let mut uf = UnionFind::new(self.edges.len());
        for v in &self.vertices6 {
            for &(a, b) in &v.lines {
                uf.union(a, b);
            }
        }
        let mut has_branch = vec![false; self.edges.len()];
        for v in &self.vertices1 {
            let r = uf.find(v.edge);
            has_branch[r] = true;
        }
        let mut res = Resolution::default();
        for e in 0..self.edges.len() {
            if uf.find(e) == e {
                if has_branch[e] {
                    res.segments += 1;
                } else {
                    res.circles += 1;
                }
            }
        }
        res
    }

    /// Disjoint union; names of `other` get `prefix` prepended.
    pub fn disjoint_union(&self, other: &SingularGraph, prefix: &str) -> Result<SingularGraph> {
        let text = format!("{}{}", self.to_text(), other.renamed(prefix).to_text());
        SingularGraph::parse(&text)
    }

    /// Copy with every edge and vertex name prefixed.
    pub fn renamed(&self, prefix: &str) -> SingularGraph {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.name = format!("{prefix}{}", e.name);
        }
        for v in &mut g.vertices6 {
            v.name = format!("{prefix}{}", v.name);
        }
        for v in &mut g.vertices1 {
            v.name = format!("{prefix}{}", v.name);
        }
        g
    }
}

fn parse_vertex6(b: &mut GraphBuilder, n: usize, words: &[&str]) -> Result<()> {
    let name = words.get(1).ok_or_else(|| Error::syntax(n, "vertex6 needs an id"))?;
    let mut sign = None;
    let mut lines: [Option<(&str, &str)>; 3] = [None; 3];
    for w in &words[2..] {
        let (key, value) = w.split_once('=').ok_or_else(|| Error::syntax(n, format!("expected key=value, got `{w}`")))?;
        match key {
            "sign" => {
                sign = Some(match value {
                    "+1" | "1" | "+" => 1,
                    "-1" | "-" => -1,
                    _ => return Err(Error::syntax(n, format!("bad sign `{value}`"))),
                })
            }
            "line1" | "line2" | "line3" => {
                let k = (key.as_bytes()[4] - b'1') as usize;
                let pair = value.split_once(':').ok_or_else(|| Error::BadLinePairing {
                    line: n,
                    vertex: name.to_string(),
                    msg: format!("{key} must be <inEdge>:<outEdge>"),
                })?;
                if lines[k].replace(pair).is_some() {
                    return Err(Error::BadLinePairing { line: n, vertex: name.to_string(), msg: format!("{key} given twice") });
                }
            }
            _ => return Err(Error::syntax(n, format!("unknown key `{key}`"))),
        }
    }
    let sign = sign.ok_or_else(|| Error::syntax(n, "vertex6 needs sign="))?;
    let mut pairs = [("", ""); 3];
    for (k, l) in lines.iter().enumerate() {
        pairs[k] = l.ok_or_else(|| Error::BadLinePairing {
            line: n,
            vertex: name.to_string(),
            msg: format!("line{} missing", k + 1),
        })?;
    }
    b.vertex6_at(n, name, sign, pairs).map(|_| ())
}

fn parse_vertex1(b: &mut GraphBuilder, n: usize, words: &[&str]) -> Result<()> {
    let name = words.get(1).ok_or_else(|| Error::syntax(n, "vertex1 needs an id"))?;
    let (mut edge, mut end) = (None, None);
    for w in &words[2..] {
        match w.split_once('=') {
            Some(("edge", v)) => edge = Some(v),
            Some(("end", "head")) => end = Some(End::Head),
            Some(("end", "tail")) => end = Some(End::Tail),
            _ => return Err(Error::syntax(n, format!("unexpected `{w}`"))),
        }
    }
    match (edge, end) {
        (Some(e), Some(end)) => b.vertex1_at(n, name, e, end).map(|_| ()),
        _ => Err(Error::syntax(n, "vertex1 needs edge= and end=")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LOOPS: &str = "edge a\nedge b\nedge c\nvertex6 O sign=+1 line1=a:a line2=b:b line3=c:c\n";

    #[test]
    fn parse_small() {
        assert_eq!(SingularGraph::parse("").unwrap().components(), 0);
        let c = SingularGraph::parse("# one loop\ncircle c1\n").unwrap();
        assert_eq!(c.components(), 1);
        assert_eq!(c.resolve_singular_set(), Resolution { circles: 1, segments: 0 });
        let g = SingularGraph::parse(LOOPS).unwrap();
        assert_eq!(g.components(), 1);
        assert_eq!(g.resolve_singular_set(), Resolution { circles: 3, segments: 0 });
        assert_eq!(SingularGraph::parse(&g.to_text()).unwrap(), g);
        let two = SingularGraph::parse("circle a\ncircle b\n").unwrap();
        assert_eq!(two.components(), 2);
    }

    #[test]
    fn order_independent() {
        let text = "vertex1 t edge=e end=head\nvertex1 s edge=e end=tail\nedge e\n";
        let g = SingularGraph::parse(text).unwrap();
        assert_eq!(g.resolve_singular_set(), Resolution { circles: 0, segments: 1 });
    }

    #[test]
    fn errors() {
        assert!(matches!(SingularGraph::parse("edge a\n"), Err(Error::DanglingEnd { .. })));
        assert!(matches!(
            SingularGraph::parse("edge a\nvertex1 x edge=a end=head\nvertex1 y edge=a end=head\n"),
            Err(Error::DoubleAttachment { line: 3, .. })
        ));
        assert!(matches!(
            SingularGraph::parse("edge a\nedge b\nvertex6 O sign=+1 line1=a:a line2=b:b\n"),
            Err(Error::BadLinePairing { line: 3, .. })
        ));
        assert!(matches!(SingularGraph::parse("edge a\nedge a\n"), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(SingularGraph::parse("blob\n"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(
            SingularGraph::parse("circle c\nedge a\nedge b\nvertex6 O sign=+1 line1=a:a line2=b:b line3=c:c\n"),
            Err(Error::BadLinePairing { .. })
        ));
    }
}
