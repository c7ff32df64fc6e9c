//! Small singular graphs used by tests, benches and the command line.

use super::model::SingularGraph;

/// Vertex order of the left side of the tetrahedron equation.
pub const TETRA_LHS: [[usize; 3]; 4] = [[1, 2, 3], [1, 4, 5], [2, 4, 6], [3, 5, 6]];
/// Vertex order of the right side.
pub const TETRA_RHS: [[usize; 3]; 4] = [[3, 5, 6], [2, 4, 6], [1, 4, 5], [1, 2, 3]];

fn parse(text: &str) -> SingularGraph {
    SingularGraph::parse(text).expect("fixture is well formed")
}

pub fn circle() -> SingularGraph {
    parse("circle c\n")
}

pub fn two_circles() -> SingularGraph {
    parse("circle c1\ncircle c2\n")
}

/// One triple point whose three lines each close into a loop.
pub fn three_loops(sign: i8) -> SingularGraph {
    parse(&format!("edge a\nedge b\nedge c\nvertex6 O sign={sign:+} line1=a:a line2=b:b line3=c:c\n"))
}

/// Edge names along wire `w` of a tetrahedron fragment: input leg, middle
/// edge, output leg.
fn wire_edges(w: usize) -> [String; 3] {
    [format!("i{w}"), format!("m{w}"), format!("o{w}")]
}

/// Six wires through four positive triple points in the given order; wire `w`
/// is line `k` of every vertex listing it in position `k`. `closing[w-1] = u`
/// joins the output of wire `w` to the input of wire `u`; without closing,
/// legs end at branch points.
fn tetra_text(order: &[[usize; 3]; 4], closing: Option<[usize; 6]>) -> String {
    let mut edges: Vec<String> = Vec::new();
    let mut input: Vec<String> = vec![String::new(); 7];
    let mut output: Vec<String> = vec![String::new(); 7];
    for w in 1..=6 {
        let [i, m, o] = wire_edges(w);
        edges.push(m.clone());
        match closing {
            None => {
                edges.push(i.clone());
                edges.push(o.clone());
                input[w] = i;
                output[w] = o;
            }
            Some(pi) => {
                let j = format!("j{w}");
                edges.push(j.clone());
                output[w] = j.clone();
                input[pi[w - 1]] = j;
            }
        }
    }
    let mut out: String = edges.iter().map(|e| format!("edge {e}\n")).collect();
    let mut seen = [0usize; 7];
    for v in order {
        out.push_str(&format!("vertex6 T{} sign=+1", v.map(|w| w.to_string()).concat()));
        for (k, &w) in v.iter().enumerate() {
            let mid = format!("m{w}");
            let (a, b) = if seen[w] == 0 { (input[w].clone(), mid) } else { (mid, output[w].clone()) };
            seen[w] += 1;
            out.push_str(&format!(" line{}={a}:{b}", k + 1));
        }
        out.push('\n');
    }
    if closing.is_none() {
        for w in 1..=6 {
            out.push_str(&format!("vertex1 s{w} edge=i{w} end=tail\nvertex1 t{w} edge=o{w} end=head\n"));
        }
    }
    out
}

/// Four triple points, six internal and twelve external edges, all signs
/// positive; external legs end at branch points.
pub fn tetrahedron_fragment(rhs: bool) -> SingularGraph {
    parse(&tetra_text(if rhs { &TETRA_RHS } else { &TETRA_LHS }, None))
}

/// The fragment with each output leg `w` glued to input leg `closing[w-1]`.
pub fn tetrahedron_closed(rhs: bool, closing: [usize; 6]) -> SingularGraph {
    parse(&tetra_text(if rhs { &TETRA_RHS } else { &TETRA_LHS }, Some(closing)))
}

/// A third-move pair built on the tetrahedron fragment: the second graph
/// inserts a positive and a negative triple point on the three edges leaving
/// the first vertex. Along strand `reversed` (if any) the negative point
/// comes first.
pub fn move3_pair(reversed: Option<usize>) -> (SingularGraph, SingularGraph) {
    let before = tetra_text(&TETRA_LHS, None);
    let mut after = String::new();
    for line in before.lines() {
        let mut l = line.to_string();
        for w in 1..=3 {
            // The edge from the first vertex into the pair keeps the name mW,
            // the edge out of the pair into the next vertex becomes nW.
            if !l.starts_with("vertex6 T123") && !l.starts_with("edge") {
                l = l.replace(&format!("=m{w}:"), &format!("=n{w}:"));
            }
        }
        after.push_str(&l);
        after.push('\n');
    }
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for w in 1..=3 {
        after.push_str(&format!("edge n{w}\nedge k{w}\n"));
        let first = (format!("m{w}"), format!("k{w}"));
        let second = (format!("k{w}"), format!("n{w}"));
        let (p, n) = if reversed == Some(w) { (second, first) } else { (first, second) };
        pos.push(format!("line{w}={}:{}", p.0, p.1));
        neg.push(format!("line{w}={}:{}", n.0, n.1));
    }
    after.push_str(&format!("vertex6 P sign=+1 {}\n", pos.join(" ")));
    after.push_str(&format!("vertex6 N sign=-1 {}\n", neg.join(" ")));
    (parse(&before), parse(&after))
}

/// A pair differing by a branch-point move: two loops and a branch segment,
/// against the same curves meeting at one triple point.
pub fn branch_move_pair() -> (SingularGraph, SingularGraph) {
    let before = parse("circle a\ncircle b\nedge u\nvertex1 x edge=u end=tail\nvertex1 y edge=u end=head\n");
    let after = parse(
        "edge a\nedge b\nedge u\nedge w\n\
         vertex6 O sign=+1 line1=a:a line2=b:b line3=u:w\n\
         vertex1 x edge=u end=tail\nvertex1 y edge=w end=head\n",
    );
    (before, after)
}

/// Named closed fixtures, used for the disjoint-circle and union checks.
pub fn named() -> Vec<(&'static str, SingularGraph)> {
    vec![
        ("circle", circle()),
        ("three-loops", three_loops(1)),
        ("three-loops-negative", three_loops(-1)),
        ("tetrahedron", tetrahedron_fragment(false)),
        ("tetrahedron-closed", tetrahedron_closed(false, [1, 2, 3, 4, 5, 6])),
        ("tetrahedron-cycled", tetrahedron_closed(true, [2, 3, 1, 5, 6, 4])),
    ]
}
