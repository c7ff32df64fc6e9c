//! Fragment-level checks of the invariance of `χ_φ` under the Roseman moves.

use std::fmt;

use crate::algebra::{MonomialOperator, TupleIndex};
use crate::cube::{build_a, check_normalized, Cocycle3};
use crate::error::{Error, Result};
use crate::graph::{chi, fixtures, ChiValue, SingularGraph};
use crate::guards::Guards;
use crate::tetramap::identities::{operator_identities, set_identities, Expectation};
use crate::tetramap::rewrite::{orientation_variants, wires_label, FACE_FLIPS};
use crate::tetramap::{verify_monomial_word, verify_word, TetraMap, TransposeFamily};

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    /// Whether the verdict of the move depends on this check.
    pub required: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MoveReport {
    pub id: String,
    pub checks: Vec<Check>,
}

impl MoveReport {
    fn new(id: &str) -> Self {
        MoveReport { id: id.into(), checks: Vec::new() }
    }

    fn push(&mut self, name: impl Into<String>, holds: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), holds, required: true, detail: detail.into() });
    }

    fn note(&mut self, name: impl Into<String>, holds: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), holds, required: false, detail: detail.into() });
    }

    /// True iff every required check holds.
    pub fn verdict(&self) -> bool {
        self.checks.iter().filter(|c| c.required).all(|c| c.holds)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for MoveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let v = if c.holds { "holds" } else { "fails" };
            let kind = if c.required { "" } else { " reported=1" };
            write!(f, "move={} check={} result={v}{kind}", self.id, c.name)?;
            if !c.detail.is_empty() {
                write!(f, " {}", c.detail)?;
            }
            writeln!(f)?;
        }
        write!(f, "move={} verdict={}", self.id, self.verdict())
    }
}

fn chi_equal(a: &SingularGraph, b: &SingularGraph, phi: &TetraMap, coc: &Cocycle3, s: i64, g: &Guards) -> Result<(bool, String)> {
    let (x, y) = (chi(a, phi, coc, s, g)?, chi(b, phi, coc, s, g)?);
    Ok((x == y, format!("before={x} after={y}")))
}

/// Adding one or two disjoint circles to each fixture leaves `χ` unchanged.
pub fn check_move_1_5(phi: &TetraMap, coc: &Cocycle3, s: i64, guards: &Guards) -> Result<MoveReport> {
    let mut r = MoveReport::new("1/5");
    let mut graphs = vec![("empty", SingularGraph::default())];
    graphs.extend(fixtures::named());
    for (name, g) in graphs {
        let one = g.disjoint_union(&fixtures::circle(), "extra_")?;
        let two = one.disjoint_union(&fixtures::circle(), "extra2_")?;
        let (ok, detail) = chi_equal(&g, &one, phi, coc, s, guards)?;
        r.push(format!("circle+{name}"), ok, detail);
        let (ok, detail) = chi_equal(&g, &two, phi, coc, s, guards)?;
        r.push(format!("two-circles+{name}"), ok, detail);
    }
    Ok(r)
}

/// Third move: `Φ^{t}` followed by `(Φ^{-1})^{t}` is the identity with
/// cancelling weights, for `t ∈ {id, t1, t2, t3}`; also compares `χ` on the
/// fixture pair of each variant.
pub fn check_move3(phi: &TetraMap, coc: &Cocycle3, s: i64, guards: &Guards) -> Result<MoveReport> {
    let mut r = MoveReport::new("3");
    let family = TransposeFamily::new(phi);
    let grp = coc.group();
    let ix = TupleIndex::new(phi.h(), 3);
    for (name, mask, reversed) in [("id", 0u32, None), ("t1", 1, Some(1)), ("t2", 2, Some(2)), ("t3", 4, Some(3))] {
        let (fwd, back) = match (family.get(mask), family.get(mask ^ 7)) {
            (Ok(f), Ok(b)) => (f, b),
            (Err(e), _) | (_, Err(e)) => {
                r.push(format!("{name}:map"), false, e.to_string());
                continue;
            }
        };
        let mut map_ok = None;
        let mut weight_ok = None;
        for i in 0..ix.size() {
            let t = ix.decode(i);
            let t = [t[0], t[1], t[2]];
            let out = fwd.apply(t);
            let ret = back.apply(out);
            if map_ok.is_none() && ret != t {
                map_ok = Some(format!("input={:?} returns={:?}", t.map(|c| phi.set().value(c)), ret.map(|c| phi.set().value(c))));
            }
            // Colors entering the positive point and leaving the negative one.
            let pick = |a: [u32; 3], b: [u32; 3]| -> [u32; 3] { std::array::from_fn(|k| if mask >> k & 1 == 1 { b[k] } else { a[k] }) };
            let w = grp.op(grp.pow(coc.value(pick(t, out)), s), grp.pow(coc.value(pick(ret, out)), -s));
            if weight_ok.is_none() && w != grp.identity() {
                weight_ok = Some(format!("input={:?} weight={}", t.map(|c| phi.set().value(c)), grp.render(w)));
            }
        }
        r.push(format!("{name}:map"), map_ok.is_none(), map_ok.unwrap_or_default());
        r.push(format!("{name}:weight"), weight_ok.is_none(), weight_ok.unwrap_or_default());
        let (before, after) = fixtures::move3_pair(reversed);
        let (ok, detail) = chi_equal(&before, &after, phi, coc, s, guards)?;
        r.push(format!("{name}:chi"), ok, detail);
    }
    Ok(r)
}

/// A loop joining output slot `out_slot` to input slot `in_slot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LoopOrder {
    pub name: &'static str,
    pub in_slot: usize,
    pub out_slot: usize,
}

/// `(x, y, y')`: the second output feeds the third input.
pub const LOOP_FIRST: LoopOrder = LoopOrder { name: "x,y,y'", in_slot: 3, out_slot: 2 };
/// `(x, y', y)`: the third output feeds the second input.
pub const LOOP_SECOND: LoopOrder = LoopOrder { name: "x,y',y", in_slot: 2, out_slot: 3 };

/// Loop colorings of one vertex for fixed free inputs `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopColoring {
    pub x: u64,
    pub y: u64,
    /// Admissible colors `y'` of the loop.
    pub loop_colors: Vec<u64>,
    /// `(x', y'')` for each loop color.
    pub outputs: Vec<(u64, u64)>,
}

/// Solves the loop constraint for every pair of free inputs.
pub fn loop_colorings(phi: &TetraMap, order: LoopOrder) -> Vec<LoopColoring> {
    let set = phi.set();
    let h = phi.h() as u32;
    let free_out = 5 - order.out_slot;
    let mut res = Vec::with_capacity((h * h) as usize);
    for x in 0..h {
        for y in 0..h {
            let mut c = LoopColoring { x: set.value(x), y: set.value(y), loop_colors: vec![], outputs: vec![] };
            for l in 0..h {
                let mut t = [x, 0, 0];
                t[order.in_slot - 1] = l;
                t[(5 - order.in_slot) - 1] = y;
                let o = phi.apply(t);
                if o[order.out_slot - 1] == l {
                    c.loop_colors.push(set.value(l));
                    c.outputs.push((set.value(o[0]), set.value(o[free_out - 1])));
                }
            }
            res.push(c);
        }
    }
    res
}

/// Sixth move: normalization of `A(s)` in directions (1,2) and (2,3), unique
/// loop colorings with unit weight, and for the electric solution the closed
/// forms `yy' = −1`, `x' = −xy^{±2}`, `y'' = y`.
pub fn check_move6(phi: &TetraMap, coc: &Cocycle3, s: i64) -> Result<MoveReport> {
    let mut r = MoveReport::new("6");
    let a = build_a(phi, coc, s)?;
    for dir in [(1, 2), (2, 3)] {
        let n = check_normalized(&a, dir)?;
        r.push(format!("normalized-{}{}", dir.0, dir.1), n.normalized(), format!("forward={} backward={}", n.forward, n.backward));
        r.note(format!("unit-weight-{}{}", dir.0, dir.1), n.unit_weight(), "");
    }
    let grp = coc.group();
    let set = phi.set();
    let electric = set.modulus().and_then(|m| TetraMap::electric(m.p(), m.k()).ok()).is_some_and(|e| &e == phi);
    for order in [LOOP_FIRST, LOOP_SECOND] {
        let cols = loop_colorings(phi, order);
        let bad = cols.iter().find(|c| c.loop_colors.len() != 1);
        r.push(
            format!("unique-loop({})", order.name),
            bad.is_none(),
            bad.map(|c| format!("x={} y={} solutions={:?}", c.x, c.y, c.loop_colors)).unwrap_or_default(),
        );
        let mut weight_bad = None;
        for c in &cols {
            for &l in &c.loop_colors {
                let mut t = [c.x, c.y, c.y];
                t[order.in_slot - 1] = l;
                let idx = t.map(|v| set.index_of(v).expect("color"));
                let w = grp.pow(coc.value(idx), s);
                if weight_bad.is_none() && w != grp.identity() {
                    weight_bad = Some(format!("x={} y={} loop={l} weight={}", c.x, c.y, grp.render(w)));
                }
            }
        }
        r.push(format!("loop-weight({})", order.name), weight_bad.is_none(), weight_bad.unwrap_or_default());
        if electric {
            let m = set.modulus().expect("reduced");
            let mut bad = None;
            for c in &cols {
                let (x, y) = (m.elem(c.x as i64), m.elem(c.y as i64));
                let yy = y * y;
                let xp = if order == LOOP_FIRST { -(x * yy) } else { -(x * yy.inverse()?) };
                for (&l, &(o1, o2)) in c.loop_colors.iter().zip(&c.outputs) {
                    let ok = (y * m.elem(l as i64)).value() == m.value() - 1 && o1 == xp.value() && o2 == c.y;
                    if !ok && bad.is_none() {
                        bad = Some(format!("x={} y={} loop={l} outputs=({o1},{o2})", c.x, c.y));
                    }
                }
            }
            r.push(format!("electric-closed-form({})", order.name), bad.is_none(), bad.unwrap_or_default());
        }
    }
    Ok(r)
}

/// Seventh move: the tetrahedron equation and its derived orientation and
/// order identities, as set maps on `X⁶` and as monomial operators, plus
/// `(A^{t_i})^{-1} = (A^{-1})^{t_i}`.
pub fn check_move7(phi: &TetraMap, coc: &Cocycle3, s: i64, guards: &Guards) -> Result<MoveReport> {
    let mut r = MoveReport::new("7");
    for id in set_identities() {
        let rep = verify_word(phi, &id.lhs, &id.rhs, guards)?;
        let name = format!("set:{}", id.name);
        match id.expectation {
            Expectation::Holds => r.push(name, rep.holds(), rep.to_string()),
            Expectation::Reported => r.note(name, rep.holds(), rep.to_string()),
        }
    }
    for (e, v) in FACE_FLIPS.iter().zip(orientation_variants()) {
        let name = format!("set:orientation-{}", wires_label(*e));
        match v {
            Some(v) => {
                let rep = verify_word(phi, &v.lhs, &v.rhs, guards)?;
                r.push(name, rep.holds(), rep.to_string());
            }
            None => r.push(name, false, "no rewrite found"),
        }
    }
    let a = build_a(phi, coc, s)?;
    for id in operator_identities() {
        let rep = verify_monomial_word(&a, &id.lhs, &id.rhs, guards)?;
        let name = format!("operator:{}", id.name);
        match id.expectation {
            Expectation::Holds => r.push(name, rep.holds(), rep.to_string()),
            Expectation::Reported => r.note(name, rep.holds(), rep.to_string()),
        }
    }
    for i in 1..=3 {
        let (ok, detail) = transpose_inverse_commute(&a, 1 << (i - 1));
        r.push(format!("operator:transpose-inverse-t{i}"), ok, detail);
    }
    Ok(r)
}

/// Compares `(A^{t})^{-1}` and `(A^{-1})^{t}` entrywise.
pub fn transpose_inverse_commute(a: &MonomialOperator, mask: u32) -> (bool, String) {
    match (a.partial_transpose(mask), a.inverse().partial_transpose(mask)) {
        (Ok(t), Ok(u)) => {
            let l = t.inverse();
            (l == u, if l == u { String::new() } else { "operators differ".into() })
        }
        (Err(e), _) | (_, Err(e)) => (false, e.to_string()),
    }
}

/// The branch-point pair of [`fixtures::branch_move_pair`]: `χ` before and after.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchDemo {
    pub before: ChiValue,
    pub after: ChiValue,
}

impl BranchDemo {
    pub fn differs(&self) -> bool {
        self.before != self.after
    }
}

/// Exhibits a pair of graphs related by a move involving a branch point
/// whose `χ` values differ.
pub fn demo_moves_2_4(phi: &TetraMap, coc: &Cocycle3, s: i64, guards: &Guards) -> Result<BranchDemo> {
    let (b, a) = fixtures::branch_move_pair();
    Ok(BranchDemo { before: chi(&b, phi, coc, s, guards)?, after: chi(&a, phi, coc, s, guards)? })
}

/// Dispatches on the move number.
pub fn check_move(m: u32, phi: &TetraMap, coc: &Cocycle3, s: i64, guards: &Guards) -> Result<MoveReport> {
    match m {
        1 | 5 => check_move_1_5(phi, coc, s, guards),
        3 => check_move3(phi, coc, s, guards),
        6 => check_move6(phi, coc, s),
        7 => check_move7(phi, coc, s, guards),
        _ => Err(Error::invalid(format!("move {m} has no checker (use 1, 3, 5, 6 or 7)"))),
    }
}
