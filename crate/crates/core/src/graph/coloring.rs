use std::fmt;

use num_complex::Complex64;

use crate::algebra::{Character, GroupRingElem, ScaledGroupRing};
use crate::cube::Cocycle3;
use crate::error::{guard, Error, Result};
use crate::exec;
use crate::guards::Guards;
use crate::tetramap::{TetraMap, TransposeFamily};

use super::model::SingularGraph;

/// One step of a coloring plan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// Enumerate all colors of this edge.
    Free(usize),
    /// Apply `(Φ^σ)^{t_mask}` at a vertex. Line `i` reads its incoming edge
    /// and writes its outgoing one when bit `i` is clear, and the other way
    /// round when it is set. Written edges that are already known are checked.
    Vertex { vertex: usize, family_mask: u32, reads: [usize; 3], writes: [usize; 3], assign: [bool; 3] },
}

/// Propagation order for the regular colorings of a graph: a set of free
/// edges followed by vertex steps that derive or check the rest.
#[derive(Clone, Debug)]
pub struct ColoringPlan {
    h: usize,
    edges: usize,
    steps: Vec<Step>,
    free: usize,
    family: TransposeFamily,
}

impl ColoringPlan {
    pub fn new(g: &SingularGraph, phi: &TetraMap) -> Self {
        let family = TransposeFamily::new(phi);
        let vs = g.vertices6();
        let mut known = vec![false; g.edges().len()];
        let mut done = vec![false; vs.len()];
        let mut steps = Vec::new();
        let family_mask = |sign: i8, mask: u32| if sign > 0 { mask } else { mask ^ 7 };
        loop {
            let mut progressed = false;
            'scan: for (vi, v) in vs.iter().enumerate() {
                if done[vi] {
                    continue;
                }
                for mask in 0..8u32 {
                    let usable = (0..3).all(|i| {
                        let (a, b) = v.lines[i];
                        if mask >> i & 1 == 0 { known[a] } else { known[b] }
                    });
                    let fm = family_mask(v.sign, mask);
                    if !usable || family.get(fm).is_err() {
                        continue;
                    }
                    let mut reads = [0; 3];
                    let mut writes = [0; 3];
                    let mut assign = [false; 3];
                    for i in 0..3 {
                        let (a, b) = v.lines[i];
                        (reads[i], writes[i]) = if mask >> i & 1 == 0 { (a, b) } else { (b, a) };
                    }
                    for i in 0..3 {
                        assign[i] = !known[writes[i]];
                        known[writes[i]] = true;
                    }
                    steps.push(Step::Vertex { vertex: vi, family_mask: fm, reads, writes, assign });
                    done[vi] = true;
                    progressed = true;
                    break 'scan;
                }
            }
            if progressed {
                continue;
            }
            let pending: Vec<usize> = (0..vs.len()).filter(|&v| !done[v]).collect();
            let Some(&target) = pending.iter().min_by_key(|&&v| {
                vs[v].lines.iter().filter(|&&(a, b)| !known[a] && !known[b]).count()
            }) else {
                break;
            };
            let v = &vs[target];
            let line = v.lines.iter().find(|&&(a, b)| !known[a] && !known[b]).or_else(|| v.lines.iter().find(|&&(a, _)| !known[a]));
            let e = line.map(|&(a, _)| a).expect("a pending vertex has an unknown incoming edge");
            known[e] = true;
            steps.push(Step::Free(e));
        }
        for (e, k) in known.iter_mut().enumerate() {
            if !*k {
                *k = true;
                steps.push(Step::Free(e));
            }
        }
        let free = steps.iter().filter(|s| matches!(s, Step::Free(_))).count();
        ColoringPlan { h: phi.h(), edges: g.edges().len(), steps, free, family }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of freely enumerated edges.
    pub fn free_edges(&self) -> usize {
        self.free
    }

    /// Size of the enumeration, `h^free`.
    pub fn search_size(&self) -> f64 {
        (self.h as f64).powi(self.free as i32)
    }

    fn total(&self) -> u64 {
        (self.h as u64).pow(self.free as u32)
    }

    /// Runs the plan for the `i`-th assignment of free edges (first free edge
    /// most significant). Fills `colors` and reports consistency.
    pub fn run(&self, i: u64, colors: &mut [u32]) -> bool {
        let h = self.h as u64;
        let mut div = self.total();
        for step in &self.steps {
            match *step {
                Step::Free(e) => {
                    div /= h;
                    colors[e] = (i / div % h) as u32;
                }
                Step::Vertex { family_mask, reads, writes, assign, .. } => {
                    let map = self.family.get(family_mask).expect("planned transpose exists");
                    let out = map.apply(reads.map(|e| colors[e]));
                    for k in 0..3 {
                        if assign[k] {
                            colors[writes[k]] = out[k];
                        } else if colors[writes[k]] != out[k] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Streams every regular coloring (edge-indexed color indices) in the
    /// lexicographic order of the free edges.
    pub fn colorings(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        let mut colors = vec![0u32; self.edges];
        (0..self.total()).filter_map(move |i| self.run(i, &mut colors).then(|| colors.clone()))
    }

    pub fn count(&self) -> u64 {
        exec::fold_chunks(
            self.total(),
            || (0u64, vec![0u32; self.edges]),
            |(n, mut colors), i| {
                let ok = self.run(i, &mut colors);
                (n + ok as u64, colors)
            },
            |a, b| (a.0 + b.0, a.1),
        )
        .0
    }
}

fn check_plan(plan: &ColoringPlan, guards: &Guards) -> Result<()> {
    guard("graph_colorings", plan.search_size(), guards.graph_colorings)
}

/// Number of regular colorings.
pub fn count_colorings(g: &SingularGraph, phi: &TetraMap, guards: &Guards) -> Result<u64> {
    let plan = ColoringPlan::new(g, phi);
    check_plan(&plan, guards)?;
    Ok(plan.count())
}

/// All regular colorings, in canonical order.
pub fn enumerate_colorings(g: &SingularGraph, phi: &TetraMap, guards: &Guards) -> Result<Vec<Vec<u32>>> {
    let plan = ColoringPlan::new(g, phi);
    check_plan(&plan, guards)?;
    Ok(plan.colorings().collect())
}

/// `h^{-d} Σ_c Π_O φ^{σ(O)s}`, exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiValue {
    pub exact: ScaledGroupRing,
}

impl ChiValue {
    pub fn evaluate(&self, chi: &Character) -> Complex64 {
        self.exact.to_complex(chi)
    }

    /// Number of regular colorings divided by `h^d`: the value at the trivial weight.
    pub fn augmentation(&self) -> f64 {
        self.exact.numerator().augmentation() as f64 / self.exact.denominator() as f64
    }
}

impl fmt::Display for ChiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.exact)
    }
}

/// The partition function of a closed singular graph. The weight at a
/// positive vertex is read on its incoming colors, at a negative vertex on its
/// outgoing colors, in line order.
pub fn chi(g: &SingularGraph, phi: &TetraMap, coc: &Cocycle3, s: i64, guards: &Guards) -> Result<ChiValue> {
    if coc.h() != phi.h() {
        return Err(Error::invalid("cocycle and map use color sets of different size"));
    }
    let plan = ColoringPlan::new(g, phi);
    check_plan(&plan, guards)?;
    let group = coc.group();
    let vs = g.vertices6();
    let sum = exec::fold_chunks(
        plan.total(),
        || (GroupRingElem::zero(group), vec![0u32; plan.edges]),
        |(mut acc, mut colors), i| {
            if plan.run(i, &mut colors) {
                let mut w = group.identity();
                for v in vs {
                    let edges = if v.sign > 0 { v.ins() } else { v.outs() };
                    let x = coc.value(edges.map(|e| colors[e]));
                    w = group.op(w, group.pow(x, v.sign as i64 * s));
                }
                acc.add_term(w, 1);
            }
            (acc, colors)
        },
        |a, b| (&a.0 + &b.0, a.1),
    )
    .0;
    Ok(ChiValue { exact: ScaledGroupRing::new(sum, phi.h() as u64, g.components() as u32) })
}
