//! Periodic three-dimensional vertex model.
//!
//! Node `(i, j, k)` of a `K × L × M` torus reads the colors `(x, y, z)` on its
//! three incoming edges and sends `Φ(x, y, z)` along the outgoing ones: `x`
//! flows along `i`, `y` along `j` and `z` along `k`. A state is admissible when
//! every node obeys this rule, and its weight is the product of `φ(x, y, z)^s`.
//!
//! The layer transfer matrix acts on the vertical lines `V_{ik}` (the `y`
//! edges of one layer) and traces out the horizontal lines `N_k` (carrying `x`)
//! and `E_i` (carrying `z`).

use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_complex::Complex64;

use crate::algebra::{Character, GroupRingElem, WeightGroup};
use crate::cube::Cocycle3;
use crate::error::{guard, Error, Result};
use crate::exec;
use crate::guards::Guards;
use crate::tetramap::TetraMap;

/// Extents of the periodic lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeSpec {
    k: usize,
    l: usize,
    m: usize,
}

impl LatticeSpec {
    pub fn new(k: usize, l: usize, m: usize) -> Result<Self> {
        if k == 0 || l == 0 || m == 0 {
            return Err(Error::invalid("lattice extents must be at least 1"));
        }
        Ok(LatticeSpec { k, l, m })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn nodes(&self) -> usize {
        self.k * self.l * self.m
    }
}

/// Order in which the node operators of one layer are applied.
///
/// Both orders respect the flow of every horizontal line and give the same
/// transfer matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NodeOrder {
    /// `i` ascending, then `k` ascending.
    #[default]
    IMajor,
    /// `k` ascending, then `i` ascending.
    KMajor,
}

impl FromStr for NodeOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "i-major" => Ok(NodeOrder::IMajor),
            "k-major" => Ok(NodeOrder::KMajor),
            _ => Err(Error::invalid(format!("node order `{s}`: expected i-major or k-major"))),
        }
    }
}

fn check_inputs(phi: &TetraMap, coc: &Cocycle3) -> Result<()> {
    if phi.h() != coc.h() {
        return Err(Error::invalid(format!(
            "cocycle is defined on {} colors, the map on {}",
            coc.h(),
            phi.h()
        )));
    }
    Ok(())
}

/// `φ^s` tabulated on triple indices.
fn weight_table(coc: &Cocycle3, s: i64) -> Vec<u64> {
    let group = coc.group();
    coc.values().iter().map(|&g| group.pow(g, s)).collect()
}

struct DirectSearch<'a> {
    spec: LatticeSpec,
    h: usize,
    table: &'a [u32],
    weights: &'a [u64],
    group: WeightGroup,
    visited: &'a AtomicU64,
    limit: f64,
}

/// Mutable colors of a partial state. Nodes are visited layer by layer
/// (`j`), then `i`, then `k`.
struct Partial {
    /// `y` entering layer `j` at slot `i·M + k`, stored at `j·K·M + i·M + k`.
    y: Vec<u32>,
    /// `x` carried along `i` for each `k`, and its value at `i = 0` on line `(j, k)`.
    x: Vec<u32>,
    x0: Vec<u32>,
    /// `z` carried along `k` for each `i`, and its value at `k = 0` on line `(i, j)`.
    z: Vec<u32>,
    z0: Vec<u32>,
}

impl DirectSearch<'_> {
    fn node_count(&self) -> usize {
        self.spec.nodes()
    }

    /// Enumerates completions of `partial` from node `n`, adding each state's
    /// weight to `acc`.
    fn dfs(&self, n: usize, weight: u64, p: &mut Partial, acc: &mut GroupRingElem) -> Result<()> {
        if n == self.node_count() {
            acc.add_term(weight, 1);
            return Ok(());
        }
        let visited = self.visited.fetch_add(1, AtomicOrdering::Relaxed) + 1;
        if visited as f64 > self.limit {
            return Err(Error::TooLarge { guard: "lattice_direct", size: self.limit.floor() + 1.0, limit: self.limit });
        }
        let (kk, mm) = (self.spec.k, self.spec.m);
        let j = n / (kk * mm);
        let i = n / mm % kk;
        let k = n % mm;
        let slot = i * mm + k;
        let h = self.h as u32;
        let xs: Vec<u32> = if i == 0 { (0..h).collect() } else { vec![p.x[k]] };
        let layer = kk * mm;
        let ys: Vec<u32> = if j == 0 { (0..h).collect() } else { vec![p.y[j * layer + slot]] };
        let zs: Vec<u32> = if k == 0 { (0..h).collect() } else { vec![p.z[i]] };
        let (sx, sz) = (p.x[k], p.z[i]);
        for &x in &xs {
            for &y in &ys {
                for &z in &zs {
                    if i == 0 {
                        p.x0[j * mm + k] = x;
                    }
                    if j == 0 {
                        p.y[slot] = y;
                    }
                    if k == 0 {
                        p.z0[i * self.spec.l + j] = z;
                    }
                    let t = (x as usize * self.h + y as usize) * self.h + z as usize;
                    let out = self.table[t] as usize;
                    let (ox, oy, oz) = ((out / (self.h * self.h)) as u32, (out / self.h % self.h) as u32, (out % self.h) as u32);
                    if i + 1 == kk && ox != p.x0[j * mm + k] {
                        continue;
                    }
                    if k + 1 == mm && oz != p.z0[i * self.spec.l + j] {
                        continue;
                    }
                    if j + 1 == self.spec.l && oy != p.y[slot] {
                        continue;
                    }
                    p.x[k] = ox;
                    p.z[i] = oz;
                    if j + 1 < self.spec.l {
                        p.y[(j + 1) * layer + slot] = oy;
                    }
                    let w = self.group.op(weight, self.weights[t]);
                    self.dfs(n + 1, w, p, acc)?;
                }
            }
        }
        p.x[k] = sx;
        p.z[i] = sz;
        Ok(())
    }
}

/// Exact partition function `Z(s)`: the sum over admissible states of the
/// product of node weights.
///
/// The search assigns free colors at the first node of each line and prunes
/// as soon as a periodic closure fails. The `lattice_direct` guard caps the
/// number of search nodes visited.
pub fn z_direct(spec: LatticeSpec, phi: &TetraMap, coc: &Cocycle3, s: i64, guards: &Guards) -> Result<GroupRingElem> {
    check_inputs(phi, coc)?;
    let h = phi.h();
    let weights = weight_table(coc, s);
    let visited = AtomicU64::new(0);
    let search = DirectSearch {
        spec,
        h,
        table: phi.table(),
        weights: &weights,
        group: coc.group(),
        visited: &visited,
        limit: guards.lattice_direct,
    };
    let fresh = || Partial {
        y: vec![0; spec.nodes()],
        x: vec![0; spec.m],
        x0: vec![0; spec.l * spec.m],
        z: vec![0; spec.k],
        z0: vec![0; spec.k * spec.l],
    };
    // The first node has all three inputs free; split the search on them.
    let roots = (h * h * h) as u64;
    let group = coc.group();
    let result = exec::fold_chunks(
        roots,
        || Ok(GroupRingElem::zero(group)),
        |acc: Result<GroupRingElem>, r| {
            let mut acc = acc?;
            let t = [(r as usize / (h * h)) as u32, (r as usize / h % h) as u32, (r as usize % h) as u32];
            let mut p = fresh();
            search.first_node(t, &mut p, &mut acc)?;
            Ok(acc)
        },
        |a, b| Ok(&a? + &b?),
    )?;
    Ok(result)
}

impl DirectSearch<'_> {
    /// Runs the search with the inputs of node `(0, 0, 0)` fixed to `t`.
    fn first_node(&self, t: [u32; 3], p: &mut Partial, acc: &mut GroupRingElem) -> Result<()> {
        let (kk, mm) = (self.spec.k, self.spec.m);
        let [x, y, z] = t;
        p.x0[0] = x;
        p.y[0] = y;
        p.z0[0] = z;
        let ti = (x as usize * self.h + y as usize) * self.h + z as usize;
        let out = self.table[ti] as usize;
        let (ox, oy, oz) = ((out / (self.h * self.h)) as u32, (out / self.h % self.h) as u32, (out % self.h) as u32);
        if (kk == 1 && ox != x) || (mm == 1 && oz != z) || (self.spec.l == 1 && oy != y) {
            return Ok(());
        }
        p.x[0] = ox;
        p.z[0] = oz;
        if self.spec.l > 1 {
            p.y[kk * mm] = oy;
        }
        let w = self.group.op(self.group.identity(), self.weights[ti]);
        self.dfs(1, w, p, acc)
    }
}

/// Number of admissible states.
pub fn count_states(spec: LatticeSpec, phi: &TetraMap, guards: &Guards) -> Result<u64> {
    let coc = Cocycle3::trivial(WeightGroup::cyclic(1)?, phi.h());
    Ok(z_direct(spec, phi, &coc, 0, guards)?.augmentation() as u64)
}

/// Square matrix over the tensor product of `slots` copies of a space of
/// dimension `h`, row-major, basis ordered lexicographically by slot colors
/// with the first slot most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator<T> {
    h: usize,
    slots: usize,
    entries: Vec<T>,
}

impl<T> DenseOperator<T> {
    pub fn h(&self) -> usize {
        self.h
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn dim(&self) -> usize {
        self.h.pow(self.slots as u32)
    }

    /// Entry `⟨row| T |col⟩`.
    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.entries[row * self.dim() + col]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> DenseOperator<U> {
        DenseOperator { h: self.h, slots: self.slots, entries: self.entries.iter().map(f).collect() }
    }
}

impl DenseOperator<GroupRingElem> {
    pub fn evaluate(&self, chi: &Character) -> DenseOperator<Complex64> {
        self.map(|e| chi.eval(e))
    }

    pub fn trace(&self) -> GroupRingElem {
        let n = self.dim();
        let mut acc = GroupRingElem::zero(self.entries[0].group());
        for i in 0..n {
            acc += self.get(i, i);
        }
        acc
    }

    /// `Tr(T^L)` computed by repeated sparse-aware products.
    pub fn trace_power(&self, l: usize) -> GroupRingElem {
        let group = self.entries[0].group();
        let n = self.dim();
        let mut power = self.clone();
        for _ in 1..l {
            let rows = exec::map_collect(n as u64, |r| {
                let r = r as usize;
                let mut row = vec![GroupRingElem::zero(group); n];
                for mid in 0..n {
                    let a = power.get(r, mid);
                    if a.is_zero() {
                        continue;
                    }
                    for (c, slot) in row.iter_mut().enumerate() {
                        let b = self.get(mid, c);
                        if !b.is_zero() {
                            *slot += &(a * b);
                        }
                    }
                }
                row
            });
            power = DenseOperator { h: self.h, slots: self.slots, entries: rows.into_iter().flatten().collect() };
        }
        power.trace()
    }
}

impl DenseOperator<Complex64> {
    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    /// `Tr(T^L)` computed by repeated sparse-aware products.
    pub fn trace_power(&self, l: usize) -> Complex64 {
        let n = self.dim();
        let zero = Complex64::new(0.0, 0.0);
        let mut power = self.clone();
        for _ in 1..l {
            let rows = exec::map_collect(n as u64, |r| {
                let r = r as usize;
                let mut row = vec![zero; n];
                for mid in 0..n {
                    let a = *power.get(r, mid);
                    if a == zero {
                        continue;
                    }
                    for (c, slot) in row.iter_mut().enumerate() {
                        let b = *self.get(mid, c);
                        if b != zero {
                            *slot += a * b;
                        }
                    }
                }
                row
            });
            power = DenseOperator { h: self.h, slots: self.slots, entries: rows.into_iter().flatten().collect() };
        }
        power.trace()
    }
}

/// Layer transfer matrix with exact group-ring entries.
///
/// Column `v` lists the vertical colors entering the layer and row `v'` those
/// leaving it, with slot `V_{ik}` at position `i·M + k`. Each entry sums the
/// weights of all horizontal colorings of the layer that close periodically.
pub fn build_transfer_exact(
    spec: LatticeSpec,
    phi: &TetraMap,
    coc: &Cocycle3,
    s: i64,
    order: NodeOrder,
    guards: &Guards,
) -> Result<DenseOperator<GroupRingElem>> {
    check_inputs(phi, coc)?;
    let h = phi.h();
    let (kk, mm) = (spec.k, spec.m);
    let slots = kk * mm;
    guard("transfer_dim", (h as f64).powi(slots as i32), guards.transfer_dim)?;
    let dim = h.pow(slots as u32);
    let weights = weight_table(coc, s);
    let table = phi.table();
    let group = coc.group();
    let nodes: Vec<(usize, usize)> = match order {
        NodeOrder::IMajor => (0..kk).flat_map(|i| (0..mm).map(move |k| (i, k))).collect(),
        NodeOrder::KMajor => (0..mm).flat_map(|k| (0..kk).map(move |i| (i, k))).collect(),
    };
    let horizontal = h.pow((kk + mm) as u32);
    let columns = exec::map_collect(dim as u64, |col| {
        let v = decode(col as usize, h, slots);
        let mut column = vec![GroupRingElem::zero(group); dim];
        for hz in 0..horizontal {
            let start = decode(hz, h, kk + mm);
            // N_k carries x, E_i carries z.
            let mut xs = start[..mm].to_vec();
            let mut zs = start[mm..].to_vec();
            let mut out = vec![0u32; slots];
            let mut w = group.identity();
            for &(i, k) in &nodes {
                let t = (xs[k] as usize * h + v[i * mm + k] as usize) * h + zs[i] as usize;
                let o = table[t] as usize;
                xs[k] = (o / (h * h)) as u32;
                out[i * mm + k] = (o / h % h) as u32;
                zs[i] = (o % h) as u32;
                w = group.op(w, weights[t]);
            }
            if xs[..] == start[..mm] && zs[..] == start[mm..] {
                column[encode(&out, h)].add_term(w, 1);
            }
        }
        column
    });
    let mut entries = vec![GroupRingElem::zero(group); dim * dim];
    for (col, column) in columns.into_iter().enumerate() {
        for (row, e) in column.into_iter().enumerate() {
            entries[row * dim + col] = e;
        }
    }
    Ok(DenseOperator { h, slots, entries })
}

/// Transfer matrix with entries evaluated under a character.
pub fn build_transfer(
    spec: LatticeSpec,
    phi: &TetraMap,
    coc: &Cocycle3,
    s: i64,
    chi: &Character,
    order: NodeOrder,
    guards: &Guards,
) -> Result<DenseOperator<Complex64>> {
    Ok(build_transfer_exact(spec, phi, coc, s, order, guards)?.evaluate(chi))
}

/// `Z(s) = Tr T(s)^L` after character evaluation.
pub fn z_transfer(
    spec: LatticeSpec,
    phi: &TetraMap,
    coc: &Cocycle3,
    s: i64,
    chi: &Character,
    guards: &Guards,
) -> Result<Complex64> {
    Ok(build_transfer(spec, phi, coc, s, chi, NodeOrder::IMajor, guards)?.trace_power(spec.l))
}

/// `Z(s) = Tr T(s)^L` in the group ring.
pub fn z_transfer_exact(spec: LatticeSpec, phi: &TetraMap, coc: &Cocycle3, s: i64, guards: &Guards) -> Result<GroupRingElem> {
    Ok(build_transfer_exact(spec, phi, coc, s, NodeOrder::IMajor, guards)?.trace_power(spec.l))
}

fn decode(mut index: usize, h: usize, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for slot in out.iter_mut().rev() {
        *slot = (index % h) as u32;
        index /= h;
    }
    out
}

fn encode(colors: &[u32], h: usize) -> usize {
    colors.iter().fold(0, |acc, &c| acc * h + c as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CharacterSpec;
    use crate::tetramap::ColorSet;

    fn electric() -> TetraMap {
        TetraMap::electric(5, 2).unwrap()
    }

    fn spec(k: usize, l: usize, m: usize) -> LatticeSpec {
        LatticeSpec::new(k, l, m).unwrap()
    }

    /// `(x, y + xz, z)` on Z/3 with the cocycle `t^{xz}`.
    pub(crate) fn toy() -> (TetraMap, Cocycle3) {
        let phi = TetraMap::bilinear(3).unwrap();
        let coc = Cocycle3::from_fn(WeightGroup::cyclic(3).unwrap(), 3, |[x, _, z]| ((x * z) % 3) as u64).unwrap();
        (phi, coc)
    }

    /// Weight `t^{x + 2y + 3z}` in Z/7 on color indices; not a cocycle, so nothing cancels.
    fn generic_weight(h: usize) -> Cocycle3 {
        Cocycle3::from_fn(WeightGroup::cyclic(7).unwrap(), h, |[x, y, z]| ((x + 2 * y + 3 * z) % 7) as u64).unwrap()
    }

    #[test]
    fn toy_is_a_solution_with_cocycle() {
        let (phi, coc) = toy();
        assert!(phi.verify_te().holds());
        assert!(crate::cube::verify_cocycle(&phi, &coc).unwrap().holds());
    }

    // Oracle: enumerate every coloring of the 3·K·L·M edges.
    fn brute_z(spec: LatticeSpec, phi: &TetraMap, coc: &Cocycle3, s: i64) -> GroupRingElem {
        let h = phi.h();
        let (kk, ll, mm) = (spec.k, spec.l, spec.m);
        let n = kk * ll * mm;
        let at = |i: usize, j: usize, k: usize| (i * ll + j) * mm + k;
        let group = coc.group();
        let mut acc = GroupRingElem::zero(group);
        for state in 0..h.pow(3 * n as u32) {
            let c = decode(state, h, 3 * n);
            let (x, y, z) = (&c[..n], &c[n..2 * n], &c[2 * n..]);
            let mut ok = true;
            let mut w = group.identity();
            for i in 0..kk {
                for j in 0..ll {
                    for k in 0..mm {
                        let a = at(i, j, k);
                        let out = phi.apply([x[a], y[a], z[a]]);
                        if out != [x[at((i + 1) % kk, j, k)], y[at(i, (j + 1) % ll, k)], z[at(i, j, (k + 1) % mm)]] {
                            ok = false;
                        }
                        w = group.op(w, group.pow(coc.value([x[a], y[a], z[a]]), s));
                    }
                }
            }
            if ok {
                acc.add_term(w, 1);
            }
        }
        acc
    }

    #[test]
    fn direct_matches_brute_force() {
        let (phi, coc) = toy();
        let w = generic_weight(3);
        for (k, l, m) in [(1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2), (2, 1, 2)] {
            let sp = spec(k, l, m);
            for s in [0, 1, 2] {
                assert_eq!(z_direct(sp, &phi, &coc, s, &Guards::default()).unwrap(), brute_z(sp, &phi, &coc, s), "{k}{l}{m} s={s}");
            }
            assert_eq!(z_direct(sp, &phi, &w, 1, &Guards::default()).unwrap(), brute_z(sp, &phi, &w, 1), "{k}{l}{m} generic");
        }
        let id = TetraMap::identity(ColorSet::explicit(2).unwrap());
        let c2 = Cocycle3::from_fn(WeightGroup::cyclic(4).unwrap(), 2, |[x, y, z]| ((x + 2 * y + 3 * z) % 4) as u64).unwrap();
        for (k, l, m) in [(1, 1, 1), (2, 1, 1), (1, 2, 2), (2, 2, 1)] {
            let sp = spec(k, l, m);
            assert_eq!(z_direct(sp, &id, &c2, 1, &Guards::default()).unwrap(), brute_z(sp, &id, &c2, 1));
        }
    }

    #[test]
    fn identity_map_counts_constant_lines() {
        // With Φ = id each line carries one color: h^(LM + KM + KL) states.
        let id = TetraMap::identity(ColorSet::explicit(2).unwrap());
        for (k, l, m) in [(1, 1, 1), (2, 1, 1), (2, 2, 1), (2, 2, 2)] {
            let lines = l * m + k * m + k * l;
            assert_eq!(count_states(spec(k, l, m), &id, &Guards::default()).unwrap(), 2u64.pow(lines as u32));
        }
    }

    #[test]
    fn single_site_counts_fixed_points() {
        let phi = electric();
        let fixed = phi.fixed_points().len() as u64;
        let scan = (0..125u32)
            .filter(|&t| {
                let c = [t / 25, t / 5 % 5, t % 5];
                phi.apply(c) == c
            })
            .count() as u64;
        assert_eq!(fixed, scan);
        assert_eq!(count_states(spec(1, 1, 1), &phi, &Guards::default()).unwrap(), scan);
    }

    #[test]
    fn single_column_transfer_matches_entrywise_sum() {
        let phi = electric();
        let coc = Cocycle3::monomial(phi.set(), crate::cube::MonomialCocycle { sign: -1, a: 0, b: 1, c: 1 }).unwrap();
        let t = build_transfer_exact(spec(1, 1, 1), &phi, &coc, 1, NodeOrder::IMajor, &Guards::default()).unwrap();
        assert_eq!(t.dim(), 5);
        let group = coc.group();
        for y in 0..5u32 {
            for y2 in 0..5u32 {
                let mut e = GroupRingElem::zero(group);
                for x in 0..5u32 {
                    for z in 0..5u32 {
                        if phi.apply([x, y, z]) == [x, y2, z] {
                            e.add_term(coc.value([x, y, z]), 1);
                        }
                    }
                }
                assert_eq!(t.get(y2 as usize, y as usize), &e);
            }
        }
    }

    #[test]
    fn node_orders_agree() {
        let phi = electric();
        let coc = Cocycle3::monomial(phi.set(), crate::cube::MonomialCocycle { sign: 1, a: 0, b: 1, c: 0 }).unwrap();
        let g = Guards::default();
        for (k, m) in [(2, 1), (1, 2), (2, 2)] {
            let a = build_transfer_exact(spec(k, 1, m), &phi, &coc, 1, NodeOrder::IMajor, &g).unwrap();
            let b = build_transfer_exact(spec(k, 1, m), &phi, &coc, 1, NodeOrder::KMajor, &g).unwrap();
            assert_eq!(a, b);
        }
        assert_eq!("k-major".parse::<NodeOrder>().unwrap(), NodeOrder::KMajor);
        assert!("j-major".parse::<NodeOrder>().is_err());
    }

    #[test]
    fn trace_identity_exact_on_toy() {
        let (phi, coc) = toy();
        let w = generic_weight(3);
        let g = Guards::default();
        for (k, l, m) in [(1, 1, 1), (2, 2, 1), (1, 3, 2), (2, 2, 2)] {
            let sp = spec(k, l, m);
            for s in [0, 1, -1] {
                let direct = z_direct(sp, &phi, &coc, s, &g).unwrap();
                assert_eq!(z_transfer_exact(sp, &phi, &coc, s, &g).unwrap(), direct, "{k}{l}{m} s={s}");
            }
            let direct = z_direct(sp, &phi, &w, 1, &g).unwrap();
            assert_eq!(z_transfer_exact(sp, &phi, &w, 1, &g).unwrap(), direct, "{k}{l}{m} generic");
        }
    }

    #[test]
    fn toy_cocycle_weights_cancel_on_closed_lattices() {
        let (phi, coc) = toy();
        let g = Guards::default();
        let z = z_direct(spec(2, 2, 2), &phi, &coc, 1, &g).unwrap();
        assert_eq!(z, GroupRingElem::scalar(coc.group(), 33777));
        assert_eq!(count_states(spec(2, 2, 2), &phi, &g).unwrap(), 33777);
    }

    #[test]
    fn trace_identity_floating_electric() {
        let phi = electric();
        let coc = Cocycle3::monomial(phi.set(), crate::cube::MonomialCocycle { sign: -1, a: 0, b: 2, c: 0 }).unwrap();
        let chi = Character::new(coc.group(), &CharacterSpec::Primitive { root_order: 20 }).unwrap();
        let w = generic_weight(5);
        let chi7 = Character::new(w.group(), &CharacterSpec::Primitive { root_order: 7 }).unwrap();
        let g = Guards::default();
        for (k, l, m) in [(1, 1, 1), (1, 2, 1), (2, 1, 1), (2, 2, 1)] {
            let sp = spec(k, l, m);
            for (c, chi) in [(&coc, &chi), (&w, &chi7)] {
                let direct = chi.eval(&z_direct(sp, &phi, c, 1, &g).unwrap());
                let via = z_transfer(sp, &phi, c, 1, chi, &g).unwrap();
                assert!((direct - via).norm() <= 1e-9 * direct.norm().max(1.0), "{k}{l}{m}: {direct} vs {via}");
            }
        }
    }

    #[test]
    fn exponent_zero_counts_states() {
        let phi = electric();
        let coc = Cocycle3::monomial(phi.set(), crate::cube::MonomialCocycle { sign: 1, a: 1, b: 0, c: 0 }).unwrap();
        let g = Guards::default();
        let sp = spec(2, 1, 2);
        let n = count_states(sp, &phi, &g).unwrap() as i64;
        assert_eq!(z_direct(sp, &phi, &coc, 0, &g).unwrap(), GroupRingElem::scalar(coc.group(), n));
        assert_eq!(z_transfer_exact(sp, &phi, &coc, 0, &g).unwrap(), GroupRingElem::scalar(coc.group(), n));
    }

    #[test]
    fn transfer_commutes_with_layer_shifts() {
        let phi = electric();
        let coc = Cocycle3::monomial(phi.set(), crate::cube::MonomialCocycle { sign: -1, a: 1, b: 1, c: 0 }).unwrap();
        let (kk, mm) = (2, 2);
        let t = build_transfer_exact(spec(kk, 1, mm), &phi, &coc, 1, NodeOrder::IMajor, &Guards::default()).unwrap();
        let h = 5;
        let shift = |v: usize, di: usize, dk: usize| {
            let c = decode(v, h, kk * mm);
            let mut out = vec![0u32; kk * mm];
            for i in 0..kk {
                for k in 0..mm {
                    out[(i + di) % kk * mm + (k + dk) % mm] = c[i * mm + k];
                }
            }
            encode(&out, h)
        };
        for (di, dk) in [(1, 0), (0, 1)] {
            for r in 0..t.dim() {
                for c in 0..t.dim() {
                    assert_eq!(t.get(r, c), t.get(shift(r, di, dk), shift(c, di, dk)));
                }
            }
        }
    }

    #[test]
    fn guards_fire() {
        let phi = electric();
        let coc = Cocycle3::trivial(WeightGroup::units(5, 2).unwrap(), 5);
        let tight = Guards { lattice_direct: 10.0, transfer_dim: 20.0, ..Guards::default() };
        let e = z_direct(spec(2, 2, 2), &phi, &coc, 1, &tight).unwrap_err();
        assert_eq!(e.guard_name(), Some("lattice_direct"));
        let e = build_transfer_exact(spec(2, 1, 1), &phi, &coc, 1, NodeOrder::IMajor, &tight).unwrap_err();
        assert_eq!(e.guard_name(), Some("transfer_dim"));
        assert!(LatticeSpec::new(0, 1, 1).is_err());
    }
}
