use super::group::WeightGroup;
use super::group_ring::GroupRingElem;
use crate::error::{Error, Result};

/// Mixed-radix encoding of tuples in `X^n`: slot 1 is the most significant digit,
/// so index order is lexicographic order of tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TupleIndex {
    h: usize,
    n: usize,
}

impl TupleIndex {
    pub fn new(h: usize, n: usize) -> Self {
        TupleIndex { h, n }
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.h.pow(self.n as u32)
    }

    pub fn encode(&self, t: &[u32]) -> usize {
        debug_assert_eq!(t.len(), self.n);
        t.iter().fold(0, |acc, &c| acc * self.h + c as usize)
    }

    pub fn decode(&self, mut idx: usize) -> Vec<u32> {
        let mut t = vec![0u32; self.n];
        for slot in (0..self.n).rev() {
            t[slot] = (idx % self.h) as u32;
            idx /= self.h;
        }
        t
    }

    pub fn decode_into(&self, mut idx: usize, t: &mut [u32]) {
        for slot in (0..self.n).rev() {
            t[slot] = (idx % self.h) as u32;
            idx /= self.h;
        }
    }
}

/// Partial transpose of a permutation of `X^n` in the slots of `mask`
/// (bit `i` = slot `i+1`).
///
/// The transposed map sends `x` to `y` iff the original sends `x'` to `y'`,
/// where `x'`/`y'` are `x`/`y` with the masked coordinates exchanged. Returns the
/// new table and, for each new input, the original input it came from. Fails
/// unless the result is a bijection.
pub fn partial_transpose_perm(
    index: TupleIndex,
    perm: &[u32],
    mask: u32,
) -> std::result::Result<(Vec<u32>, Vec<u32>), String> {
    let size = index.size();
    debug_assert_eq!(perm.len(), size);
    if mask == 0 {
        return Ok((perm.to_vec(), (0..size as u32).collect()));
    }
    const UNSET: u32 = u32::MAX;
    let mut table = vec![UNSET; size];
    let mut source = vec![UNSET; size];
    let mut hit = vec![false; size];
    let mut u_t = vec![0u32; index.n];
    let mut v_t = vec![0u32; index.n];
    for u in 0..size {
        index.decode_into(u, &mut u_t);
        index.decode_into(perm[u] as usize, &mut v_t);
        for slot in 0..index.n {
            if mask >> slot & 1 == 1 {
                std::mem::swap(&mut u_t[slot], &mut v_t[slot]);
            }
        }
        let x = index.encode(&u_t);
        let y = index.encode(&v_t);
        if table[x] != UNSET {
            return Err(format!(
                "input {:?} is reached from two original inputs",
                index.decode(x)
            ));
        }
        if hit[y] {
            return Err(format!("output {:?} is produced twice", index.decode(y)));
        }
        hit[y] = true;
        table[x] = y as u32;
        source[x] = u as u32;
    }
    Ok((table, source))
}

pub(crate) fn is_bijection(table: &[u32]) -> bool {
    let mut seen = vec![false; table.len()];
    for &y in table {
        let y = y as usize;
        if y >= seen.len() || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    true
}

/// Monomial operator on `V^{⊗n}`, `V = span(X)`: `e_x ↦ phase(x)·e_{π(x)}`
/// with phases in a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOperator {
    index: TupleIndex,
    group: WeightGroup,
    perm: Vec<u32>,
    phase: Vec<u64>,
}

impl MonomialOperator {
    pub fn new(h: usize, arity: usize, group: WeightGroup, perm: Vec<u32>, phase: Vec<u64>) -> Result<Self> {
        let index = TupleIndex::new(h, arity);
        if perm.len() != index.size() || phase.len() != index.size() {
            return Err(Error::invalid(format!(
                "operator tables must have {} entries",
                index.size()
            )));
        }
        if !is_bijection(&perm) {
            return Err(Error::NotBijective("operator permutation".into()));
        }
        if let Some(&g) = phase.iter().find(|&&g| !group.contains(g)) {
            return Err(Error::invalid(format!("phase {g} is not an element of {group}")));
        }
        Ok(MonomialOperator { index, group, perm, phase })
    }

    pub fn identity(h: usize, arity: usize, group: WeightGroup) -> Self {
        let index = TupleIndex::new(h, arity);
        let size = index.size();
        MonomialOperator {
            index,
            group,
            perm: (0..size as u32).collect(),
            phase: vec![group.identity(); size],
        }
    }

    pub fn h(&self) -> usize {
        self.index.h
    }

    pub fn arity(&self) -> usize {
        self.index.n
    }

    pub fn group(&self) -> WeightGroup {
        self.group
    }

    pub fn index(&self) -> TupleIndex {
        self.index
    }

    pub fn perm(&self) -> &[u32] {
        &self.perm
    }

    pub fn phases(&self) -> &[u64] {
        &self.phase
    }

    /// Image index and phase of basis vector `x`.
    pub fn apply(&self, x: usize) -> (usize, u64) {
        (self.perm[x] as usize, self.phase[x])
    }

    pub fn is_identity(&self) -> bool {
        let id = self.group.identity();
        self.perm.iter().enumerate().all(|(i, &y)| i == y as usize)
            && self.phase.iter().all(|&g| g == id)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.arity() != other.arity() || self.h() != other.h() {
            return Err(Error::ArityMismatch { left: self.arity(), right: other.arity() });
        }
        if self.group != other.group {
            return Err(Error::invalid(format!(
                "weight groups differ: {} vs {}",
                self.group, other.group
            )));
        }
        Ok(())
    }

    /// Applies `self` first, then `then`; phases multiply along the trajectory.
    pub fn compose(&self, then: &MonomialOperator) -> Result<MonomialOperator> {
        self.check_compatible(then)?;
        let perm = self.perm.iter().map(|&y| then.perm[y as usize]).collect();
        let phase = self
            .perm
            .iter()
            .zip(&self.phase)
            .map(|(&y, &g)| self.group.op(g, then.phase[y as usize]))
            .collect();
        Ok(MonomialOperator { index: self.index, group: self.group, perm, phase })
    }

    pub fn inverse(&self) -> MonomialOperator {
        let size = self.perm.len();
        let mut perm = vec![0u32; size];
        let mut phase = vec![0u64; size];
        for (x, (&y, &g)) in self.perm.iter().zip(&self.phase).enumerate() {
            perm[y as usize] = x as u32;
            phase[y as usize] = self.group.inv(g);
        }
        MonomialOperator { index: self.index, group: self.group, perm, phase }
    }

    /// Phases raised to `s`.
    pub fn pow_phase(&self, s: i64) -> MonomialOperator {
        let phase = self.phase.iter().map(|&g| self.group.pow(g, s)).collect();
        MonomialOperator { phase, ..self.clone() }
    }

    /// Matrix transpose in the tensor factors of `mask` (bit `i` = slot `i+1`).
    pub fn partial_transpose(&self, mask: u32) -> Result<MonomialOperator> {
        let (perm, source) = partial_transpose_perm(self.index, &self.perm, mask)
            .map_err(Error::NotMonomial)?;
        let phase = source.iter().map(|&u| self.phase[u as usize]).collect();
        Ok(MonomialOperator { index: self.index, group: self.group, perm, phase })
    }

    /// Contracts lower index `in_slot` with upper index `out_slot` (1-based):
    /// `B^{y'}_{x'} = Σ_t A^{y[out_slot=t]}_{x[in_slot=t]}`.
    ///
    /// The result acts on the remaining `n-1` slots, kept in their original order.
    /// Fails with `NotMonomial` when some column of the contraction has zero or
    /// several nonzero contributions, or two columns land on the same row.
    pub fn convolve(&self, in_slot: usize, out_slot: usize) -> Result<MonomialOperator> {
        let n = self.arity();
        if n < 2 {
            return Err(Error::invalid("convolution needs arity at least 2"));
        }
        if in_slot == out_slot || !(1..=n).contains(&in_slot) || !(1..=n).contains(&out_slot) {
            return Err(Error::invalid(format!(
                "convolution slots ({in_slot}, {out_slot}) must be distinct and in 1..={n}"
            )));
        }
        let (i, j) = (in_slot - 1, out_slot - 1);
        let small = TupleIndex::new(self.h(), n - 1);
        let mut perm = vec![u32::MAX; small.size()];
        let mut phase = vec![self.group.identity(); small.size()];
        let mut hit = vec![false; small.size()];
        let mut full_in = vec![0u32; n];
        let mut full_out = vec![0u32; n];
        for xs in 0..small.size() {
            let rest = small.decode(xs);
            let mut found: Option<(usize, u64)> = None;
            for t in 0..self.h() as u32 {
                let mut r = rest.iter();
                for (slot, c) in full_in.iter_mut().enumerate() {
                    *c = if slot == i { t } else { *r.next().unwrap() };
                }
                let (y, g) = self.apply(self.index.encode(&full_in));
                self.index.decode_into(y, &mut full_out);
                if full_out[j] != t {
                    continue;
                }
                let out_rest: Vec<u32> = full_out
                    .iter()
                    .enumerate()
                    .filter(|&(s, _)| s != j)
                    .map(|(_, &c)| c)
                    .collect();
                if found.is_some() {
                    return Err(Error::NotMonomial(format!(
                        "column {rest:?} of the ({in_slot},{out_slot}) contraction has several nonzero entries"
                    )));
                }
                found = Some((small.encode(&out_rest), g));
            }
            let (ys, g) = found.ok_or_else(|| {
                Error::NotMonomial(format!(
                    "column {rest:?} of the ({in_slot},{out_slot}) contraction is zero"
                ))
            })?;
            if hit[ys] {
                return Err(Error::NotMonomial(format!(
                    "row {:?} of the ({in_slot},{out_slot}) contraction has several nonzero entries",
                    small.decode(ys)
                )));
            }
            hit[ys] = true;
            perm[xs] = ys as u32;
            phase[xs] = g;
        }
        Ok(MonomialOperator { index: small, group: self.group, perm, phase })
    }

    /// Sum of phases over fixed points.
    pub fn trace(&self) -> GroupRingElem {
        let mut out = GroupRingElem::zero(self.group);
        for (x, (&y, &g)) in self.perm.iter().zip(&self.phase).enumerate() {
            if x == y as usize {
                out.add_term(g, 1);
            }
        }
        out
    }
}

pub fn monomial_compose(a: &MonomialOperator, b: &MonomialOperator) -> Result<MonomialOperator> {
    a.compose(b)
}

pub fn monomial_convolve(a: &MonomialOperator, in_slot: usize, out_slot: usize) -> Result<MonomialOperator> {
    a.convolve(in_slot, out_slot)
}

pub fn monomial_trace(a: &MonomialOperator) -> GroupRingElem {
    a.trace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    fn grp() -> WeightGroup {
        WeightGroup::cyclic(4).unwrap()
    }

    fn random_op(h: usize, n: usize, seed: u64) -> MonomialOperator {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let size = h.pow(n as u32);
        let mut perm: Vec<u32> = (0..size as u32).collect();
        perm.shuffle(&mut rng);
        let phase = (0..size).map(|_| rng.gen_range(0..4)).collect();
        MonomialOperator::new(h, n, grp(), perm, phase).unwrap()
    }

    // Dense oracle: matrix with group-ring entries, column x holds phase(x) at row π(x).
    type Dense = Vec<Vec<GroupRingElem>>;

    fn dense(a: &MonomialOperator) -> Dense {
        let size = a.perm.len();
        let mut m = vec![vec![GroupRingElem::zero(a.group); size]; size];
        for x in 0..size {
            let (y, g) = a.apply(x);
            m[y][x].add_term(g, 1);
        }
        m
    }

    fn dense_contract(a: &MonomialOperator, in_slot: usize, out_slot: usize) -> Dense {
        let n = a.arity();
        let h = a.h();
        let big = a.index;
        let small = TupleIndex::new(h, n - 1);
        let m = dense(a);
        let mut out = vec![vec![GroupRingElem::zero(a.group); small.size()]; small.size()];
        for ys in 0..small.size() {
            for xs in 0..small.size() {
                for t in 0..h as u32 {
                    let mut xi = small.decode(xs);
                    xi.insert(in_slot - 1, t);
                    let mut yi = small.decode(ys);
                    yi.insert(out_slot - 1, t);
                    let e = m[big.encode(&yi)][big.encode(&xi)].clone();
                    out[ys][xs] += &e;
                }
            }
        }
        out
    }

    #[test]
    fn tuple_index_roundtrip() {
        let ix = TupleIndex::new(5, 3);
        assert_eq!(ix.encode(&[1, 2, 3]), 25 + 10 + 3);
        assert_eq!(ix.decode(38), vec![1, 2, 3]);
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let a = random_op(3, 2, 1);
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
        assert!(a.inverse().compose(&a).unwrap().is_identity());
        let id = MonomialOperator::identity(3, 2, grp());
        assert_eq!(id.compose(&a).unwrap(), a);
        assert_eq!(a.compose(&id).unwrap(), a);
    }

    #[test]
    fn involution_squares_to_identity() {
        // Oracle: direct table composition of the swap (x,y) -> (y,x).
        let ix = TupleIndex::new(3, 2);
        let perm: Vec<u32> = (0..9)
            .map(|i| {
                let t = ix.decode(i);
                ix.encode(&[t[1], t[0]]) as u32
            })
            .collect();
        let a = MonomialOperator::new(3, 2, grp(), perm, vec![0; 9]).unwrap();
        assert!(a.compose(&a).unwrap().is_identity());
    }

    #[test]
    fn compose_arity_mismatch() {
        let a = random_op(2, 2, 3);
        let b = random_op(2, 3, 3);
        assert_eq!(a.compose(&b), Err(Error::ArityMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn trace_examples() {
        let id = MonomialOperator::identity(5, 1, grp());
        assert_eq!(id.trace(), GroupRingElem::scalar(grp(), 5));
        let cyc = MonomialOperator::new(3, 1, grp(), vec![1, 2, 0], vec![1, 1, 1]).unwrap();
        assert!(cyc.trace().is_zero());
    }

    #[test]
    fn convolve_identity_adjacent() {
        let id = MonomialOperator::identity(3, 3, grp());
        for i in 1..=3usize {
            for j in 1..=3 {
                // Adjacent slots close up into the identity.
                if i.abs_diff(j) == 1 {
                    assert!(id.convolve(i, j).unwrap().is_identity(), "({i},{j})");
                }
            }
        }
    }

    #[test]
    fn convolve_not_monomial() {
        // (x, y) -> (x, x): not a bijection, so build the contraction case
        // directly: π swaps the two slots, so contracting in slot 1 with out
        // slot 2 pins nothing and every t contributes.
        let ix = TupleIndex::new(2, 2);
        let perm: Vec<u32> = (0..4)
            .map(|i| {
                let t = ix.decode(i);
                ix.encode(&[t[1], t[0]]) as u32
            })
            .collect();
        let a = MonomialOperator::new(2, 2, grp(), perm, vec![0; 4]).unwrap();
        assert!(matches!(a.convolve(1, 2), Err(Error::NotMonomial(_))));
        // Sanity: the dense oracle indeed has a column with two nonzero entries.
        let d = dense_contract(&a, 1, 2);
        assert_eq!(d.iter().map(|row| row[0].augmentation()).sum::<i64>(), 2);
    }

    #[test]
    fn convolve_matches_dense_oracle() {
        for seed in 0..200 {
            let a = random_op(3, 3, seed);
            for (i, j) in [(1, 2), (2, 1), (2, 3), (3, 2), (1, 3), (3, 1)] {
                let oracle = dense_contract(&a, i, j);
                match a.convolve(i, j) {
                    Ok(b) => assert_eq!(dense(&b), oracle),
                    Err(Error::NotMonomial(_)) => {
                        let monomial = oracle
                            .iter()
                            .map(|row| row.iter().filter(|e| !e.is_zero()).count())
                            .all(|c| c == 1)
                            && (0..oracle.len()).all(|x| {
                                oracle.iter().filter(|row| !row[x].is_zero()).count() == 1
                            })
                            && oracle.iter().flatten().all(|e| e.is_zero() || e.terms().count() == 1 && e.augmentation() == 1);
                        assert!(!monomial, "seed {seed} ({i},{j})");
                    }
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn partial_transpose_matches_dense_transpose() {
        for seed in 0..50 {
            let a = random_op(2, 3, seed);
            let ix = a.index;
            let m = dense(&a);
            for mask in 0..8u32 {
                let Ok(t) = a.partial_transpose(mask) else { continue };
                let mt = dense(&t);
                for y in 0..8 {
                    for x in 0..8 {
                        let mut yt = ix.decode(y);
                        let mut xt = ix.decode(x);
                        for s in 0..3 {
                            if mask >> s & 1 == 1 {
                                std::mem::swap(&mut yt[s], &mut xt[s]);
                            }
                        }
                        assert_eq!(mt[y][x], m[ix.encode(&yt)][ix.encode(&xt)]);
                    }
                }
                // Transposing twice returns the original.
                assert_eq!(t.partial_transpose(mask).unwrap(), a);
            }
        }
    }

    proptest! {
        #[test]
        fn associativity_and_inverse_of_product(s1 in 0u64..1000, s2 in 0u64..1000, s3 in 0u64..1000) {
            let (a, b, c) = (random_op(3, 2, s1), random_op(3, 2, s2), random_op(3, 2, s3));
            let ab = a.compose(&b).unwrap();
            prop_assert_eq!(ab.compose(&c).unwrap(), a.compose(&b.compose(&c).unwrap()).unwrap());
            prop_assert_eq!(ab.inverse(), b.inverse().compose(&a.inverse()).unwrap());
        }

        #[test]
        fn trace_is_cyclic(s1 in 0u64..1000, s2 in 0u64..1000) {
            let (a, b) = (random_op(3, 2, s1), random_op(3, 2, s2));
            prop_assert_eq!(a.compose(&b).unwrap().trace(), b.compose(&a).unwrap().trace());
        }

        #[test]
        fn partial_inversion_lemma(seed in 0u64..10_000) {
            // f on X×Y (slot 1 = X, slot 2 = Y), g on X; the Y-inversion commutes
            // with precomposition by g×id.
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let h = 3usize;
            let ix = TupleIndex::new(h, 2);
            // f(x,y) = (τx, s_x y) with random phases.
            let mut tau: Vec<u32> = (0..h as u32).collect();
            tau.shuffle(&mut rng);
            let mut perm = vec![0u32; 9];
            for x in 0..h {
                let mut ys: Vec<u32> = (0..h as u32).collect();
                ys.shuffle(&mut rng);
                for y in 0..h {
                    perm[ix.encode(&[x as u32, y as u32])] = ix.encode(&[tau[x], ys[y]]) as u32;
                }
            }
            let phase: Vec<u64> = (0..9).map(|_| rng.gen_range(0..4)).collect();
            let f = MonomialOperator::new(h, 2, grp(), perm, phase).unwrap();
            let mut gx: Vec<u32> = (0..h as u32).collect();
            gx.shuffle(&mut rng);
            let gperm: Vec<u32> = (0..9).map(|i| {
                let t = ix.decode(i);
                ix.encode(&[gx[t[0] as usize], t[1]]) as u32
            }).collect();
            let g = MonomialOperator::new(h, 2, grp(), gperm, vec![0; 9]).unwrap();
            // f∘(g×id) applies g first.
            let ft = f.partial_transpose(0b10);
            let fg = g.compose(&f).unwrap();
            let lhs = fg.partial_transpose(0b10).unwrap();
            let rhs = g.compose(&ft.unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
