//! Partial inversion of word identities.
//!
//! Inverting the wires `E` of a word reverses the order in which the factors
//! meet each wire of `E`, keeps it on the other wires, and transposes every
//! factor in its `E`-slots. When the resulting precedence constraints are
//! acyclic the transformed network is again a word, and an identity `L = R`
//! turns into a new identity.

use std::collections::BTreeSet;

use super::word::{Factor, SlotMap};

/// Orientation flips of the four faces of the tetrahedron, as sets of
/// reversed edges (bit `w-1` = edge `w`); flipping a face reverses the three
/// edges it contains, so flips combine by symmetric difference.
pub const FACE_FLIPS: [u64; 8] = [
    0,
    0b001011, // 124
    0b010101, // 135
    0b100110, // 236
    0b111000, // 456
    0b011110, // 2345
    0b101101, // 1346
    0b110011, // 1256
];

pub fn wires_label(e: u64) -> String {
    if e == 0 {
        return "none".into();
    }
    (0..9).filter(|w| e >> w & 1 == 1).map(|w| char::from(b'1' + w as u8)).collect()
}

/// Rewrites one side; `None` when the precedence graph has a cycle.
pub fn invert_wires(word: &SlotMap, e: u64) -> Option<SlotMap> {
    let factors = word.factors();
    let n = factors.len();
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for w in 1..=word.arity() {
        let touching: Vec<usize> = (0..n).filter(|&i| factors[i].slots.contains(&w)).collect();
        for pair in touching.windows(2) {
            let (a, b) = if e >> (w - 1) & 1 == 1 { (pair[1], pair[0]) } else { (pair[0], pair[1]) };
            succ[a].insert(b);
        }
    }
    let mut indeg = vec![0usize; n];
    for s in &succ {
        for &b in s {
            indeg[b] += 1;
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(&i) = ready.iter().next() {
        ready.remove(&i);
        order.push(i);
        for &b in &succ[i] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                ready.insert(b);
            }
        }
    }
    if order.len() < n {
        return None;
    }
    let out = order
        .into_iter()
        .map(|i| {
            let f = factors[i];
            Factor { transpose: f.transpose ^ f.local_mask(e), ..f }
        })
        .collect();
    SlotMap::new(word.arity(), out).ok()
}

/// Partial inversion of the identity `lhs = rhs` on the wires `e`.
pub fn partial_inversion(lhs: &SlotMap, rhs: &SlotMap, e: u64) -> Option<(SlotMap, SlotMap)> {
    Some((invert_wires(lhs, e)?, invert_wires(rhs, e)?))
}

/// Generated identity together with the rotation that made it a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variant {
    pub wires: u64,
    pub rotation: usize,
    pub lhs: SlotMap,
    pub rhs: SlotMap,
}

/// Inverts wires `e` in some equivalent form of `lhs = rhs`.
///
/// The identity is read as the cyclic relator `lhs · rhs⁻¹ = 1`. Cutting the
/// relator (or its inverse) at two points `u · v = 1` gives the equivalent
/// identity `u = v⁻¹`. Cuts are tried by rotation, then by length of `u`
/// closest to half; the first one whose two sides rewrite without cycles is used.
pub fn rotated_inversion(lhs: &SlotMap, rhs: &SlotMap, e: u64) -> Option<Variant> {
    if lhs.arity() != rhs.arity() {
        return None;
    }
    let arity = lhs.arity();
    let mut cyc: Vec<Factor> = lhs.factors().to_vec();
    cyc.extend(rhs.inverse().factors());
    let inv: Vec<Factor> = cyc.iter().rev().map(|f| f.inverted()).collect();
    let n = cyc.len();
    let mut lengths: Vec<usize> = (0..=n).collect();
    lengths.sort_by_key(|&k| (k.abs_diff(n / 2), k));
    for (dir, word) in [&cyc, &inv].into_iter().enumerate() {
        for r in 0..n.max(1) {
            let mut rot = word.clone();
            rot.rotate_left(r);
            for &k in &lengths {
                let u = SlotMap::new(arity, rot[..k].to_vec()).ok()?;
                let v = SlotMap::new(arity, rot[k..].to_vec()).ok()?.inverse();
                if let Some((l2, r2)) = partial_inversion(&u, &v, e) {
                    return Some(Variant { wires: e, rotation: dir * n + r, lhs: l2, rhs: r2 });
                }
            }
        }
    }
    None
}

/// The tetrahedron equation `Φ₁₂₃Φ₁₄₅Φ₂₄₆Φ₃₅₆ = Φ₃₅₆Φ₂₄₆Φ₁₄₅Φ₁₂₃`.
pub fn tetrahedron_word() -> (SlotMap, SlotMap) {
    let l = SlotMap::parse(6, "F_123 F_145 F_246 F_356").expect("static word");
    let r = l.reversed();
    (l, r)
}

/// The eight orientation variants of the tetrahedron equation, indexed like
/// [`FACE_FLIPS`].
///
/// Each variant is first sought by one partial inversion of the tetrahedron
/// equation; when no cut of the relator works, inversions of single faces are
/// chained starting from the variants already found.
pub fn orientation_variants() -> Vec<Option<Variant>> {
    let (l, r) = tetrahedron_word();
    let mut found: Vec<Option<Variant>> = FACE_FLIPS.iter().map(|&e| rotated_inversion(&l, &r, e)).collect();
    loop {
        let mut progress = false;
        for from in 0..FACE_FLIPS.len() {
            let Some(base) = found[from].clone() else { continue };
            for &f in &FACE_FLIPS[1..5] {
                let target = FACE_FLIPS.iter().position(|&e| e == base.wires ^ f).expect("closed");
                if found[target].is_some() {
                    continue;
                }
                if let Some(v) = rotated_inversion(&base.lhs, &base.rhs, f) {
                    found[target] = Some(Variant { wires: base.wires ^ f, ..v });
                    progress = true;
                }
            }
        }
        if !progress {
            return found;
        }
    }
}
