use crate::error::{Error, Result};
use crate::tetramap::TetraMap;

use super::face::{kappa, FaceIndex};

/// One application of `Φ` at a 3-face: input and output 2-face indices, both
/// ordered lexicographically by their asterisk pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub face3: usize,
    pub inputs: [usize; 3],
    pub outputs: [usize; 3],
    /// Per output: true when the face is already colored and only checked.
    pub check: [bool; 3],
}

/// Straight-line propagation program for colorings of `I^n`.
#[derive(Clone, Debug)]
pub struct CubeSchedule {
    n: usize,
    faces2: FaceIndex,
    seeds: Vec<usize>,
    steps: Vec<Step>,
}

/// The 2-subfaces of 3-face `t` in the order `(j1,j2)`, `(j1,j3)`, `(j2,j3)`,
/// once with incoming and once with outgoing values.
fn incidence(faces2: &FaceIndex, faces3: &FaceIndex, t: usize) -> ([usize; 3], [usize; 3]) {
    let (stars, bits) = faces3.face(t);
    let mut ins = [0usize; 3];
    let mut outs = [0usize; 3];
    // Pair (j_a, j_b) is obtained by fixing the remaining asterisk j_k.
    for (slot, k) in [3usize, 2, 1].into_iter().enumerate() {
        let j = stars[k - 1];
        let pair: Vec<usize> = stars.iter().copied().filter(|&s| s != j).collect();
        let mut b = bits.clone();
        b[j] = kappa(k);
        ins[slot] = faces2.index(&pair, &b);
        b[j] = 1 - kappa(k);
        outs[slot] = faces2.index(&pair, &b);
    }
    (ins, outs)
}

/// Index of the absolutely incoming 2-face with asterisks `a < b` (0-based).
fn absolutely_incoming(faces2: &FaceIndex, n: usize, a: usize, b: usize) -> usize {
    let bits: Vec<u8> = (0..n).map(|j| u8::from(a < j && j < b)).collect();
    faces2.index(&[a, b], &bits)
}

impl CubeSchedule {
    /// Schedule that always fires the lowest-indexed ready 3-face.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_order(n, |ready| ready[0])
    }

    /// Schedule whose next 3-face is chosen by `pick` among the ready ones
    /// (given in increasing index order); `pick` returns a position in that list.
    pub fn with_order(n: usize, mut pick: impl FnMut(&[usize]) -> usize) -> Result<Self> {
        if !(2..=8).contains(&n) {
            return Err(Error::invalid(format!("cube dimension {n} outside 2..=8")));
        }
        let faces2 = FaceIndex::new(n, 2);
        let seeds: Vec<usize> = faces2
            .sets()
            .iter()
            .map(|p| absolutely_incoming(&faces2, n, p[0], p[1]))
            .collect();
        let mut known = vec![false; faces2.len()];
        for &s in &seeds {
            known[s] = true;
        }
        let mut steps = Vec::new();
        if n >= 3 {
            let faces3 = FaceIndex::new(n, 3);
            let inc: Vec<_> = (0..faces3.len()).map(|t| incidence(&faces2, &faces3, t)).collect();
            let mut done = vec![false; faces3.len()];
            while steps.len() < faces3.len() {
                let ready: Vec<usize> = (0..faces3.len())
                    .filter(|&t| !done[t] && inc[t].0.iter().all(|&f| known[f]))
                    .collect();
                if ready.is_empty() {
                    return Err(Error::Inconsistent("propagation stalled".into()));
                }
                let t = ready[pick(&ready).min(ready.len() - 1)];
                done[t] = true;
                let (inputs, outputs) = inc[t];
                let check = outputs.map(|f| known[f]);
                for f in outputs {
                    known[f] = true;
                }
                steps.push(Step { face3: t, inputs, outputs, check });
            }
        }
        if known.iter().any(|&k| !k) {
            return Err(Error::Inconsistent("some 2-face is never colored".into()));
        }
        Ok(CubeSchedule { n, faces2, seeds, steps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_faces(&self) -> usize {
        self.faces2.len()
    }

    /// 2-face indices of the absolutely incoming faces, pairs in lexicographic order.
    pub fn seeds(&self) -> &[usize] {
        &self.seeds
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub(crate) fn faces2(&self) -> &FaceIndex {
        &self.faces2
    }

    /// Runs the program on seed color indices, writing into `colors`.
    /// Returns the first step whose checked outputs disagree with `Φ`.
    pub fn run_into(&self, phi: &TetraMap, seed: &[u32], colors: &mut [u32]) -> std::result::Result<(), usize> {
        for (&f, &c) in self.seeds.iter().zip(seed) {
            colors[f] = c;
        }
        for (i, step) in self.steps.iter().enumerate() {
            let out = phi.apply(step.inputs.map(|f| colors[f]));
            for k in 0..3 {
                if step.check[k] {
                    if colors[step.outputs[k]] != out[k] {
                        return Err(i);
                    }
                } else {
                    colors[step.outputs[k]] = out[k];
                }
            }
        }
        Ok(())
    }

    pub fn extend(&self, phi: &TetraMap, seed: &[u32]) -> Result<CubeColoring> {
        if seed.len() != self.seeds.len() {
            return Err(Error::invalid(format!(
                "I^{} needs {} seed colors, got {}",
                self.n,
                self.seeds.len(),
                seed.len()
            )));
        }
        if let Some(&c) = seed.iter().find(|&&c| c as usize >= phi.h()) {
            return Err(Error::invalid(format!("color index {c} out of range")));
        }
        let mut colors = vec![0u32; self.faces2.len()];
        self.run_into(phi, seed, &mut colors).map_err(|i| {
            Error::Inconsistent(format!(
                "3-face {} receives conflicting colors",
                FaceIndex::new(self.n, 3).to_face(self.steps[i].face3)
            ))
        })?;
        Ok(CubeColoring { n: self.n, colors })
    }
}

/// Admissible coloring of the 2-faces of `I^n` (color indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeColoring {
    n: usize,
    colors: Vec<u32>,
}

impl CubeColoring {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Colors indexed by 2-face index.
    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Color of a 2-face given as a word such as `"**0"`.
    pub fn color_of(&self, face: &super::Face) -> Option<u32> {
        if face.ambient() != self.n || face.dimension() != 2 {
            return None;
        }
        let stars: Vec<usize> = face.asterisks().iter().map(|j| j - 1).collect();
        let bits: Vec<u8> = face
            .cells()
            .iter()
            .map(|c| u8::from(*c == super::Cell::One))
            .collect();
        Some(self.colors[FaceIndex::new(self.n, 2).index(&stars, &bits)])
    }
}

/// Extends colors of the absolutely incoming 2-faces (values, pairs in
/// lexicographic order) to an admissible coloring of `I^n`, `n ≤ 5`.
pub fn extend_coloring(n: usize, seed: &[u64], phi: &TetraMap) -> Result<CubeColoring> {
    if n > 5 {
        return Err(Error::TooLarge { guard: "cube_dimension", size: n as f64, limit: 5.0 });
    }
    let idx: Vec<u32> = seed
        .iter()
        .map(|&v| phi.set().index_of(v).ok_or_else(|| Error::invalid(format!("{v} is not a color"))))
        .collect::<Result<_>>()?;
    CubeSchedule::new(n)?.extend(phi, &idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::Face;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    #[test]
    fn seeds_are_absolutely_incoming() {
        // Oracle: a 2-face is absolutely incoming iff it is incoming in every
        // 3-face containing it.
        for n in 3..=5 {
            let s = CubeSchedule::new(n).unwrap();
            let f2 = FaceIndex::new(n, 2);
            let f3 = FaceIndex::new(n, 3);
            let mut outgoing = vec![false; f2.len()];
            for t in 0..f3.len() {
                for f in incidence(&f2, &f3, t).1 {
                    outgoing[f] = true;
                }
            }
            let mut abs: Vec<usize> = (0..f2.len()).filter(|&f| !outgoing[f]).collect();
            let mut seeds = s.seeds().to_vec();
            abs.sort_unstable();
            seeds.sort_unstable();
            assert_eq!(abs, seeds);
        }
    }

    #[test]
    fn n2_and_n3() {
        let phi = TetraMap::electric(5, 2).unwrap();
        let c = extend_coloring(2, &[7], &phi).unwrap();
        assert_eq!(c.colors(), &[1]);
        let c = extend_coloring(3, &[2, 2, 2], &phi).unwrap();
        let col = |w: &str| phi.set().value(c.color_of(&w.parse::<Face>().unwrap()).unwrap());
        assert_eq!([col("**0"), col("*1*"), col("0**")], [2, 2, 2]);
        assert_eq!([col("**1"), col("*0*"), col("1**")], [17, 12, 17]);
    }

    #[test]
    fn propagation_order_is_irrelevant() {
        let phi = TetraMap::electric(5, 2).unwrap();
        let canonical = CubeSchedule::new(4).unwrap();
        let last = CubeSchedule::with_order(4, |r| r.len() - 1).unwrap();
        let a = canonical.extend(&phi, &[0; 6]).unwrap();
        assert_eq!(last.extend(&phi, &[0; 6]).unwrap(), a);
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let seed: Vec<u32> = (0..10).map(|_| rng.gen_range(0..5)).collect();
            let reference = CubeSchedule::new(5).unwrap().extend(&phi, &seed).unwrap();
            for _ in 0..100 {
                let mut order_rng = rand::rngs::StdRng::seed_from_u64(rng.gen());
                let s = CubeSchedule::with_order(5, |r| {
                    let mut idx: Vec<usize> = (0..r.len()).collect();
                    idx.shuffle(&mut order_rng);
                    idx[0]
                })
                .unwrap();
                assert_eq!(s.extend(&phi, &seed).unwrap(), reference);
            }
        }
    }

    #[test]
    fn non_solution_is_inconsistent() {
        let phi = TetraMap::electric(5, 2).unwrap().with_swapped_rows(0, 1);
        let s = CubeSchedule::new(4).unwrap();
        let any_bad = (0..15625u32).any(|i| {
            let seed: Vec<u32> = (0..6).rev().map(|k| i / 5u32.pow(k) % 5).collect();
            s.extend(&phi, &seed).is_err()
        });
        assert!(any_bad);
    }
}
