//! Deciding whether a set contains a projective `d`-cube, and finding the
//! special degenerate cubes used in the density arguments.
//!
//! The general search walks non-decreasing generator sequences. Instead of
//! tracking the iterated sumset `P` of the chosen prefix, it tracks the set of
//! admissible next generators `T(P) = {b : P + b ⊆ A}`. Since `0 ∈ P`, every
//! admissible generator lies in `A`, and choosing `a` updates
//!
//! ```text
//! T(P ∪ (P + a)) = T(P) ∩ (T(P) - a)
//! ```
//!
//! so each node costs one rotation and one intersection of bitsets.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{rotate_words, BitIter, GeneratorMultiset, GroupContext, ResidueSet};
use crate::sumset::projective_cube;

/// Generators `S` together with `Σ*S`, checked to lie inside the searched set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubeWitness {
    pub d: usize,
    pub generators: GeneratorMultiset,
    pub cube: ResidueSet,
}

impl CubeWitness {
    /// Recomputes `Σ*S` and checks `Σ*S ⊆ within`.
    pub fn verified(generators: GeneratorMultiset, within: &ResidueSet) -> Result<Self> {
        let cube = projective_cube(&generators)?;
        if !cube.is_subset_of(within) {
            return Err(Error::Argument(format!(
                "Σ*{generators} = {cube} is not contained in the set"
            )));
        }
        Ok(CubeWitness {
            d: generators.len(),
            generators,
            cube,
        })
    }
}

struct CubeSearch {
    n: u32,
    d: usize,
    /// `levels[k]` holds `T` after `k` generators.
    levels: Vec<Vec<u64>>,
    scratch: Vec<u64>,
    chosen: Vec<u64>,
    nodes: u64,
}

impl CubeSearch {
    fn new(admissible: &[u64], n: u32, d: usize) -> Self {
        let mut levels = vec![vec![0u64; admissible.len()]; d + 1];
        levels[0].copy_from_slice(admissible);
        CubeSearch {
            n,
            d,
            levels,
            scratch: vec![0; admissible.len()],
            chosen: Vec::with_capacity(d),
            nodes: 0,
        }
    }

    /// Commits generator `a` at `depth`; returns false if nothing can follow.
    fn descend(&mut self, depth: usize, a: u64) -> bool {
        let modulus = 1u64 << self.n;
        let (lower, upper) = self.levels.split_at_mut(depth + 1);
        let current = &lower[depth];
        rotate_words(current, self.n, modulus - a, &mut self.scratch);
        let next = &mut upper[0];
        let mut any = false;
        for ((nw, cw), sw) in next.iter_mut().zip(current).zip(&self.scratch) {
            *nw = cw & sw;
            any |= *nw != 0;
        }
        any || depth + 1 == self.d
    }

    /// Depth-first over non-decreasing sequences `>= floor`.
    fn run(&mut self, depth: usize, floor: u64) -> bool {
        if depth == self.d {
            return true;
        }
        self.nodes += 1;
        let start_word = (floor / 64) as usize;
        for j in start_word..self.levels[depth].len() {
            let mut w = self.levels[depth][j];
            if j == start_word {
                w &= u64::MAX << (floor % 64);
            }
            for b in BitIter(w) {
                let a = j as u64 * 64 + b as u64;
                if self.descend(depth, a) {
                    self.chosen.push(a);
                    if self.run(depth + 1, a) {
                        return true;
                    }
                    self.chosen.pop();
                }
            }
        }
        false
    }
}

/// The lexicographically smallest sorted multiset `S` of size `d` with
/// `Σ*S ⊆ A`, if any.
///
/// # Panics
///
/// If `d == 0`.
pub fn find_d_cube(set: &ResidueSet, d: usize) -> Option<CubeWitness> {
    assert!(d >= 1, "cube dimension must be positive");
    let ctx = set.context();
    let mut search = CubeSearch::new(set.words(), ctx.exponent(), d);
    if search.run(0, 0) {
        let generators = GeneratorMultiset::from_reduced(ctx, search.chosen);
        Some(CubeWitness::verified(generators, set).expect("search only emits contained cubes"))
    } else {
        None
    }
}

pub fn is_d_cube_free(set: &ResidueSet, d: usize) -> bool {
    find_d_cube(set, d).is_none()
}

/// Cube search restricted to unions of layers, given by their indices.
///
/// Membership in a layer union depends only on the 2-adic valuation, so:
/// if every included layer is below `L_t`, the search can run in `Z_{2^t}`
/// (any lift of a cube there is a cube upstairs); odd units act transitively
/// on each layer, so a generator of least valuation `v` may be taken to be
/// `2^v`; and a cube whose generators are all multiples of `2^v` divides down
/// to `Z_{2^{t-v}}` with the layer indices lowered by `v`.
///
/// The returned witness is valid but not canonical.
pub fn find_d_cube_in_layer_union(
    layers: &[u32],
    ctx: &GroupContext,
    d: usize,
) -> Result<Option<CubeWitness>> {
    assert!(d >= 1, "cube dimension must be positive");
    let n = ctx.exponent();
    let mut included = vec![false; n as usize + 2];
    for &i in layers {
        ctx.layer(i)?;
        included[i as usize] = true;
    }
    let full = crate::group::layer_union(layers, ctx)?;
    if included[n as usize + 1] {
        let zeros = GeneratorMultiset::from_reduced(*ctx, vec![0; d]);
        return Ok(Some(CubeWitness::verified(zeros, &full)?));
    }
    let Some(top) = (1..=n).rev().find(|&i| included[i as usize]) else {
        return Ok(None);
    };
    for v in 0..top {
        if !included[v as usize + 1] {
            continue;
        }
        // Z_{2^{top - v}} with layers shifted down by v
        let sub = GroupContext::new(top - v)?;
        let shifted: Vec<u32> = (v + 1..=top)
            .filter(|&i| included[i as usize])
            .map(|i| i - v)
            .collect();
        let admissible = crate::group::layer_union(&shifted, &sub)?;
        if !admissible.contains(1) {
            continue;
        }
        let mut search = CubeSearch::new(admissible.words(), sub.exponent(), d);
        if !search.descend(0, 1) {
            continue;
        }
        search.chosen.push(1);
        if search.run(1, 0) {
            let lifted = search.chosen.iter().map(|&g| g << v).collect();
            let generators = GeneratorMultiset::from_reduced(*ctx, lifted);
            return Ok(Some(CubeWitness::verified(generators, &full)?));
        }
    }
    Ok(None)
}

/// The smallest `x` (then smallest `y`) with
/// `Σ*{x, ..., x, y} ⊆ A`, using `2^ell - 1` copies of `x`.
pub fn find_homogeneous_cube(set: &ResidueSet, ell: u32) -> Option<(u64, u64)> {
    let copies = (1u64 << ell) - 1;
    let ctx = set.context();
    for x in 0..ctx.modulus() {
        if !run_inside(set, x, copies) {
            continue;
        }
        // y, y + x, ..., y + copies·x all in A
        let mut ys = set.clone();
        for j in 1..=copies {
            ys = ys.intersection(&set.shifted(ctx.neg(ctx.mul(j, x))));
        }
        if let Some(y) = ys.min() {
            return Some((x, y));
        }
    }
    None
}

/// `Σ*{x^(2^ell - 1), y}` as a checked witness.
pub fn homogeneous_witness(set: &ResidueSet, ell: u32, x: u64, y: u64) -> Result<CubeWitness> {
    let mut gens = vec![x; (1usize << ell) - 1];
    gens.push(y);
    CubeWitness::verified(GeneratorMultiset::new(set.context(), gens)?, set)
}

fn run_inside(set: &ResidueSet, x: u64, m: u64) -> bool {
    let ctx = set.context();
    (1..=m).all(|j| set.contains(ctx.mul(j, x)))
}

/// The smallest `x` with `{x, 2x, ..., m·x} ⊆ A` (`x = 0` allowed).
pub fn find_multiple_run(set: &ResidueSet, m: u64) -> Option<u64> {
    (0..set.context().modulus()).find(|&x| run_inside(set, x, m))
}

/// A cube of the form `Σ*{x,x,x}` or `Σ*{x,3x,y}` inside `A`; the smallest
/// such generator multiset in sorted lexicographic order.
pub fn find_conc2_pattern(set: &ResidueSet) -> Option<CubeWitness> {
    let ctx = set.context();
    let mut best: Option<Vec<u64>> = None;
    let mut offer = |mut gens: Vec<u64>| {
        gens.sort_unstable();
        if best.as_ref().is_none_or(|b| gens < *b) {
            best = Some(gens);
        }
    };
    for x in 0..ctx.modulus() {
        if run_inside(set, x, 3) {
            offer(vec![x, x, x]);
        }
        let x3 = ctx.mul(3, x);
        let x4 = ctx.mul(4, x);
        if !(set.contains(x) && set.contains(x3) && set.contains(x4)) {
            continue;
        }
        let ys = set
            .intersection(&set.shifted(ctx.neg(x)))
            .intersection(&set.shifted(ctx.neg(x3)))
            .intersection(&set.shifted(ctx.neg(x4)));
        for y in ys.iter() {
            offer(vec![x, x3, y]);
        }
    }
    best.map(|gens| {
        CubeWitness::verified(GeneratorMultiset::from_reduced(ctx, gens), set)
            .expect("pattern cubes are checked before being offered")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::construct_cd;
    use crate::group::layer_union;

    fn ctx(n: u32) -> GroupContext {
        GroupContext::new(n).unwrap()
    }

    fn set(n: u32, xs: &[u64]) -> ResidueSet {
        ResidueSet::from_residues(ctx(n), xs.iter().copied()).unwrap()
    }

    #[test]
    fn find_cube_examples() {
        let a = set(3, &[2, 3, 4, 5, 7]);
        // Σ*{2,2,3} = {2,3,4,5,7} precedes the witness {2,5,5} in sorted order
        let w = find_d_cube(&a, 3).unwrap();
        assert_eq!(w.generators.elements(), &[2, 2, 3]);
        assert_eq!(w.cube.to_vec(), vec![2, 3, 4, 5, 7]);
        let g = GeneratorMultiset::new(a.context(), [2, 5, 5]).unwrap();
        assert_eq!(
            CubeWitness::verified(g, &a).unwrap().cube.to_vec(),
            vec![2, 4, 5, 7]
        );

        let with_zero = set(4, &[0, 3, 9]);
        for d in 1..=6 {
            let w = find_d_cube(&with_zero, d).unwrap();
            assert_eq!(w.generators.elements(), vec![0; d].as_slice());
        }

        let c = ctx(4);
        let l12 = layer_union(&[1, 2], &c).unwrap();
        assert!(find_d_cube(&l12, 4).is_none());
        assert!(find_d_cube(&l12, 3).is_some());
    }

    #[test]
    fn cube_free_examples() {
        let c = ctx(3);
        assert!(is_d_cube_free(&layer_union(&[1], &c).unwrap(), 2));
        assert!(!is_d_cube_free(&set(3, &[2, 3, 4, 5, 7]), 3));
        assert!(is_d_cube_free(&ResidueSet::empty(c), 1));
        assert!(is_d_cube_free(&ResidueSet::empty(c), 5));
    }

    #[test]
    fn witness_verification_rejects_outside_cubes() {
        let c = ctx(3);
        let g = GeneratorMultiset::new(c, [1, 1]).unwrap();
        assert!(CubeWitness::verified(g, &set(3, &[1, 3])).is_err());
    }

    #[test]
    fn layer_union_search_agrees_with_generic_search() {
        for n in 1..=5u32 {
            let c = ctx(n);
            for mask in 0u32..(1 << (n + 1)) {
                let layers: Vec<u32> = (1..=n + 1).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                let a = layer_union(&layers, &c).unwrap();
                for d in 1..=5 {
                    let generic = find_d_cube(&a, d).is_some();
                    let fast = find_d_cube_in_layer_union(&layers, &c, d).unwrap();
                    assert_eq!(generic, fast.is_some(), "n={n} layers={layers:?} d={d}");
                    if let Some(w) = fast {
                        assert_eq!(w.d, d);
                        assert!(w.cube.is_subset_of(&a));
                    }
                }
            }
        }
    }

    #[test]
    fn homogeneous_examples() {
        let c = ctx(3);
        assert_eq!(find_homogeneous_cube(&ResidueSet::full(c), 1), Some((0, 0)));
        let nonzero = ResidueSet::full(c).difference(&set(3, &[0]));
        assert_eq!(find_homogeneous_cube(&nonzero, 1), Some((1, 1)));
        let w = homogeneous_witness(&nonzero, 1, 1, 1).unwrap();
        assert_eq!(w.cube.to_vec(), vec![1, 2]);
        // C_2 = L_1 and C_4 = L_1 ∪ L_2 are sharp
        assert_eq!(
            find_homogeneous_cube(&construct_cd(2, &c).unwrap(), 1),
            None
        );
        let c4 = ctx(4);
        assert_eq!(
            find_homogeneous_cube(&construct_cd(4, &c4).unwrap(), 2),
            None
        );
    }

    #[test]
    fn multiple_run_examples() {
        assert_eq!(find_multiple_run(&set(3, &[0, 5]), 3), Some(0));
        assert_eq!(find_multiple_run(&set(3, &[1, 3, 5, 7]), 2), None);
        assert_eq!(find_multiple_run(&set(4, &[3, 6, 9]), 3), Some(3));
        assert_eq!(find_multiple_run(&set(4, &[3, 6]), 3), None);
    }

    #[test]
    fn conc2_examples() {
        let w = find_conc2_pattern(&set(4, &[1, 2, 3, 8])).unwrap();
        assert_eq!(w.generators.elements(), &[1, 1, 1]);
        for n in 3..=7 {
            let c3 = construct_cd(3, &ctx(n)).unwrap();
            assert!(find_conc2_pattern(&c3).is_none(), "n={n}");
        }
        // Σ*{1,3,8} = {1,3,4,8,9,11,12} at n = 4
        let w = find_conc2_pattern(&set(4, &[1, 3, 4, 8, 9, 11, 12])).unwrap();
        assert_eq!(w.generators.elements(), &[1, 3, 8]);
    }
}
