//! Projective cubes `Σ*S`, iterated sumsets `S*`, and the one-element-at-a-time
//! growth trace of `S*`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{rotate_words, GeneratorMultiset, ResidueSet};

/// Sizes of `C_i*` as the elements of `C` are introduced one at a time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumsetTrace {
    /// `|C_1*|, |C_2*|, ...`
    pub prefix_sizes: Vec<u64>,
    /// `|C_{i}* \ C_{i-1}*|`, with `C_0* = {0}`.
    pub growth: Vec<u64>,
}

impl SumsetTrace {
    /// Index of the first step whose element did not enlarge the sumset.
    pub fn first_stall(&self) -> Option<usize> {
        self.growth.iter().position(|&g| g == 0)
    }
}

/// `P ← P ∪ (P + a)` in place, using `scratch` for the shifted copy.
#[inline]
pub(crate) fn absorb(words: &mut [u64], n: u32, a: u64, scratch: &mut [u64]) {
    rotate_words(words, n, a, scratch);
    for (w, s) in words.iter_mut().zip(scratch.iter()) {
        *w |= *s;
    }
}

/// All non-empty subset sums of `S`, as a set.
pub fn projective_cube(generators: &GeneratorMultiset) -> Result<ResidueSet> {
    if generators.is_empty() {
        return Err(Error::Argument(
            "a projective cube needs at least one generator".into(),
        ));
    }
    let ctx = generators.context();
    let n = ctx.exponent();
    // Q ← Q ∪ (Q + a) ∪ {a}
    let mut words = ResidueSet::empty(ctx).words().to_vec();
    let mut scratch = vec![0u64; words.len()];
    for &a in generators.elements() {
        absorb(&mut words, n, a, &mut scratch);
        words[(a / 64) as usize] |= 1u64 << (a % 64);
    }
    Ok(ResidueSet::from_words(ctx, words))
}

/// `S* = Σ*S ∪ {0}`; `{0}` for the empty multiset.
pub fn iterated_sumset(generators: &GeneratorMultiset) -> ResidueSet {
    let ctx = generators.context();
    let n = ctx.exponent();
    let mut start = ResidueSet::empty(ctx);
    start.insert(0);
    let mut words = start.words().to_vec();
    let mut scratch = vec![0u64; words.len()];
    for &a in generators.elements() {
        absorb(&mut words, n, a, &mut scratch);
    }
    ResidueSet::from_words(ctx, words)
}

/// Records `|C_i*|` while introducing the generators in the given order
/// (`order[j]` is a position into the sorted multiset).
pub fn incremental_sumset(generators: &GeneratorMultiset, order: &[usize]) -> Result<SumsetTrace> {
    let len = generators.len();
    let mut seen = vec![false; len];
    if order.len() != len {
        return Err(Error::Argument(format!(
            "order has {} entries for {} generators",
            order.len(),
            len
        )));
    }
    for &p in order {
        if p >= len || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Argument(format!(
                "order is not a permutation of 0..{len}"
            )));
        }
    }
    let ctx = generators.context();
    let n = ctx.exponent();
    let mut start = ResidueSet::empty(ctx);
    start.insert(0);
    let mut words = start.words().to_vec();
    let mut scratch = vec![0u64; words.len()];
    let mut prefix_sizes = Vec::with_capacity(len);
    let mut growth = Vec::with_capacity(len);
    let mut size = 1u64;
    for &p in order {
        absorb(&mut words, n, generators.elements()[p], &mut scratch);
        let next: u64 = words.iter().map(|w| w.count_ones() as u64).sum();
        growth.push(next - size);
        prefix_sizes.push(next);
        size = next;
    }
    Ok(SumsetTrace {
        prefix_sizes,
        growth,
    })
}

/// [`incremental_sumset`] in the multiset's sorted order.
pub fn incremental_sumset_sorted(generators: &GeneratorMultiset) -> SumsetTrace {
    let order: Vec<usize> = (0..generators.len()).collect();
    incremental_sumset(generators, &order).expect("identity is a permutation")
}
