//! Residues, layers and bit-indexed subsets of the cyclic group `Z_{2^n}`.
//!
//! Layer `L_i` (for `1 <= i <= n`) holds the residues whose 2-adic valuation
//! is `i - 1`, i.e. `x ≡ 2^{i-1} (mod 2^i)`. The extra layer `L_{n+1}` is `{0}`.
//! The layers partition the group and `|L_{i-1}| = 2 |L_i|` for `2 <= i <= n`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{check_range, Error, Result};

/// Largest exponent accepted by [`GroupContext::new`]. A set over `Z_{2^24}`
/// already takes 2 MiB.
pub const MAX_EXPONENT: u32 = 24;

/// The ambient group `Z_{2^n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupContext {
    n: u32,
}

impl GroupContext {
    pub fn new(n: u32) -> Result<Self> {
        check_range("n", n as u64, 1, MAX_EXPONENT as u64)?;
        Ok(GroupContext { n })
    }

    #[inline]
    pub fn exponent(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        1u64 << self.n
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        self.modulus() - 1
    }

    /// Canonical representative of `x` in `[0, 2^n)`. Negative values wrap.
    #[inline]
    pub fn reduce(&self, x: i64) -> u64 {
        (x as u64) & self.mask()
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        a.wrapping_add(b) & self.mask()
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a.wrapping_mul(b) & self.mask()
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        a.wrapping_neg() & self.mask()
    }

    /// Number of layers, `n + 1`.
    #[inline]
    pub fn layer_count(&self) -> u32 {
        self.n + 1
    }

    /// `|L_i|`: `2^{n-i}` for `i <= n`, and 1 for `L_{n+1}`.
    pub fn layer_size(&self, i: LayerIndex) -> u64 {
        if i.0 > self.n {
            1
        } else {
            1u64 << (self.n - i.0)
        }
    }

    fn check_residue(&self, x: u64) -> Result<()> {
        check_range("residue", x, 0, self.mask())
    }

    /// Validates `i` against this context.
    pub fn layer(&self, i: u32) -> Result<LayerIndex> {
        check_range("layer index", i as u64, 1, self.layer_count() as u64)?;
        Ok(LayerIndex(i))
    }

    /// Iterator over `L_1, ..., L_{n+1}`.
    pub fn layers(&self) -> impl DoubleEndedIterator<Item = LayerIndex> {
        (1..=self.layer_count()).map(LayerIndex)
    }
}

/// Index `i` of a layer `L_i`, `1 <= i <= n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct LayerIndex(u32);

impl LayerIndex {
    /// Unvalidated; operations taking a context check it against `n`.
    pub const fn new(i: u32) -> Self {
        LayerIndex(i)
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for LayerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L_{}", self.0)
    }
}

/// Layer index of `x` without range checks. `x` must already be reduced.
#[inline]
pub(crate) fn layer_of_unchecked(x: u64, n: u32) -> u32 {
    if x == 0 {
        n + 1
    } else {
        x.trailing_zeros() + 1
    }
}

/// Returns the `i` with `x ∈ L_i`; zero lies in `L_{n+1}`.
pub fn layer_of(x: u64, ctx: &GroupContext) -> Result<LayerIndex> {
    ctx.check_residue(x)?;
    Ok(LayerIndex(layer_of_unchecked(x, ctx.n)))
}

pub fn layer_set(i: LayerIndex, ctx: &GroupContext) -> Result<ResidueSet> {
    let i = ctx.layer(i.0)?;
    let mut set = ResidueSet::empty(*ctx);
    set.insert_layer(i);
    Ok(set)
}

/// `L_{[a,b]} = L_a ∪ ... ∪ L_b`.
pub fn layer_range_set(a: LayerIndex, b: LayerIndex, ctx: &GroupContext) -> Result<ResidueSet> {
    let a = ctx.layer(a.0)?;
    let b = ctx.layer(b.0)?;
    if a > b {
        return Err(Error::Argument(format!(
            "layer range start {} exceeds end {}",
            a.0, b.0
        )));
    }
    let mut set = ResidueSet::empty(*ctx);
    for i in a.0..=b.0 {
        set.insert_layer(LayerIndex(i));
    }
    Ok(set)
}

/// Union of the layers listed in `layers` (indices `1..=n+1`).
pub fn layer_union(layers: &[u32], ctx: &GroupContext) -> Result<ResidueSet> {
    let mut set = ResidueSet::empty(*ctx);
    for &i in layers {
        set.insert_layer(ctx.layer(i)?);
    }
    Ok(set)
}

fn fill_by_layers(
    m: u64,
    ctx: &GroupContext,
    order: impl Iterator<Item = LayerIndex>,
) -> Result<ResidueSet> {
    check_range("cardinality", m, 0, ctx.modulus())?;
    let mut set = ResidueSet::empty(*ctx);
    let mut remaining = m;
    for i in order {
        if remaining == 0 {
            break;
        }
        let size = ctx.layer_size(i);
        if remaining >= size {
            set.insert_layer(i);
            remaining -= size;
        } else {
            for x in layer_members(i, ctx).take(remaining as usize) {
                set.insert(x);
            }
            remaining = 0;
        }
    }
    Ok(set)
}

/// Ascending members of `L_i`.
pub(crate) fn layer_members(i: LayerIndex, ctx: &GroupContext) -> impl Iterator<Item = u64> {
    let (start, step, count) = if i.0 > ctx.n {
        (0, 1, 1)
    } else {
        (1u64 << (i.0 - 1), 1u64 << i.0, ctx.layer_size(i))
    };
    (0..count).map(move |j| start + j * step)
}

/// The canonical centred set of size `m`: full layers `L_1, L_2, ...` followed
/// by the numerically smallest residues of the first layer that does not fit.
pub fn centred_set(m: u64, ctx: &GroupContext) -> Result<ResidueSet> {
    fill_by_layers(m, ctx, ctx.layers())
}

/// Like [`centred_set`] but filling from `L_{n+1} = {0}` upwards through the
/// small layers.
pub fn anti_centred_set(m: u64, ctx: &GroupContext) -> Result<ResidueSet> {
    fill_by_layers(m, ctx, ctx.layers().rev())
}

/// True if `set` contains `L_1, ..., L_{i-1}` and misses `L_{i+1}, ..., L_{n+1}`
/// for some `i`.
pub fn is_centred(set: &ResidueSet) -> bool {
    let ctx = set.context();
    let profile: Vec<(u64, u64)> = ctx
        .layers()
        .map(|i| (set.count_in_layer(i), ctx.layer_size(i)))
        .collect();
    // first layer that is not full
    let partial = profile
        .iter()
        .position(|&(have, size)| have < size)
        .unwrap_or(profile.len());
    profile.iter().skip(partial + 1).all(|&(have, _)| have == 0)
}

/// `λ·C` for an odd (unit) `λ`.
pub fn scale_multiset(lambda: u64, multiset: &GeneratorMultiset) -> Result<GeneratorMultiset> {
    if lambda.is_multiple_of(2) {
        return Err(Error::Argument(format!(
            "scaling factor {lambda} is not a unit of Z_2^n"
        )));
    }
    let ctx = multiset.ctx;
    let elements = multiset
        .elements
        .iter()
        .map(|&c| ctx.mul(c, lambda))
        .collect();
    Ok(GeneratorMultiset::from_reduced(ctx, elements))
}

/// `min(t, 2^{k+1} - t)` for a residue `t` modulo `2^{k+1}`.
pub fn residue_abs(t: u64, k: u32) -> u64 {
    let modulus = 1u64 << (k + 1);
    let t = t & (modulus - 1);
    t.min(modulus - t)
}

/// A residue modulo `2^{k+1}` paired with its absolute value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SignedResidue {
    pub t: u64,
    pub k: u32,
    pub abs: u64,
}

impl SignedResidue {
    pub fn new(t: u64, k: u32) -> Self {
        let t = t & ((1u64 << (k + 1)) - 1);
        SignedResidue {
            t,
            k,
            abs: residue_abs(t, k),
        }
    }

    /// The residue lies in `[1, 2^k - 1]`.
    pub fn is_positive(&self) -> bool {
        self.t >= 1 && self.t < (1u64 << self.k)
    }
}

/// A multiset of residues, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorMultiset {
    ctx: GroupContext,
    elements: Vec<u64>,
}

impl GeneratorMultiset {
    pub fn new(ctx: GroupContext, elements: impl IntoIterator<Item = u64>) -> Result<Self> {
        let elements: Vec<u64> = elements.into_iter().collect();
        for &x in &elements {
            ctx.check_residue(x)?;
        }
        Ok(Self::from_reduced(ctx, elements))
    }

    pub(crate) fn from_reduced(ctx: GroupContext, mut elements: Vec<u64>) -> Self {
        elements.sort_unstable();
        GeneratorMultiset { ctx, elements }
    }

    #[inline]
    pub fn context(&self) -> GroupContext {
        self.ctx
    }

    #[inline]
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Multiset inclusion.
    pub fn is_submultiset_of(&self, other: &GeneratorMultiset) -> bool {
        let mut j = 0;
        for &x in &self.elements {
            while j < other.elements.len() && other.elements[j] < x {
                j += 1;
            }
            if j == other.elements.len() || other.elements[j] != x {
                return false;
            }
            j += 1;
        }
        true
    }
}

impl Serialize for GeneratorMultiset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(&self.elements)
    }
}

impl fmt::Display for GeneratorMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_braced(f, self.elements.iter().copied())
    }
}

fn write_braced(f: &mut fmt::Formatter<'_>, items: impl Iterator<Item = u64>) -> fmt::Result {
    f.write_str("{")?;
    for (idx, x) in items.enumerate() {
        if idx > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("}")
}

/// Number of 64-bit words backing a set over `Z_{2^n}`.
#[inline]
pub(crate) fn word_count(n: u32) -> usize {
    if n >= 6 {
        1usize << (n - 6)
    } else {
        1
    }
}

/// Writes `{x + a : x ∈ src}` into `dst`, both bitsets over `Z_{2^n}`.
pub(crate) fn rotate_words(src: &[u64], n: u32, a: u64, dst: &mut [u64]) {
    debug_assert_eq!(src.len(), dst.len());
    let modulus = 1u64 << n;
    let a = a & (modulus - 1);
    if n < 6 {
        let w = src[0];
        dst[0] = if a == 0 {
            w
        } else {
            let mask = (1u64 << modulus) - 1;
            ((w << a) | (w >> (modulus - a))) & mask
        };
        return;
    }
    let words = src.len();
    let q = (a / 64) as usize;
    let r = (a % 64) as u32;
    if r == 0 {
        for j in 0..words {
            dst[j] = src[(j + words - q) % words];
        }
    } else {
        for j in 0..words {
            let hi = src[(j + words - q) % words];
            let lo = src[(j + 2 * words - q - 1) % words];
            dst[j] = (hi << r) | (lo >> (64 - r));
        }
    }
}

/// A subset of `Z_{2^n}` stored as a characteristic bit vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResidueSet {
    ctx: GroupContext,
    words: Vec<u64>,
}

impl ResidueSet {
    pub fn empty(ctx: GroupContext) -> Self {
        ResidueSet {
            ctx,
            words: vec![0; word_count(ctx.n)],
        }
    }

    pub fn full(ctx: GroupContext) -> Self {
        let mut set = Self::empty(ctx);
        if ctx.n < 6 {
            set.words[0] = (1u64 << ctx.modulus()) - 1;
        } else {
            set.words.fill(u64::MAX);
        }
        set
    }

    /// Builds a set from residues that must already lie in `[0, 2^n)`.
    pub fn from_residues(ctx: GroupContext, xs: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut set = Self::empty(ctx);
        for x in xs {
            ctx.check_residue(x)?;
            set.insert(x);
        }
        Ok(set)
    }

    /// Builds a set from a bitmask; only valid for `n <= 6`.
    pub fn from_mask(ctx: GroupContext, mask: u64) -> Self {
        assert!(ctx.n <= 6, "mask representation needs n <= 6");
        let mut set = Self::empty(ctx);
        set.words[0] = if ctx.n == 6 {
            mask
        } else {
            mask & ((1u64 << ctx.modulus()) - 1)
        };
        set
    }

    /// The low word as a bitmask; only valid for `n <= 6`.
    pub fn to_mask(&self) -> u64 {
        assert!(self.ctx.n <= 6, "mask representation needs n <= 6");
        self.words[0]
    }

    pub(crate) fn from_words(ctx: GroupContext, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), word_count(ctx.n));
        ResidueSet { ctx, words }
    }

    #[inline]
    pub fn context(&self) -> GroupContext {
        self.ctx
    }

    #[inline]
    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, x: u64) -> bool {
        x < self.ctx.modulus() && (self.words[(x / 64) as usize] >> (x % 64)) & 1 == 1
    }

    /// Inserts a residue; values are reduced modulo `2^n`.
    #[inline]
    pub fn insert(&mut self, x: u64) {
        let x = x & self.ctx.mask();
        self.words[(x / 64) as usize] |= 1u64 << (x % 64);
    }

    #[inline]
    pub fn remove(&mut self, x: u64) {
        let x = x & self.ctx.mask();
        self.words[(x / 64) as usize] &= !(1u64 << (x % 64));
    }

    fn insert_layer(&mut self, i: LayerIndex) {
        for x in layer_members(i, &self.ctx) {
            self.insert(x);
        }
    }

    pub fn len(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Ascending iterator over the members.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(j, &w)| {
            let base = j as u64 * 64;
            BitIter(w).map(move |b| base + b as u64)
        })
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<u64> {
        self.iter().next()
    }

    pub fn count_in_layer(&self, i: LayerIndex) -> u64 {
        layer_members(i, &self.ctx)
            .filter(|&x| self.contains(x))
            .count() as u64
    }

    fn same_group(&self, other: &ResidueSet) {
        assert_eq!(self.ctx, other.ctx, "sets live in different groups");
    }

    pub fn union(&self, other: &ResidueSet) -> ResidueSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn union_with(&mut self, other: &ResidueSet) {
        self.same_group(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &ResidueSet) -> ResidueSet {
        self.same_group(other);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        ResidueSet::from_words(self.ctx, words)
    }

    pub fn difference(&self, other: &ResidueSet) -> ResidueSet {
        self.same_group(other);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & !b)
            .collect();
        ResidueSet::from_words(self.ctx, words)
    }

    pub fn complement(&self) -> ResidueSet {
        ResidueSet::full(self.ctx).difference(self)
    }

    pub fn is_subset_of(&self, other: &ResidueSet) -> bool {
        self.same_group(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection_len(&self, other: &ResidueSet) -> u64 {
        self.same_group(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as u64)
            .sum()
    }

    /// `A + a = {x + a : x ∈ A}`.
    pub fn shifted(&self, a: u64) -> ResidueSet {
        let mut words = vec![0; self.words.len()];
        rotate_words(&self.words, self.ctx.n, a, &mut words);
        ResidueSet::from_words(self.ctx, words)
    }

    /// `-A = {-x : x ∈ A}`.
    pub fn negated(&self) -> ResidueSet {
        let mut out = ResidueSet::empty(self.ctx);
        for x in self.iter() {
            out.insert(self.ctx.neg(x));
        }
        out
    }

    /// `λ·A` for any multiplier (not necessarily a unit).
    pub fn scaled(&self, lambda: u64) -> ResidueSet {
        let mut out = ResidueSet::empty(self.ctx);
        for x in self.iter() {
            out.insert(self.ctx.mul(x, lambda));
        }
        out
    }

    /// JSON array of ascending residues, e.g. `[1,3,5,7]`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("a residue list always serializes")
    }

    /// Parses the format written by [`ResidueSet::to_json`].
    pub fn from_json(text: &str, ctx: GroupContext) -> Result<Self> {
        let xs: Vec<i64> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("residue set: {e}")))?;
        let mut set = Self::empty(ctx);
        for x in xs {
            if x < 0 || x as u64 >= ctx.modulus() {
                return Err(Error::Parse(format!(
                    "residue {x} outside [0, {}]",
                    ctx.mask()
                )));
            }
            set.insert(x as u64);
        }
        Ok(set)
    }
}

impl Serialize for ResidueSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl fmt::Debug for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResidueSet(n={}, ", self.ctx.n)?;
        write_braced(f, self.iter())?;
        f.write_str(")")
    }
}

impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_braced(f, self.iter())
    }
}

/// Positions of the set bits of a word, lowest first.
pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            let b = self.0.trailing_zeros();
            self.0 &= self.0 - 1;
            Some(b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u32) -> GroupContext {
        GroupContext::new(n).unwrap()
    }

    fn set(n: u32, xs: &[u64]) -> ResidueSet {
        ResidueSet::from_residues(ctx(n), xs.iter().copied()).unwrap()
    }

    #[test]
    fn layer_of_examples() {
        assert_eq!(layer_of(5, &ctx(3)).unwrap().get(), 1);
        assert_eq!(layer_of(0, &ctx(3)).unwrap().get(), 4);
        assert_eq!(layer_of(6, &ctx(3)).unwrap().get(), 2);
        assert!(matches!(layer_of(8, &ctx(3)), Err(Error::Range { .. })));
    }

    #[test]
    fn layer_of_matches_congruence_definition() {
        for n in 1..=8 {
            let c = ctx(n);
            for x in 1..c.modulus() {
                let i = layer_of(x, &c).unwrap().get();
                let lo = 1u64 << (i - 1);
                assert_eq!(x % (lo * 2), lo, "x={x} n={n}");
            }
        }
    }

    #[test]
    fn layer_set_examples() {
        let c = ctx(3);
        assert_eq!(layer_set(LayerIndex(1), &c).unwrap(), set(3, &[1, 3, 5, 7]));
        assert_eq!(layer_set(LayerIndex(3), &c).unwrap(), set(3, &[4]));
        assert_eq!(layer_set(LayerIndex(4), &c).unwrap(), set(3, &[0]));
        assert!(layer_set(LayerIndex(5), &c).is_err());
        assert!(layer_set(LayerIndex(0), &c).is_err());
    }

    #[test]
    fn layer_range_examples() {
        let c = ctx(3);
        let r = |a, b| layer_range_set(LayerIndex(a), LayerIndex(b), &c);
        assert_eq!(r(1, 2).unwrap(), set(3, &[1, 2, 3, 5, 6, 7]));
        assert_eq!(r(2, 2).unwrap(), set(3, &[2, 6]));
        assert_eq!(r(1, 4).unwrap(), ResidueSet::full(c));
        assert!(matches!(r(3, 2), Err(Error::Argument(_))));
        for n in 1..=7 {
            let c = ctx(n);
            assert_eq!(
                layer_range_set(LayerIndex(1), LayerIndex(n + 1), &c).unwrap(),
                ResidueSet::full(c)
            );
        }
    }

    #[test]
    fn centred_examples() {
        let c = ctx(3);
        assert_eq!(centred_set(4, &c).unwrap(), set(3, &[1, 3, 5, 7]));
        assert_eq!(centred_set(5, &c).unwrap(), set(3, &[1, 2, 3, 5, 7]));
        assert!(centred_set(0, &c).unwrap().is_empty());
        assert!(centred_set(9, &c).is_err());
        assert!(is_centred(&centred_set(5, &c).unwrap()));
        assert!(!is_centred(&set(3, &[1, 3, 5, 4])));
    }

    #[test]
    fn anti_centred_examples() {
        let c = ctx(3);
        assert_eq!(anti_centred_set(1, &c).unwrap(), set(3, &[0]));
        assert_eq!(anti_centred_set(2, &c).unwrap(), set(3, &[0, 4]));
        assert_eq!(anti_centred_set(3, &c).unwrap(), set(3, &[0, 2, 4]));
        // M = 2^{n-l} gives the subgroup 2^l Z
        let c = ctx(6);
        for l in 0..=6u32 {
            let m = 1u64 << (6 - l);
            let expected: Vec<u64> = (0..m).map(|j| j << l).collect();
            assert_eq!(anti_centred_set(m, &c).unwrap().to_vec(), expected);
        }
    }

    #[test]
    fn scaling_examples() {
        let c = ctx(3);
        let m = GeneratorMultiset::new(c, [1, 1, 2]).unwrap();
        assert_eq!(scale_multiset(1, &m).unwrap(), m);
        assert_eq!(scale_multiset(3, &m).unwrap().elements(), &[3, 3, 6]);
        let one = GeneratorMultiset::new(c, [1]).unwrap();
        assert_eq!(scale_multiset(7, &one).unwrap().elements(), &[7]);
        assert!(matches!(scale_multiset(2, &m), Err(Error::Argument(_))));
    }

    #[test]
    fn residue_abs_examples() {
        assert_eq!(residue_abs(7, 2), 1);
        assert_eq!(residue_abs(4, 2), 4);
        assert_eq!(residue_abs(3, 2), 3);
        let s = SignedResidue::new(6, 2);
        assert_eq!((s.t, s.abs, s.is_positive()), (6, 2, false));
    }

    #[test]
    fn layers_partition_and_halve() {
        for n in 1..=12 {
            let c = ctx(n);
            let mut seen = ResidueSet::empty(c);
            for i in c.layers() {
                let l = layer_set(i, &c).unwrap();
                assert_eq!(seen.intersection_len(&l), 0);
                assert_eq!(l.len(), c.layer_size(i));
                if i.get() >= 2 && i.get() <= n {
                    assert_eq!(c.layer_size(LayerIndex(i.get() - 1)), 2 * l.len());
                }
                for x in l.iter() {
                    assert_eq!(layer_of(x, &c).unwrap(), i);
                }
                seen.union_with(&l);
            }
            assert_eq!(seen, ResidueSet::full(c));
        }
    }

    #[test]
    fn odd_scaling_preserves_layers() {
        for n in 1..=10 {
            let c = ctx(n);
            for lambda in (1..c.modulus()).step_by(2) {
                for x in 0..c.modulus() {
                    assert_eq!(
                        layer_of(c.mul(lambda, x), &c).unwrap(),
                        layer_of(x, &c).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn centred_sets_nest() {
        for n in 1..=10 {
            let c = ctx(n);
            let mut prev = centred_set(0, &c).unwrap();
            for m in 1..=c.modulus() {
                let next = centred_set(m, &c).unwrap();
                assert_eq!(next.len(), m);
                assert!(prev.is_subset_of(&next));
                prev = next;
            }
        }
    }

    #[test]
    fn shift_matches_pointwise_definition() {
        for n in [1, 3, 5, 6, 7, 9] {
            let c = ctx(n);
            let a = ResidueSet::from_residues(c, (0..c.modulus()).filter(|x| x % 3 != 1)).unwrap();
            for s in 0..c.modulus() {
                let shifted = a.shifted(s);
                for x in 0..c.modulus() {
                    assert_eq!(
                        shifted.contains(c.add(x, s)),
                        a.contains(x),
                        "n={n} s={s} x={x}"
                    );
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let c = ctx(3);
        let a = set(3, &[7, 2, 5]);
        assert_eq!(a.to_json(), "[2,5,7]");
        assert_eq!(ResidueSet::from_json("[2,5,7]", c).unwrap(), a);
        assert!(ResidueSet::from_json("[8]", c).is_err());
        assert!(ResidueSet::from_json("[-1]", c).is_err());
    }
}
