//! Brute-force checkers for statements about collections of residues modulo
//! `2^{k+1}`: sub-collections summing to `2^k`, disjoint zero-sum
//! sub-collections, and the three compression moves.
//!
//! The central statement: given `2^k + x` residues, either some sub-collection
//! sums to `2^k` (mod `2^{k+1}`), or there are `x + 1` pairwise disjoint
//! non-empty sub-collections each summing to 0.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_range, Error, Result};
use crate::group::residue_abs;

/// Largest `k` supported; residues modulo `2^{k+1}` must fit a 64-bit mask.
pub const MAX_COLLECTION_K: u32 = 5;

/// Default cap on instance checks for the exhaustive runs.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A multiset of non-zero residues modulo `2^{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ResidueCollection {
    k: u32,
    elements: Vec<u64>,
}

impl ResidueCollection {
    pub fn new(k: u32, elements: impl IntoIterator<Item = u64>) -> Result<Self> {
        check_range("k", k as u64, 1, MAX_COLLECTION_K as u64)?;
        let modulus = 1u64 << (k + 1);
        let elements: Vec<u64> = elements.into_iter().collect();
        for &t in &elements {
            check_range("collection residue", t, 1, modulus - 1)?;
        }
        Ok(ResidueCollection { k, elements })
    }

    fn from_counts(k: u32, counts: &[u32]) -> Self {
        let elements = counts
            .iter()
            .enumerate()
            .flat_map(|(t, &c)| std::iter::repeat_n(t as u64, c as usize))
            .collect();
        ResidueCollection { k, elements }
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        1u64 << (self.k + 1)
    }

    #[inline]
    pub fn half(&self) -> u64 {
        1u64 << self.k
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Multiplicity of every residue, indexed by residue.
    pub fn counts(&self) -> Vec<u32> {
        let mut counts = vec![0u32; self.modulus() as usize];
        for &t in &self.elements {
            counts[t as usize] += 1;
        }
        counts
    }

    /// Copies of `1` plus copies of `-1`.
    pub fn unit_count(&self) -> usize {
        let minus_one = self.modulus() - 1;
        self.elements
            .iter()
            .filter(|&&t| t == 1 || t == minus_one)
            .count()
    }

    /// Sorted copy, for comparing collections as multisets.
    pub fn sorted(&self) -> ResidueCollection {
        let mut elements = self.elements.clone();
        elements.sort_unstable();
        ResidueCollection {
            k: self.k,
            elements,
        }
    }

    /// `{ Σ_{i∈I} c_i : I ⊆ C }` as a bitmask over residues (bit 0 always set).
    pub fn iterated_sumset_mask(&self) -> u64 {
        let mut reach = 1u64;
        for &t in &self.elements {
            reach |= rotate_mask(reach, t, self.k + 1);
        }
        reach
    }

    /// `λ·C` for odd `λ`.
    pub fn scaled(&self, lambda: u64) -> Result<ResidueCollection> {
        if lambda.is_multiple_of(2) {
            return Err(Error::Argument(format!("{lambda} is not a unit")));
        }
        let mask = self.modulus() - 1;
        Ok(ResidueCollection {
            k: self.k,
            elements: self
                .elements
                .iter()
                .map(|&t| t.wrapping_mul(lambda) & mask)
                .collect(),
        })
    }
}

/// Rotation of a residue bitmask modulo `2^bits` by `t`.
#[inline]
fn rotate_mask(mask: u64, t: u64, bits: u32) -> u64 {
    let m = 1u64 << bits;
    let t = t & (m - 1);
    if t == 0 {
        return mask;
    }
    let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    ((mask << t) | (mask >> (m - t))) & full
}

/// Sum over every residue of `rotate_mask` applied `count` times.
fn reach_from_counts(counts: &[u32], bits: u32) -> u64 {
    let mut reach = 1u64;
    for (t, &c) in counts.iter().enumerate() {
        for _ in 0..c {
            let next = reach | rotate_mask(reach, t as u64, bits);
            if next == reach {
                break;
            }
            reach = next;
        }
    }
    reach
}

/// Pairwise disjoint index sets, each summing to 0 modulo `2^{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisjointZeroCertificate {
    pub parts: Vec<Vec<usize>>,
}

impl DisjointZeroCertificate {
    pub fn verify(&self, collection: &ResidueCollection) -> bool {
        let mut used = vec![false; collection.len()];
        let mask = collection.modulus() - 1;
        self.parts.iter().all(|part| {
            !part.is_empty()
                && part
                    .iter()
                    .all(|&i| i < used.len() && !std::mem::replace(&mut used[i], true))
                && part.iter().map(|&i| collection.elements[i]).sum::<u64>() & mask == 0
        })
    }
}

/// Indices of a non-empty run `xs[i..j]` whose sum is divisible by `m`, found
/// by pigeonhole on the first `m + 1` prefix sums.
pub fn zero_sum_subset(xs: &[i64], m: u64) -> Result<Vec<usize>> {
    if m == 0 {
        return Err(Error::Argument("modulus must be positive".into()));
    }
    if (xs.len() as u64) < m {
        return Err(Error::Argument(format!(
            "{} numbers do not guarantee a sum divisible by {m}",
            xs.len()
        )));
    }
    let mut seen: HashMap<u64, usize> = HashMap::new();
    seen.insert(0, 0);
    let mut prefix = 0u64;
    for (j, &x) in xs.iter().enumerate() {
        prefix = (prefix + x.rem_euclid(m as i64) as u64) % m;
        if let Some(&i) = seen.get(&prefix) {
            return Ok((i..=j).collect());
        }
        seen.insert(prefix, j + 1);
    }
    unreachable!("m + 1 prefix sums take at most m values")
}

/// A sub-collection summing to `2^k` modulo `2^{k+1}`, via a reachable-sum
/// table with backtracking.
pub fn half_sum_subset(collection: &ResidueCollection) -> Option<Vec<usize>> {
    let bits = collection.k + 1;
    let target = collection.half();
    // rows[i] = sums reachable with the first i elements
    let mut rows = Vec::with_capacity(collection.len() + 1);
    rows.push(1u64);
    for &t in &collection.elements {
        let last = *rows.last().expect("rows starts non-empty");
        rows.push(last | rotate_mask(last, t, bits));
    }
    if (rows[collection.len()] >> target) & 1 == 0 {
        return None;
    }
    let mask = collection.modulus() - 1;
    let mut s = target;
    let mut picked = Vec::new();
    for i in (1..=collection.len()).rev() {
        if (rows[i - 1] >> s) & 1 == 1 {
            continue;
        }
        picked.push(i - 1);
        s = s.wrapping_sub(collection.elements[i - 1]) & mask;
    }
    debug_assert_eq!(s, 0);
    picked.reverse();
    Some(picked)
}

/// Exact search for `m` disjoint zero-sum sub-collections over the multiplicity
/// vector, with failures memoised per remaining multiset.
struct ZeroPacking {
    bits: u32,
    modulus: usize,
    /// smallest `m` known to be infeasible for a multiset
    failed: HashMap<Vec<u32>, usize>,
}

impl ZeroPacking {
    fn new(k: u32) -> Self {
        ZeroPacking {
            bits: k + 1,
            modulus: 1usize << (k + 1),
            failed: HashMap::new(),
        }
    }

    /// `m` disjoint zero-sum parts as lists of residues.
    fn solve(&mut self, counts: &mut Vec<u32>, m: usize) -> Option<Vec<Vec<u64>>> {
        if m == 0 {
            return Some(Vec::new());
        }
        let total: u32 = counts.iter().sum();
        if (total as usize) < 2 * m {
            // parts of non-zero residues have at least two elements
            return None;
        }
        if self.failed.get(counts.as_slice()).is_some_and(|&f| f <= m) {
            return None;
        }
        let v = counts.iter().position(|&c| c > 0).expect("total > 0");
        counts[v] -= 1;

        // parts containing v: {v} ∪ T with T zero-sum free and Σ T = -v
        let need = (self.modulus - v) % self.modulus;
        let mut rests = Vec::new();
        let mut chosen = Vec::new();
        self.zero_sum_free_with_sum(counts, v, need as u64, 0, 0, &mut chosen, &mut rests);
        for rest in rests {
            for &u in &rest {
                counts[u as usize] -= 1;
            }
            let found = self.solve(counts, m - 1);
            for &u in &rest {
                counts[u as usize] += 1;
            }
            if let Some(mut parts) = found {
                counts[v] += 1;
                let mut part = vec![v as u64];
                part.extend(rest);
                parts.push(part);
                return Some(parts);
            }
        }

        // or this copy of v stays unused
        let found = self.solve(counts, m);
        counts[v] += 1;
        if found.is_none() {
            let entry = self.failed.entry(counts.clone()).or_insert(m);
            *entry = (*entry).min(m);
        }
        found
    }

    /// Enumerates multisets `T ⊆ counts` over residues `>= from`, with no
    /// non-empty zero-sum sub-multiset and `Σ T ≡ need`.
    #[allow(clippy::too_many_arguments)]
    fn zero_sum_free_with_sum(
        &self,
        counts: &[u32],
        from: usize,
        need: u64,
        reach: u64,
        sum: u64,
        chosen: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        let mask = self.modulus as u64 - 1;
        for u in from..self.modulus {
            let available = counts[u] as usize - chosen.iter().filter(|&&c| c == u as u64).count();
            if available == 0 {
                continue;
            }
            let next_reach = reach | rotate_mask(reach, u as u64, self.bits) | (1u64 << u);
            if next_reach & 1 == 1 {
                continue;
            }
            let next_sum = (sum + u as u64) & mask;
            chosen.push(u as u64);
            if next_sum == need {
                out.push(chosen.clone());
            }
            self.zero_sum_free_with_sum(counts, u, need, next_reach, next_sum, chosen, out);
            chosen.pop();
        }
    }
}

fn certificate_from_parts(
    collection: &ResidueCollection,
    parts: Vec<Vec<u64>>,
) -> DisjointZeroCertificate {
    let mut by_value: HashMap<u64, Vec<usize>> = HashMap::new();
    for (i, &t) in collection.elements.iter().enumerate().rev() {
        by_value.entry(t).or_default().push(i);
    }
    let mut parts: Vec<Vec<usize>> = parts
        .into_iter()
        .map(|part| {
            let mut idx: Vec<usize> = part
                .into_iter()
                .map(|t| {
                    by_value
                        .get_mut(&t)
                        .and_then(Vec::pop)
                        .expect("parts use available copies")
                })
                .collect();
            idx.sort_unstable();
            idx
        })
        .collect();
    parts.sort();
    DisjointZeroCertificate { parts }
}

/// `m` pairwise disjoint non-empty zero-sum sub-collections, if they exist.
pub fn disjoint_zero_sets(
    collection: &ResidueCollection,
    m: usize,
) -> Option<DisjointZeroCertificate> {
    let mut counts = collection.counts();
    let parts = ZeroPacking::new(collection.k).solve(&mut counts, m)?;
    Some(certificate_from_parts(collection, parts))
}

/// Largest number of pairwise disjoint zero-sum sub-collections.
pub fn max_disjoint_zero_sets(collection: &ResidueCollection) -> usize {
    let mut packing = ZeroPacking::new(collection.k);
    let mut counts = collection.counts();
    let mut m = 0;
    while packing.solve(&mut counts, m + 1).is_some() {
        m += 1;
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KeylemmaVerdict {
    /// Indices of a sub-collection summing to `2^k`.
    HalfSum {
        indices: Vec<usize>,
    },
    /// `x + 1` disjoint zero-sum sub-collections.
    DisjointZeros {
        certificate: DisjointZeroCertificate,
    },
    Counterexample,
}

impl KeylemmaVerdict {
    pub fn is_counterexample(&self) -> bool {
        matches!(self, KeylemmaVerdict::Counterexample)
    }
}

/// Checks one collection of `2^k + x` residues.
pub fn keylemma_check_instance(collection: &ResidueCollection) -> Result<KeylemmaVerdict> {
    let base = collection.half() as usize;
    if collection.len() < base {
        return Err(Error::Argument(format!(
            "need at least 2^k = {base} residues, got {}",
            collection.len()
        )));
    }
    if let Some(indices) = half_sum_subset(collection) {
        return Ok(KeylemmaVerdict::HalfSum { indices });
    }
    let x = collection.len() - base;
    Ok(match disjoint_zero_sets(collection, x + 1) {
        Some(certificate) => KeylemmaVerdict::DisjointZeros { certificate },
        None => KeylemmaVerdict::Counterexample,
    })
}

/// The same check for arbitrary integers: values divisible by `2^{k+1}` are
/// zero-sum parts on their own, the rest reduce to a [`ResidueCollection`].
/// Indices in the verdict refer to `values`.
pub fn keylemma_check_integers(k: u32, values: &[i64]) -> Result<KeylemmaVerdict> {
    check_range("k", k as u64, 1, MAX_COLLECTION_K as u64)?;
    let modulus = 1i64 << (k + 1);
    let base = 1usize << k;
    if values.len() < base {
        return Err(Error::Argument(format!(
            "need at least 2^k = {base} integers, got {}",
            values.len()
        )));
    }
    let x = values.len() - base;
    let (zeros, nonzero): (Vec<usize>, Vec<usize>) =
        (0..values.len()).partition(|&i| values[i].rem_euclid(modulus) == 0);
    let reduced = ResidueCollection::new(
        k,
        nonzero
            .iter()
            .map(|&i| values[i].rem_euclid(modulus) as u64),
    )?;
    if let Some(indices) = half_sum_subset(&reduced) {
        let indices = indices.into_iter().map(|i| nonzero[i]).collect();
        return Ok(KeylemmaVerdict::HalfSum { indices });
    }
    let mut parts: Vec<Vec<usize>> = zeros.iter().take(x + 1).map(|&i| vec![i]).collect();
    let missing = x + 1 - parts.len();
    if missing > 0 {
        match disjoint_zero_sets(&reduced, missing) {
            Some(cert) => parts.extend(
                cert.parts
                    .into_iter()
                    .map(|p| p.into_iter().map(|i| nonzero[i]).collect()),
            ),
            None => return Ok(KeylemmaVerdict::Counterexample),
        }
    }
    parts.sort();
    Ok(KeylemmaVerdict::DisjointZeros {
        certificate: DisjointZeroCertificate { parts },
    })
}

/// `C(n + r - 1, r)`, saturating.
pub fn multiset_count(n: u64, r: u64) -> u64 {
    if n == 0 {
        return u64::from(r == 0);
    }
    let top = n + r - 1;
    let r = r.min(top - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (top - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Visits every non-decreasing sequence of length `len` over `lo..=hi` whose
/// first entry is `first`, as a multiplicity vector indexed by value.
fn for_each_multiset_with_first(
    first: u64,
    hi: u64,
    len: usize,
    counts: &mut Vec<u32>,
    visit: &mut impl FnMut(&[u32]),
) {
    fn rec(from: u64, hi: u64, left: usize, counts: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
        if left == 0 {
            visit(counts);
            return;
        }
        for v in from..=hi {
            counts[v as usize] += 1;
            rec(v, hi, left - 1, counts, visit);
            counts[v as usize] -= 1;
        }
    }
    if len == 0 {
        visit(counts);
        return;
    }
    counts[first as usize] += 1;
    rec(first, hi, len - 1, counts, visit);
    counts[first as usize] -= 1;
}

/// Outcome of an exhaustive run over all multisets of a given size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExhaustionReport {
    pub k: u32,
    /// Collection size checked.
    pub size: usize,
    pub space_size: u64,
    pub checked: u64,
    /// Instances settled by a sub-collection summing to `2^k`.
    pub half_sum: u64,
    /// Instances settled by disjoint zero-sum parts.
    pub disjoint: u64,
    /// Sorted residue lists of failing instances.
    pub counterexamples: Vec<Vec<u64>>,
}

#[derive(Default)]
struct Tally {
    checked: u64,
    half_sum: u64,
    disjoint: u64,
    counterexamples: Vec<Vec<u64>>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.half_sum += other.half_sum;
        self.disjoint += other.disjoint;
        self.counterexamples.extend(other.counterexamples);
        self
    }
}

fn exhaust(
    k: u32,
    size: usize,
    budget: u64,
    check: impl Fn(&[u32], &mut Tally) + Sync,
) -> Result<ExhaustionReport> {
    check_range("k", k as u64, 1, MAX_COLLECTION_K as u64)?;
    let hi = (1u64 << (k + 1)) - 1;
    let space_size = multiset_count(hi, size as u64);
    if space_size > budget {
        return Err(Error::Capacity(format!(
            "{space_size} multisets of size {size} modulo {} exceed the budget of {budget}",
            hi + 1
        )));
    }
    // one slice per first element; collected in order, so merging is deterministic
    let tallies: Vec<Tally> = (1..=hi)
        .into_par_iter()
        .map(|first| {
            let mut tally = Tally::default();
            let mut counts = vec![0u32; hi as usize + 1];
            for_each_multiset_with_first(first, hi, size, &mut counts, &mut |c| {
                tally.checked += 1;
                check(c, &mut tally);
            });
            tally
        })
        .collect();
    let tally = tallies.into_iter().fold(Tally::default(), Tally::merge);
    Ok(ExhaustionReport {
        k,
        size,
        space_size,
        checked: tally.checked,
        half_sum: tally.half_sum,
        disjoint: tally.disjoint,
        counterexamples: tally.counterexamples,
    })
}

/// Runs [`keylemma_check_instance`] on every multiset of `2^k + x` non-zero
/// residues modulo `2^{k+1}`.
pub fn keylemma_verify_all(k: u32, x: usize, budget: u64) -> Result<ExhaustionReport> {
    let size = (1usize << k.min(MAX_COLLECTION_K)) + x;
    let bits = k + 1;
    let half = 1u64 << k;
    exhaust(k, size, budget, |counts, tally| {
        if (reach_from_counts(counts, bits) >> half) & 1 == 1 {
            tally.half_sum += 1;
            return;
        }
        let mut counts = counts.to_vec();
        if ZeroPacking::new(k).solve(&mut counts, x + 1).is_some() {
            tally.disjoint += 1;
        } else {
            let c = ResidueCollection::from_counts(k, &counts);
            tally.counterexamples.push(c.elements);
        }
    })
}

/// Every multiset of `2^{k+1} - 1` non-zero residues modulo `2^{k+1}` has a
/// sub-collection summing to `2^k`; failures are listed as counterexamples.
pub fn alon_freiman_verify_all(k: u32, budget: u64) -> Result<ExhaustionReport> {
    let size = (1usize << (k.min(MAX_COLLECTION_K) + 1)) - 1;
    let bits = k + 1;
    let half = 1u64 << k;
    exhaust(k, size, budget, |counts, tally| {
        if (reach_from_counts(counts, bits) >> half) & 1 == 1 {
            tally.half_sum += 1;
        } else {
            tally
                .counterexamples
                .push(ResidueCollection::from_counts(k, counts).elements);
        }
    })
}

/// Where and how to compress a collection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Compression {
    /// Replace `t` by `|t|` copies of `1` (or of `-1` when `t > 2^k`).
    TypeOne { t: u64 },
    /// Replace two copies of `2^k - t` by two copies of `-t`.
    TypeTwo { t: u64 },
    /// Replace `u` and `v` by `u - 2^k` and `v - 2^k`.
    TypeThree { u: u64, v: u64 },
}

fn inapplicable(msg: String) -> Error {
    Error::Inapplicable(msg)
}

fn remove_one(elements: &mut Vec<u64>, t: u64) -> bool {
    match elements.iter().position(|&e| e == t) {
        Some(p) => {
            elements.remove(p);
            true
        }
        None => false,
    }
}

/// Applies a compression. The result keeps the element order of the input
/// with replaced elements removed and new ones appended.
pub fn compress(collection: &ResidueCollection, site: Compression) -> Result<ResidueCollection> {
    let k = collection.k;
    let modulus = collection.modulus();
    let mask = modulus - 1;
    let half = collection.half();
    let counts = collection.counts();
    let count = |t: u64| counts[(t & mask) as usize] as usize;
    let units = collection.unit_count();
    let mut elements = collection.elements.clone();
    match site {
        Compression::TypeOne { t } => {
            let t = t & mask;
            if units == 0 {
                return Err(inapplicable("type 1 needs at least one copy of ±1".into()));
            }
            if count(t) == 0 {
                return Err(inapplicable(format!(
                    "type 1: {t} is not in the collection"
                )));
            }
            let abs = residue_abs(t, k);
            if abs <= 1 || abs as usize > units + 1 {
                return Err(inapplicable(format!(
                    "type 1 needs 1 < |t| <= λ + 1, got |{t}| = {abs} with λ = {units}"
                )));
            }
            remove_one(&mut elements, t);
            let unit = if (1..half).contains(&t) { 1 } else { mask };
            elements.extend(std::iter::repeat_n(unit, abs as usize));
        }
        Compression::TypeTwo { t } => {
            let t = t & mask;
            let neg_t = t.wrapping_neg() & mask;
            let partner = half.wrapping_sub(t) & mask;
            if neg_t == 0 || partner == 0 {
                return Err(inapplicable(format!(
                    "type 2: -t and 2^k - t must be non-zero (t = {t})"
                )));
            }
            if count(neg_t) == 0 {
                return Err(inapplicable(format!("type 2 needs -t = {neg_t}")));
            }
            if count(partner) < 2 {
                return Err(inapplicable(format!(
                    "type 2 needs two copies of 2^k - t = {partner}"
                )));
            }
            remove_one(&mut elements, partner);
            remove_one(&mut elements, partner);
            elements.extend([neg_t, neg_t]);
        }
        Compression::TypeThree { u, v } => {
            let (u, v) = (u & mask, v & mask);
            if units < (half / 2) as usize {
                return Err(inapplicable(format!(
                    "type 3 needs 2^(k-1) = {} copies of ±1, found {units}",
                    half / 2
                )));
            }
            // (3/2)·2^{k-1} rounded up
            let lo = (3 * half).div_ceil(4);
            for w in [u, v] {
                if w < lo || w >= half {
                    return Err(inapplicable(format!(
                        "type 3 needs u, v in [{lo}, {}], got {w}",
                        half - 1
                    )));
                }
            }
            let needed = if u == v { 2 } else { 1 };
            if count(u) < needed || count(v) < needed {
                return Err(inapplicable(format!(
                    "type 3: {u} and {v} are not both in the collection"
                )));
            }
            remove_one(&mut elements, u);
            remove_one(&mut elements, v);
            elements.extend([(u + half) & mask, (v + half) & mask]);
        }
    }
    ResidueCollection::new(k, elements)
}

/// Every compression that [`compress`] accepts on this collection.
pub fn applicable_sites(collection: &ResidueCollection) -> Vec<Compression> {
    let mask = collection.modulus() - 1;
    let mut distinct: Vec<u64> = collection.elements.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let mut sites = Vec::new();
    for &t in &distinct {
        sites.push(Compression::TypeOne { t });
    }
    for t in 1..=mask {
        sites.push(Compression::TypeTwo { t });
    }
    for (i, &u) in distinct.iter().enumerate() {
        for &v in &distinct[i..] {
            sites.push(Compression::TypeThree { u, v });
        }
    }
    sites.retain(|&s| compress(collection, s).is_ok());
    sites
}
