//! The layer-union sets `C_d`, conjectured to be the largest `d`-cube-free
//! subsets of `Z_{2^n}`.
//!
//! `C_1 = ∅`, and for `d >= 2` with `2^l <= d < 2^{l+1}`,
//!
//! ```text
//! C_d = L_[1,l] ∪ 2^{l+1} · C_{d - 2^l + 1}
//! ```
//!
//! Unrolling the recursion gives the block vector `(l_1, ..., l_q)`: take
//! `l_1 - 1` layers, skip one, take `l_2 - 1`, skip one, and so on.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{layer_union, GroupContext, ResidueSet};

/// `⌊log2 k⌋`, the largest `l` with `2^l <= k`.
pub fn alpha(k: u64) -> Result<u32> {
    if k < 1 {
        return Err(Error::Argument("alpha is defined for k >= 1".into()));
    }
    Ok(63 - k.leading_zeros())
}

/// The dimension handled by the recursive copy: `d - 2^{α(d)} + 1`.
pub fn reduce_d(d: u64) -> Result<u64> {
    if d < 2 {
        return Err(Error::Argument(format!("reduce_d needs d >= 2, got {d}")));
    }
    Ok(d - (1u64 << alpha(d)?) + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockVector {
    pub d: u64,
    pub lengths: Vec<u32>,
    /// `M = l_1 + ... + l_q`.
    pub total: u32,
}

impl BlockVector {
    /// Layer ranges `[M_{i-1} + 1, M_i - 1]` of the blocks, one per entry.
    pub fn blocks(&self) -> Vec<(u32, u32)> {
        let mut start = 0;
        self.lengths
            .iter()
            .map(|&l| {
                let block = (start + 1, start + l - 1);
                start += l;
                block
            })
            .collect()
    }

    /// All layer indices used, ascending.
    pub fn layers(&self) -> Vec<u32> {
        self.blocks().into_iter().flat_map(|(a, b)| a..=b).collect()
    }

    /// Smallest exponent `n` for which `C_d` fits, i.e. `M - 1`.
    pub fn min_exponent(&self) -> u32 {
        (self.total.saturating_sub(1)).max(1)
    }
}

pub fn block_vector(d: u64) -> Result<BlockVector> {
    if d < 2 {
        return Err(Error::Argument(format!(
            "block vector needs d >= 2, got {d}"
        )));
    }
    let mut lengths = Vec::new();
    let mut current = d;
    while current > 1 {
        lengths.push(alpha(current)? + 1);
        current = reduce_d(current)?;
    }
    let total = lengths.iter().sum();
    Ok(BlockVector { d, lengths, total })
}

/// Layers of `C_d` (empty for `d = 1`).
pub fn cd_layers(d: u64) -> Result<Vec<u32>> {
    match d {
        0 => Err(Error::Argument("C_d needs d >= 1".into())),
        1 => Ok(Vec::new()),
        _ => Ok(block_vector(d)?.layers()),
    }
}

/// Smallest `n` that holds `C_d`.
pub fn cd_min_exponent(d: u64) -> Result<u32> {
    Ok(cd_layers(d)?.last().copied().unwrap_or(1).max(1))
}

fn check_fits(d: u64, ctx: &GroupContext) -> Result<Vec<u32>> {
    let layers = cd_layers(d)?;
    if let Some(&top) = layers.last() {
        if top > ctx.exponent() {
            return Err(Error::Capacity(format!(
                "C_{d} uses layer L_{top} but Z_2^{} only has layers up to L_{}",
                ctx.exponent(),
                ctx.exponent()
            )));
        }
    }
    Ok(layers)
}

/// `C_d` built from its block vector.
pub fn construct_cd(d: u64, ctx: &GroupContext) -> Result<ResidueSet> {
    let layers = check_fits(d, ctx)?;
    layer_union(&layers, ctx)
}

/// `C_d` built by the literal recursion, embedding `C_{d'}` from the smaller
/// group `Z_{2^{n-l-1}}` via multiplication by `2^{l+1}`.
pub fn construct_cd_recursive(d: u64, ctx: &GroupContext) -> Result<ResidueSet> {
    check_fits(d, ctx)?;
    recurse(d, ctx.exponent(), ctx)
}

fn recurse(d: u64, exponent: u32, ambient: &GroupContext) -> Result<ResidueSet> {
    let mut out = ResidueSet::empty(*ambient);
    if d == 1 {
        return Ok(out);
    }
    let l = alpha(d)?;
    let ctx = GroupContext::new(exponent)?;
    let scale = 1u64 << (ambient.exponent() - exponent);
    for x in 0..ctx.modulus() {
        if x != 0 && x.trailing_zeros() < l {
            out.insert(x * scale);
        }
    }
    let rest = reduce_d(d)?;
    if rest > 1 {
        let sub_exponent = exponent - l - 1;
        for x in recurse(rest, sub_exponent, ambient)?.iter() {
            out.insert(x);
        }
    }
    Ok(out)
}

/// `|C_d|` from the layer sizes.
pub fn cd_size(d: u64, ctx: &GroupContext) -> Result<u64> {
    let layers = check_fits(d, ctx)?;
    Ok(layers.iter().map(|&i| 1u64 << (ctx.exponent() - i)).sum())
}
