//! Schur triples `(x, y, z) ∈ A^3` with `x + y = z`, their split by layers,
//! and the layer-profile lower bound `f(S)`.

use serde::Serialize;

use crate::group::{layer_of_unchecked, GroupContext, LayerIndex, ResidueSet};

/// Ordered Schur triples: `(x, y, z)` and `(y, x, z)` count separately.
pub fn count_schur_triples(set: &ResidueSet) -> u64 {
    // for each z ∈ A, |A ∩ (z - A)|
    let negated = set.negated();
    set.iter()
        .map(|z| set.intersection_len(&negated.shifted(z)))
        .sum()
}

/// `|S_a|` for every layer and `|S_{a+}|` for `a <= n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerProfile {
    pub n: u32,
    /// `sizes[a - 1] = |S ∩ L_a|` for `a` in `1..=n+1`.
    pub sizes: Vec<u64>,
    /// `suffix[a - 1] = |S ∩ (L_{a+1} ∪ ... ∪ L_{n+1})|` for `a` in `1..=n`.
    pub suffix: Vec<u64>,
    /// Highest non-empty layer.
    pub top: Option<u32>,
}

impl LayerProfile {
    /// Profile from raw layer counts (`sizes.len() == n + 1`).
    pub fn from_sizes(sizes: Vec<u64>) -> Self {
        let n = sizes.len() as u32 - 1;
        let suffix = (1..=n as usize).map(|a| sizes[a..].iter().sum()).collect();
        let top = sizes.iter().rposition(|&s| s > 0).map(|i| i as u32 + 1);
        LayerProfile {
            n,
            sizes,
            suffix,
            top,
        }
    }

    pub fn total(&self) -> u64 {
        self.sizes.iter().sum()
    }
}

pub fn layer_profile(set: &ResidueSet) -> LayerProfile {
    let ctx = set.context();
    LayerProfile::from_sizes(ctx.layers().map(|i| set.count_in_layer(i)).collect())
}

/// Counts `C(a,a,a+)`, `C(a,a+,a)` and `C(a+,a,a)` for one layer `a`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct LayerTripleCounts {
    pub a: u32,
    /// `x, y ∈ S_a`, `z ∈ S_{a+}`
    pub pair_sum_up: u64,
    /// `x, z ∈ S_a`, `y ∈ S_{a+}`
    pub right_up: u64,
    /// `y, z ∈ S_a`, `x ∈ S_{a+}`
    pub left_up: u64,
}

impl LayerTripleCounts {
    pub fn total(&self) -> u64 {
        self.pair_sum_up + self.right_up + self.left_up
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriplesByLayer {
    pub layers: Vec<LayerTripleCounts>,
    /// Triples with all three entries in one layer (only `(0,0,0)`).
    pub same_layer: u64,
    /// Triples spread over three distinct layers (never happens).
    pub three_layers: u64,
}

impl TriplesByLayer {
    /// `Σ_a C(a+,a,a) + C(a,a+,a) + C(a,a,a+)`.
    pub fn decomposed_total(&self) -> u64 {
        self.layers.iter().map(LayerTripleCounts::total).sum()
    }
}

pub fn count_triples_by_layer(set: &ResidueSet) -> TriplesByLayer {
    let ctx = set.context();
    let n = ctx.exponent();
    let mut layers: Vec<LayerTripleCounts> = (1..=n)
        .map(|a| LayerTripleCounts {
            a,
            ..Default::default()
        })
        .collect();
    let mut same_layer = 0;
    let mut three_layers = 0;
    for x in set.iter() {
        let lx = layer_of_unchecked(x, n);
        // y ranges over A ∩ (A - x)
        let ys = set.intersection(&set.shifted(ctx.neg(x)));
        for y in ys.iter() {
            let z = ctx.add(x, y);
            let (ly, lz) = (layer_of_unchecked(y, n), layer_of_unchecked(z, n));
            if lx == ly && ly == lz {
                same_layer += 1;
            } else if lx == ly && lz > lx {
                layers[lx as usize - 1].pair_sum_up += 1;
            } else if lx == lz && ly > lx {
                layers[lx as usize - 1].right_up += 1;
            } else if ly == lz && lx > ly {
                layers[ly as usize - 1].left_up += 1;
            } else {
                three_layers += 1;
            }
        }
    }
    TriplesByLayer {
        layers,
        same_layer,
        three_layers,
    }
}

/// `f(S) = 3 Σ_{a=1}^{n} max{ |S_a|(|S_{a+}| - |L_a| + |S_a|), |S_{a+}|(2|S_a| - |L_a|), 0 }`,
/// a lower bound for the Schur triple count of any set with this profile.
pub fn schur_lower_bound(profile: &LayerProfile, ctx: &GroupContext) -> u64 {
    let mut sum: i128 = 0;
    for a in 1..=profile.n {
        let s = profile.sizes[a as usize - 1] as i128;
        let up = profile.suffix[a as usize - 1] as i128;
        let layer = ctx.layer_size(LayerIndex::new(a)) as i128;
        let first = s * (up - layer + s);
        let second = up * (2 * s - layer);
        sum += first.max(second).max(0);
    }
    (3 * sum) as u64
}
