#![allow(dead_code)]

use cubefree::{GeneratorMultiset, GroupContext, ResidueSet};

pub fn ctx(n: u32) -> GroupContext {
    GroupContext::new(n).unwrap()
}

/// Σ*S by listing all 2^|S| - 1 non-empty subsets.
pub fn cube_by_subsets(ctx: &GroupContext, gens: &[u64]) -> ResidueSet {
    let mut out = ResidueSet::empty(*ctx);
    for pick in 1u32..1 << gens.len() {
        let s = (0..gens.len())
            .filter(|i| pick >> i & 1 == 1)
            .fold(0, |acc, i| ctx.add(acc, gens[i]));
        out.insert(s);
    }
    out
}

/// Calls `f` on every non-decreasing sequence of length `len` over `pool`.
pub fn for_each_multiset(pool: &[u64], len: usize, f: &mut impl FnMut(&[u64])) {
    fn rec(pool: &[u64], from: usize, left: usize, buf: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
        if left == 0 {
            f(buf);
            return;
        }
        for i in from..pool.len() {
            buf.push(pool[i]);
            rec(pool, i, left - 1, buf, f);
            buf.pop();
        }
    }
    rec(pool, 0, len, &mut Vec::with_capacity(len), f);
}

/// Whether some d-multiset drawn from A has its cube inside A.
pub fn has_cube_naive(set: &ResidueSet, d: usize) -> bool {
    let ctx = set.context();
    let pool = set.to_vec();
    let mut found = false;
    for_each_multiset(&pool, d, &mut |gens| {
        if !found && cube_by_subsets(&ctx, gens).is_subset_of(set) {
            found = true;
        }
    });
    found
}

pub fn multiset(ctx: &GroupContext, xs: &[u64]) -> GeneratorMultiset {
    GeneratorMultiset::new(*ctx, xs.iter().copied()).unwrap()
}

/// Ordered triples with x + y = z, by triple loop.
pub fn schur_naive(set: &ResidueSet) -> u64 {
    let ctx = set.context();
    let xs = set.to_vec();
    let mut count = 0;
    for &x in &xs {
        for &y in &xs {
            if set.contains(ctx.add(x, y)) {
                count += 1;
            }
        }
    }
    count
}
