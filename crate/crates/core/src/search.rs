//! Exact extremal searches over small groups, and export of the cube-free
//! problem as an integer program or a satisfiability instance.
//!
//! Every search works on the hypergraph of cube sets: a set is `d`-cube-free
//! iff it contains none of the sets `Σ*S` with `|S| = d`. Only inclusion-minimal
//! cube sets are kept, since containing a larger one implies containing a
//! smaller one.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::construction::construct_cd;
use crate::counting::count_schur_triples;
use crate::detection::{find_d_cube_in_layer_union, is_d_cube_free};
use crate::error::{check_range, Error, Result};
use crate::group::{layer_of_unchecked, GroupContext, ResidueSet};
use crate::oracle::multiset_count;

/// Largest exponent whose residues fit the 128-bit cube masks used for export.
pub const MAX_EXPORT_EXPONENT: u32 = 7;
/// Largest exponent for the in-process searches (64-bit masks).
pub const MAX_SEARCH_EXPONENT: u32 = 6;

/// Default cap on enumerated objects (multisets, subsets or search nodes).
pub const DEFAULT_SEARCH_BUDGET: u64 = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    BranchAndBound,
    LayerUnions,
}

/// An optimum with a witness attaining it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchCertificate {
    pub mode: SearchMode,
    pub optimum: u64,
    pub witness: ResidueSet,
    /// Nodes, subsets or unions examined.
    pub explored: u64,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: u64,
    /// Assume `1 ∈ A` or that `A` has no odd residue.
    pub symmetry: bool,
    /// Start from `|C_d|` as incumbent when `C_d` fits.
    pub seed_with_construction: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_SEARCH_BUDGET,
            symmetry: false,
            seed_with_construction: false,
        }
    }
}

#[inline]
fn rotate128(mask: u128, t: u64, n: u32) -> u128 {
    let m = 1u32 << n;
    let t = (t as u32) & (m - 1);
    if t == 0 {
        return mask;
    }
    let full = if m == 128 {
        u128::MAX
    } else {
        (1u128 << m) - 1
    };
    ((mask << t) | (mask >> (m - t))) & full
}

fn check_export_exponent(ctx: &GroupContext) -> Result<()> {
    if ctx.exponent() > MAX_EXPORT_EXPONENT {
        return Err(Error::Capacity(format!(
            "cube hypergraphs are built for n <= {MAX_EXPORT_EXPONENT}, got n = {}",
            ctx.exponent()
        )));
    }
    Ok(())
}

/// Which cube sets to forbid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CubePatterns {
    /// Every `Σ*S` with `|S| = d`.
    All,
    /// Only `Σ*{x,x,x}` and `Σ*{x,3x,y}` (requires `d = 3`).
    Conc2,
}

/// `Σ*S` over all `d`-multisets, deduplicated.
fn all_cube_masks(ctx: &GroupContext, d: usize, budget: u64) -> Result<Vec<u128>> {
    check_export_exponent(ctx)?;
    let n = ctx.exponent();
    let count = multiset_count(ctx.modulus(), d as u64);
    if count > budget {
        return Err(Error::Capacity(format!(
            "{count} generator multisets of size {d} exceed the budget of {budget}"
        )));
    }
    fn rec(n: u32, modulus: u64, from: u64, left: usize, q: u128, out: &mut HashSet<u128>) {
        if left == 0 {
            out.insert(q);
            return;
        }
        for a in from..modulus {
            let next = q | rotate128(q, a, n) | (1u128 << a);
            rec(n, modulus, a, left - 1, next, out);
        }
    }
    let mut out = HashSet::new();
    rec(n, ctx.modulus(), 0, d, 0, &mut out);
    Ok(out.into_iter().collect())
}

fn conc2_cube_masks(ctx: &GroupContext) -> Result<Vec<u128>> {
    check_export_exponent(ctx)?;
    let bit = |x: u64| 1u128 << x;
    let mut out = HashSet::new();
    for x in 0..ctx.modulus() {
        let (x2, x3, x4) = (ctx.mul(2, x), ctx.mul(3, x), ctx.mul(4, x));
        out.insert(bit(x) | bit(x2) | bit(x3));
        for y in 0..ctx.modulus() {
            let mut m = bit(x) | bit(x3) | bit(x4) | bit(y);
            for s in [x, x3, x4] {
                m |= bit(ctx.add(s, y));
            }
            out.insert(m);
        }
    }
    Ok(out.into_iter().collect())
}

/// Drops every set that strictly contains another; the result is sorted by
/// size, then numerically.
fn minimal_sets(mut sets: Vec<u128>) -> Vec<u128> {
    sets.sort_by_key(|&m| (m.count_ones(), m));
    sets.dedup();
    // kept sets bucketed by their smallest member
    let mut by_min: HashMap<u32, Vec<u128>> = HashMap::new();
    let mut kept = Vec::new();
    for e in sets {
        let mut dominated = false;
        let mut rest = e;
        while rest != 0 && !dominated {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            if let Some(bucket) = by_min.get(&v) {
                dominated = bucket.iter().any(|&f| f & !e == 0);
            }
        }
        if !dominated {
            by_min.entry(e.trailing_zeros()).or_default().push(e);
            kept.push(e);
        }
    }
    kept
}

/// Inclusion-minimal cube sets, as 128-bit residue masks.
pub fn minimal_cube_sets(
    ctx: &GroupContext,
    d: usize,
    patterns: CubePatterns,
    budget: u64,
) -> Result<Vec<u128>> {
    if d == 0 {
        return Err(Error::Argument("cube dimension must be positive".into()));
    }
    let sets = match patterns {
        CubePatterns::All => all_cube_masks(ctx, d, budget)?,
        CubePatterns::Conc2 if d == 3 => conc2_cube_masks(ctx)?,
        CubePatterns::Conc2 => {
            return Err(Error::Argument(format!(
                "the restricted patterns are 3-cubes, got d = {d}"
            )))
        }
    };
    Ok(minimal_sets(sets))
}

fn mask_members(mask: u128) -> impl Iterator<Item = u64> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        (rest != 0).then(|| {
            let v = rest.trailing_zeros() as u64;
            rest &= rest - 1;
            v
        })
    })
}

/// Residues ordered by layer (`L_1` first), then by value.
fn vertex_order(ctx: &GroupContext) -> Vec<u64> {
    let mut order: Vec<u64> = (0..ctx.modulus()).collect();
    order.sort_by_key(|&x| (layer_of_unchecked(x, ctx.exponent()), x));
    order
}

/// Maximum independent set in a hypergraph on at most 64 vertices: no chosen
/// set may contain a whole edge. Vertices are bit positions; branching goes
/// from bit 0 upward, include first.
struct Packing {
    edges: Vec<u64>,
    all: u64,
    budget: u64,
    nodes: u64,
    best: u32,
    best_set: Option<u64>,
    /// Positions excluded together with position 0 when it is excluded.
    exclude_with_first: u64,
}

impl Packing {
    fn new(mut edges: Vec<u64>, vertices: u32, budget: u64) -> Self {
        edges.sort_by_key(|&e| (e.count_ones(), e));
        Packing {
            edges,
            all: if vertices == 64 {
                u64::MAX
            } else {
                (1u64 << vertices) - 1
            },
            budget,
            nodes: 0,
            best: 0,
            best_set: None,
            exclude_with_first: 1,
        }
    }

    fn run(&mut self) -> Result<()> {
        self.branch(0, 0)
    }

    fn branch(&mut self, inc: u64, mut exc: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Capacity(format!(
                "branch-and-bound exceeded {} nodes",
                self.budget
            )));
        }
        // an edge with one undecided vertex left forces that vertex out
        loop {
            let mut changed = false;
            for &e in &self.edges {
                if e & exc != 0 {
                    continue;
                }
                let rest = e & !inc;
                if rest == 0 {
                    return Ok(());
                }
                if rest & (rest - 1) == 0 {
                    exc |= rest;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let und = self.all & !inc & !exc;
        let have = inc.count_ones();
        if und == 0 {
            if have > self.best || self.best_set.is_none() {
                self.best = have;
                self.best_set = Some(inc);
            }
            return Ok(());
        }
        // each live edge needs one undecided vertex dropped; disjoint ones add up
        let mut used = 0u64;
        let mut forced = 0u32;
        for &e in &self.edges {
            if e & exc != 0 {
                continue;
            }
            let r = e & und;
            if r & used == 0 {
                used |= r;
                forced += 1;
            }
        }
        let bound = have + und.count_ones() - forced;
        if self.best_set.is_some() && bound <= self.best {
            return Ok(());
        }
        let v = 1u64 << und.trailing_zeros();
        self.branch(inc | v, exc)?;
        let also = if v == 1 { self.exclude_with_first } else { v };
        self.branch(inc, exc | v | also)
    }
}

fn finish(
    mode: SearchMode,
    optimum: u64,
    witness: ResidueSet,
    explored: u64,
    started: Instant,
) -> SearchCertificate {
    SearchCertificate {
        mode,
        optimum,
        witness,
        explored,
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
    }
}

fn check_search_exponent(ctx: &GroupContext) -> Result<()> {
    if ctx.exponent() > MAX_SEARCH_EXPONENT {
        return Err(Error::Capacity(format!(
            "exact search is limited to n <= {MAX_SEARCH_EXPONENT}, got n = {}",
            ctx.exponent()
        )));
    }
    Ok(())
}

/// Largest subset of `Z_{2^n}` with no forbidden cube set, by branch-and-bound.
fn solve_cover(
    ctx: &GroupContext,
    cubes: &[u128],
    opts: SearchOptions,
    seed: Option<&ResidueSet>,
) -> Result<(u64, ResidueSet, u64)> {
    check_search_exponent(ctx)?;
    let order = vertex_order(ctx);
    let mut position = vec![0u32; order.len()];
    for (i, &x) in order.iter().enumerate() {
        position[x as usize] = i as u32;
    }
    let to_positions =
        |mask: u128| mask_members(mask).fold(0u64, |acc, x| acc | 1u64 << position[x as usize]);
    let edges: Vec<u64> = cubes.iter().map(|&m| to_positions(m)).collect();
    let mut packing = Packing::new(edges, ctx.modulus() as u32, opts.budget);
    if opts.symmetry {
        // odd units act transitively on L_1 and fix the problem, so either
        // 1 ∈ A or A has no odd residue; 1 is the first vertex in the order
        packing.exclude_with_first = order
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x % 2 == 1)
            .fold(0u64, |acc, (i, _)| acc | 1u64 << i);
    }
    if let Some(seed) = seed {
        let mut m = 0u128;
        for x in seed.iter() {
            m |= 1u128 << x;
        }
        packing.best = seed.len() as u32;
        packing.best_set = Some(to_positions(m));
    }
    packing.run()?;
    let chosen = packing.best_set.unwrap_or(0);
    let witness = ResidueSet::from_residues(
        *ctx,
        (0..64).filter(|i| chosen >> i & 1 == 1).map(|i| order[i]),
    )?;
    Ok((packing.best as u64, witness, packing.nodes))
}

/// Maximum size of a `d`-cube-free subset of `Z_{2^n}` (`n <= 6`).
pub fn max_cube_free_exact(
    ctx: &GroupContext,
    d: usize,
    opts: SearchOptions,
) -> Result<SearchCertificate> {
    let started = Instant::now();
    check_search_exponent(ctx)?;
    let cubes = minimal_cube_sets(ctx, d, CubePatterns::All, opts.budget)?;
    let seed = if opts.seed_with_construction {
        construct_cd(d as u64, ctx).ok()
    } else {
        None
    };
    let (optimum, witness, nodes) = solve_cover(ctx, &cubes, opts, seed.as_ref())?;
    assert!(
        witness.len() == optimum && is_d_cube_free(&witness, d),
        "branch-and-bound witness {witness} failed re-verification"
    );
    Ok(finish(
        SearchMode::BranchAndBound,
        optimum,
        witness,
        nodes,
        started,
    ))
}

/// The same optimum by testing every subset (`n <= 4`); the witness is the
/// numerically smallest maximiser as a bitmask.
pub fn max_cube_free_brute_force(ctx: &GroupContext, d: usize) -> Result<SearchCertificate> {
    let started = Instant::now();
    check_range("n", ctx.exponent() as u64, 1, 4)?;
    let cubes: Vec<u64> = minimal_cube_sets(ctx, d, CubePatterns::All, u64::MAX)?
        .into_iter()
        .map(|m| m as u64)
        .collect();
    let total = 1u64 << ctx.modulus();
    let mut best = (0u32, 0u64);
    for mask in 0..total {
        let size = mask.count_ones();
        if size > best.0 && cubes.iter().all(|&e| e & !mask != 0) {
            best = (size, mask);
        }
    }
    let witness = ResidueSet::from_mask(*ctx, best.1);
    assert!(is_d_cube_free(&witness, d));
    Ok(finish(
        SearchMode::Exhaustive,
        best.0 as u64,
        witness,
        total,
        started,
    ))
}

/// Largest `d`-cube-free union of layers, over all `2^{n+1}` unions.
pub fn max_cube_free_layer_unions(ctx: &GroupContext, d: usize) -> Result<SearchCertificate> {
    let started = Instant::now();
    let n = ctx.exponent();
    if d == 0 || d as u64 > n as u64 {
        return Err(Error::Argument(format!(
            "need 1 <= d <= n, got d = {d}, n = {n}"
        )));
    }
    let size_of = |bits: u32| -> u64 {
        (1..=n + 1)
            .filter(|&i| bits >> (i - 1) & 1 == 1)
            .map(|i| if i > n { 1 } else { 1u64 << (n - i) })
            .sum()
    };
    let mut unions: Vec<u32> = (0..1u32 << (n + 1)).collect();
    unions.sort_by_key(|&b| (std::cmp::Reverse(size_of(b)), b));
    let mut explored = 0;
    for bits in unions {
        explored += 1;
        let layers: Vec<u32> = (1..=n + 1).filter(|&i| bits >> (i - 1) & 1 == 1).collect();
        if find_d_cube_in_layer_union(&layers, ctx, d)?.is_none() {
            let witness = crate::group::layer_union(&layers, ctx)?;
            let optimum = size_of(bits);
            debug_assert_eq!(witness.len(), optimum);
            return Ok(finish(
                SearchMode::LayerUnions,
                optimum,
                witness,
                explored,
                started,
            ));
        }
    }
    unreachable!("the empty union is cube-free")
}

/// Schur triples of a set given as a bitmask over `Z_{2^n}`, `n <= 6`.
fn schur_count_mask(mask: u64, n: u32) -> u64 {
    let m = 1u32 << n;
    let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let rot = |x: u64, t: u32| {
        if t == 0 {
            x
        } else {
            ((x << t) | (x >> (m - t))) & full
        }
    };
    // bit z - y set for y ∈ A, built as the reflection of A
    let mut neg = 0u64;
    let mut rest = mask;
    while rest != 0 {
        let y = rest.trailing_zeros();
        rest &= rest - 1;
        neg |= 1u64 << ((m - y) % m);
    }
    let mut total = 0u64;
    let mut rest = mask;
    while rest != 0 {
        let z = rest.trailing_zeros();
        rest &= rest - 1;
        total += (mask & rot(neg, z)).count_ones() as u64;
    }
    total
}

/// Minimum number of Schur triples over all `M`-subsets. With `symmetry`
/// and `M > 2^{n-1}` only sets containing 1 are scanned (some odd residue
/// must be present and odd units preserve the count).
pub fn min_schur_exhaustive(
    ctx: &GroupContext,
    m: u64,
    symmetry: bool,
    budget: u64,
) -> Result<SearchCertificate> {
    let started = Instant::now();
    check_search_exponent(ctx)?;
    let n = ctx.exponent();
    let size = ctx.modulus();
    check_range("cardinality", m, 0, size)?;
    let fix_one = symmetry && m > size / 2;
    let (pool, pick) = if fix_one {
        (size - 1, m - 1)
    } else {
        (size, m)
    };
    let space = binomial(pool, pick);
    if space > budget {
        return Err(Error::Capacity(format!(
            "{space} subsets exceed the budget of {budget}"
        )));
    }
    // Gosper's hack over `pool` bits; with 1 fixed, bit 1 is spliced in
    let expand = |c: u64| -> u64 {
        if fix_one {
            (c & 1) | ((c >> 1) << 2) | 2
        } else {
            c
        }
    };
    let mut best: Option<(u64, u64)> = None;
    let mut explored = 0u64;
    let mut visit = |c: u64| {
        explored += 1;
        let mask = expand(c);
        let st = schur_count_mask(mask, n);
        if best.is_none_or(|(b, bm)| st < b || (st == b && mask < bm)) {
            best = Some((st, mask));
        }
    };
    if pick == 0 {
        visit(0);
    } else {
        let limit: u128 = 1u128 << pool;
        let mut c: u64 = (1u64 << pick) - 1;
        loop {
            visit(c);
            let lowest = c & c.wrapping_neg();
            let ripple = c as u128 + lowest as u128;
            if ripple >= limit {
                break;
            }
            let ripple = ripple as u64;
            c = (((c ^ ripple) >> 2) / lowest) | ripple;
        }
    }
    let (optimum, mask) = best.expect("at least one subset is visited");
    let witness = ResidueSet::from_mask(*ctx, mask);
    assert_eq!(count_schur_triples(&witness), optimum);
    Ok(finish(
        SearchMode::Exhaustive,
        optimum,
        witness,
        explored,
        started,
    ))
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// The cube-free problem as a covering model: maximise `Σ x_v` subject to
/// `Σ_{v ∈ e} x_v <= |e| - 1` for every forbidden set `e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverModel {
    pub n: u32,
    pub d: usize,
    pub patterns: CubePatterns,
    /// Forbidden sets as ascending residue lists.
    pub constraints: Vec<Vec<u64>>,
    #[serde(skip)]
    masks: Vec<u128>,
}

impl CoverModel {
    pub fn build(
        ctx: &GroupContext,
        d: usize,
        patterns: CubePatterns,
        budget: u64,
    ) -> Result<CoverModel> {
        let masks = minimal_cube_sets(ctx, d, patterns, budget)?;
        let constraints = masks.iter().map(|&m| mask_members(m).collect()).collect();
        Ok(CoverModel {
            n: ctx.exponent(),
            d,
            patterns,
            constraints,
            masks,
        })
    }

    pub fn context(&self) -> GroupContext {
        GroupContext::new(self.n).expect("built from a valid context")
    }

    pub fn variable_count(&self) -> u64 {
        1u64 << self.n
    }

    /// Optimum of the model by the in-process branch-and-bound (`n <= 6`).
    pub fn solve(&self, opts: SearchOptions) -> Result<SearchCertificate> {
        let started = Instant::now();
        let ctx = self.context();
        let (optimum, witness, nodes) = solve_cover(&ctx, &self.masks, opts, None)?;
        Ok(finish(
            SearchMode::BranchAndBound,
            optimum,
            witness,
            nodes,
            started,
        ))
    }

    /// Whether `set` violates none of the constraints.
    pub fn is_feasible(&self, set: &ResidueSet) -> bool {
        self.violated(set).is_empty()
    }

    /// Indices of violated constraints.
    pub fn violated(&self, set: &ResidueSet) -> Vec<usize> {
        self.constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| c.iter().all(|&x| set.contains(x)))
            .map(|(i, _)| i)
            .collect()
    }

    /// CPLEX LP text.
    pub fn to_lp(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "\\ cube-free subsets of Z_2^{}: d = {}, patterns = {}",
            self.n,
            self.d,
            match self.patterns {
                CubePatterns::All => "all",
                CubePatterns::Conc2 => "conc2",
            }
        );
        out.push_str("Maximize\n obj:");
        let vars: Vec<String> = (0..self.variable_count())
            .map(|v| format!("x{v}"))
            .collect();
        push_wrapped(&mut out, vars.iter().map(String::as_str), " +");
        out.push_str("Subject To\n");
        for (i, c) in self.constraints.iter().enumerate() {
            let _ = write!(out, " c{i}:");
            let names: Vec<String> = c.iter().map(|v| format!("x{v}")).collect();
            push_wrapped(&mut out, names.iter().map(String::as_str), " +");
            // replace the trailing newline with the right-hand side
            out.pop();
            let _ = writeln!(out, " <= {}", c.len() - 1);
        }
        out.push_str("Binary\n");
        for chunk in vars.chunks(16) {
            let _ = writeln!(out, " {}", chunk.join(" "));
        }
        out.push_str("End\n");
        out
    }

    /// DIMACS CNF for "a feasible set with at least `target` elements".
    pub fn to_cnf(&self, target: u64) -> CnfModel {
        let count = self.variable_count() as usize;
        let x = |v: u64| v as i64 + 1;
        let mut clauses: Vec<Vec<i64>> = self
            .constraints
            .iter()
            .map(|c| c.iter().map(|&v| -x(v)).collect())
            .collect();
        let mut num_vars = count;
        if target > count as u64 {
            clauses.push(Vec::new());
        } else {
            // at most `count - target` variables false, as a sequential counter
            let lits: Vec<i64> = (0..count as u64).map(|v| -x(v)).collect();
            num_vars = at_most_k(&lits, count - target as usize, num_vars, &mut clauses);
        }
        CnfModel {
            comment: format!("n={} d={} target={target}", self.n, self.d),
            num_vars,
            clauses,
        }
    }
}

/// Appends ` a + b + ...` broken into lines of at most eight terms.
fn push_wrapped<'a>(out: &mut String, terms: impl Iterator<Item = &'a str>, sep: &str) {
    for (i, t) in terms.enumerate() {
        if i > 0 {
            out.push_str(sep);
            if i % 8 == 0 {
                out.push_str("\n  ");
            }
        }
        out.push(' ');
        out.push_str(t);
    }
    out.push('\n');
}

/// Sequential counter for `Σ lits <= k`; returns the new variable count.
fn at_most_k(lits: &[i64], k: usize, mut next: usize, clauses: &mut Vec<Vec<i64>>) -> usize {
    let len = lits.len();
    if k >= len {
        return next;
    }
    if k == 0 {
        clauses.extend(lits.iter().map(|&l| vec![-l]));
        return next;
    }
    // s[i][j]: at least j + 1 of the first i + 1 literals are true
    let mut s = vec![vec![0i64; k]; len - 1];
    for row in s.iter_mut() {
        for cell in row.iter_mut() {
            next += 1;
            *cell = next as i64;
        }
    }
    clauses.push(vec![-lits[0], s[0][0]]);
    clauses.extend(s[0][1..].iter().map(|&v| vec![-v]));
    for i in 1..len - 1 {
        clauses.push(vec![-lits[i], s[i][0]]);
        clauses.push(vec![-s[i - 1][0], s[i][0]]);
        for j in 1..k {
            clauses.push(vec![-lits[i], -s[i - 1][j - 1], s[i][j]]);
            clauses.push(vec![-s[i - 1][j], s[i][j]]);
        }
        clauses.push(vec![-lits[i], -s[i - 1][k - 1]]);
    }
    clauses.push(vec![-lits[len - 1], -s[len - 2][k - 1]]);
    next
}

/// A clause set; variable `v + 1` means residue `v` is in the set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CnfModel {
    pub comment: String,
    pub num_vars: usize,
    pub clauses: Vec<Vec<i64>>,
}

impl CnfModel {
    pub fn to_dimacs(&self) -> String {
        let mut out = format!(
            "c {}\np cnf {} {}\n",
            self.comment,
            self.num_vars,
            self.clauses.len()
        );
        for c in &self.clauses {
            for l in c {
                let _ = write!(out, "{l} ");
            }
            out.push_str("0\n");
        }
        out
    }
}

/// `export_lp`: the covering model as LP text.
pub fn export_lp(
    ctx: &GroupContext,
    d: usize,
    patterns: CubePatterns,
    budget: u64,
) -> Result<String> {
    Ok(CoverModel::build(ctx, d, patterns, budget)?.to_lp())
}

/// `export_cnf`: the decision version as DIMACS text.
pub fn export_cnf(ctx: &GroupContext, d: usize, target: u64, budget: u64) -> Result<String> {
    Ok(CoverModel::build(ctx, d, CubePatterns::All, budget)?
        .to_cnf(target)
        .to_dimacs())
}

/// Result of checking a solver's variable assignment against a model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionCheck {
    pub feasible: bool,
    pub objective: u64,
    pub set: ResidueSet,
    pub violated: Vec<usize>,
}

/// Reads `name value` lines (`#` starts a comment; unnamed variables are 0)
/// and re-checks every constraint.
pub fn validate_solution(model: &CoverModel, text: &str) -> Result<SolutionCheck> {
    let ctx = model.context();
    let mut set = ResidueSet::empty(ctx);
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(name), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Parse(format!(
                "line {}: expected `name value`",
                lineno + 1
            )));
        };
        let var: u64 = name
            .strip_prefix('x')
            .and_then(|v| v.parse().ok())
            .filter(|&v| v < model.variable_count())
            .ok_or_else(|| Error::Parse(format!("line {}: unknown variable {name}", lineno + 1)))?;
        let value: f64 = value
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad value {value}", lineno + 1)))?;
        if value > 0.5 {
            set.insert(var);
        }
    }
    let violated = model.violated(&set);
    Ok(SolutionCheck {
        feasible: violated.is_empty(),
        objective: set.len(),
        set,
        violated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::centred_set;

    fn ctx(n: u32) -> GroupContext {
        GroupContext::new(n).unwrap()
    }

    #[test]
    fn exact_examples() {
        let opts = SearchOptions::default();
        assert_eq!(max_cube_free_exact(&ctx(3), 2, opts).unwrap().optimum, 4);
        assert_eq!(max_cube_free_exact(&ctx(3), 3, opts).unwrap().optimum, 5);
        assert_eq!(max_cube_free_exact(&ctx(4), 4, opts).unwrap().optimum, 12);
    }

    #[test]
    fn symmetry_and_seeding_keep_the_optimum() {
        for n in 2..=4 {
            for d in 1..=4 {
                let plain = max_cube_free_exact(&ctx(n), d, SearchOptions::default()).unwrap();
                let reduced = max_cube_free_exact(
                    &ctx(n),
                    d,
                    SearchOptions {
                        symmetry: true,
                        seed_with_construction: true,
                        ..Default::default()
                    },
                )
                .unwrap();
                assert_eq!(plain.optimum, reduced.optimum, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn brute_force_agrees() {
        for n in 1..=3 {
            for d in 1..=4 {
                let bb = max_cube_free_exact(&ctx(n), d, SearchOptions::default()).unwrap();
                let bf = max_cube_free_brute_force(&ctx(n), d).unwrap();
                assert_eq!(bb.optimum, bf.optimum, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn d_one_forbids_everything_but_nothing() {
        // Σ*{x} = {x}, so only the empty set is 1-cube-free
        let c = max_cube_free_exact(&ctx(3), 1, SearchOptions::default()).unwrap();
        assert_eq!(c.optimum, 0);
    }

    #[test]
    fn budget_is_enforced() {
        let opts = SearchOptions {
            budget: 3,
            ..Default::default()
        };
        assert!(matches!(
            max_cube_free_exact(&ctx(4), 3, opts),
            Err(Error::Capacity(_))
        ));
        assert!(matches!(
            max_cube_free_exact(&ctx(7), 3, SearchOptions::default()),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn layer_union_examples() {
        assert_eq!(max_cube_free_layer_unions(&ctx(5), 3).unwrap().optimum, 20);
        assert_eq!(max_cube_free_layer_unions(&ctx(4), 2).unwrap().optimum, 8);
        assert!(max_cube_free_layer_unions(&ctx(3), 4).is_err());
    }

    #[test]
    fn min_schur_examples() {
        let r = min_schur_exhaustive(&ctx(3), 5, false, u64::MAX).unwrap();
        assert_eq!((r.optimum, r.explored), (12, 56));
        let centred = centred_set(5, &ctx(3)).unwrap();
        assert_eq!(count_schur_triples(&centred), 12);
        assert_eq!(
            min_schur_exhaustive(&ctx(3), 4, false, u64::MAX)
                .unwrap()
                .optimum,
            0
        );
        let r = min_schur_exhaustive(&ctx(3), 5, true, u64::MAX).unwrap();
        assert_eq!((r.optimum, r.explored), (12, 35));
        assert!(r.witness.contains(1));
        assert!(min_schur_exhaustive(&ctx(5), 17, false, 1000).is_err());
        assert_eq!(
            min_schur_exhaustive(&ctx(3), 0, false, 10).unwrap().optimum,
            0
        );
        assert_eq!(
            min_schur_exhaustive(&ctx(3), 8, false, 10).unwrap().optimum,
            64
        );
    }

    #[test]
    fn schur_mask_matches_set_count() {
        let c = ctx(4);
        for mask in (0..1u64 << 16).step_by(977) {
            let set = ResidueSet::from_mask(c, mask);
            assert_eq!(schur_count_mask(mask, 4), count_schur_triples(&set));
        }
    }

    #[test]
    fn minimal_sets_drop_supersets() {
        let kept = minimal_sets(vec![0b111, 0b011, 0b110, 0b011, 0b1000]);
        assert_eq!(kept, vec![0b1000, 0b011, 0b110]);
    }

    #[test]
    fn cube_sets_include_zero() {
        let sets = minimal_cube_sets(&ctx(3), 3, CubePatterns::All, u64::MAX).unwrap();
        assert!(sets.contains(&1));
        assert!(sets.iter().all(|&s| s == 1 || s & 1 == 0));
    }

    #[test]
    fn conc2_needs_three() {
        assert!(CoverModel::build(&ctx(3), 4, CubePatterns::Conc2, u64::MAX).is_err());
    }

    #[test]
    fn lp_text_shape() {
        let lp = export_lp(&ctx(3), 2, CubePatterns::All, u64::MAX).unwrap();
        assert!(lp.is_ascii());
        assert!(!lp.contains('\r'));
        assert!(lp.contains("Maximize\n obj: x0 + x1"));
        assert!(lp.contains(" c0: x0 <= 0\n"));
        assert!(lp.contains("Binary\n x0 x1 x2 x3 x4 x5 x6 x7\n"));
        assert!(lp.ends_with("End\n"));
        let model = CoverModel::build(&ctx(3), 2, CubePatterns::All, u64::MAX).unwrap();
        assert_eq!(lp.matches(" <= ").count(), model.constraints.len());
    }

    #[test]
    fn model_optima() {
        let solve = |n, d, p| {
            CoverModel::build(&ctx(n), d, p, u64::MAX)
                .unwrap()
                .solve(SearchOptions::default())
                .unwrap()
                .optimum
        };
        assert_eq!(solve(3, 3, CubePatterns::All), 5);
        assert_eq!(solve(3, 2, CubePatterns::All), 4);
        for n in 3..=5 {
            assert_eq!(solve(n, 3, CubePatterns::Conc2), 5 << (n - 3), "n={n}");
        }
    }

    #[test]
    fn solution_validation() {
        let model = CoverModel::build(&ctx(3), 3, CubePatterns::All, u64::MAX).unwrap();
        let good = "# Objective value = 5\nx1 1\nx3 1\nx5 1\nx7 1\nx4 1\nx0 0\n";
        let check = validate_solution(&model, good).unwrap();
        assert!(check.feasible);
        assert_eq!(check.objective, 5);
        let bad = "x1 1\nx2 1\nx3 1\n";
        let check = validate_solution(&model, bad).unwrap();
        assert!(!check.feasible);
        assert!(validate_solution(&model, "x9 1\n").is_err());
        assert!(validate_solution(&model, "x1\n").is_err());
        assert!(validate_solution(&model, "x1 yes\n").is_err());
    }

    #[test]
    fn dimacs_header() {
        let text = export_cnf(&ctx(3), 3, 6, u64::MAX).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("c n=3 d=3 target=6"));
        let header: Vec<&str> = lines.next().unwrap().split(' ').collect();
        assert_eq!(&header[..2], &["p", "cnf"]);
        let clauses: usize = header[3].parse().unwrap();
        assert_eq!(text.lines().count(), clauses + 2);
        assert!(text.lines().skip(2).all(|l| l.ends_with('0')));
    }
}
