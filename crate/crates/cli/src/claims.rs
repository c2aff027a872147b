//! The thirteen acceptance checks, runnable at two scales.

use std::time::Instant;

use clap::ValueEnum;
use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use cubefree::construction::{cd_min_exponent, construct_cd};
use cubefree::counting::{count_schur_triples, layer_profile, schur_lower_bound};
use cubefree::detection::{
    find_d_cube, find_homogeneous_cube, find_multiple_run, homogeneous_witness,
};
use cubefree::group::{centred_set, layer_union, residue_abs};
use cubefree::oracle::{
    alon_freiman_verify_all, applicable_sites, compress, half_sum_subset, keylemma_verify_all,
    max_disjoint_zero_sets, Compression, ResidueCollection, DEFAULT_BUDGET,
};
use cubefree::search::{
    max_cube_free_brute_force, max_cube_free_exact, max_cube_free_layer_unions,
    min_schur_exhaustive, SearchOptions,
};
use cubefree::{GroupContext, ResidueSet};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    /// A few seconds.
    Smoke,
    /// The full acceptance scale.
    Desk,
}

pub type Constructor = fn(u64, &GroupContext) -> cubefree::Result<ResidueSet>;

/// Replaceable pieces, so the harness itself can be tested against faults.
#[derive(Clone, Copy)]
pub struct Hooks {
    pub construct: Constructor,
}

impl Default for Hooks {
    fn default() -> Self {
        Hooks {
            construct: construct_cd,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimOutcome {
    pub id: u32,
    pub name: &'static str,
    pub statement: &'static str,
    pub passed: bool,
    /// Instances checked.
    pub checks: u64,
    pub detail: String,
    pub elapsed_ms: f64,
}

struct Run {
    level: Level,
    seed: u64,
    hooks: Hooks,
}

impl Run {
    fn desk(&self) -> bool {
        self.level == Level::Desk
    }

    fn rng(&self, id: u32) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ (u64::from(id) << 32))
    }
}

/// Number of checks and a summary, or the failing instance.
type CheckResult = Result<(u64, String), String>;

pub struct Claim {
    pub id: u32,
    pub name: &'static str,
    pub statement: &'static str,
    check: fn(&Run) -> CheckResult,
}

pub static CLAIMS: &[Claim] = &[
    Claim {
        id: 1,
        name: "table1",
        statement: "C_d equals the tabulated layer union for d = 2..9 and 26 at n = 12",
        check: table1,
    },
    Claim {
        id: 2,
        name: "schuranal",
        statement: "the largest 2-cube-free set has size 2^{n-1} at n = 3, 4",
        check: sperner,
    },
    Claim {
        id: 3,
        name: "stronger",
        statement: "|A| > (1 - 2^-l) 2^n forces Σ*{x,...,x,y} ⊆ A",
        check: homogeneous,
    },
    Claim {
        id: 4,
        name: "ap",
        statement: "|A| > (1 - 1/(2^l - 1)) 2^n forces {x, 2x, ..., (2^l - 1)x} ⊆ A",
        check: multiple_runs,
    },
    Claim {
        id: 5,
        name: "nocube",
        statement: "C_d is d-cube-free and adding any residue creates a d-cube",
        check: nocube,
    },
    Claim {
        id: 6,
        name: "bestlayer",
        statement: "among layer unions the largest d-cube-free one has size |C_d|",
        check: bestlayer,
    },
    Claim {
        id: 7,
        name: "kleitmananal",
        statement: "sets of size 2^{n-1} + 1 have at least 3·2^{n-1} Schur triples, with equality",
        check: kleitman,
    },
    Claim {
        id: 8,
        name: "conc1",
        statement: "the largest 3-cube-free set has size (5/8) 2^n at n = 3, 4, 5",
        check: conc1,
    },
    Claim {
        id: 9,
        name: "keylemma",
        statement: "2^k + x residues give a sum 2^k or x + 1 disjoint zero sums",
        check: keylemma,
    },
    Claim {
        id: 10,
        name: "alonfreiman",
        statement: "2^{k+1} - 1 non-zero residues mod 2^{k+1} have a sub-sum 2^k, k = 2",
        check: alon_freiman,
    },
    Claim {
        id: 11,
        name: "compressions",
        statement: "T1 keeps C*, T2 and T3 shrink it, disjoint zero-sum counts transfer",
        check: compressions,
    },
    Claim {
        id: 12,
        name: "oracle",
        statement: "find_d_cube agrees with naive multiset enumeration",
        check: oracle_agreement,
    },
    Claim {
        id: 13,
        name: "st_bound",
        statement: "ST(A) >= f(A)",
        check: st_bound,
    },
];

pub fn claim(id: u32) -> Option<&'static Claim> {
    CLAIMS.iter().find(|c| c.id == id)
}

pub fn run_claim(claim: &Claim, level: Level, seed: u64, hooks: Hooks) -> ClaimOutcome {
    let run = Run { level, seed, hooks };
    let started = Instant::now();
    let result = (claim.check)(&run);
    let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    let (passed, checks, detail) = match result {
        Ok((checks, summary)) => (true, checks, summary),
        Err(instance) => (false, 0, format!("Claim {} failed: {instance}", claim.name)),
    };
    ClaimOutcome {
        id: claim.id,
        name: claim.name,
        statement: claim.statement,
        passed,
        checks,
        detail,
        elapsed_ms,
    }
}

/// Runs the selected claims (all when `only` is empty) in parallel; the
/// outcomes come back ordered by id.
pub fn run_claims(level: Level, seed: u64, hooks: Hooks, only: &[u32]) -> Vec<ClaimOutcome> {
    let selected: Vec<&Claim> = CLAIMS
        .iter()
        .filter(|c| only.is_empty() || only.contains(&c.id))
        .collect();
    selected
        .par_iter()
        .map(|c| run_claim(c, level, seed, hooks))
        .collect()
}

fn ctx(n: u32) -> Result<GroupContext, String> {
    GroupContext::new(n).map_err(|e| e.to_string())
}

fn table1(run: &Run) -> CheckResult {
    let rows: &[(u64, &[u32])] = &[
        (2, &[1]),
        (3, &[1, 3]),
        (4, &[1, 2]),
        (5, &[1, 2, 4]),
        (6, &[1, 2, 4, 6]),
        (7, &[1, 2, 4, 5]),
        (8, &[1, 2, 3]),
        (9, &[1, 2, 3, 5]),
        (26, &[1, 2, 3, 4, 6, 7, 8, 10, 11]),
    ];
    let c = ctx(12)?;
    for &(d, layers) in rows {
        let built = (run.hooks.construct)(d, &c).map_err(|e| format!("d={d}: {e}"))?;
        let expected = layer_union(layers, &c).map_err(|e| e.to_string())?;
        if built != expected {
            return Err(format!(
                "d={d} n=12: built {} residues, table has layers {layers:?}",
                built.len()
            ));
        }
    }
    Ok((rows.len() as u64, "all rows match at n = 12".into()))
}

fn sperner(_: &Run) -> CheckResult {
    let mut checks = 0;
    for n in [3, 4] {
        let c = ctx(n)?;
        let bb = max_cube_free_exact(&c, 2, SearchOptions::default()).map_err(|e| e.to_string())?;
        let bf = max_cube_free_brute_force(&c, 2).map_err(|e| e.to_string())?;
        let want = 1u64 << (n - 1);
        if bb.optimum != want || bf.optimum != want {
            return Err(format!(
                "n={n}: branch-and-bound {} and exhaustive {} against {want}",
                bb.optimum, bf.optimum
            ));
        }
        checks += bf.explored;
    }
    Ok((checks, "optimum 4 at n = 3 and 8 at n = 4".into()))
}

fn homogeneous_check(set: &ResidueSet, l: u32) -> Result<(), String> {
    let (x, y) = find_homogeneous_cube(set, l).ok_or_else(|| {
        format!(
            "n={} l={l}: no Σ*{{x,..,x,y}} in {set}",
            set.context().exponent()
        )
    })?;
    homogeneous_witness(set, l, x, y).map_err(|e| e.to_string())?;
    Ok(())
}

/// A uniformly random subset of the given size.
fn random_subset(rng: &mut ChaCha8Rng, c: &GroupContext, size: u64) -> ResidueSet {
    let mut all: Vec<u64> = (0..c.modulus()).collect();
    all.shuffle(rng);
    ResidueSet::from_residues(*c, all.into_iter().take(size as usize)).expect("residues in range")
}

fn homogeneous(run: &Run) -> CheckResult {
    let mut checks = 0;
    for (n, l) in [(3u32, 1u32), (4, 1), (4, 2)] {
        let c = ctx(n)?;
        let threshold = (1u64 << n) - (1u64 << (n - l));
        for mask in 0..1u64 << c.modulus() {
            if u64::from(mask.count_ones()) > threshold {
                homogeneous_check(&ResidueSet::from_mask(c, mask), l)?;
                checks += 1;
            }
        }
    }
    let c = ctx(5)?;
    let threshold = 32 - 8;
    let mut rng = run.rng(3);
    let samples = if run.desk() { 10_000 } else { 1_000 };
    for _ in 0..samples {
        let size = rng.random_range(threshold + 1..=32);
        homogeneous_check(&random_subset(&mut rng, &c, size), 2)?;
        checks += 1;
    }
    Ok((
        checks,
        format!("exhaustive at n <= 4, {samples} random sets at n = 5"),
    ))
}

fn multiple_runs(_: &Run) -> CheckResult {
    let mut checks = 0;
    for n in 1..=4u32 {
        let c = ctx(n)?;
        for l in 1..=2u32 {
            let m = (1u64 << l) - 1;
            for mask in 0..1u64 << c.modulus() {
                // |A| > (1 - 1/m) 2^n
                if m * u64::from(mask.count_ones()) <= (m - 1) << n {
                    continue;
                }
                let set = ResidueSet::from_mask(c, mask);
                let x = find_multiple_run(&set, m)
                    .ok_or_else(|| format!("n={n} l={l}: no run of {m} multiples in {set}"))?;
                if !(1..=m).all(|j| set.contains(c.mul(j, x))) {
                    return Err(format!("n={n} l={l}: run from {x} leaves {set}"));
                }
                checks += 1;
            }
        }
    }
    Ok((checks, "exhaustive for n <= 4, l <= 2".into()))
}

fn nocube(run: &Run) -> CheckResult {
    let mut checks = 0;
    let max_d = if run.desk() { 5 } else { 4 };
    for d in 1..=max_d {
        let low = cd_min_exponent(d).map_err(|e| e.to_string())?;
        for n in low..=7 {
            let c = ctx(n)?;
            let set = (run.hooks.construct)(d, &c).map_err(|e| format!("d={d} n={n}: {e}"))?;
            if let Some(w) = find_d_cube(&set, d as usize) {
                return Err(format!("C_{d} at n={n} contains Σ*{}", w.generators));
            }
            checks += 1;
            for x in set.complement().iter() {
                let mut bigger = set.clone();
                bigger.insert(x);
                if find_d_cube(&bigger, d as usize).is_none() {
                    return Err(format!("C_{d} ∪ {{{x}}} at n={n} is still {d}-cube-free"));
                }
                checks += 1;
            }
        }
    }
    Ok((checks, format!("d <= {max_d}, every admissible n <= 7")))
}

fn bestlayer(run: &Run) -> CheckResult {
    let mut checks = 0;
    let max_n = if run.desk() { 10 } else { 7 };
    for n in 1..=max_n {
        let c = ctx(n)?;
        for d in 1..=n as u64 {
            let best = max_cube_free_layer_unions(&c, d as usize).map_err(|e| e.to_string())?;
            let cd = (run.hooks.construct)(d, &c).map_err(|e| format!("d={d} n={n}: {e}"))?;
            if best.optimum != cd.len() {
                return Err(format!(
                    "d={d} n={n}: best union {} has size {}, C_d has {}",
                    best.witness,
                    best.optimum,
                    cd.len()
                ));
            }
            checks += best.explored;
        }
    }
    Ok((checks, format!("all d <= n <= {max_n}")))
}

fn kleitman(_: &Run) -> CheckResult {
    let mut checks = 0;
    for (n, space) in [(3u32, 56u64), (4, 11_440)] {
        let c = ctx(n)?;
        let m = (1u64 << (n - 1)) + 1;
        let r = min_schur_exhaustive(&c, m, false, u64::MAX).map_err(|e| e.to_string())?;
        let want = 3u64 << (n - 1);
        let centred = count_schur_triples(&centred_set(m, &c).map_err(|e| e.to_string())?);
        if r.optimum != want || r.explored != space || centred != want {
            return Err(format!(
                "n={n}: minimum {} over {} sets, centred {centred}, expected {want} over {space}",
                r.optimum, r.explored
            ));
        }
        checks += r.explored;
    }
    Ok((
        checks,
        "minimum 12 at n = 3 and 24 at n = 4, attained by centred sets".into(),
    ))
}

fn conc1(_: &Run) -> CheckResult {
    let mut nodes = 0;
    for n in 3..=5u32 {
        let c = ctx(n)?;
        let opts = SearchOptions {
            symmetry: n == 5,
            ..Default::default()
        };
        let r = max_cube_free_exact(&c, 3, opts).map_err(|e| e.to_string())?;
        let want = 5u64 << (n - 3);
        if r.optimum != want {
            return Err(format!("n={n}: optimum {} instead of {want}", r.optimum));
        }
        nodes += r.explored;
    }
    Ok((nodes, "optimum 5, 10, 20 at n = 3, 4, 5".into()))
}

fn keylemma(run: &Run) -> CheckResult {
    let mut runs = vec![(1u32, 0usize), (1, 1), (2, 0), (2, 1), (2, 2), (3, 0)];
    if run.desk() {
        runs.push((3, 1));
    }
    let mut checks = 0;
    for (k, x) in runs {
        let r = keylemma_verify_all(k, x, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        if let Some(bad) = r.counterexamples.first() {
            return Err(format!("k={k} x={x}: {bad:?}"));
        }
        if r.checked != r.space_size {
            return Err(format!(
                "k={k} x={x}: checked {} of {}",
                r.checked, r.space_size
            ));
        }
        checks += r.checked;
    }
    Ok((checks, "no counterexample".into()))
}

fn alon_freiman(_: &Run) -> CheckResult {
    let r = alon_freiman_verify_all(2, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    if let Some(bad) = r.counterexamples.first() {
        return Err(format!("k=2: {bad:?} has no sub-sum 4 mod 8"));
    }
    if r.checked != 1716 {
        return Err(format!(
            "k=2: checked {} multisets instead of 1716",
            r.checked
        ));
    }
    Ok((r.checked, "all 1716 multisets".into()))
}

/// A collection with no sub-collection summing to `2^k`, shaped so that each
/// compression often applies.
fn compressible(rng: &mut ChaCha8Rng) -> Option<ResidueCollection> {
    let k = rng.random_range(2..=4u32);
    let modulus = 1u64 << (k + 1);
    let half = modulus / 2;
    let pattern = rng.random_range(0..3);
    let mut xs = Vec::new();
    if pattern == 1 {
        // u + v plus the units must miss 2^k: few 1s, and fewer than
        // u + v - 2^k copies of -1
        let lo = (3 * half).div_ceil(4);
        let (u, v) = (rng.random_range(lo..half), rng.random_range(lo..half));
        let ones = rng.random_range(0..half - u.max(v));
        let minus = rng.random_range(half / 2..=(u + v - half).max(half / 2));
        xs.extend([u, v]);
        xs.extend(std::iter::repeat_n(1, ones as usize));
        xs.extend(std::iter::repeat_n(modulus - 1, minus as usize));
    } else {
        xs.extend(std::iter::repeat_n(1, rng.random_range(0..half as usize)));
        xs.extend(std::iter::repeat_n(
            modulus - 1,
            rng.random_range(0..half as usize),
        ));
        if pattern == 0 {
            let t = rng.random_range(1..modulus);
            let (neg, partner) = (modulus - t, (half + modulus - t) % modulus);
            if partner != 0 {
                xs.extend([neg, partner, partner]);
            }
        }
    }
    for _ in 0..rng.random_range(0..3) {
        xs.push(rng.random_range(1..modulus));
    }
    let c = ResidueCollection::new(k, xs).ok()?;
    (!c.is_empty() && half_sum_subset(&c).is_none()).then_some(c)
}

fn compressions(run: &Run) -> CheckResult {
    let target = if run.desk() { 10_000 } else { 1_000 };
    let mut rng = run.rng(11);
    let mut kinds = [0u64; 3];
    let mut transfers = 0u64;
    let mut sites = 0u64;
    while sites < target {
        let Some(c) = compressible(&mut rng) else {
            continue;
        };
        let options = applicable_sites(&c);
        if options.is_empty() {
            continue;
        }
        let site = options[rng.random_range(0..options.len())];
        let out = compress(&c, site).map_err(|e| format!("{c:?} {site:?}: {e}"))?;
        let (before, after) = (c.iterated_sumset_mask(), out.iterated_sumset_mask());
        let kind = match site {
            Compression::TypeOne { .. } => 0,
            Compression::TypeTwo { .. } => 1,
            Compression::TypeThree { .. } => 2,
        };
        let ok = if kind == 0 {
            after == before
        } else {
            after & !before == 0
        };
        if !ok {
            return Err(format!(
                "{:?} under {site:?}: sumset {before:#x} became {after:#x}",
                c.elements()
            ));
        }
        if c.k() <= 3 {
            let (mc, mo) = (max_disjoint_zero_sets(&c), max_disjoint_zero_sets(&out));
            let slack = match site {
                Compression::TypeOne { t } => residue_abs(t, c.k()) as usize - 1,
                _ => 0,
            };
            if mc + slack < mo {
                return Err(format!(
                    "{:?} under {site:?}: {mo} disjoint zero sums after, {mc} before",
                    c.elements()
                ));
            }
            transfers += 1;
        }
        kinds[kind] += 1;
        sites += 1;
    }
    Ok((
        sites,
        format!(
            "{sites} sites (type 1: {}, type 2: {}, type 3: {}), {transfers} transfer checks",
            kinds[0], kinds[1], kinds[2]
        ),
    ))
}

fn cube_by_subsets(c: &GroupContext, gens: &[u64]) -> ResidueSet {
    let mut out = ResidueSet::empty(*c);
    for pick in 1u32..1 << gens.len() {
        let s = (0..gens.len())
            .filter(|i| pick >> i & 1 == 1)
            .fold(0, |acc, i| c.add(acc, gens[i]));
        out.insert(s);
    }
    out
}

/// Tries every `d`-multiset drawn from `A`.
fn has_cube_naive(set: &ResidueSet, d: usize) -> bool {
    fn rec(set: &ResidueSet, pool: &[u64], from: usize, buf: &mut Vec<u64>, d: usize) -> bool {
        if buf.len() == d {
            return cube_by_subsets(&set.context(), buf).is_subset_of(set);
        }
        (from..pool.len()).any(|i| {
            buf.push(pool[i]);
            let hit = rec(set, pool, i, buf, d);
            buf.pop();
            hit
        })
    }
    rec(set, &set.to_vec(), 0, &mut Vec::with_capacity(d), d)
}

fn oracle_agreement(run: &Run) -> CheckResult {
    let mut checks = 0;
    let c = ctx(3)?;
    for mask in 0..256u64 {
        let set = ResidueSet::from_mask(c, mask);
        for d in 1..=3 {
            if find_d_cube(&set, d).is_some() != has_cube_naive(&set, d) {
                return Err(format!("n=3 d={d} A={set}"));
            }
            checks += 1;
        }
    }
    let c = ctx(5)?;
    let mut rng = run.rng(12);
    let samples = if run.desk() { 1_000 } else { 200 };
    for _ in 0..samples {
        let p: f64 = rng.random_range(0.3..0.95);
        let set = ResidueSet::from_residues(c, (0..32).filter(|_| rng.random_bool(p)))
            .expect("residues in range");
        for d in 1..=4 {
            if find_d_cube(&set, d).is_some() != has_cube_naive(&set, d) {
                return Err(format!("n=5 d={d} A={set}"));
            }
            checks += 1;
        }
    }
    Ok((
        checks,
        format!("all subsets at n = 3, {samples} random sets at n = 5"),
    ))
}

fn st_bound(run: &Run) -> CheckResult {
    let check = |set: &ResidueSet| -> Result<(), String> {
        let c = set.context();
        let (st, f) = (
            count_schur_triples(set),
            schur_lower_bound(&layer_profile(set), &c),
        );
        if st < f {
            return Err(format!("n={} A={set}: ST = {st} < f = {f}", c.exponent()));
        }
        Ok(())
    };
    let mut checks = 0;
    for n in [3u32, 4] {
        let c = ctx(n)?;
        for mask in 0..1u64 << c.modulus() {
            check(&ResidueSet::from_mask(c, mask))?;
            checks += 1;
        }
    }
    let c = ctx(8)?;
    let mut rng = run.rng(13);
    let samples = if run.desk() { 100_000 } else { 10_000 };
    for _ in 0..samples {
        let p: f64 = rng.random();
        let set = ResidueSet::from_residues(c, (0..256).filter(|_| rng.random_bool(p)))
            .expect("residues in range");
        check(&set)?;
        checks += 1;
    }
    Ok((
        checks,
        format!("exhaustive at n = 3, 4 and {samples} random sets at n = 8"),
    ))
}
