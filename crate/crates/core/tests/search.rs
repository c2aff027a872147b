mod common;

use common::ctx;
use cubefree::construction::cd_size;
use cubefree::counting::count_schur_triples;
use cubefree::detection::is_d_cube_free;
use cubefree::group::centred_set;
use cubefree::search::{
    max_cube_free_brute_force, max_cube_free_exact, max_cube_free_layer_unions,
    min_schur_exhaustive, CoverModel, CubePatterns, SearchOptions,
};

#[test]
fn methods_agree() {
    for n in 1..=4u32 {
        let c = ctx(n);
        for d in 1..=5usize {
            let bb = max_cube_free_exact(&c, d, SearchOptions::default()).unwrap();
            let model = CoverModel::build(&c, d, CubePatterns::All, u64::MAX).unwrap();
            let solved = model.solve(SearchOptions::default()).unwrap();
            assert_eq!(bb.optimum, solved.optimum, "n={n} d={d}");
            assert!(model.is_feasible(&bb.witness));
            if n <= 3 || d <= 3 {
                let bf = max_cube_free_brute_force(&c, d).unwrap();
                assert_eq!(bb.optimum, bf.optimum, "n={n} d={d}");
            }
            assert!(is_d_cube_free(&bb.witness, d));
            assert_eq!(bb.witness.len(), bb.optimum);
        }
    }
}

#[test]
fn exact_matches_cd_where_it_fits() {
    for n in 2..=5u32 {
        let c = ctx(n);
        for d in 2..=n.min(4) as usize {
            let opts = SearchOptions {
                symmetry: true,
                ..Default::default()
            };
            let bb = max_cube_free_exact(&c, d, opts).unwrap();
            assert_eq!(bb.optimum, cd_size(d as u64, &c).unwrap(), "n={n} d={d}");
        }
    }
}

#[test]
fn layer_unions_give_lower_bounds() {
    for n in 2..=4u32 {
        let c = ctx(n);
        for d in 1..=n as usize {
            let unions = max_cube_free_layer_unions(&c, d).unwrap();
            let exact = max_cube_free_exact(&c, d, SearchOptions::default()).unwrap();
            assert!(unions.optimum <= exact.optimum);
            assert!(is_d_cube_free(&unions.witness, d));
        }
    }
}

#[test]
fn min_schur_at_half_plus_one() {
    for n in 2..=4u32 {
        let c = ctx(n);
        let m = (1u64 << (n - 1)) + 1;
        let r = min_schur_exhaustive(&c, m, false, u64::MAX).unwrap();
        assert_eq!(r.optimum, 3 << (n - 1));
        assert_eq!(count_schur_triples(&centred_set(m, &c).unwrap()), r.optimum);
        let sym = min_schur_exhaustive(&c, m, true, u64::MAX).unwrap();
        assert_eq!(sym.optimum, r.optimum);
    }
}

#[test]
fn min_schur_is_zero_up_to_half() {
    let c = ctx(4);
    for m in 0..=8 {
        assert_eq!(
            min_schur_exhaustive(&c, m, false, u64::MAX)
                .unwrap()
                .optimum,
            0
        );
    }
}

/// Plain DPLL with unit propagation; returns a model on success.
fn dpll(clauses: &[Vec<i64>], num_vars: usize) -> Option<Vec<bool>> {
    fn solve(clauses: &[Vec<i64>], assign: &mut Vec<Option<bool>>) -> bool {
        loop {
            let mut unit = None;
            for c in clauses {
                let mut open = None;
                let mut open_count = 0;
                let mut satisfied = false;
                for &l in c {
                    match assign[l.unsigned_abs() as usize] {
                        Some(v) if v == (l > 0) => {
                            satisfied = true;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            open = Some(l);
                            open_count += 1;
                        }
                    }
                }
                if satisfied {
                    continue;
                }
                match open_count {
                    0 => return false,
                    1 => {
                        unit = open;
                        break;
                    }
                    _ => {}
                }
            }
            match unit {
                Some(l) => assign[l.unsigned_abs() as usize] = Some(l > 0),
                None => break,
            }
        }
        let Some(var) = (1..assign.len()).find(|&v| assign[v].is_none()) else {
            return true;
        };
        for value in [true, false] {
            let mut trial = assign.clone();
            trial[var] = Some(value);
            if solve(clauses, &mut trial) {
                *assign = trial;
                return true;
            }
        }
        false
    }
    let mut assign = vec![None; num_vars + 1];
    solve(clauses, &mut assign).then(|| assign.iter().map(|v| v.unwrap_or(false)).collect())
}

#[test]
fn cnf_decides_the_target() {
    for (n, d, target, sat) in [
        (3, 3, 6, false),
        (3, 3, 5, true),
        (3, 2, 5, false),
        (3, 2, 4, true),
    ] {
        let model = CoverModel::build(&ctx(n), d, CubePatterns::All, u64::MAX).unwrap();
        let cnf = model.to_cnf(target);
        let solution = dpll(&cnf.clauses, cnf.num_vars);
        assert_eq!(solution.is_some(), sat, "n={n} d={d} target={target}");
        if let Some(bits) = solution {
            let set = cubefree::ResidueSet::from_residues(
                ctx(n),
                (0..8u64).filter(|&v| bits[v as usize + 1]),
            )
            .unwrap();
            assert!(set.len() >= target);
            assert!(is_d_cube_free(&set, d));
        }
    }
}

#[test]
fn cnf_threshold_is_the_optimum() {
    for n in 1..=3u32 {
        for d in 1..=3usize {
            let c = ctx(n);
            let model = CoverModel::build(&c, d, CubePatterns::All, u64::MAX).unwrap();
            let best = max_cube_free_exact(&c, d, SearchOptions::default())
                .unwrap()
                .optimum;
            for target in 0..=c.modulus() + 1 {
                let cnf = model.to_cnf(target);
                assert_eq!(dpll(&cnf.clauses, cnf.num_vars).is_some(), target <= best);
            }
        }
    }
}
