//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Reference tables are asserted verbatim. Two reference claims are wrong
//! and the corresponding assertions fail by design, with the certificate
//! spelled out in the failure message:
//!
//! - the gamma=4, a=9 existence row lists b=0, but no 4-regular
//!   triangle-free graph on 9 vertices exists (criterion: existence table);
//! - a (12,10) instance at gamma=4 with girth-10 lift would need a 12-vertex
//!   girth-5 graph with 19 edges, above the exhaustively certified maximum
//!   of 18 (criterion: girth-10 minima).

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use etsa::bounds;
use etsa::constructions;
use etsa::extremal::{mantel_bound, ExQuery, Extremal};
use etsa::feasibility;
use etsa::irregular::{self};
use etsa::oracle::{self, DegreeSpec, ExistenceQuery};
use etsa::tanner::{self, TannerGraph};
use etsa::types::{ColumnWeight, DegreeSet, EtsSignature, Girth};
use etsa::Budget;

fn extremal() -> &'static Extremal {
    static SHARED: OnceLock<Extremal> = OnceLock::new();
    SHARED.get_or_init(Extremal::new)
}

fn budget() -> Budget {
    Budget::default()
}

fn gamma(g: u32) -> ColumnWeight {
    ColumnWeight::new(g).unwrap()
}

#[test]
fn nonexistence_table_reproduces_reference() {
    let table =
        feasibility::nonexistence_table((3..=6).map(gamma), 4..=9).unwrap();
    // Rows a=4..9; one entry per gamma 3..6; None encodes the "-" cell
    // (everything excluded by the size rule).
    let expected: &[(u32, [Option<&[u32]>; 4])] = &[
        (4, [Some(&[1, 3]), None, None, None]),
        (5, [Some(&[0, 2, 4]), Some(&[1, 3]), None, None]),
        (6, [Some(&[1, 3, 5]), Some(&[1, 3, 5]), Some(&[1, 3, 5]), None]),
        (
            7,
            [
                Some(&[0, 2, 4, 6]),
                Some(&[1, 3, 5]),
                Some(&[0, 2, 4, 6]),
                Some(&[1, 3, 5]),
            ],
        ),
        (
            8,
            [
                Some(&[1, 3, 5, 7]),
                Some(&[1, 3, 5, 7]),
                Some(&[1, 3, 5, 7]),
                Some(&[1, 3, 5, 7]),
            ],
        ),
        (
            9,
            [
                Some(&[0, 2, 4, 6, 8]),
                Some(&[1, 3, 5, 7]),
                Some(&[0, 2, 4, 6, 8]),
                Some(&[1, 3, 5, 7]),
            ],
        ),
    ];
    for (a, cols) in expected {
        for (i, want) in cols.iter().enumerate() {
            let g = 3 + i as u32;
            let cell = table.cell(*a, g).unwrap();
            match want {
                Some(list) => {
                    assert!(!cell.all_infeasible_by_size, "a={a} gamma={g}");
                    assert_eq!(cell.infeasible_b, *list, "a={a} gamma={g}");
                }
                None => {
                    assert!(cell.all_infeasible_by_size, "a={a} gamma={g}");
                    let all: Vec<u32> = (0..*a).collect();
                    assert_eq!(cell.infeasible_b, all, "a={a} gamma={g}");
                }
            }
        }
    }
    println!("PASS  nonexistence table (gamma 3-6, a 4-9) matches the reference cell-for-cell");
}

#[test]
fn existence_table_reproduces_reference() {
    // Reference rows for Tanner girth 8 (triangle-free normal graphs).
    type Rows = &'static [(u32, &'static [u32])];
    let reference: &[(u32, Rows)] = &[
        (
            3,
            &[
                (4, &[]),
                (5, &[3]),
                (6, &[0, 2, 4]),
                (7, &[1, 3, 5]),
                (8, &[0, 2, 4, 6]),
                (9, &[1, 3, 5, 7]),
            ],
        ),
        (
            4,
            &[
                (4, &[]),
                (5, &[]),
                (6, &[]),
                (7, &[4, 6]),
                (8, &[0, 2, 4, 6]),
                (9, &[0, 2, 4, 6, 8]),
            ],
        ),
        (
            5,
            &[
                (4, &[]),
                (5, &[]),
                (6, &[]),
                (7, &[]),
                (8, &[]),
                (9, &[5, 7]),
            ],
        ),
    ];
    let mut mismatches = Vec::new();
    for (g, rows) in reference {
        let table =
            oracle::existence_table(gamma(*g), 4, 4..=9, extremal(), &budget()).unwrap();
        for (a, want) in *rows {
            let row = table.row(*a).unwrap();
            assert!(
                row.unknown_b.is_empty(),
                "gamma={g} a={a}: budget left cells undecided"
            );
            if row.realizable_b != *want {
                mismatches.push(format!(
                    "gamma={g} a={a}: certified {:?}, reference says {:?}",
                    row.realizable_b, want
                ));
            }
        }
    }
    if mismatches.is_empty() {
        println!("PASS  existence table (gamma 3-5, a 4-9) matches the reference");
    } else {
        println!("FAIL  existence table differs from the reference:");
        for m in &mismatches {
            println!("      {m}");
        }
    }
    assert!(
        mismatches.is_empty(),
        "the reference row is unrealizable: a 4-regular triangle-free graph on 9 vertices \
         cannot exist (each degree-4 vertex forces neighbor degrees summing past n-1), and \
         the exhaustive search confirms it; every other cell matches: {mismatches:?}"
    );
}

#[test]
fn tightness_at_girth8() {
    for g in 2..=6u32 {
        let cw = gamma(g);
        // Below the bound: every b < a is certified out.
        let a_below = 2 * g - 2;
        for b in 0..a_below {
            let q = ExistenceQuery::regular(a_below, b, cw, 4).unwrap();
            assert!(
                !oracle::exists_ets(&q, extremal(), &budget()).unwrap().is_yes(),
                "gamma={g}: ({a_below},{b}) should be impossible"
            );
        }
        // At the bound: (2*gamma-1, gamma) is realizable.
        let a_min = 2 * g - 1;
        let q = ExistenceQuery::regular(a_min, g, cw, 4).unwrap();
        let found = oracle::exists_ets(&q, extremal(), &budget()).unwrap();
        assert!(found.is_yes(), "gamma={g}: ({a_min},{g}) should exist");

        // The stored construction attains it.
        let tight = constructions::tight_girth8(cw);
        assert!(tight.validate().is_ok());
        assert_eq!(tight.signature(), EtsSignature { a: a_min, b: g });
        let lift = constructions::lift_to_tanner(&tight);
        if g >= 3 {
            assert_eq!(tanner::girth_of(&lift), Some(8), "gamma={g}");
        } else {
            // K_{1,2} is a path; no cycle at all.
            assert_eq!(tanner::girth_of(&lift), None);
        }
    }
    println!(
        "PASS  girth-8 tightness: nothing at 2*gamma-2, the complete bipartite instance \
         at 2*gamma-1 with deficiency gamma (gamma 2-6)"
    );
}

#[test]
fn extremal_reference_values() {
    let q = ExQuery::new(10, 5, None).unwrap();
    assert_eq!(extremal().exact_ex(&q, &budget()).unwrap().0, 15);
    let q = ExQuery::new(11, 5, None).unwrap();
    assert_eq!(extremal().exact_ex(&q, &budget()).unwrap().0, 16);
    for n in 1..=12usize {
        let q = ExQuery::new(n, 4, None).unwrap();
        let (value, _) = extremal().exact_ex(&q, &budget()).unwrap();
        assert_eq!(value as u64, mantel_bound(n as u64), "n={n}");
    }
    println!(
        "PASS  extremal values: girth-5 maxima 15 (n=10) and 16 (n=11); triangle-free \
         maxima equal floor(n^2/4) for n <= 12"
    );
}

#[test]
fn girth10_minimum_gamma3_and_impossible_cells() {
    let spec = DegreeSpec::Regular(gamma(3));
    let (sig, witness) =
        oracle::min_size_observed(&spec, 5, 8, extremal(), &budget())
            .unwrap()
            .expect("gamma=3 girth-10 instance exists");
    assert_eq!(sig, EtsSignature { a: 7, b: 5 });
    assert!(witness.girth().is_some_and(|c| c >= 5));

    // (11,10) at gamma=4 needs 17 edges, above the certified maximum 16;
    // (10,8) needs 16, above the certified maximum 15.
    let q = ExistenceQuery::regular(11, 10, gamma(4), 5).unwrap();
    assert!(!oracle::exists_ets(&q, extremal(), &budget()).unwrap().is_yes());
    let q = ExistenceQuery::regular(10, 8, gamma(4), 5).unwrap();
    assert!(!oracle::exists_ets(&q, extremal(), &budget()).unwrap().is_yes());
    println!(
        "PASS  girth-10: minimum size 7 at gamma=3 with a (7,5) witness; (11,10) and \
         (10,8) at gamma=4 certified impossible"
    );
}

#[test]
fn girth10_minimum_gamma4() {
    let spec = DegreeSpec::Regular(gamma(4));
    let found = oracle::min_size_observed(&spec, 5, 12, extremal(), &budget()).unwrap();
    match &found {
        Some((sig, _)) if *sig == (EtsSignature { a: 12, b: 10 }) => {
            println!("PASS  girth-10: minimum size 12 at gamma=4 with a (12,10) witness");
        }
        Some((sig, _)) => println!("FAIL  girth-10 gamma=4: found {sig}, reference says (12,10)"),
        None => {
            println!(
                "FAIL  girth-10 gamma=4: reference says (12,10), but no size-12 instance \
                 exists; the certified minimum is (13,10)"
            );
        }
    }
    assert_eq!(
        found.map(|(sig, _)| sig),
        Some(EtsSignature { a: 12, b: 10 }),
        "the reference (12,10) instance cannot exist: it needs 19 edges in a 12-vertex \
         girth-5 graph and the exhaustively certified maximum is 18. The true minimum, \
         certified by the same search, is (13,10); see constructions::girth10_witness(4)."
    );
}

#[test]
fn irregular_table_reproduces_reference_with_arbitration() {
    let universe = DegreeSet::new(vec![2, 3, 4, 5, 6]).unwrap();
    let table = irregular::irregular_table(&universe, extremal(), &budget()).unwrap();
    let known = |ds: &[u32]| {
        table
            .known(ds)
            .unwrap_or_else(|| panic!("budget covered {ds:?}"))
    };

    // Entries the reference states unambiguously.
    let full: &[(&[u32], (u32, u32))] = &[
        (&[2, 3], (4, 1)),
        (&[2, 4], (4, 2)),
        (&[2, 5], (4, 3)),
        (&[2, 3, 4], (4, 3)),
        (&[2, 6], (5, 4)),
        (&[3, 4], (5, 4)),
        (&[2, 3, 5], (5, 2)),
        (&[2, 3, 6], (5, 3)),
        (&[2, 4, 5], (5, 3)),
        (&[2, 4, 6], (5, 4)),
        (&[2, 3, 4, 5], (5, 4)),
        (&[3, 5], (6, 2)),
        (&[3, 6], (6, 3)),
        (&[3, 4, 5], (6, 3)),
        (&[3, 4, 6], (6, 4)),
        (&[3, 5, 6], (6, 5)),
        (&[2, 4, 5, 6], (6, 5)),
        (&[2, 3, 5, 6], (6, 4)),
        (&[4, 5], (7, 5)),
        (&[3, 4, 5, 6], (7, 3)),
        (&[2, 3, 4, 5, 6], (7, 4)),
    ];
    for &(ds, (a, b)) in full {
        assert_eq!(
            known(ds).signature,
            EtsSignature { a, b },
            "D={ds:?}"
        );
    }
    // Size-only rows.
    assert_eq!(known(&[4, 5, 6]).signature.a, 8);
    assert_eq!(known(&[5, 6]).signature.a, 9);

    // {4,6} appears in the reference at both size 7 and size 8; the
    // exhaustive verdict is (7,6), agreeing with the degree-raising rule.
    let m = known(&[4, 6]);
    assert_eq!(m.signature, EtsSignature { a: 7, b: 6 });
    println!(
        "NOTE  reference rows for D={{4,6}} conflict (size 7 vs 8); certified minimum is {}",
        m.signature
    );

    // {2,5,6} coexists with size-5 entries containing degree 6; certified
    // verdict agrees with its stated (6,3) row.
    let m = known(&[2, 5, 6]);
    assert_eq!(m.signature, EtsSignature { a: 6, b: 3 });
    println!("NOTE  D={{2,5,6}} arbitrated: certified minimum is {}", m.signature);

    // {2,3,4,6} has no reference row at all; pin the certified value.
    let m = known(&[2, 3, 4, 6]);
    assert_eq!(m.signature, EtsSignature { a: 6, b: 3 });
    println!(
        "NOTE  D={{2,3,4,6}} has no reference row; certified minimum is {}",
        m.signature
    );

    // {4,7} from the surrounding discussion (outside the subset universe).
    let extra = DegreeSet::new(vec![4, 7]).unwrap();
    let m = irregular::min_size_irregular(&extra, extremal(), &budget()).unwrap();
    assert_eq!(m.signature.a, 8);

    println!(
        "PASS  irregular minima over subsets of {{2..6}} match the reference on all \
         unambiguous entries; conflicting entries arbitrated above"
    );
}

#[test]
fn general_girth_formulas_and_monotonicity() {
    let girth = |g: u32| Girth::new(g).unwrap();
    assert_eq!(bounds::min_size(gamma(5), girth(14)).unwrap().value, 28);
    assert_eq!(bounds::min_size(gamma(6), girth(12)).unwrap().value, 33);
    assert_eq!(bounds::min_size(gamma(3), girth(12)).unwrap().value, 7);
    for g in (6..=16u32).step_by(2) {
        for gm in 3..=8u32 {
            let here = bounds::min_size(gamma(gm), girth(g)).unwrap().value;
            if gm > 3 {
                assert!(here >= bounds::min_size(gamma(gm - 1), girth(g)).unwrap().value);
            }
            if g > 6 {
                assert!(here >= bounds::min_size(gamma(gm), girth(g - 2)).unwrap().value);
            }
        }
    }
    println!(
        "PASS  general-girth size bounds: 28 at (gamma=5, g=14), 33 at (6,12), 7 at \
         (3,12); monotone in gamma and girth"
    );
}

/// Random Tanner graph with variable degrees in `2..=max_gamma`.
fn random_tanner(rng: &mut ChaCha8Rng, max_var: usize, max_gamma: u32) -> TannerGraph {
    let n_var = rng.gen_range(4..=max_var);
    let n_check = rng.gen_range(n_var / 2..=n_var + 4).max(4);
    let mut var_adj = Vec::with_capacity(n_var);
    let checks: Vec<u32> = (0..n_check as u32).collect();
    for _ in 0..n_var {
        let d = rng.gen_range(2..=max_gamma).min(n_check as u32);
        let mut picks = checks.clone();
        picks.shuffle(rng);
        picks.truncate(d as usize);
        var_adj.push(picks);
    }
    TannerGraph::new(n_var, n_check, var_adj).unwrap()
}

/// Unpruned reference scan: every subset by bitmask, connectivity checked
/// directly, classification by counting check degrees.
fn naive_connected_scan(
    t: &TannerGraph,
    a_max: u32,
    b_max: u32,
) -> BTreeMap<(u32, u32), (u64, Vec<u32>)> {
    let n = t.n_var();
    let mut classes: BTreeMap<(u32, u32), (u64, Vec<u32>)> = BTreeMap::new();
    for mask in 1u64..(1 << n) {
        if mask.count_ones() > a_max {
            continue;
        }
        let subset: Vec<u32> = (0..n as u32).filter(|v| mask & (1 << v) != 0).collect();
        // Connectivity over shares-a-check adjacency.
        let mut seen = vec![subset[0]];
        let mut stack = vec![subset[0]];
        while let Some(v) = stack.pop() {
            for &w in &subset {
                if seen.contains(&w) {
                    continue;
                }
                let shares = t
                    .var_neighbors(v as usize)
                    .iter()
                    .any(|c| t.var_neighbors(w as usize).contains(c));
                if shares {
                    seen.push(w);
                    stack.push(w);
                }
            }
        }
        if seen.len() != subset.len() {
            continue;
        }
        let class = tanner::classify_induced(t, &subset).unwrap();
        let (a, b) = (class.signature.a, class.signature.b);
        if !class.is_elementary || b > b_max || b >= a {
            continue;
        }
        classes
            .entry((a, b))
            .and_modify(|(count, witness)| {
                *count += 1;
                if subset < *witness {
                    *witness = subset.clone();
                }
            })
            .or_insert((1, subset));
    }
    classes
}

#[test]
fn scan_matches_naive_enumeration_on_random_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(20240811);
    for trial in 0..50 {
        let t = random_tanner(&mut rng, 14, 4);
        let a_max = 6;
        let report = tanner::scan_ets(&t, a_max, u32::MAX, true, &budget()).unwrap();
        let naive = naive_connected_scan(&t, a_max, u32::MAX);
        let got: BTreeMap<(u32, u32), (u64, Vec<u32>)> = report
            .classes
            .iter()
            .map(|c| ((c.a, c.b), (c.count, c.witness.clone())))
            .collect();
        assert_eq!(got, naive, "trial {trial}");
    }
    println!("PASS  scan equals naive connected-subset enumeration on 50 random codes");
}

#[test]
fn round_trips() {
    // Normal graph -> Tanner lift -> normal graph, on every construction.
    let mut graphs = Vec::new();
    for g in 2..=8 {
        graphs.push(constructions::tight_girth8(gamma(g)));
    }
    graphs.push(constructions::girth10_witness(gamma(3)).unwrap());
    graphs.push(constructions::girth10_witness(gamma(4)).unwrap());
    for base in 3..=6 {
        let tight = constructions::tight_girth8(gamma(base));
        let up = BTreeMap::from([(0u32, base + 2)]);
        graphs.push(constructions::augment_degrees(&tight, &up).unwrap());
    }
    for g in &graphs {
        let lift = constructions::lift_to_tanner(g);
        let all: Vec<u32> = (0..g.n() as u32).collect();
        let back = tanner::normal_of(&lift, &all).unwrap();
        assert_eq!(&back, g);
    }

    // alist serialize -> parse is the identity on 100 generated codes.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut codes: Vec<TannerGraph> = graphs.iter().map(constructions::lift_to_tanner).collect();
    while codes.len() < 100 {
        codes.push(random_tanner(&mut rng, 20, 5));
    }
    for code in &codes {
        let text = tanner::serialize_alist(code);
        let parsed = tanner::parse_alist(&text).unwrap();
        assert_eq!(&parsed, code);
        assert_eq!(tanner::serialize_alist(&parsed), text);
    }
    println!(
        "PASS  round trips: lift/contract identity on {} constructions, alist \
         serialize/parse identity on {} codes",
        graphs.len(),
        codes.len()
    );
}
