//! Cross-module consistency properties.

use std::sync::OnceLock;

use etsa::bounds;
use etsa::constructions;
use etsa::extremal::Extremal;
use etsa::feasibility;
use etsa::oracle::{self, ExistenceQuery};
use etsa::tanner::{self, TannerGraph};
use etsa::types::{ColumnWeight, Girth};
use etsa::Budget;

fn extremal() -> &'static Extremal {
    static SHARED: OnceLock<Extremal> = OnceLock::new();
    SHARED.get_or_init(Extremal::new)
}

fn gamma(g: u32) -> ColumnWeight {
    ColumnWeight::new(g).unwrap()
}

/// Everything the oracle realizes passes the girth-independent screen, and
/// nothing below the size bound is ever realized.
#[test]
fn oracle_agrees_with_feasibility_and_bounds() {
    let budget = Budget::default();
    for g in 2..=5u32 {
        let a_min8 = bounds::min_size_girth8(gamma(g));
        let table =
            oracle::existence_table(gamma(g), 4, 2..=(a_min8 + 2), extremal(), &budget).unwrap();
        for row in &table.rows {
            assert!(row.unknown_b.is_empty());
            for &b in &row.realizable_b {
                assert!(
                    feasibility::feasible(row.a, b, gamma(g))
                        .unwrap()
                        .is_feasible(),
                    "realized ({},{b}) must be screen-feasible",
                    row.a
                );
                assert!(
                    row.a >= a_min8,
                    "gamma={g}: realized size {} below bound {a_min8}",
                    row.a
                );
            }
        }
    }
}

/// The executable form of the size bounds: below `min_size(gamma, girth)`
/// the oracle finds nothing in the dominant regime (gamma <= 5, girths 8
/// and 10).
#[test]
fn nothing_exists_below_the_size_bounds() {
    let budget = Budget::default();
    for (tanner_girth, normal_girth) in [(8u32, 4u32), (10, 5)] {
        for g in 2..=5u32 {
            let a_min =
                bounds::min_size(gamma(g), Girth::new(tanner_girth).unwrap()).unwrap().value
                    as u32;
            for a in 1..a_min {
                for b in 0..a {
                    let q = ExistenceQuery::regular(a, b, gamma(g), normal_girth).unwrap();
                    assert!(
                        !oracle::exists_ets(&q, extremal(), &budget).unwrap().is_yes(),
                        "gamma={g} girth={tanner_girth}: ({a},{b}) below bound {a_min}"
                    );
                }
            }
        }
    }
}

/// Scan witnesses classify back to their reported class, and their normal
/// graphs respect the code's girth.
#[test]
fn scan_witnesses_are_sound() {
    let budget = Budget::default();
    let code = constructions::lift_to_tanner(&constructions::tight_girth8(gamma(4)));
    let code_girth = tanner::girth_of(&code).unwrap();
    let report = tanner::scan_ets(&code, 7, u32::MAX, true, &budget).unwrap();
    assert!(!report.classes.is_empty());
    for class in &report.classes {
        let induced = tanner::classify_induced(&code, &class.witness).unwrap();
        assert_eq!(induced.signature.a, class.a);
        assert_eq!(induced.signature.b, class.b);
        assert!(induced.is_elementary);
        let normal = tanner::normal_of(&code, &class.witness).unwrap();
        if let Some(c) = normal.girth() {
            assert!(2 * c >= code_girth);
        }
    }
}

/// On a tree code with column weight 3 every subset stays outside the
/// dominant regime: acyclic normal graphs cannot reach b < a.
#[test]
fn tree_codes_have_no_dominant_signatures() {
    // Two layers of a regular tree: 7 variables of degree 3.
    //   v0 under checks c0,c1,c2; each check hangs two more variables, each
    //   of which picks up two fresh leaf checks.
    let mut var_adj: Vec<Vec<u32>> = vec![vec![0, 1, 2]];
    let mut next_check = 3u32;
    for c in 0..3u32 {
        for _ in 0..2 {
            var_adj.push(vec![c, next_check, next_check + 1]);
            next_check += 2;
        }
    }
    let t = TannerGraph::new(var_adj.len(), next_check as usize, var_adj).unwrap();
    assert_eq!(tanner::girth_of(&t), None);
    let report = tanner::scan_ets(&t, 6, u32::MAX, true, &Budget::default()).unwrap();
    assert!(
        report.classes.is_empty(),
        "tree code produced dominant classes: {:?}",
        report.classes
    );
}

/// Scanning sizes upward at gamma=6 certifies emptiness through size 10 and
/// lands on (11,6), the complete-bipartite instance.
#[test]
fn gamma6_minimum_size_is_eleven() {
    let spec = oracle::DegreeSpec::Regular(gamma(6));
    let (sig, witness) =
        oracle::min_size_observed(&spec, 4, 11, extremal(), &Budget::default())
            .unwrap()
            .expect("(11,6) exists");
    assert_eq!((sig.a, sig.b), (11, 6));
    assert_eq!(witness.edge_count(), 30);
}

/// Unpruned sweep over all 2^28 labeled graphs on 8 vertices at gamma=4,
/// sharing nothing with the search engine: degrees, triangles and
/// connectivity checked straight off adjacency masks.
#[test]
fn oracle_matches_flat_enumeration_at_size_eight() {
    let budget = Budget::default();
    let pairs: Vec<(usize, usize)> = (0..8)
        .flat_map(|u| (u + 1..8).map(move |v| (u, v)))
        .collect();
    let gamma_v = 4u32;
    let mut realizable = [false; 8];
    for mask in 0u32..(1 << 28) {
        // b = a*gamma - 2|E|; keep the dominant regime 0 <= b < 8.
        let edges = mask.count_ones();
        if edges > 16 {
            continue;
        }
        let b = 32 - 2 * edges;
        if b >= 8 {
            continue;
        }
        let mut adj = [0u8; 8];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        if adj.iter().any(|m| m.count_ones() > gamma_v) {
            continue;
        }
        if !adj.iter().any(|m| m.count_ones() == gamma_v) {
            continue;
        }
        // Triangle-free: no neighbor pair adjacent.
        let triangle = (0..8).any(|u| {
            let mut m = adj[u];
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                if adj[u] & adj[v] != 0 {
                    return true;
                }
            }
            false
        });
        if triangle {
            continue;
        }
        // Connectivity by mask closure.
        let mut seen: u8 = 1;
        loop {
            let mut next = seen;
            let mut m = seen;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                next |= adj[v];
            }
            if next == seen {
                break;
            }
            seen = next;
        }
        if seen != 0xff {
            continue;
        }
        realizable[b as usize] = true;
    }
    for b in 0..8u32 {
        let q = ExistenceQuery::regular(8, b, gamma(4), 4).unwrap();
        let got = oracle::exists_ets(&q, extremal(), &budget).unwrap().is_yes();
        assert_eq!(got, realizable[b as usize], "(8,{b}) at gamma=4");
    }
}

/// Scanning is not bound by the 16-vertex search limit: a code with dozens
/// of variables enumerates fine and respects its girth floor.
#[test]
fn scan_handles_larger_codes() {
    // A ring of 60 variables and 60 degree-2 checks plus one extra check
    // over every 6th variable. Consecutive degree-3 variables sit 12 ring
    // edges apart, so the shortest cycle runs through the shared check: 14.
    let n = 60usize;
    let mut var_adj: Vec<Vec<u32>> = (0..n as u32).map(|v| vec![v, (v + 1) % 60]).collect();
    for v in (0..n).step_by(6) {
        var_adj[v].push(60);
    }
    let t = TannerGraph::new(n, 61, var_adj).unwrap();
    assert_eq!(tanner::girth_of(&t), Some(14));
    let report = tanner::scan_ets(&t, 5, u32::MAX, true, &Budget::default()).unwrap();
    // Short variable chains: a path of k ring-adjacent variables has
    // deficiency 2 (its two outer half-edges) plus any degree-3 members'
    // extra check; with a <= 5 < 6 no subset closes the ring, so b >= 2.
    assert!(report.classes.iter().all(|c| c.b >= 2));
    // A 3-chain of plain degree-2 variables is a (3,2) class.
    assert!(report.class(3, 2).is_some());
}

/// Table computations are invariant under the worker count.
#[test]
fn tables_do_not_depend_on_thread_count() {
    let budget = Budget::default();
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let quad = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    let run = |pool: &rayon::ThreadPool| {
        pool.install(|| {
            let ex = Extremal::new();
            let t = oracle::existence_table(gamma(3), 4, 4..=8, &ex, &budget).unwrap();
            serde_json::to_string(&t).unwrap()
        })
    };
    assert_eq!(run(&single), run(&quad));
}
