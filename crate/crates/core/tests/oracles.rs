mod common;

use common::*;
use uksat::constructions::{double_star, near_complete_construction, tau_critical_construction};
use uksat::hypercore::{complement_hypergraph, complementary_hypergraph};
use uksat::johnson::{branch_and_bound_chromatic, johnson_graph, ChromaticStatus};
use uksat::search::{solve_existence, SearchConfig, SearchStatus};
use uksat::transversal::{
    is_uniquely_tau_critical, minimum_transversals, nonexistence_bound, transversal_number,
    verify_tau_critical_complement,
};
use uksat::verify::{verify_complementary, verify_uniquely_saturated};

/// Every hypergraph with at most ten possible edges, against every oracle.
#[test]
fn exhaustive_small_hypergraphs() {
    let mut positives = 0;
    for (n, k) in [(4, 2), (5, 2), (5, 3), (4, 3)] {
        let all = k_sets(n, k);
        for pick in 0u32..1 << all.len() {
            let edges: Vec<u64> = (0..all.len()).filter(|i| pick >> i & 1 == 1).map(|i| all[i]).collect();
            let h = hypergraph(n, k, &edges);
            let dense = Dense::new(n, k, &edges);
            let hc = complement_hypergraph(&h);
            let rr = complementary_hypergraph(&h).unwrap();
            for r in k + 1..=n {
                let direct = verify_uniquely_saturated(&h, r).unwrap().is_ok();
                assert_eq!(direct, naive_saturated(&dense, r), "{n} {k} {r} {edges:?}");
                if r < n {
                    let via_r = verify_complementary(&rr, n - k, r - k).unwrap().is_ok();
                    assert_eq!(direct, via_r);
                }
                let tau = verify_tau_critical_complement(&hc, n - r + 1).is_ok();
                assert_eq!(tau, naive_tau_critical(n, &masks(&hc), n - r + 1));
                assert_eq!(direct, tau);
                positives += direct as usize;
            }
        }
    }
    // C5 and its relabellings: 12 labelled 5-cycles
    assert!(positives >= 12, "{positives}");
}

#[test]
fn five_cycle_has_twelve_labellings() {
    let all = k_sets(5, 2);
    let count = (0u32..1 << 10)
        .filter(|pick| {
            let edges: Vec<u64> = (0..10).filter(|i| pick >> i & 1 == 1).map(|i| all[i]).collect();
            naive_saturated(&Dense::new(5, 2, &edges), 3)
        })
        .count();
    assert_eq!(count, 12);
    let res = solve_existence(5, 3, 1, &SearchConfig { all_solutions: true, ..Default::default() }).unwrap();
    assert_eq!(res.solutions.len(), 12);
}

#[test]
fn transversals_match_enumeration() {
    let all = k_sets(6, 3);
    let mut seed = 0x9e3779b97f4a7c15u64;
    for _ in 0..200 {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        let edges: Vec<u64> = (0..all.len()).filter(|i| seed >> i & 1 == 1).map(|i| all[i]).collect();
        if edges.is_empty() {
            continue;
        }
        let h = hypergraph(6, 3, &edges);
        let tau = naive_tau(6, &edges);
        assert_eq!(transversal_number(&h), tau);
        let res = minimum_transversals(&h, None);
        assert_eq!(res.count as usize, naive_transversal_count(6, &edges, tau));
        let critical = (0..edges.len()).all(|i| {
            let rest: Vec<u64> = edges.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e).collect();
            naive_transversal_count(6, &rest, tau - 1) == 1
        });
        assert_eq!(is_uniquely_tau_critical(&h).unwrap().is_ok(), critical);
    }
}

#[test]
fn constructions_pass_the_definition() {
    for (n, k, r) in [(6, 4, 5), (7, 4, 5), (8, 5, 6), (8, 5, 7), (9, 5, 7)] {
        let rr = double_star(n, k, r).unwrap();
        assert!(naive_complementary(n, n - k, r - k, &masks(&rr)));
        let h = complementary_hypergraph(&rr).unwrap();
        assert!(naive_saturated(&Dense::from(&h), r));
    }
    for (k, ell, n) in [(3, 1, 6), (3, 2, 7), (3, 2, 8), (3, 2, 9)] {
        let hc = tau_critical_construction(k, ell, n, None).unwrap();
        assert!(naive_tau_critical(n, &masks(&hc), ell + 1));
    }
    for n in 6..=9 {
        let hc = near_complete_construction(4, n).unwrap();
        assert!(naive_tau_critical(n, &masks(&hc), 2));
        assert!(naive_saturated(&Dense::from(&complement_hypergraph(&hc)), n - 1));
    }
}

#[test]
fn chromatic_numbers_match_exhaustive_coloring() {
    for (m, k) in [(4, 2), (5, 2), (6, 2), (5, 3), (6, 3)] {
        let g = johnson_graph(m, k).unwrap();
        let nv = g.vertex_count();
        let colorable = |c: usize| {
            let mut colors = vec![usize::MAX; nv];
            fn go(g: &uksat::johnson::JohnsonGraph, colors: &mut Vec<usize>, i: usize, c: usize) -> bool {
                if i == colors.len() {
                    return true;
                }
                for col in 0..c {
                    if g.neighbors(i).iter().all(|&j| colors[j as usize] != col) {
                        colors[i] = col;
                        if go(g, colors, i + 1, c) {
                            return true;
                        }
                        colors[i] = usize::MAX;
                    }
                }
                false
            }
            go(&g, &mut colors, 0, c)
        };
        let chi = (1..=nv).find(|&c| colorable(c)).unwrap();
        let bb = branch_and_bound_chromatic(m, k, 10_000_000).unwrap();
        assert_eq!(bb.status, ChromaticStatus::Exact);
        assert_eq!(bb.value, chi, "χ(J({m},{k}))");
    }
}

#[test]
fn search_certificates_pass_the_definition_and_the_bound() {
    for (n, t, s) in [(5, 3, 1), (7, 5, 2), (9, 7, 3), (6, 3, 1), (7, 4, 2), (7, 3, 1)] {
        let res = solve_existence(n, t, s, &SearchConfig::default()).unwrap();
        let cert = match res.status {
            SearchStatus::Sat => res.certificate.unwrap(),
            _ => continue,
        };
        assert!(naive_complementary(n, t, s, &masks(&cert)));
        let h = complementary_hypergraph(&cert).unwrap();
        let (k, r) = (n - t, n - t + s);
        assert!(naive_saturated(&Dense::from(&h), r));
        assert!((n as u64) < nonexistence_bound(k, n - r));
    }
}
