//! Cross-cutting invariants that tie independent code paths together: the
//! three verification engines against each other, closed forms against dense
//! solves, counting code against a partition DP, and the text formats against
//! round-trip properties.

mod common;

use distspec_core::enumerate::{
    enumerate_configs, labeled_extremal_count, verify_exhaustive, verify_structured, Verdict,
    VerifyOpts,
};
use distspec_core::graph::{
    distance_matrix_via_complement, parse_edge_list, parse_graph, parse_graph6,
    serialize_edge_list, serialize_graph6, Graph, IdentityRegime,
};
use distspec_core::phipsi::{psi, psi_graph, ComplementConfig, PsiRoute};
use distspec_core::spectral::{distance_spectral_radius, SolveOpts};
use distspec_core::walks::{verify_large_s, walk_dominance_check, WalkVerdict};
use proptest::prelude::*;

/// Every sparse complement on up to 8 vertices with at most 4 edges, checked
/// against the matching's walk profile. Dominance must never fail, and the
/// verdict must be strict exactly when some vertex has two neighbors.
#[test]
fn walk_dominance_exhaustive_small() {
    for n in 2..=8usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        for e in 0..=4usize {
            let s = match (n - 1).checked_sub(e) {
                Some(s) if s >= 1 && 2 * s >= n - 2 => s,
                _ => continue,
            };
            let mut idx: Vec<usize> = (0..e).collect();
            loop {
                if e == 0 || idx[e - 1] < pairs.len() {
                    let edges: Vec<_> = idx.iter().map(|&i| pairs[i]).collect();
                    let h0 = Graph::new(n, edges.iter().copied()).unwrap();
                    let max_deg = h0.degrees().into_iter().max().unwrap_or(0);
                    match walk_dominance_check(&h0, n, s, 20).unwrap() {
                        WalkVerdict::IsomorphicToExtremal => {
                            assert!(max_deg <= 1, "matching verdict for {edges:?}");
                        }
                        WalkVerdict::DominatesStrictly { first_strict_k, witness, min_gap } => {
                            assert!(max_deg >= 2, "strict verdict for a matching {edges:?}");
                            assert_eq!(first_strict_k, 2, "first gap must be the degree sum");
                            assert!(min_gap >= 1);
                            let (x, y, z) = witness;
                            assert!(h0.has_edge(y, x) && h0.has_edge(y, z) && x != z);
                        }
                        WalkVerdict::Violation { k, candidate, extremal } => {
                            panic!("dominance violated for {edges:?} at k = {k}: {candidate} < {extremal}");
                        }
                    }
                }
                // Advance the combination odometer.
                if e == 0 {
                    break;
                }
                let mut j = e - 1;
                idx[j] += 1;
                while idx[j] > pairs.len() - (e - j) {
                    if j == 0 {
                        break;
                    }
                    j -= 1;
                    idx[j] += 1;
                }
                if idx[0] > pairs.len() - e {
                    break;
                }
                for k in j + 1..e {
                    idx[k] = idx[k - 1] + 1;
                }
            }
        }
    }
}

/// The structured engine (solves only union-of-paths-and-cycles configs) and
/// the exhaustive engine (solves every labeled complement) must agree on the
/// minimum and its witness whenever both apply.
#[test]
fn structured_matches_exhaustive() {
    let opts = VerifyOpts::default();
    for (m, n, s) in [
        (7u64, 5usize, 1usize),
        (11, 6, 1),
        (16, 7, 1),
        (17, 7, 2),
        (22, 8, 1),
        (23, 8, 2),
    ] {
        let ex = verify_exhaustive(m, &opts, None).unwrap();
        let st = verify_structured(n, s, &opts, None).unwrap();
        assert_eq!(ex.space.n, n, "m = {m} maps to n = {n}");
        assert_eq!(ex.space.s, s);
        assert_eq!(ex.verdict, Verdict::UniqueBalancedPaths);
        assert_eq!(st.verdict, Verdict::UniqueBalancedPaths);
        assert!(
            (ex.rho_min - st.rho_min).abs() <= 1e-9,
            "m = {m}: exhaustive {} vs structured {}",
            ex.rho_min,
            st.rho_min
        );
        let ex_comps: Vec<&str> = ex.minimizers.iter().map(|w| w.components.as_str()).collect();
        let st_comps: Vec<&str> = st.minimizers.iter().map(|w| w.components.as_str()).collect();
        assert!(!ex_comps.is_empty() && ex_comps.iter().all(|c| c == &st_comps[0]));
    }
}

/// Config enumeration against an independent partition DP.
#[test]
fn config_enumeration_matches_dp_oracle() {
    for n in 8..=26usize {
        let mut s = 1;
        while 2 * s < n - 2 {
            let got = enumerate_configs(n, s).unwrap().len() as u64;
            let want = common::count_configs_oracle(n, s);
            assert_eq!(got, want, "config count for (n = {n}, s = {s})");
            s += 1;
        }
    }
    assert_eq!(
        enumerate_configs(40, 2).unwrap().len() as u64,
        common::count_configs_oracle(40, 2)
    );
}

/// The general resolvent route of psi_graph against a dense partial-pivot
/// solve, on shapes the closed forms do not cover plus a couple they do.
#[test]
fn psi_general_route_matches_dense_oracle() {
    let star = Graph::new(6, (1..6).map(|v| (0, v))).unwrap();
    let paw = Graph::new(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
    let cases: Vec<(Graph, Vec<f64>)> = vec![
        (Graph::complete(4), vec![3.5, 5.0, 10.0]),
        (star, vec![2.5, 3.0, 7.5]),
        (paw, vec![2.5, 3.0, 7.5]),
        (Graph::path(6), vec![2.1, 2.5, 3.0]),
        (Graph::cycle(5).unwrap(), vec![2.1, 2.5, 3.0]),
    ];
    for (g, lambdas) in cases {
        let edges: Vec<_> = g.edges().collect();
        for lambda in lambdas {
            let got = psi_graph(&g, lambda).unwrap();
            let want = common::phi_dense_oracle(g.n(), &edges, lambda);
            assert!(
                (got.value - want).abs() <= 1e-9 * want.abs().max(1.0),
                "psi_graph at lambda = {lambda} on {}: {} vs {want}",
                g.component_summary(),
                got.value
            );
        }
    }
    // Route selection: unions of paths and cycles stay on closed forms.
    assert_eq!(psi_graph(&Graph::path(6), 2.5).unwrap().route, PsiRoute::ClosedForms);
    assert_eq!(
        psi_graph(&Graph::new(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap(), 3.0)
            .unwrap()
            .route,
        PsiRoute::GeneralSolve
    );
}

/// Psi is strictly decreasing on (2, inf) for every config.
#[test]
fn psi_strictly_decreasing() {
    for text in ["C3+P4+P4", "P5+P6", "C5+C7", "P1+P1+P10"] {
        let cfg = ComplementConfig::parse(text).unwrap();
        let mut last = f64::INFINITY;
        let mut lambda = 2.2;
        while lambda < 12.0 {
            let v = psi(&cfg, lambda).unwrap();
            assert!(v < last, "{text}: Psi({lambda}) = {v} did not drop below {last}");
            last = v;
            lambda += 0.35;
        }
    }
}

/// Any connected graph other than K_n has some distance 2, so its distance
/// spectral radius strictly exceeds n - 1.
#[test]
fn complete_graph_is_a_strict_floor() {
    let opts = SolveOpts { keep_eigvec: false, ..SolveOpts::default() };
    for text in ["P2+P3", "C3+P1", "P5+P6", "C4+C4+P2"] {
        let cfg = ComplementConfig::parse(text).unwrap();
        let g = cfg.realize().complement();
        let rho = distance_spectral_radius(&g, &opts).unwrap().value;
        let n = g.n() as f64;
        assert!(rho > n - 1.0 + 1e-9, "{text}: rho = {rho} vs n - 1 = {}", n - 1.0);
    }
    let kn = distance_spectral_radius(&Graph::complete(7), &opts).unwrap().value;
    assert!((kn - 6.0).abs() < 1e-9);
}

/// The diameter-two identity D = J - I + A(H0) against plain BFS on the
/// complement, across all sparse complements on 6 vertices.
#[test]
fn distance_identity_matches_bfs() {
    let n = 6usize;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut checked = 0u32;
    let mut rejected = 0u32;
    for mask in 0u32..(1 << pairs.len()) {
        if mask.count_ones() > 6 {
            continue;
        }
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &p)| p)
            .collect();
        let h0 = Graph::new(n, edges).unwrap();
        let g = h0.complement();
        let Ok((fast, regime)) = distance_matrix_via_complement(&h0) else {
            assert!(g.diameter().map_or(true, |d| d > 2));
            rejected += 1;
            continue;
        };
        let slow = g.all_pairs_distances();
        for u in 0..n {
            for v in 0..n {
                assert_eq!(fast.get(u, v), slow.get(u, v), "mask {mask:#x} at ({u}, {v})");
            }
        }
        let shapes_ok = h0.components().len() >= 2
            && h0
                .components()
                .iter()
                .all(|(_, s)| !matches!(s, distspec_core::graph::ComponentShape::Other { .. }));
        assert_eq!(regime == IdentityRegime::CyclesAndPaths, shapes_ok);
        checked += 1;
    }
    // Sum of C(15, e) for e <= 6 is 9949; the 1716 rejections are the edge
    // sets with a dominating edge, whose complement is disconnected or has
    // diameter 3.
    assert_eq!((checked, rejected), (8233, 1716));
}

/// The three engines agree on the number of labeled extremal complements.
#[test]
fn extremal_counts_agree_across_engines() {
    for (n, s) in [(7usize, 3usize), (8, 3), (9, 4), (10, 5), (6, 4)] {
        let report = verify_large_s(n, s, &VerifyOpts::default(), None).unwrap();
        let stats = report.walk_certificates.unwrap();
        assert_eq!(stats.extremal_isomorphic, labeled_extremal_count(n, s).unwrap());
        assert_eq!(report.verdict, Verdict::UniqueBalancedPaths);
    }
}

fn arbitrary_graph() -> impl Strategy<Value = Graph> {
    (1usize..=20).prop_flat_map(|n| {
        let pairs = n * (n.saturating_sub(1)) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(p, _)| p)
                .collect();
            Graph::new(n, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn graph6_round_trip(g in arbitrary_graph()) {
        let text = serialize_graph6(&g).unwrap();
        let back = parse_graph6(&text).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        // Sniffing: graph6 size bytes for n >= 1 are non-digits, so parse_graph
        // must route the same text to the graph6 parser.
        let sniffed = parse_graph(&text).unwrap();
        prop_assert_eq!(sniffed.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn edge_list_round_trip(g in arbitrary_graph()) {
        let text = serialize_edge_list(&g);
        let back = parse_edge_list(&text).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        let sniffed = parse_graph(&text).unwrap();
        prop_assert_eq!(sniffed.n(), g.n());
    }

    #[test]
    fn complement_is_an_involution(g in arbitrary_graph()) {
        let back = g.complement().complement();
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }
}
