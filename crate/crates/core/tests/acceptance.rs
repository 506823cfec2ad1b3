//! Acceptance checks: one test per criterion, each printing a PASS line.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use drgen_core::cover::{is_one_extendable, min_cover, Extendability, MinCoverOutcome};
use drgen_core::cover::{cover_with_k, verify_cover};
use drgen_core::derange::{
    digraph_certificate_holds, generate_with_k, min_derangements, verify_generates,
    MinDerangementsOutcome, VerifyOutcome,
};
use drgen_core::graph::BipartiteMultigraph;
use drgen_core::lazy::{
    dk, gk, ladder_digraph, ladder_graph, lazy_certificate_holds,
    lazy_digraph_certificate_holds, subdivided_product, window_refute_bipartite,
    window_refute_digraph, LazyBipartite, LazyDigraph, WindowVerdict,
};
use drgen_core::oracle::{
    brute_conditions_digraph, brute_conditions_graph, brute_min_cover, brute_min_derangements,
    brute_one_extendable, tight_neighborhood_extendable,
};
use drgen_core::thicken::{certificate_holds, one_factorize};
use drgen_core::Feasibility;
use rand::Rng;

fn c4() -> BipartiteMultigraph {
    BipartiteMultigraph::new(
        ["a", "c"],
        ["b", "d"],
        vec![
            ("a".to_string(), "b".to_string(), 1),
            ("a".to_string(), "d".to_string(), 1),
            ("c".to_string(), "b".to_string(), 1),
            ("c".to_string(), "d".to_string(), 1),
        ],
    )
    .unwrap()
}

#[test]
fn criterion_1_dk_minimum_derangements() {
    let started = Instant::now();
    for k in 1..=6u32 {
        let clock = Instant::now();
        let d = dk(k).unwrap();
        let MinDerangementsOutcome::Generable { k_min, set } = min_derangements(&d).unwrap()
        else {
            panic!("D_{k} is generable");
        };
        assert_eq!(k_min, k, "D_{k} needs exactly {k} derangements");
        assert_eq!(verify_generates(&d, &set).unwrap(), VerifyOutcome::Verified);
        assert!(
            clock.elapsed() < Duration::from_secs(1),
            "D_{k} took {:?}",
            clock.elapsed()
        );
        if k == 2 {
            assert_eq!(
                set.notations(),
                ["(w1 w2)(w3 w5 w4)", "(w1 w3 w2)(w4 w5)"]
            );
        }
        if k == 3 {
            assert_eq!(
                set.notations(),
                [
                    "(w1 w2)(w3 w4)(w5 w7 w6)",
                    "(w1 w2)(w3 w5 w4)(w6 w7)",
                    "(w1 w3 w2)(w4 w5)(w6 w7)"
                ]
            );
        }
    }
    println!(
        "criterion 1: PASS — min_derangements(D_k) = k for k = 1..6, exact sets at k = 2 and 3 ({:?})",
        started.elapsed()
    );
}

#[test]
fn criterion_2_gk_minimum_covers() {
    let started = Instant::now();
    for k in 1..=6u32 {
        let g = gk(k).unwrap();
        let MinCoverOutcome::Coverable { k_min, cover } = min_cover(&g).unwrap() else {
            panic!("G_{k} is coverable");
        };
        assert_eq!(k_min, k, "G_{k} needs exactly {k} factors");
        assert!(verify_cover(&g, &cover));
        assert_eq!(
            is_one_extendable(&g).unwrap(),
            Extendability::Extendable,
            "G_{k} is 1-extendable"
        );
    }
    println!(
        "criterion 2: PASS — min_cover(G_k) = k and G_k 1-extendable for k = 1..6 ({:?})",
        started.elapsed()
    );
}

/// Smallest refuting radius for the digraph family, with the per-(k, r)
/// budget enforced.
fn refuting_radius_digraph(l: &LazyDigraph, k: u32) -> Option<u32> {
    let center = l.seed().to_string();
    for r in 0..=4 * k {
        let clock = Instant::now();
        let report = window_refute_digraph(l, k, &center, r).unwrap();
        assert!(
            clock.elapsed() < Duration::from_secs(1),
            "window (k = {k}, r = {r}) took {:?}",
            clock.elapsed()
        );
        if let WindowVerdict::Refuted(cert) = report.verdict {
            assert!(lazy_digraph_certificate_holds(l, &cert), "k = {k}, r = {r}");
            assert!(cert.lhs < cert.rhs);
            // When T is a run of consecutive even vertices w2..w2n, the
            // recomputed sides are k and n + 3.
            let mut idx: Vec<i64> = cert
                .t
                .iter()
                .filter_map(|name| name.strip_prefix('w')?.parse().ok())
                .collect();
            idx.sort_unstable();
            if idx.len() == cert.t.len()
                && idx
                    .iter()
                    .enumerate()
                    .all(|(i, &v)| v == 2 * (i as i64 + 1))
            {
                let n = idx.len() as i64;
                assert_eq!(cert.lhs, i64::from(cert.k));
                assert_eq!(cert.rhs, n + 3);
            }
            return Some(r);
        }
    }
    None
}

fn refuting_radius_bipartite(l: &LazyBipartite, k: u32) -> Option<u32> {
    let center = l.seed().to_string();
    for r in 0..=4 * k {
        let clock = Instant::now();
        let report = window_refute_bipartite(l, k, &center, r).unwrap();
        assert!(
            clock.elapsed() < Duration::from_secs(1),
            "window (k = {k}, r = {r}) took {:?}",
            clock.elapsed()
        );
        if let WindowVerdict::Refuted(cert) = report.verdict {
            assert!(lazy_certificate_holds(l, &cert), "k = {k}, r = {r}");
            assert!(cert.lhs < cert.rhs);
            return Some(r);
        }
    }
    None
}

#[test]
fn criterion_3_window_refutations() {
    let started = Instant::now();
    let digraph = ladder_digraph();
    let graph = ladder_graph();
    let product = subdivided_product(&c4()).unwrap();
    for k in 1..=8u32 {
        assert!(
            refuting_radius_digraph(&digraph, k).is_some(),
            "ladder digraph at k = {k}"
        );
        assert!(
            refuting_radius_bipartite(&graph, k).is_some(),
            "ladder graph at k = {k}"
        );
        assert!(
            refuting_radius_bipartite(&product, k).is_some(),
            "subdivided product of C4 at k = {k}"
        );
    }
    println!(
        "criterion 3: PASS — all three families refuted for every k <= 8 at radius <= 4k, certificates recheck ({:?})",
        started.elapsed()
    );
}

#[test]
fn criterion_4_regular_digraphs_need_k() {
    let started = Instant::now();
    let mut rng = common::rng(0x04);
    let mut done = 0;
    let mut attempt = 0usize;
    while done < 50 {
        let k = 1 + attempt % 5;
        let n = 6 + (attempt * 7) % 35;
        attempt += 1;
        let Some(d) = common::regular_digraph_from_derangements(&mut rng, n, k) else {
            continue;
        };
        assert_eq!(d.arc_count(), n * k);
        let MinDerangementsOutcome::Generable { k_min, set } = min_derangements(&d).unwrap()
        else {
            panic!("a union of derangements is generable");
        };
        assert_eq!(k_min as usize, k, "n = {n}, k = {k}");
        assert_eq!(verify_generates(&d, &set).unwrap(), VerifyOutcome::Verified);
        done += 1;
    }
    println!(
        "criterion 4: PASS — 50 random k-regular digraphs (k <= 5, |V| <= 40) all have min_derangements = k ({:?})",
        started.elapsed()
    );
}

fn check_bipartite_against_oracles(g: &BipartiteMultigraph) {
    let brute_min = brute_min_cover(g).unwrap();
    match min_cover(g).unwrap() {
        MinCoverOutcome::Coverable { k_min, cover } => {
            assert_eq!(Some(k_min), brute_min);
            assert!(verify_cover(g, &cover));
        }
        MinCoverOutcome::NotCoverable(_) => assert_eq!(brute_min, None),
    }
    for k in 1..=4u32 {
        let flow = cover_with_k(g, k).unwrap();
        let oracle_cert = brute_conditions_graph(g, k).unwrap();
        assert_eq!(
            flow.is_feasible(),
            oracle_cert.is_none(),
            "flow vs subset oracle at k = {k}"
        );
        assert_eq!(
            flow.is_feasible(),
            brute_min.is_some_and(|m| m <= k),
            "flow vs minimum oracle at k = {k}"
        );
        match flow {
            Feasibility::Feasible(cover) => assert!(verify_cover(g, &cover)),
            Feasibility::Infeasible(cert) => {
                assert!(certificate_holds(g, &cert).unwrap());
            }
        }
        if let Some(cert) = oracle_cert {
            assert!(certificate_holds(g, &cert).unwrap());
        }
    }
}

fn check_digraph_against_oracles(d: &drgen_core::graph::Digraph) {
    let brute_min = brute_min_derangements(d).unwrap();
    match min_derangements(d).unwrap() {
        MinDerangementsOutcome::Generable { k_min, set } => {
            assert_eq!(Some(k_min), brute_min);
            assert_eq!(verify_generates(d, &set).unwrap(), VerifyOutcome::Verified);
        }
        MinDerangementsOutcome::NotGenerable(_) => assert_eq!(brute_min, None),
    }
    for k in 1..=4u32 {
        let run = generate_with_k(d, k).unwrap();
        let oracle_cert = brute_conditions_digraph(d, k).unwrap();
        assert_eq!(
            run.is_feasible(),
            oracle_cert.is_none(),
            "engine vs subset oracle at k = {k}"
        );
        assert_eq!(
            run.is_feasible(),
            brute_min.is_some_and(|m| m <= k),
            "engine vs minimum oracle at k = {k}"
        );
        match run {
            Feasibility::Feasible(set) => {
                assert_eq!(verify_generates(d, &set).unwrap(), VerifyOutcome::Verified);
            }
            Feasibility::Infeasible(cert) => {
                assert!(digraph_certificate_holds(d, &cert).unwrap());
            }
        }
        if let Some(cert) = oracle_cert {
            assert!(digraph_certificate_holds(d, &cert).unwrap());
        }
    }
}

#[test]
fn criterion_5_oracle_equivalence() {
    let started = Instant::now();
    let mut graphs = 0usize;
    for a in 0..=3usize {
        for b in 0..=3usize {
            for mask in 0..(1u64 << (a * b)) {
                check_bipartite_against_oracles(&common::bipartite_from_mask(a, b, mask));
                graphs += 1;
            }
        }
    }
    let mut rng = common::rng(0x05);
    for _ in 0..500 {
        let mask = rng.gen::<u64>() & 0xFFFF;
        check_bipartite_against_oracles(&common::bipartite_from_mask(4, 4, mask));
        graphs += 1;
    }
    let mut digraphs = 0usize;
    for n in 0..=4usize {
        for mask in 0..(1u64 << (n * (n - n.min(1)))) {
            check_digraph_against_oracles(&common::digraph_from_mask(n, mask));
            digraphs += 1;
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(300), "sweep took {elapsed:?}");
    println!(
        "criterion 5: PASS — {graphs} bipartite graphs and {digraphs} digraphs agree with both oracles for k <= 4 ({elapsed:?})"
    );
}

#[test]
fn criterion_6_extendability_agreement() {
    let started = Instant::now();
    let mut checked = 0usize;
    let mut check = |g: &BipartiteMultigraph| {
        let by_matchings = brute_one_extendable(g).unwrap();
        let by_subsets = tight_neighborhood_extendable(g).unwrap();
        let by_engine = matches!(is_one_extendable(g).unwrap(), Extendability::Extendable);
        assert_eq!(by_matchings, by_subsets);
        assert_eq!(by_matchings, by_engine);
        checked += 1;
    };
    for a in 0..=3usize {
        for b in 0..=3usize {
            for mask in 0..(1u64 << (a * b)) {
                check(&common::bipartite_from_mask(a, b, mask));
            }
        }
    }
    let mut rng = common::rng(0x06);
    for _ in 0..500 {
        let mask = rng.gen::<u64>() & 0xFFFF;
        check(&common::bipartite_from_mask(4, 4, mask));
    }
    println!(
        "criterion 6: PASS — per-edge matching, tight-set, and engine extendability agree on {checked} graphs ({:?})",
        started.elapsed()
    );
}

#[test]
fn criterion_7_structural_invariants() {
    let started = Instant::now();
    let mut rng = common::rng(0x07);
    for i in 0..200usize {
        let k = 1 + i % 5;
        let n = 1 + (i * 3) % 20;
        let g = common::regular_bipartite_from_permutations(&mut rng, n, k);
        let factors = one_factorize(&g, k as u32).unwrap();
        assert_eq!(factors.len(), k, "n = {n}, k = {k}");
        let mut covered: BTreeSet<(String, String, u32)> = BTreeSet::new();
        for f in &factors {
            assert_eq!(f.len(), n);
        }
        for (x, y, mu) in g.edges() {
            let used = factors
                .iter()
                .filter(|f| f.image_of(x) == Some(y))
                .count() as u32;
            assert_eq!(used, mu, "multiset union must equal the edge multiset");
            covered.insert((x.to_string(), y.to_string(), mu));
        }
        assert_eq!(covered.len(), g.distinct_edge_count());
    }
    for _ in 0..100 {
        let net = common::random_network(&mut rng);
        let (flow, cut) = net.max_flow();
        assert!(net.check_flow(&flow).unwrap());
        assert_eq!(flow.magnitude(), cut.capacity());
        assert_eq!(flow.magnitude(), common::brute_min_cut(&net));
    }
    println!(
        "criterion 7: PASS — 200 factorizations return k factors with exact multiset unions; 100 max-flow runs match their cuts and the brute-force minimum cut ({:?})",
        started.elapsed()
    );
}

#[test]
fn criterion_8_negative_basics() {
    let started = Instant::now();
    // A vertex with no out-arc can never be deranged onto a neighbor.
    let d = drgen_core::graph::Digraph::new(
        ["a", "b"],
        vec![("a".to_string(), "b".to_string())],
    )
    .unwrap();
    assert!(matches!(
        min_derangements(&d).unwrap(),
        MinDerangementsOutcome::NotGenerable(_)
    ));
    // The middle edge of the path x1 y1 x2 y2 lies in no perfect matching.
    let p4 = BipartiteMultigraph::new(
        ["x1", "x2"],
        ["y1", "y2"],
        vec![
            ("x1".to_string(), "y1".to_string(), 1),
            ("x2".to_string(), "y1".to_string(), 1),
            ("x2".to_string(), "y2".to_string(), 1),
        ],
    )
    .unwrap();
    assert_eq!(
        is_one_extendable(&p4).unwrap(),
        Extendability::BlockedEdge {
            x: "x2".to_string(),
            y: "y1".to_string()
        }
    );
    // A directed cycle is generated by the single cyclic derangement.
    let c5 = common::directed_cycle(5);
    let MinDerangementsOutcome::Generable { k_min, set } = min_derangements(&c5).unwrap() else {
        panic!("a directed cycle is generable");
    };
    assert_eq!(k_min, 1);
    assert_eq!(set.notations(), ["(w1 w2 w3 w4 w5)"]);
    println!(
        "criterion 8: PASS — out-degree-0 vertex not generable, P4 has a blocked edge, directed 5-cycle needs one cyclic derangement ({:?})",
        started.elapsed()
    );
}
