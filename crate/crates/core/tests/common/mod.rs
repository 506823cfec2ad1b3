//! Seeded random generators shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use drgen_core::flow::{FlowArc, FlowNetwork};
use drgen_core::graph::{BipartiteMultigraph, Digraph};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random fixed-point-free permutation of 0..n (needs n >= 2).
pub fn random_derangement_idx(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    assert!(n >= 2, "no derangement on fewer than two points");
    loop {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        if p.iter().enumerate().all(|(i, &v)| i != v) {
            return p;
        }
    }
}

/// Union of k random derangements on w1..wn, or `None` when two of them
/// share an arc (so the union would not be k-regular).
pub fn regular_digraph_from_derangements(
    rng: &mut ChaCha8Rng,
    n: usize,
    k: usize,
) -> Option<Digraph> {
    let mut arcs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for _ in 0..k {
        for (i, j) in random_derangement_idx(rng, n).into_iter().enumerate() {
            if !arcs.insert((i, j)) {
                return None;
            }
        }
    }
    let name = |i: usize| format!("w{}", i + 1);
    Some(
        Digraph::new(
            (0..n).map(name),
            arcs.into_iter().map(|(i, j)| (name(i), name(j))),
        )
        .expect("generated arcs are loop-free"),
    )
}

/// Sum of k random permutation matchings between x1..xn and y1..yn: a
/// k-regular bipartite multigraph.
pub fn regular_bipartite_from_permutations(
    rng: &mut ChaCha8Rng,
    n: usize,
    k: usize,
) -> BipartiteMultigraph {
    let mut mu: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    for _ in 0..k {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        for (i, &j) in p.iter().enumerate() {
            *mu.entry((i, j)).or_insert(0) += 1;
        }
    }
    BipartiteMultigraph::new(
        (0..n).map(|i| format!("x{}", i + 1)),
        (0..n).map(|j| format!("y{}", j + 1)),
        mu.into_iter()
            .map(|((i, j), m)| (format!("x{}", i + 1), format!("y{}", j + 1), m)),
    )
    .expect("permutation sums are well-formed")
}

/// Bipartite graph with parts x1..xa / y1..yb whose edge set is given by a
/// bitmask over the a*b pairs in row-major order.
pub fn bipartite_from_mask(a: usize, b: usize, mask: u64) -> BipartiteMultigraph {
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            if mask >> (i * b + j) & 1 == 1 {
                edges.push((format!("x{}", i + 1), format!("y{}", j + 1), 1));
            }
        }
    }
    BipartiteMultigraph::new(
        (0..a).map(|i| format!("x{}", i + 1)),
        (0..b).map(|j| format!("y{}", j + 1)),
        edges,
    )
    .expect("mask edges are well-formed")
}

/// Loopless digraph on w1..wn whose arc set is given by a bitmask over the
/// n*(n-1) ordered pairs in row-major order (diagonal skipped).
pub fn digraph_from_mask(n: usize, mask: u64) -> Digraph {
    let mut arcs = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if mask >> bit & 1 == 1 {
                arcs.push((format!("w{}", i + 1), format!("w{}", j + 1)));
            }
            bit += 1;
        }
    }
    Digraph::new((0..n).map(|i| format!("w{}", i + 1)), arcs).expect("mask arcs are loop-free")
}

/// Random flow network with no arcs into the source or out of the sink.
pub fn random_network(rng: &mut ChaCha8Rng) -> FlowNetwork {
    let nodes = rng.gen_range(2..=8);
    let mut arcs = Vec::new();
    for tail in 0..nodes {
        for head in 0..nodes {
            if tail == head || head == 0 || tail == 1 {
                continue;
            }
            if rng.gen_bool(0.5) {
                arcs.push(FlowArc {
                    tail,
                    head,
                    capacity: rng.gen_range(0..=10),
                });
            }
        }
    }
    FlowNetwork::new(nodes, 0, 1, arcs).expect("generated arcs respect the endpoint rules")
}

/// Minimum cut capacity by enumerating all source/sink partitions.
pub fn brute_min_cut(net: &FlowNetwork) -> i64 {
    let n = net.node_count();
    assert!(n <= 20, "partition enumeration needs a small network");
    let mut best = i64::MAX;
    for mask in 0..(1u64 << n) {
        if mask >> net.source() & 1 == 0 || mask >> net.sink() & 1 == 1 {
            continue;
        }
        let cap: i64 = net
            .arcs()
            .iter()
            .filter(|a| mask >> a.tail & 1 == 1 && mask >> a.head & 1 == 0)
            .map(|a| a.capacity)
            .sum();
        best = best.min(cap);
    }
    best
}

/// Directed n-cycle w1 -> w2 -> ... -> wn -> w1.
pub fn directed_cycle(n: usize) -> Digraph {
    let name = |i: usize| format!("w{}", i % n + 1);
    Digraph::new(
        (0..n).map(name),
        (0..n).map(|i| (name(i), name(i + 1))),
    )
    .expect("cycle arcs are loop-free")
}
