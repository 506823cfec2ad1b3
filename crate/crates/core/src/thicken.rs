//! Degree-k thickenings of bipartite graphs on closed windows.
//!
//! A k-thickening on a closed vertex set S raises multiplicities of the
//! induced multigraph so that every vertex whose whole neighborhood lies in S
//! reaches degree exactly k and every other vertex of S stays at degree at
//! most k. Existence is decided by a max-flow computation on a deficiency
//! network; when infeasible, the canonical minimum cut yields a violating
//! vertex set T with k(|N(T)| - |T|) < sum of degrees over N(T) minus sum
//! over T, measured with the true degrees of the ambient graph.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::Error;
use crate::flow::{FlowArc, FlowNetwork};
use crate::graph::{BipartiteMultigraph, OneFactor, Side};
use crate::Feasibility;

/// Refutation of a k-thickening or k-factor cover: either a vertex over
/// degree k or a set T violating the counting condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub part: Side,
    #[serde(rename = "T")]
    pub t: Vec<String>,
    pub lhs: i64,
    pub rhs: i64,
    pub k: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CertificateKind {
    #[serde(rename = "degree-exceeded")]
    DegreeExceeded,
    #[serde(rename = "condition-ii")]
    ConditionIi,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

/// Adjacency source for window computations: a finite bipartite multigraph
/// or a lazily defined one. Degrees and neighbor lists are those of the full
/// graph, not of any window.
pub(crate) trait WindowHost {
    fn side_of(&self, v: &str) -> Side;
    /// Distinct neighbors, sorted.
    fn neighbors_of(&self, v: &str) -> Vec<String>;
    /// Degree counting multiplicity.
    fn degree_of(&self, v: &str) -> i64;
    fn multiplicity_of(&self, x: &str, y: &str) -> u32;
}

impl WindowHost for BipartiteMultigraph {
    fn side_of(&self, v: &str) -> Side {
        BipartiteMultigraph::side_of(self, v).expect("window vertex")
    }

    fn neighbors_of(&self, v: &str) -> Vec<String> {
        self.neighbors(v)
            .expect("window vertex")
            .into_iter()
            .map(String::from)
            .collect()
    }

    fn degree_of(&self, v: &str) -> i64 {
        self.degree(v).expect("window vertex")
    }

    fn multiplicity_of(&self, x: &str, y: &str) -> u32 {
        self.multiplicity(x, y).expect("window vertices")
    }
}

pub(crate) fn close_window_host(
    h: &impl WindowHost,
    s_star: &BTreeSet<String>,
) -> BTreeSet<String> {
    let mut s = s_star.clone();
    for v in s_star {
        if h.side_of(v) == Side::Left {
            for y in h.neighbors_of(v) {
                s.insert(y);
            }
        }
    }
    s
}

/// Window closure: `s_star` together with every neighbor of its left
/// vertices. Left vertices of the result keep their full neighborhood inside
/// it.
pub fn close_window(
    g: &BipartiteMultigraph,
    s_star: &BTreeSet<String>,
) -> Result<BTreeSet<String>, Error> {
    for v in s_star {
        g.side_of(v)?;
    }
    Ok(close_window_host(g, s_star))
}

/// Split of a closed window S used by the deficiency network: left part S1,
/// right vertices S2'' with their whole neighborhood inside S1, the
/// remaining rights S2', the deficiencies c(x) = k - deg(x), and their sums
/// m over S1 and m'' over S2''.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowPartition {
    pub s1: Vec<String>,
    pub s2_prime: Vec<String>,
    pub s2_doubleprime: Vec<String>,
    pub deficiency: Vec<(String, i64)>,
    pub m: i64,
    pub m_doubleprime: i64,
}

/// Deficiency network for a closed window, with the node layout and the
/// arc indices of the edge arcs exposed for reading back a thickening.
#[derive(Clone, Debug)]
pub struct ThickeningNetwork {
    pub network: FlowNetwork,
    pub partition: WindowPartition,
    /// Right vertices in node order (node index `3 + |S1| + j`).
    pub rights: Vec<String>,
    /// `(arc index, left name, right name)` per adjacent pair of the window.
    pub edge_arcs: Vec<(usize, String, String)>,
}

const SOURCE: usize = 0;
const SINK: usize = 1;
const BPRIME: usize = 2;

fn condition_certificate(
    h: &impl WindowHost,
    t: Vec<String>,
    part: Side,
    k: u32,
) -> Certificate {
    let mut n: BTreeSet<String> = BTreeSet::new();
    for v in &t {
        n.extend(h.neighbors_of(v));
    }
    let sum_n: i64 = n.iter().map(|v| h.degree_of(v)).sum();
    let sum_t: i64 = t.iter().map(|v| h.degree_of(v)).sum();
    let lhs = i64::from(k) * (n.len() as i64 - t.len() as i64);
    let rhs = sum_n - sum_t;
    Certificate {
        kind: CertificateKind::ConditionIi,
        part,
        t,
        lhs,
        rhs,
        k,
    }
}

pub(crate) fn build_network_host(
    h: &impl WindowHost,
    s: &BTreeSet<String>,
    k: u32,
) -> Result<Feasibility<ThickeningNetwork, Certificate>, Error> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    // First vertex over degree k, in name order, aborts the construction.
    for v in s {
        let deg = h.degree_of(v);
        if deg > i64::from(k) {
            return Ok(Feasibility::Infeasible(Certificate {
                kind: CertificateKind::DegreeExceeded,
                part: h.side_of(v),
                t: vec![v.clone()],
                lhs: i64::from(k),
                rhs: deg,
                k,
            }));
        }
    }
    let mut s1: Vec<String> = Vec::new();
    let mut s2: Vec<String> = Vec::new();
    for v in s {
        match h.side_of(v) {
            Side::Left => s1.push(v.clone()),
            Side::Right => s2.push(v.clone()),
        }
    }
    let deficiency: Vec<(String, i64)> = s
        .iter()
        .map(|v| (v.clone(), i64::from(k) - h.degree_of(v)))
        .collect();
    let c = |v: &str| i64::from(k) - h.degree_of(v);

    let mut s2_prime: Vec<String> = Vec::new();
    let mut s2_doubleprime: Vec<String> = Vec::new();
    for y in &s2 {
        if h.neighbors_of(y).iter().all(|x| s.contains(x)) {
            s2_doubleprime.push(y.clone());
        } else {
            s2_prime.push(y.clone());
        }
    }
    let m: i64 = s1.iter().map(|x| c(x)).sum();
    let m_doubleprime: i64 = s2_doubleprime.iter().map(|y| c(y)).sum();

    // When the interior rights already ask for more than the lefts can
    // absorb, T = S2'' violates the counting condition outright and the
    // b'-to-b arc would need negative capacity.
    if m_doubleprime > m {
        let cert = condition_certificate(h, s2_doubleprime, Side::Right, k);
        debug_assert!(cert.lhs < cert.rhs);
        return Ok(Feasibility::Infeasible(cert));
    }

    let left_node: std::collections::BTreeMap<&str, usize> = s1
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), 3 + i))
        .collect();
    let right_node: std::collections::BTreeMap<&str, usize> = s2
        .iter()
        .enumerate()
        .map(|(j, v)| (v.as_str(), 3 + s1.len() + j))
        .collect();
    let interior: BTreeSet<&str> = s2_doubleprime.iter().map(String::as_str).collect();

    let mut arcs: Vec<FlowArc> = Vec::new();
    for x in &s1 {
        arcs.push(FlowArc {
            tail: SOURCE,
            head: left_node[x.as_str()],
            capacity: c(x),
        });
    }
    let mut edge_arcs: Vec<(usize, String, String)> = Vec::new();
    for x in &s1 {
        for y in h.neighbors_of(x) {
            debug_assert!(s.contains(&y), "closed window keeps left neighborhoods");
            edge_arcs.push((arcs.len(), x.clone(), y.clone()));
            arcs.push(FlowArc {
                tail: left_node[x.as_str()],
                head: right_node[y.as_str()],
                capacity: m + 1,
            });
        }
    }
    for y in &s2 {
        arcs.push(FlowArc {
            tail: right_node[y.as_str()],
            head: if interior.contains(y.as_str()) {
                SINK
            } else {
                BPRIME
            },
            capacity: c(y),
        });
    }
    arcs.push(FlowArc {
        tail: BPRIME,
        head: SINK,
        capacity: m - m_doubleprime,
    });

    let network = FlowNetwork::new(3 + s1.len() + s2.len(), SOURCE, SINK, arcs)?;
    Ok(Feasibility::Feasible(ThickeningNetwork {
        network,
        partition: WindowPartition {
            s1,
            s2_prime,
            s2_doubleprime,
            deficiency,
            m,
            m_doubleprime,
        },
        rights: s2,
        edge_arcs,
    }))
}

/// Deficiency network for a closed window `s` of `g` at degree bound `k`.
/// Fails with `WindowNotClosed` when some left vertex of `s` has a neighbor
/// outside `s`; returns the degree certificate instead of a network when a
/// window vertex already exceeds degree k.
pub fn build_network(
    g: &BipartiteMultigraph,
    s: &BTreeSet<String>,
    k: u32,
) -> Result<Feasibility<ThickeningNetwork, Certificate>, Error> {
    for v in s {
        if g.side_of(v)? == Side::Left {
            for y in g.neighbors(v)? {
                if !s.contains(y) {
                    return Err(Error::WindowNotClosed(v.clone()));
                }
            }
        }
    }
    build_network_host(g, s, k)
}

pub(crate) struct ThickenRun {
    pub outcome: Feasibility<BipartiteMultigraph, Certificate>,
    pub window: BTreeSet<String>,
}

pub(crate) fn thicken_on_host(
    h: &impl WindowHost,
    s_star: &BTreeSet<String>,
    k: u32,
) -> Result<ThickenRun, Error> {
    let s = close_window_host(h, s_star);
    let tn = match build_network_host(h, &s, k)? {
        Feasibility::Infeasible(cert) => {
            return Ok(ThickenRun {
                outcome: Feasibility::Infeasible(cert),
                window: s,
            })
        }
        Feasibility::Feasible(tn) => tn,
    };
    let (flow, cut) = tn.network.max_flow();
    if flow.magnitude() == tn.partition.m {
        let edges: Vec<(String, String, u32)> = tn
            .edge_arcs
            .iter()
            .map(|(arc, x, y)| {
                let mu = h.multiplicity_of(x, y) + flow.value(*arc) as u32;
                (x.clone(), y.clone(), mu)
            })
            .collect();
        let thickening =
            BipartiteMultigraph::new(tn.partition.s1.clone(), tn.rights.clone(), edges)?;
        return Ok(ThickenRun {
            outcome: Feasibility::Feasible(thickening),
            window: s,
        });
    }
    // The canonical cut turns into a violating set: the cut lefts when b'
    // stays on the sink side, otherwise the interior rights left behind.
    let a = cut.source_side();
    let left_start = 3;
    let right_start = 3 + tn.partition.s1.len();
    let t: Vec<String>;
    let part: Side;
    if !a.contains(&BPRIME) {
        t = tn
            .partition
            .s1
            .iter()
            .enumerate()
            .filter(|(i, _)| a.contains(&(left_start + i)))
            .map(|(_, v)| v.clone())
            .collect();
        part = Side::Left;
    } else {
        let interior: BTreeSet<&str> = tn
            .partition
            .s2_doubleprime
            .iter()
            .map(String::as_str)
            .collect();
        t = tn
            .rights
            .iter()
            .enumerate()
            .filter(|(j, y)| !a.contains(&(right_start + j)) && interior.contains(y.as_str()))
            .map(|(_, y)| y.clone())
            .collect();
        part = Side::Right;
    }
    let cert = condition_certificate(h, t, part, k);
    debug_assert!(cert.lhs < cert.rhs, "cut certificate must recompute");
    Ok(ThickenRun {
        outcome: Feasibility::Infeasible(cert),
        window: s,
    })
}

/// k-thickening of `g` on the closure of `s_star`, or a certificate that
/// none exists.
pub fn k_thickening_on(
    g: &BipartiteMultigraph,
    s_star: &BTreeSet<String>,
    k: u32,
) -> Result<Feasibility<BipartiteMultigraph, Certificate>, Error> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    for v in s_star {
        g.side_of(v)?;
    }
    Ok(thicken_on_host(g, s_star, k)?.outcome)
}

/// k-regular thickening of the whole graph, or a certificate that none
/// exists.
pub fn k_regular_thickening(
    g: &BipartiteMultigraph,
    k: u32,
) -> Result<Feasibility<BipartiteMultigraph, Certificate>, Error> {
    let all: BTreeSet<String> = g
        .left_names()
        .iter()
        .chain(g.right_names())
        .cloned()
        .collect();
    k_thickening_on(g, &all, k)
}

pub(crate) fn certificate_holds_host(h: &impl WindowHost, cert: &Certificate) -> bool {
    match cert.kind {
        CertificateKind::DegreeExceeded => {
            cert.t.len() == 1
                && h.side_of(&cert.t[0]) == cert.part
                && cert.lhs == i64::from(cert.k)
                && h.degree_of(&cert.t[0]) == cert.rhs
                && cert.rhs > cert.lhs
        }
        CertificateKind::ConditionIi => {
            if cert.t.is_empty() || cert.t.iter().any(|v| h.side_of(v) != cert.part) {
                return false;
            }
            let again = condition_certificate(h, cert.t.clone(), cert.part, cert.k);
            again.lhs == cert.lhs && again.rhs == cert.rhs && cert.lhs < cert.rhs
        }
    }
}

/// Recomputes a certificate against `g` and confirms the claimed violation,
/// including the stored side values.
pub fn certificate_holds(g: &BipartiteMultigraph, cert: &Certificate) -> Result<bool, Error> {
    for v in &cert.t {
        if !g.contains(v) {
            return Ok(false);
        }
    }
    Ok(certificate_holds_host(g, cert))
}

/// Outcome of a perfect matching search: a factor, or a set on one side
/// smaller than its neighborhood union on the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchingOutcome {
    Factor(OneFactor),
    Violator { side: Side, t: Vec<String> },
}

fn kuhn_augment(
    u: usize,
    adj: &[Vec<usize>],
    visited: &mut [bool],
    match_left: &mut [Option<usize>],
    match_right: &mut [Option<usize>],
) -> bool {
    for &y in &adj[u] {
        if visited[y] {
            continue;
        }
        visited[y] = true;
        let free = match match_right[y] {
            None => true,
            Some(l) => kuhn_augment(l, adj, visited, match_left, match_right),
        };
        if free {
            match_left[u] = Some(y);
            match_right[y] = Some(u);
            return true;
        }
    }
    false
}

fn alternating_violator(
    start: usize,
    adj: &[Vec<usize>],
    match_other: &[Option<usize>],
) -> Vec<usize> {
    // Vertices on the start side reachable by alternating paths; their
    // neighborhood union is exactly the matched partners, one short of them.
    let mut in_t = BTreeSet::from([start]);
    let mut seen_other: BTreeSet<usize> = BTreeSet::new();
    let mut queue = vec![start];
    while let Some(u) = queue.pop() {
        for &y in &adj[u] {
            if seen_other.insert(y) {
                if let Some(l) = match_other[y] {
                    if in_t.insert(l) {
                        queue.push(l);
                    }
                }
            }
        }
    }
    debug_assert_eq!(seen_other.len() + 1, in_t.len());
    in_t.into_iter().collect()
}

/// Perfect matching of a bipartite multigraph, or a witness set whose
/// neighborhood is smaller than itself (reported on a largest part when the
/// part sizes differ).
pub fn perfect_matching(g: &BipartiteMultigraph) -> MatchingOutcome {
    let nl = g.left_names().len();
    let nr = g.right_names().len();
    let adj: Vec<Vec<usize>> = (0..nl)
        .map(|i| g.adj_idx(i).iter().map(|&(j, _)| j as usize).collect())
        .collect();
    let mut match_left: Vec<Option<usize>> = vec![None; nl];
    let mut match_right: Vec<Option<usize>> = vec![None; nr];
    let mut matched = 0;
    for u in 0..nl {
        let mut visited = vec![false; nr];
        if kuhn_augment(u, &adj, &mut visited, &mut match_left, &mut match_right) {
            matched += 1;
        }
    }
    if matched == nl && nl == nr {
        let edges: Vec<(String, String)> = match_left
            .iter()
            .enumerate()
            .map(|(i, y)| {
                (
                    g.left_name(i).to_string(),
                    g.right_name(y.expect("perfect")).to_string(),
                )
            })
            .collect();
        return MatchingOutcome::Factor(OneFactor::new(edges));
    }
    if matched < nl {
        let start = (0..nl).find(|&u| match_left[u].is_none()).expect("deficit");
        let t = alternating_violator(start, &adj, &match_right)
            .into_iter()
            .map(|i| g.left_name(i).to_string())
            .collect();
        return MatchingOutcome::Violator {
            side: Side::Left,
            t,
        };
    }
    let radj: Vec<Vec<usize>> = (0..nr)
        .map(|j| g.radj_idx(j).iter().map(|&(i, _)| i as usize).collect())
        .collect();
    let start = (0..nr)
        .find(|&y| match_right[y].is_none())
        .expect("deficit");
    let t = alternating_violator(start, &radj, &match_left)
        .into_iter()
        .map(|j| g.right_name(j).to_string())
        .collect();
    MatchingOutcome::Violator {
        side: Side::Right,
        t,
    }
}

/// Splits a k-regular bipartite multigraph into exactly k 1-factors by
/// repeatedly removing a perfect matching.
pub fn one_factorize(g: &BipartiteMultigraph, k: u32) -> Result<Vec<OneFactor>, Error> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    if let Some((vertex, degree)) = g.regularity_defect(k) {
        return Err(Error::NotRegular {
            expected: k,
            vertex,
            degree,
        });
    }
    let nl = g.left_names().len();
    let mut mu: Vec<std::collections::BTreeMap<usize, u32>> = (0..nl)
        .map(|i| {
            g.adj_idx(i)
                .iter()
                .map(|&(j, m)| (j as usize, m))
                .collect()
        })
        .collect();
    let mut factors = Vec::with_capacity(k as usize);
    for _ in 0..k {
        let rest = BipartiteMultigraph::new(
            g.left_names().to_vec(),
            g.right_names().to_vec(),
            mu.iter().enumerate().flat_map(|(i, l)| {
                l.iter().map(move |(&j, &m)| {
                    (g.left_name(i).to_string(), g.right_name(j).to_string(), m)
                })
            }),
        )?;
        match perfect_matching(&rest) {
            MatchingOutcome::Factor(f) => {
                for (x, y) in f.edges() {
                    let xi = g.left_index(x)?;
                    let yi = g.right_index(y)?;
                    let e = mu[xi].get_mut(&yi).expect("matched pair present");
                    *e -= 1;
                    if *e == 0 {
                        mu[xi].remove(&yi);
                    }
                }
                factors.push(f);
            }
            MatchingOutcome::Violator { .. } => {
                unreachable!("a regular bipartite multigraph always has a perfect matching")
            }
        }
    }
    debug_assert!(mu.iter().all(std::collections::BTreeMap::is_empty));
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simple(left: &[&str], right: &[&str], edges: &[(&str, &str)]) -> BipartiteMultigraph {
        BipartiteMultigraph::new(
            left.iter().map(|s| s.to_string()),
            right.iter().map(|s| s.to_string()),
            edges
                .iter()
                .map(|&(x, y)| (x.to_string(), y.to_string(), 1)),
        )
        .unwrap()
    }

    fn names(v: &[&str]) -> BTreeSet<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn close_window_adds_left_neighborhoods() {
        let g = simple(&["a", "b"], &["c", "d"], &[("a", "c"), ("a", "d"), ("b", "d")]);
        let s = close_window(&g, &names(&["a"])).unwrap();
        assert_eq!(s, names(&["a", "c", "d"]));
        let s = close_window(&g, &names(&["c"])).unwrap();
        assert_eq!(s, names(&["c"]));
        assert!(close_window(&g, &names(&["zz"])).is_err());
    }

    #[test]
    fn network_partition_for_path() {
        // Path x - y - z with y on the right: c_x = c_z = 1, c_y = 0, m = 2,
        // S2'' = {y}, m'' = 0, so the bypass arc has capacity 2.
        let g = simple(&["x", "z"], &["y"], &[("x", "y"), ("z", "y")]);
        let s = names(&["x", "y", "z"]);
        let tn = match build_network(&g, &s, 2).unwrap() {
            Feasibility::Feasible(tn) => tn,
            Feasibility::Infeasible(c) => panic!("unexpected certificate {c:?}"),
        };
        assert_eq!(tn.partition.m, 2);
        assert_eq!(tn.partition.m_doubleprime, 0);
        assert_eq!(tn.partition.s2_doubleprime, vec!["y".to_string()]);
        assert!(tn.partition.s2_prime.is_empty());
        let last = tn.network.arcs().last().unwrap();
        assert_eq!((last.tail, last.head, last.capacity), (BPRIME, SINK, 2));
        // No thickening: the path cannot become 2-regular.
        let out = k_thickening_on(&g, &s, 2).unwrap();
        let Feasibility::Infeasible(cert) = out else {
            panic!("expected certificate");
        };
        assert_eq!(cert.kind, CertificateKind::ConditionIi);
        assert_eq!(cert.t, vec!["x".to_string(), "z".to_string()]);
        assert_eq!((cert.lhs, cert.rhs), (-2, 0));
        assert!(certificate_holds(&g, &cert).unwrap());
    }

    #[test]
    fn single_edge_is_its_own_one_thickening() {
        let g = simple(&["x"], &["y"], &[("x", "y")]);
        let s = names(&["x", "y"]);
        let tn = match build_network(&g, &s, 1).unwrap() {
            Feasibility::Feasible(tn) => tn,
            Feasibility::Infeasible(c) => panic!("unexpected certificate {c:?}"),
        };
        assert_eq!(tn.partition.m, 0);
        let (flow, _) = tn.network.max_flow();
        assert_eq!(flow.magnitude(), 0);
        let out = k_regular_thickening(&g, 1).unwrap();
        let Feasibility::Feasible(h) = out else {
            panic!("expected thickening");
        };
        assert_eq!(h, g);
    }

    #[test]
    fn degree_check_short_circuits() {
        let g = simple(&["x"], &["y", "z"], &[("x", "y"), ("x", "z")]);
        let out = k_regular_thickening(&g, 1).unwrap();
        let Feasibility::Infeasible(cert) = out else {
            panic!("expected certificate");
        };
        assert_eq!(cert.kind, CertificateKind::DegreeExceeded);
        assert_eq!(cert.t, vec!["x".to_string()]);
        assert_eq!((cert.lhs, cert.rhs), (1, 2));
        assert!(certificate_holds(&g, &cert).unwrap());
    }

    #[test]
    fn boundary_vertices_may_stay_under_degree() {
        // Window around a in the 4-cycle: b and d are boundary rights and
        // may stay at window degree 1 while a already sits at 2.
        let g = simple(
            &["a", "c"],
            &["b", "d"],
            &[("a", "b"), ("a", "d"), ("c", "b"), ("c", "d")],
        );
        let s_star = names(&["a"]);
        let out = k_thickening_on(&g, &s_star, 2).unwrap();
        let Feasibility::Feasible(h) = out else {
            panic!("expected thickening");
        };
        assert_eq!(h.left_names(), ["a"]);
        assert_eq!(h.right_names(), ["b", "d"]);
        assert_eq!(h.multiplicity("a", "b").unwrap(), 1);
        assert_eq!(h.multiplicity("a", "d").unwrap(), 1);
    }

    #[test]
    fn saturated_boundary_rights_force_a_certificate() {
        // b's true degree is already 2, so a (true degree 1) cannot gain an
        // edge inside the window: T = {a} witnesses the deficiency.
        let g = simple(&["a", "c"], &["b"], &[("a", "b"), ("c", "b")]);
        let out = k_thickening_on(&g, &names(&["a"]), 2).unwrap();
        let Feasibility::Infeasible(cert) = out else {
            panic!("expected certificate");
        };
        assert_eq!(cert.kind, CertificateKind::ConditionIi);
        assert_eq!(cert.part, Side::Left);
        assert_eq!(cert.t, vec!["a".to_string()]);
        assert_eq!((cert.lhs, cert.rhs), (0, 1));
        assert!(certificate_holds(&g, &cert).unwrap());
    }

    #[test]
    fn build_network_requires_closed_window() {
        let g = simple(&["a"], &["b", "c"], &[("a", "b"), ("a", "c")]);
        let err = build_network(&g, &names(&["a", "b"]), 2).unwrap_err();
        assert!(matches!(err, Error::WindowNotClosed(v) if v == "a"));
    }

    #[test]
    fn interior_rights_certificate_when_demand_exceeds_supply() {
        // c_x = 1 but the two interior rights demand 2: T = {y, z}.
        let g = simple(&["x"], &["y", "z"], &[("x", "y"), ("x", "z")]);
        let out = k_regular_thickening(&g, 2).unwrap();
        let Feasibility::Infeasible(cert) = out else {
            panic!("expected certificate");
        };
        assert_eq!(cert.kind, CertificateKind::ConditionIi);
        assert_eq!(cert.part, Side::Right);
        assert_eq!(cert.t, vec!["y".to_string(), "z".to_string()]);
        assert!(certificate_holds(&g, &cert).unwrap());
    }

    #[test]
    fn six_cycle_matches_deterministically() {
        // C6 with parts {v1, v3, v5} and {v2, v4, v6}.
        let g = simple(
            &["v1", "v3", "v5"],
            &["v2", "v4", "v6"],
            &[
                ("v1", "v2"),
                ("v3", "v2"),
                ("v3", "v4"),
                ("v5", "v4"),
                ("v5", "v6"),
                ("v1", "v6"),
            ],
        );
        let MatchingOutcome::Factor(f) = perfect_matching(&g) else {
            panic!("C6 has a perfect matching");
        };
        // v3 displaces v1 from v2 along an augmenting path; the answer is
        // an arbitrary perfect matching but always this one.
        assert_eq!(
            f.edges(),
            [
                ("v1".to_string(), "v6".to_string()),
                ("v3".to_string(), "v2".to_string()),
                ("v5".to_string(), "v4".to_string()),
            ]
        );
    }

    #[test]
    fn hall_violator_is_reported_with_its_side() {
        let g = simple(&["a", "b"], &["c"], &[("a", "c"), ("b", "c")]);
        let MatchingOutcome::Violator { side, t } = perfect_matching(&g) else {
            panic!("no perfect matching exists");
        };
        assert_eq!(side, Side::Left);
        assert_eq!(t, vec!["a".to_string(), "b".to_string()]);
        // Unequal parts with the deficit on the right.
        let g = simple(&["a"], &["c", "d"], &[("a", "c"), ("a", "d")]);
        let MatchingOutcome::Violator { side, t } = perfect_matching(&g) else {
            panic!("no perfect matching exists");
        };
        assert_eq!(side, Side::Right);
        assert_eq!(t, vec!["c".to_string(), "d".to_string()]);
    }

    #[test]
    fn double_edge_factorizes_into_two_copies() {
        let g = BipartiteMultigraph::new(
            ["x"],
            ["y"],
            vec![("x".to_string(), "y".to_string(), 2)],
        )
        .unwrap();
        let fs = one_factorize(&g, 2).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0], fs[1]);
        assert_eq!(fs[0].edges(), [("x".to_string(), "y".to_string())]);
    }

    #[test]
    fn factorize_rejects_irregular_input() {
        let g = simple(&["x", "z"], &["y", "w"], &[("x", "y"), ("x", "w"), ("z", "y")]);
        let err = one_factorize(&g, 2).unwrap_err();
        assert!(matches!(err, Error::NotRegular { vertex, degree: 1, .. } if vertex == "w" || vertex == "z"));
    }

    #[test]
    fn factorize_covers_six_cycle() {
        let g = simple(
            &["v1", "v3", "v5"],
            &["v2", "v4", "v6"],
            &[
                ("v1", "v2"),
                ("v3", "v2"),
                ("v3", "v4"),
                ("v5", "v4"),
                ("v5", "v6"),
                ("v1", "v6"),
            ],
        );
        let fs = one_factorize(&g, 2).unwrap();
        assert_eq!(fs.len(), 2);
        let mut covered: BTreeSet<(String, String)> = BTreeSet::new();
        for f in &fs {
            for (x, y) in f.edges() {
                assert!(covered.insert((x.clone(), y.clone())), "edge reused");
            }
        }
        assert_eq!(covered.len(), 6);
    }
}
