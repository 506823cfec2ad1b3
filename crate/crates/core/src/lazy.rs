//! Lazily defined locally finite graphs, built-in families, and sound
//! window refutation.
//!
//! A window is a finite ball around a center vertex, closed under left
//! neighborhoods. Thickening the window with the true (full-graph) degrees
//! must succeed whenever the whole graph is coverable, so an infeasible
//! window refutes every k-cover or k-generation outright; a feasible window
//! says nothing.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::derange::{translate_certificate, DigraphCertificate, DigraphCondition};
use crate::error::Error;
use crate::graph::{base_name, doubled_name, BipartiteMultigraph, Digraph, Side};
use crate::thicken::{certificate_holds_host, thicken_on_host, Certificate, WindowHost};
use crate::Feasibility;

type MemberFn = Arc<dyn Fn(&str) -> bool + Send + Sync>;
type NeighborFn = Arc<dyn Fn(&str) -> Vec<String> + Send + Sync>;
type SideFn = Arc<dyn Fn(&str) -> Side + Send + Sync>;
type MultiNeighborFn = Arc<dyn Fn(&str) -> Vec<(String, u32)> + Send + Sync>;

/// Locally finite loopless digraph given by neighbor functions.
#[derive(Clone)]
pub struct LazyDigraph {
    member: MemberFn,
    out: NeighborFn,
    inn: NeighborFn,
    seed: String,
}

impl LazyDigraph {
    /// Wraps neighbor functions; `out` and `inn` must agree (`y ∈ out(x)`
    /// exactly when `x ∈ in(y)`) and return finite lists. Listed names that
    /// are not members, and the vertex itself, are ignored.
    pub fn new(
        member: impl Fn(&str) -> bool + Send + Sync + 'static,
        out: impl Fn(&str) -> Vec<String> + Send + Sync + 'static,
        inn: impl Fn(&str) -> Vec<String> + Send + Sync + 'static,
        seed: impl Into<String>,
    ) -> Result<LazyDigraph, Error> {
        let seed = seed.into();
        if !member(&seed) {
            return Err(Error::InvalidVertex(seed));
        }
        Ok(LazyDigraph {
            member: Arc::new(member),
            out: Arc::new(out),
            inn: Arc::new(inn),
            seed,
        })
    }

    /// Finite digraph viewed lazily; the seed is its first vertex.
    pub fn from_digraph(d: &Digraph) -> Result<LazyDigraph, Error> {
        let seed = d
            .vertex_names()
            .first()
            .cloned()
            .ok_or_else(|| Error::InvalidFamily("empty digraph has no seed".to_string()))?;
        let out = Arc::new(d.clone());
        let inn = out.clone();
        let mem = out.clone();
        LazyDigraph::new(
            move |v| mem.contains(v),
            move |v| {
                out.out_neighbors(v)
                    .map(|ns| ns.into_iter().map(String::from).collect())
                    .unwrap_or_default()
            },
            move |v| {
                inn.in_neighbors(v)
                    .map(|ns| ns.into_iter().map(String::from).collect())
                    .unwrap_or_default()
            },
            seed,
        )
    }

    pub fn contains(&self, v: &str) -> bool {
        (self.member)(v)
    }

    pub fn seed(&self) -> &str {
        &self.seed
    }

    fn sanitize(&self, v: &str, mut names: Vec<String>) -> Vec<String> {
        names.retain(|n| n != v && (self.member)(n));
        names.sort_unstable();
        names.dedup();
        names
    }

    pub fn out_neighbors(&self, v: &str) -> Result<Vec<String>, Error> {
        if !self.contains(v) {
            return Err(Error::InvalidVertex(v.to_string()));
        }
        Ok(self.sanitize(v, (self.out)(v)))
    }

    pub fn in_neighbors(&self, v: &str) -> Result<Vec<String>, Error> {
        if !self.contains(v) {
            return Err(Error::InvalidVertex(v.to_string()));
        }
        Ok(self.sanitize(v, (self.inn)(v)))
    }

    pub fn out_degree(&self, v: &str) -> Result<usize, Error> {
        Ok(self.out_neighbors(v)?.len())
    }

    pub fn in_degree(&self, v: &str) -> Result<usize, Error> {
        Ok(self.in_neighbors(v)?.len())
    }

    /// Vertices within `radius` steps of `center`, arcs read as undirected.
    pub fn ball(&self, center: &str, radius: u32) -> Result<BTreeSet<String>, Error> {
        if !self.contains(center) {
            return Err(Error::InvalidVertex(center.to_string()));
        }
        let mut seen: BTreeSet<String> = BTreeSet::from([center.to_string()]);
        let mut frontier = vec![center.to_string()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for v in frontier {
                for n in self.out_neighbors(&v)?.into_iter().chain(self.in_neighbors(&v)?) {
                    if seen.insert(n.clone()) {
                        next.push(n);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        Ok(seen)
    }

    /// Finite subdigraph induced on `s`.
    pub fn induced(&self, s: &BTreeSet<String>) -> Result<Digraph, Error> {
        let mut arcs = Vec::new();
        for v in s {
            for w in self.out_neighbors(v)? {
                if s.contains(&w) {
                    arcs.push((v.clone(), w));
                }
            }
        }
        Digraph::new(s.iter().cloned(), arcs)
    }
}

/// Locally finite bipartite multigraph given by neighbor functions.
#[derive(Clone)]
pub struct LazyBipartite {
    member: MemberFn,
    side: SideFn,
    nbrs: MultiNeighborFn,
    seed: String,
}

impl LazyBipartite {
    /// Wraps neighbor functions; `neighbors` returns `(name, multiplicity)`
    /// pairs, symmetric across the two parts. Non-members are ignored.
    pub fn new(
        member: impl Fn(&str) -> bool + Send + Sync + 'static,
        side: impl Fn(&str) -> Side + Send + Sync + 'static,
        neighbors: impl Fn(&str) -> Vec<(String, u32)> + Send + Sync + 'static,
        seed: impl Into<String>,
    ) -> Result<LazyBipartite, Error> {
        let seed = seed.into();
        if !member(&seed) {
            return Err(Error::InvalidVertex(seed));
        }
        Ok(LazyBipartite {
            member: Arc::new(member),
            side: Arc::new(side),
            nbrs: Arc::new(neighbors),
            seed,
        })
    }

    /// Finite bipartite multigraph viewed lazily; the seed is its first
    /// vertex.
    pub fn from_bipartite(g: &BipartiteMultigraph) -> Result<LazyBipartite, Error> {
        let seed = g
            .vertex_names()
            .first()
            .map(|s| s.to_string())
            .ok_or_else(|| Error::InvalidFamily("empty graph has no seed".to_string()))?;
        let g = Arc::new(g.clone());
        let mem = g.clone();
        let sid = g.clone();
        LazyBipartite::new(
            move |v| mem.contains(v),
            move |v| sid.side_of(v).expect("member"),
            move |v| match g.side_of(v) {
                Err(_) => Vec::new(),
                Ok(_) => g
                    .neighbors(v)
                    .expect("member")
                    .into_iter()
                    .map(|n| {
                        let m = match g.side_of(v).expect("member") {
                            Side::Left => g.multiplicity(v, n),
                            Side::Right => g.multiplicity(n, v),
                        };
                        (n.to_string(), m.expect("adjacent pair"))
                    })
                    .collect(),
            },
            seed,
        )
    }

    pub fn contains(&self, v: &str) -> bool {
        (self.member)(v)
    }

    pub fn seed(&self) -> &str {
        &self.seed
    }

    pub fn side_of(&self, v: &str) -> Result<Side, Error> {
        if !self.contains(v) {
            return Err(Error::InvalidVertex(v.to_string()));
        }
        Ok((self.side)(v))
    }

    /// Distinct neighbors with multiplicities, sorted by name.
    pub fn neighbors(&self, v: &str) -> Result<Vec<(String, u32)>, Error> {
        if !self.contains(v) {
            return Err(Error::InvalidVertex(v.to_string()));
        }
        let mut out: Vec<(String, u32)> = Vec::new();
        for (n, m) in (self.nbrs)(v) {
            if m > 0 && (self.member)(&n) {
                out.push((n, m));
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn degree(&self, v: &str) -> Result<i64, Error> {
        Ok(self.neighbors(v)?.iter().map(|&(_, m)| i64::from(m)).sum())
    }

    /// Vertices within `radius` steps of `center`.
    pub fn ball(&self, center: &str, radius: u32) -> Result<BTreeSet<String>, Error> {
        if !self.contains(center) {
            return Err(Error::InvalidVertex(center.to_string()));
        }
        let mut seen: BTreeSet<String> = BTreeSet::from([center.to_string()]);
        let mut frontier = vec![center.to_string()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for v in frontier {
                for (n, _) in self.neighbors(&v)? {
                    if seen.insert(n.clone()) {
                        next.push(n);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        Ok(seen)
    }

    /// Finite submultigraph induced on `s`.
    pub fn induced(&self, s: &BTreeSet<String>) -> Result<BipartiteMultigraph, Error> {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut edges = Vec::new();
        for v in s {
            match self.side_of(v)? {
                Side::Left => {
                    left.push(v.clone());
                    for (n, m) in self.neighbors(v)? {
                        if s.contains(&n) {
                            edges.push((v.clone(), n, m));
                        }
                    }
                }
                Side::Right => right.push(v.clone()),
            }
        }
        BipartiteMultigraph::new(left, right, edges)
    }
}

impl WindowHost for LazyBipartite {
    fn side_of(&self, v: &str) -> Side {
        LazyBipartite::side_of(self, v).expect("window vertex")
    }

    fn neighbors_of(&self, v: &str) -> Vec<String> {
        LazyBipartite::neighbors(self, v)
            .expect("window vertex")
            .into_iter()
            .map(|(n, _)| n)
            .collect()
    }

    fn degree_of(&self, v: &str) -> i64 {
        LazyBipartite::degree(self, v).expect("window vertex")
    }

    fn multiplicity_of(&self, x: &str, y: &str) -> u32 {
        LazyBipartite::neighbors(self, x)
            .expect("window vertex")
            .into_iter()
            .find(|(n, _)| n == y)
            .map_or(0, |(_, m)| m)
    }
}

/// Bipartite double of a lazy digraph, addressed by doubled names.
struct DoubledLazy<'a>(&'a LazyDigraph);

impl DoubledLazy<'_> {
    fn base<'n>(&self, v: &'n str) -> (&'n str, Side) {
        base_name(v).expect("doubled window vertex")
    }
}

impl WindowHost for DoubledLazy<'_> {
    fn side_of(&self, v: &str) -> Side {
        self.base(v).1
    }

    fn neighbors_of(&self, v: &str) -> Vec<String> {
        let (b, side) = self.base(v);
        let mut ns: Vec<String> = match side {
            Side::Left => self
                .0
                .out_neighbors(b)
                .expect("window vertex")
                .into_iter()
                .map(|y| doubled_name(&y, Side::Right))
                .collect(),
            Side::Right => self
                .0
                .in_neighbors(b)
                .expect("window vertex")
                .into_iter()
                .map(|x| doubled_name(&x, Side::Left))
                .collect(),
        };
        ns.sort_unstable();
        ns
    }

    fn degree_of(&self, v: &str) -> i64 {
        let (b, side) = self.base(v);
        let d = match side {
            Side::Left => self.0.out_degree(b),
            Side::Right => self.0.in_degree(b),
        };
        d.expect("window vertex") as i64
    }

    fn multiplicity_of(&self, x: &str, y: &str) -> u32 {
        let (bx, _) = self.base(x);
        let (by, _) = self.base(y);
        let adjacent = self
            .0
            .out_neighbors(bx)
            .expect("window vertex")
            .iter()
            .any(|n| n == by);
        u32::from(adjacent)
    }
}

/// Verdict of one window check: a sound refutation or no claim at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowVerdict<C> {
    Refuted(C),
    Unresolved,
}

/// Result of refuting on the ball of one radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowReport<C> {
    pub verdict: WindowVerdict<C>,
    pub k: u32,
    pub radius: u32,
    /// Number of vertices of the closed window the decision ran on.
    pub window_size: usize,
}

impl<C> WindowReport<C> {
    pub fn is_refuted(&self) -> bool {
        matches!(self.verdict, WindowVerdict::Refuted(_))
    }
}

/// Tries to refute generation of `l` by at most k derangements on the ball
/// of the given radius. `Refuted` is final for the whole infinite digraph;
/// `Unresolved` makes no claim.
pub fn window_refute_digraph(
    l: &LazyDigraph,
    k: u32,
    center: &str,
    radius: u32,
) -> Result<WindowReport<DigraphCertificate>, Error> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let ball = l.ball(center, radius)?;
    let s_star: BTreeSet<String> = ball
        .iter()
        .flat_map(|v| [doubled_name(v, Side::Left), doubled_name(v, Side::Right)])
        .collect();
    let host = DoubledLazy(l);
    let run = thicken_on_host(&host, &s_star, k)?;
    let verdict = match run.outcome {
        Feasibility::Feasible(_) => WindowVerdict::Unresolved,
        Feasibility::Infeasible(cert) => {
            debug_assert!(certificate_holds_host(&host, &cert));
            WindowVerdict::Refuted(translate_certificate(&cert))
        }
    };
    Ok(WindowReport {
        verdict,
        k,
        radius,
        window_size: run.window.len(),
    })
}

/// Tries to refute a k-factor cover of `l` on the ball of the given radius.
pub fn window_refute_bipartite(
    l: &LazyBipartite,
    k: u32,
    center: &str,
    radius: u32,
) -> Result<WindowReport<Certificate>, Error> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let s_star = l.ball(center, radius)?;
    let run = thicken_on_host(l, &s_star, k)?;
    let verdict = match run.outcome {
        Feasibility::Feasible(_) => WindowVerdict::Unresolved,
        Feasibility::Infeasible(cert) => {
            debug_assert!(certificate_holds_host(l, &cert));
            WindowVerdict::Refuted(cert)
        }
    };
    Ok(WindowReport {
        verdict,
        k,
        radius,
        window_size: run.window.len(),
    })
}

/// Recomputes a cover certificate against the lazy graph's true degrees.
pub fn lazy_certificate_holds(l: &LazyBipartite, cert: &Certificate) -> bool {
    if cert.t.iter().any(|v| !l.contains(v)) {
        return false;
    }
    certificate_holds_host(l, cert)
}

/// Recomputes a generation certificate against the lazy digraph's true
/// degrees.
pub fn lazy_digraph_certificate_holds(l: &LazyDigraph, cert: &DigraphCertificate) -> bool {
    if cert.t.iter().any(|v| !l.contains(v)) {
        return false;
    }
    let out_deg = |v: &str| l.out_degree(v).expect("member") as i64;
    let in_deg = |v: &str| l.in_degree(v).expect("member") as i64;
    match cert.kind {
        DigraphCondition::I => {
            cert.t.len() == 1
                && cert.lhs == i64::from(cert.k)
                && cert.rhs > cert.lhs
                && (out_deg(&cert.t[0]) == cert.rhs || in_deg(&cert.t[0]) == cert.rhs)
        }
        DigraphCondition::Ii | DigraphCondition::Iii => {
            if cert.t.is_empty() {
                return false;
            }
            let forward = cert.kind == DigraphCondition::Ii;
            let mut n: BTreeSet<String> = BTreeSet::new();
            for v in &cert.t {
                let ns = if forward {
                    l.out_neighbors(v).expect("member")
                } else {
                    l.in_neighbors(v).expect("member")
                };
                n.extend(ns);
            }
            let sum_n: i64 = n.iter().map(|v| if forward { in_deg(v) } else { out_deg(v) }).sum();
            let sum_t: i64 = cert
                .t
                .iter()
                .map(|v| if forward { out_deg(v) } else { in_deg(v) })
                .sum();
            let lhs = i64::from(cert.k) * (n.len() as i64 - cert.t.len() as i64);
            let rhs = sum_n - sum_t;
            lhs == cert.lhs && rhs == cert.rhs && lhs < rhs
        }
    }
}

/// One row of a lower-bound scan: the smallest refuting radius for k, or
/// none within the bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub k: u32,
    pub refuting_radius: Option<u32>,
    pub window_size: Option<usize>,
}

fn scan_with<E>(
    k_max: u32,
    r_max: u32,
    ball: impl Fn(u32) -> Result<BTreeSet<String>, E>,
    mut refute: impl FnMut(u32, u32) -> Result<(bool, usize), E>,
) -> Result<Vec<ScanRow>, E> {
    let mut rows = Vec::new();
    for k in 1..=k_max {
        let mut row = ScanRow {
            k,
            refuting_radius: None,
            window_size: None,
        };
        let mut prev: Option<BTreeSet<String>> = None;
        for r in 0..=r_max {
            let b = ball(r)?;
            if prev.as_ref() == Some(&b) {
                // The ball saturated; larger radii repeat the same window.
                break;
            }
            let (refuted, size) = refute(k, r)?;
            if refuted {
                row.refuting_radius = Some(r);
                row.window_size = Some(size);
                break;
            }
            prev = Some(b);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Smallest refuting radius per k = 1..=k_max, searching radii up to r_max.
pub fn lower_bound_scan_digraph(
    l: &LazyDigraph,
    center: &str,
    k_max: u32,
    r_max: u32,
) -> Result<Vec<ScanRow>, Error> {
    scan_with(
        k_max,
        r_max,
        |r| l.ball(center, r),
        |k, r| {
            let report = window_refute_digraph(l, k, center, r)?;
            Ok((report.is_refuted(), report.window_size))
        },
    )
}

/// Smallest refuting radius per k = 1..=k_max for a bipartite family.
pub fn lower_bound_scan_bipartite(
    l: &LazyBipartite,
    center: &str,
    k_max: u32,
    r_max: u32,
) -> Result<Vec<ScanRow>, Error> {
    scan_with(
        k_max,
        r_max,
        |r| l.ball(center, r),
        |k, r| {
            let report = window_refute_bipartite(l, k, center, r)?;
            Ok((report.is_refuted(), report.window_size))
        },
    )
}

fn parse_int(s: &str) -> Option<i64> {
    let v: i64 = s.parse().ok()?;
    // Reject aliases like "+1", "01", "-0": names must round-trip.
    (format!("{v}") == s).then_some(v)
}

fn w_index(name: &str) -> Option<i64> {
    parse_int(name.strip_prefix('w')?)
}

fn vu_index(name: &str) -> Option<(char, i64)> {
    let first = name.chars().next()?;
    if first != 'v' && first != 'u' {
        return None;
    }
    Some((first, parse_int(&name[1..])?))
}

fn layer_index(name: &str) -> Option<(char, i64, &str)> {
    let first = name.chars().next()?;
    if first != 'n' && first != 'm' {
        return None;
    }
    let rest = &name[1..];
    let dot = rest.find('.')?;
    Some((first, parse_int(&rest[..dot])?, &rest[dot + 1..]))
}

fn is_odd(i: i64) -> bool {
    i.rem_euclid(2) == 1
}

/// Bi-infinite digraph on w_i with arcs to both path neighbors and a skip
/// arc from each odd w_i to w_{i+2}.
pub fn ladder_digraph() -> LazyDigraph {
    let name = |i: i64| format!("w{i}");
    LazyDigraph::new(
        |v| w_index(v).is_some(),
        move |v| {
            let Some(i) = w_index(v) else { return Vec::new() };
            let mut ns = Vec::new();
            if let Some(p) = i.checked_sub(1) {
                ns.push(format!("w{p}"));
            }
            if let Some(p) = i.checked_add(1) {
                ns.push(format!("w{p}"));
            }
            if is_odd(i) {
                if let Some(p) = i.checked_add(2) {
                    ns.push(format!("w{p}"));
                }
            }
            ns
        },
        move |v| {
            let Some(i) = w_index(v) else { return Vec::new() };
            let mut ns = Vec::new();
            if let Some(p) = i.checked_sub(1) {
                ns.push(format!("w{p}"));
            }
            if let Some(p) = i.checked_add(1) {
                ns.push(format!("w{p}"));
            }
            if is_odd(i) {
                if let Some(p) = i.checked_sub(2) {
                    ns.push(format!("w{p}"));
                }
            }
            ns
        },
        name(0),
    )
    .expect("seed w0 is a member")
}

/// Bi-infinite graph on two parallel paths v_i and u_i with a rung between
/// v_i and u_i at every odd i.
pub fn ladder_graph() -> LazyBipartite {
    LazyBipartite::new(
        |v| vu_index(v).is_some(),
        |v| {
            let (c, i) = vu_index(v).expect("member");
            // Bipartition: even v and odd u on the left.
            match (c, is_odd(i)) {
                ('v', false) | ('u', true) => Side::Left,
                _ => Side::Right,
            }
        },
        |v| {
            let Some((c, i)) = vu_index(v) else { return Vec::new() };
            let mut ns = Vec::new();
            if let Some(p) = i.checked_sub(1) {
                ns.push((format!("{c}{p}"), 1));
            }
            if let Some(p) = i.checked_add(1) {
                ns.push((format!("{c}{p}"), 1));
            }
            if is_odd(i) {
                let other = if c == 'v' { 'u' } else { 'v' };
                ns.push((format!("{other}{i}"), 1));
            }
            ns
        },
        "v0",
    )
    .expect("seed v0 is a member")
}

/// Infinite path of copies of H with every path edge subdivided: vertices
/// n{i}.{y} (copy vertices) and m{i}.{y} (subdivision vertices between
/// layers i and i+1). H must be a nonempty simple regular bipartite graph.
pub fn subdivided_product(h: &BipartiteMultigraph) -> Result<LazyBipartite, Error> {
    if h.vertex_count() == 0 {
        return Err(Error::InvalidFamily("H must be nonempty".to_string()));
    }
    if !h.is_simple() {
        return Err(Error::InvalidFamily("H must be simple".to_string()));
    }
    let degree = h.degree(h.vertex_names()[0])?;
    if degree < 1 {
        return Err(Error::InvalidFamily("H must have positive degree".to_string()));
    }
    if let Some((v, d)) = h.regularity_defect(degree as u32) {
        return Err(Error::InvalidFamily(format!(
            "H is not regular: vertex {v} has degree {d}, expected {degree}"
        )));
    }
    let seed = format!("n0.{}", h.vertex_names()[0]);
    let h = Arc::new(h.clone());
    let mem = h.clone();
    let sid = h.clone();
    LazyBipartite::new(
        move |v| matches!(layer_index(v), Some((_, _, y)) if mem.contains(y)),
        move |v| {
            let (c, _, y) = layer_index(v).expect("member");
            let side = sid.side_of(y).expect("member");
            // Copy vertices keep H's side; subdivision vertices flip it.
            if c == 'n' {
                side
            } else {
                side.other()
            }
        },
        move |v| {
            let Some((c, i, y)) = layer_index(v) else { return Vec::new() };
            if !h.contains(y) {
                return Vec::new();
            }
            let mut ns = Vec::new();
            match c {
                'n' => {
                    if let Some(p) = i.checked_sub(1) {
                        ns.push((format!("m{p}.{y}"), 1));
                    }
                    ns.push((format!("m{i}.{y}"), 1));
                    for z in h.neighbors(y).expect("member") {
                        ns.push((format!("n{i}.{z}"), 1));
                    }
                }
                _ => {
                    ns.push((format!("n{i}.{y}"), 1));
                    if let Some(p) = i.checked_add(1) {
                        ns.push((format!("n{p}.{y}"), 1));
                    }
                }
            }
            ns
        },
        seed,
    )
}

/// Finite bipartite graph on v_1..v_{2k-1} and u_1..u_{2k-1}: two paths with
/// rungs at the odd positions. Its minimum 1-factor cover has exactly k
/// factors.
pub fn gk(k: u32) -> Result<BipartiteMultigraph, Error> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let top = 2 * i64::from(k) - 1;
    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in 1..=top {
        for c in ['v', 'u'] {
            let name = format!("{c}{i}");
            match (c, is_odd(i)) {
                ('v', false) | ('u', true) => left.push(name),
                _ => right.push(name),
            }
        }
    }
    let mut edges = Vec::new();
    let mut push = |a: String, b: String, a_left: bool| {
        if a_left {
            edges.push((a, b, 1));
        } else {
            edges.push((b, a, 1));
        }
    };
    for i in 1..=top {
        if is_odd(i) {
            // Rung {v_i, u_i}: u_i is on the left at odd i.
            push(format!("u{i}"), format!("v{i}"), true);
        }
        if i < top {
            push(format!("v{i}"), format!("v{}", i + 1), !is_odd(i));
            push(format!("u{i}"), format!("u{}", i + 1), is_odd(i));
        }
    }
    BipartiteMultigraph::new(left, right, edges)
}

/// Finite digraph on w_1..w_{2k+1}: both path directions and the odd skip
/// arcs, minus the arcs (w_2, w_3) and (w_{2k-1}, w_{2k}). Its minimum
/// generating set has exactly k derangements.
pub fn dk(k: u32) -> Result<Digraph, Error> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let top = 2 * i64::from(k) + 1;
    let removed_fwd = [2, top - 2];
    let mut arcs = Vec::new();
    for i in 1..=top {
        if i < top && !removed_fwd.contains(&i) {
            arcs.push((format!("w{i}"), format!("w{}", i + 1)));
        }
        if i > 1 {
            arcs.push((format!("w{i}"), format!("w{}", i - 1)));
        }
        if is_odd(i) && i + 2 <= top {
            arcs.push((format!("w{i}"), format!("w{}", i + 2)));
        }
    }
    Digraph::new((1..=top).map(|i| format!("w{i}")), arcs)
}

/// Built-in graph family.
#[derive(Clone, Debug)]
pub enum Family {
    LadderGraph,
    LadderDigraph,
    SubdividedProduct { h: BipartiteMultigraph },
    Gk { k: u32 },
    Dk { k: u32 },
}

/// A family instance: finite families yield concrete graphs, infinite ones
/// lazy graphs.
#[derive(Clone)]
pub enum FamilyGraph {
    FiniteDigraph(Digraph),
    FiniteBipartite(BipartiteMultigraph),
    Lazy(LazyDigraph),
    LazyBipartite(LazyBipartite),
}

impl Family {
    /// Resolves a family name plus parameters as given on a command line.
    pub fn from_parts(
        name: &str,
        k_param: Option<u32>,
        h: Option<BipartiteMultigraph>,
    ) -> Result<Family, Error> {
        match name {
            "ladder-graph" => Ok(Family::LadderGraph),
            "ladder-digraph" => Ok(Family::LadderDigraph),
            "subdivided-product" => {
                let h = h.ok_or_else(|| {
                    Error::InvalidFamily("subdivided-product needs --H".to_string())
                })?;
                Ok(Family::SubdividedProduct { h })
            }
            "Gk" => {
                let k = k_param.ok_or_else(|| {
                    Error::InvalidFamily("Gk needs --k-param".to_string())
                })?;
                Ok(Family::Gk { k })
            }
            "Dk" => {
                let k = k_param.ok_or_else(|| {
                    Error::InvalidFamily("Dk needs --k-param".to_string())
                })?;
                Ok(Family::Dk { k })
            }
            other => Err(Error::InvalidFamily(format!("unknown family {other:?}"))),
        }
    }

    pub fn build(&self) -> Result<FamilyGraph, Error> {
        match self {
            Family::LadderGraph => Ok(FamilyGraph::LazyBipartite(ladder_graph())),
            Family::LadderDigraph => Ok(FamilyGraph::Lazy(ladder_digraph())),
            Family::SubdividedProduct { h } => {
                Ok(FamilyGraph::LazyBipartite(subdivided_product(h)?))
            }
            Family::Gk { k } => {
                let g = gk(*k).map_err(|_| {
                    Error::InvalidFamily("Gk needs a positive k".to_string())
                })?;
                Ok(FamilyGraph::FiniteBipartite(g))
            }
            Family::Dk { k } => {
                let d = dk(*k).map_err(|_| {
                    Error::InvalidFamily("Dk needs a positive k".to_string())
                })?;
                Ok(FamilyGraph::FiniteDigraph(d))
            }
        }
    }
}
