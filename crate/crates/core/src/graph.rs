//! Finite digraphs, bipartite multigraphs, and the bipartite double.
//!
//! All vertex lists and adjacency lists are kept sorted by name, so every
//! traversal in the crate is deterministic.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::Error;

/// Part of a bipartition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

fn check_name(name: &str) -> Result<(), Error> {
    if name.is_empty() || name.starts_with('#') || name.chars().any(char::is_whitespace) {
        return Err(Error::BadName(name.to_string()));
    }
    Ok(())
}

/// Finite loopless digraph without parallel arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    names: Vec<String>,
    index: BTreeMap<String, u32>,
    out_adj: Vec<Vec<u32>>,
    in_adj: Vec<Vec<u32>>,
}

impl Digraph {
    /// Builds a digraph from explicit vertices and named arcs. Arc endpoints
    /// are declared implicitly; repeated arcs collapse silently.
    pub fn new<V, A>(vertices: V, arcs: A) -> Result<Digraph, Error>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String)>,
    {
        let mut names: BTreeSet<String> = BTreeSet::new();
        for v in vertices {
            let v = v.into();
            check_name(&v)?;
            names.insert(v);
        }
        let mut arc_set: BTreeSet<(String, String)> = BTreeSet::new();
        for (u, v) in arcs {
            check_name(&u)?;
            check_name(&v)?;
            if u == v {
                return Err(Error::Loop(u));
            }
            names.insert(u.clone());
            names.insert(v.clone());
            arc_set.insert((u, v));
        }
        let names: Vec<String> = names.into_iter().collect();
        let index: BTreeMap<String, u32> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i as u32))
            .collect();
        let mut out_adj = vec![Vec::new(); names.len()];
        let mut in_adj = vec![Vec::new(); names.len()];
        for (u, v) in &arc_set {
            let ui = index[u];
            let vi = index[v];
            out_adj[ui as usize].push(vi);
            in_adj[vi as usize].push(ui);
        }
        // BTreeSet iteration gives (u, v) sorted, so out_adj is sorted already;
        // in_adj needs its own pass.
        for l in &mut in_adj {
            l.sort_unstable();
        }
        Ok(Digraph {
            names,
            index,
            out_adj,
            in_adj,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out_adj.iter().map(Vec::len).sum()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn contains(&self, v: &str) -> bool {
        self.index.contains_key(v)
    }

    pub(crate) fn index_of(&self, v: &str) -> Result<usize, Error> {
        self.index
            .get(v)
            .map(|&i| i as usize)
            .ok_or_else(|| Error::InvalidVertex(v.to_string()))
    }

    pub(crate) fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub(crate) fn out_idx(&self, i: usize) -> &[u32] {
        &self.out_adj[i]
    }

    /// Arcs in sorted order as name pairs.
    pub fn arcs(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.out_adj.iter().enumerate().flat_map(move |(u, l)| {
            l.iter()
                .map(move |&v| (self.name(u), self.name(v as usize)))
        })
    }

    pub fn has_arc(&self, u: &str, v: &str) -> bool {
        match (self.index.get(u), self.index.get(v)) {
            (Some(&ui), Some(&vi)) => self.out_adj[ui as usize].binary_search(&vi).is_ok(),
            _ => false,
        }
    }

    pub fn out_neighbors(&self, v: &str) -> Result<Vec<&str>, Error> {
        let i = self.index_of(v)?;
        Ok(self.out_adj[i].iter().map(|&j| self.name(j as usize)).collect())
    }

    pub fn in_neighbors(&self, v: &str) -> Result<Vec<&str>, Error> {
        let i = self.index_of(v)?;
        Ok(self.in_adj[i].iter().map(|&j| self.name(j as usize)).collect())
    }

    pub fn out_degree(&self, v: &str) -> Result<usize, Error> {
        Ok(self.out_adj[self.index_of(v)?].len())
    }

    pub fn in_degree(&self, v: &str) -> Result<usize, Error> {
        Ok(self.in_adj[self.index_of(v)?].len())
    }

    pub fn max_out_degree(&self) -> usize {
        self.out_adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn max_in_degree(&self) -> usize {
        self.in_adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Union of out-neighborhoods of `t`.
    pub fn out_neighborhood(&self, t: &BTreeSet<String>) -> Result<BTreeSet<String>, Error> {
        let mut n = BTreeSet::new();
        for v in t {
            for w in self.out_neighbors(v)? {
                n.insert(w.to_string());
            }
        }
        Ok(n)
    }

    /// Union of in-neighborhoods of `t`.
    pub fn in_neighborhood(&self, t: &BTreeSet<String>) -> Result<BTreeSet<String>, Error> {
        let mut n = BTreeSet::new();
        for v in t {
            for w in self.in_neighbors(v)? {
                n.insert(w.to_string());
            }
        }
        Ok(n)
    }

    /// Digraph with every arc joined by its reverse; used to read an arc list
    /// as an undirected graph.
    pub fn symmetrized(&self) -> Digraph {
        let arcs: Vec<(String, String)> = self
            .arcs()
            .flat_map(|(u, v)| {
                [
                    (u.to_string(), v.to_string()),
                    (v.to_string(), u.to_string()),
                ]
            })
            .collect();
        Digraph::new(self.names.clone(), arcs).expect("symmetrizing keeps names and looplessness")
    }
}

/// Finite bipartite multigraph with loop-free edges between two disjoint
/// named parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteMultigraph {
    left: Vec<String>,
    right: Vec<String>,
    lindex: BTreeMap<String, u32>,
    rindex: BTreeMap<String, u32>,
    adj: Vec<Vec<(u32, u32)>>,
    radj: Vec<Vec<(u32, u32)>>,
}

impl BipartiteMultigraph {
    /// Builds a multigraph from part declarations and `(left, right, mu)`
    /// edges. Endpoints must be declared in the proper part; repeated pairs
    /// accumulate multiplicity.
    pub fn new<L, R, E>(left: L, right: R, edges: E) -> Result<BipartiteMultigraph, Error>
    where
        L: IntoIterator,
        L::Item: Into<String>,
        R: IntoIterator,
        R::Item: Into<String>,
        E: IntoIterator<Item = (String, String, u32)>,
    {
        let mut lset: BTreeSet<String> = BTreeSet::new();
        for v in left {
            let v = v.into();
            check_name(&v)?;
            if !lset.insert(v.clone()) {
                return Err(Error::DuplicateName(v));
            }
        }
        let mut rset: BTreeSet<String> = BTreeSet::new();
        for v in right {
            let v = v.into();
            check_name(&v)?;
            if lset.contains(&v) || !rset.insert(v.clone()) {
                return Err(Error::DuplicateName(v));
            }
        }
        let left: Vec<String> = lset.into_iter().collect();
        let right: Vec<String> = rset.into_iter().collect();
        let lindex: BTreeMap<String, u32> = left
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i as u32))
            .collect();
        let rindex: BTreeMap<String, u32> = right
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i as u32))
            .collect();
        let mut mu: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for (x, y, m) in edges {
            if m == 0 {
                return Err(Error::InvalidMultiplicity);
            }
            let xi = *lindex
                .get(&x)
                .ok_or_else(|| Error::InvalidVertex(x.clone()))?;
            let yi = *rindex
                .get(&y)
                .ok_or_else(|| Error::InvalidVertex(y.clone()))?;
            *mu.entry((xi, yi)).or_insert(0) += m;
        }
        let mut adj = vec![Vec::new(); left.len()];
        let mut radj = vec![Vec::new(); right.len()];
        for (&(xi, yi), &m) in &mu {
            adj[xi as usize].push((yi, m));
            radj[yi as usize].push((xi, m));
        }
        for l in &mut radj {
            l.sort_unstable();
        }
        Ok(BipartiteMultigraph {
            left,
            right,
            lindex,
            rindex,
            adj,
            radj,
        })
    }

    pub fn left_names(&self) -> &[String] {
        &self.left
    }

    pub fn right_names(&self) -> &[String] {
        &self.right
    }

    pub fn vertex_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// All vertex names, both parts merged in sorted order.
    pub fn vertex_names(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.left.iter().chain(self.right.iter()).map(String::as_str).collect();
        v.sort_unstable();
        v
    }

    pub fn contains(&self, v: &str) -> bool {
        self.lindex.contains_key(v) || self.rindex.contains_key(v)
    }

    pub fn side_of(&self, v: &str) -> Result<Side, Error> {
        if self.lindex.contains_key(v) {
            Ok(Side::Left)
        } else if self.rindex.contains_key(v) {
            Ok(Side::Right)
        } else {
            Err(Error::InvalidVertex(v.to_string()))
        }
    }

    pub(crate) fn left_index(&self, v: &str) -> Result<usize, Error> {
        self.lindex
            .get(v)
            .map(|&i| i as usize)
            .ok_or_else(|| Error::InvalidVertex(v.to_string()))
    }

    pub(crate) fn right_index(&self, v: &str) -> Result<usize, Error> {
        self.rindex
            .get(v)
            .map(|&i| i as usize)
            .ok_or_else(|| Error::InvalidVertex(v.to_string()))
    }

    pub(crate) fn left_name(&self, i: usize) -> &str {
        &self.left[i]
    }

    pub(crate) fn right_name(&self, i: usize) -> &str {
        &self.right[i]
    }

    pub(crate) fn adj_idx(&self, li: usize) -> &[(u32, u32)] {
        &self.adj[li]
    }

    pub(crate) fn radj_idx(&self, ri: usize) -> &[(u32, u32)] {
        &self.radj[ri]
    }

    /// Edges in sorted order as `(left, right, mu)`.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(move |(x, l)| {
            l.iter()
                .map(move |&(y, m)| (self.left_name(x), self.right_name(y as usize), m))
        })
    }

    /// Number of edges counting multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.adj
            .iter()
            .flat_map(|l| l.iter().map(|&(_, m)| u64::from(m)))
            .sum()
    }

    /// Number of distinct adjacent pairs.
    pub fn distinct_edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn multiplicity(&self, x: &str, y: &str) -> Result<u32, Error> {
        let xi = self.left_index(x)?;
        let yi = self.right_index(y)? as u32;
        Ok(match self.adj[xi].binary_search_by_key(&yi, |&(j, _)| j) {
            Ok(p) => self.adj[xi][p].1,
            Err(_) => 0,
        })
    }

    /// Degree counting multiplicity.
    pub fn degree(&self, v: &str) -> Result<i64, Error> {
        let l = match self.side_of(v)? {
            Side::Left => &self.adj[self.left_index(v)?],
            Side::Right => &self.radj[self.right_index(v)?],
        };
        Ok(l.iter().map(|&(_, m)| i64::from(m)).sum())
    }

    pub fn max_degree(&self) -> i64 {
        self.left
            .iter()
            .chain(self.right.iter())
            .map(|v| self.degree(v).expect("own vertex"))
            .max()
            .unwrap_or(0)
    }

    /// Distinct neighbors of `v`, sorted.
    pub fn neighbors(&self, v: &str) -> Result<Vec<&str>, Error> {
        Ok(match self.side_of(v)? {
            Side::Left => self.adj[self.left_index(v)?]
                .iter()
                .map(|&(j, _)| self.right_name(j as usize))
                .collect(),
            Side::Right => self.radj[self.right_index(v)?]
                .iter()
                .map(|&(j, _)| self.left_name(j as usize))
                .collect(),
        })
    }

    /// Union of neighborhoods of `t`; for `t` inside one part the result lies
    /// in the other part.
    pub fn neighborhood(&self, t: &BTreeSet<String>) -> Result<BTreeSet<String>, Error> {
        let mut n = BTreeSet::new();
        for v in t {
            for w in self.neighbors(v)? {
                n.insert(w.to_string());
            }
        }
        Ok(n)
    }

    pub fn is_simple(&self) -> bool {
        self.adj.iter().all(|l| l.iter().all(|&(_, m)| m == 1))
    }

    /// First vertex whose degree differs from `k`, if any.
    pub fn regularity_defect(&self, k: u32) -> Option<(String, i64)> {
        self.left
            .iter()
            .chain(self.right.iter())
            .map(|v| (v, self.degree(v).expect("own vertex")))
            .find(|&(_, d)| d != i64::from(k))
            .map(|(v, d)| (v.clone(), d))
    }

    /// Submultigraph induced on `s`, keeping multiplicities.
    pub fn induced(&self, s: &BTreeSet<String>) -> Result<BipartiteMultigraph, Error> {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for v in s {
            match self.side_of(v)? {
                Side::Left => left.push(v.clone()),
                Side::Right => right.push(v.clone()),
            }
        }
        let mut edges = Vec::new();
        for x in &left {
            for &(y, m) in &self.adj[self.left_index(x)?] {
                let yn = self.right_name(y as usize);
                if s.contains(yn) {
                    edges.push((x.clone(), yn.to_string(), m));
                }
            }
        }
        BipartiteMultigraph::new(left, right, edges)
    }
}

/// Name of the left (`.1`) or right (`.2`) copy of a vertex in the double.
pub fn doubled_name(base: &str, side: Side) -> String {
    match side {
        Side::Left => format!("{base}.1"),
        Side::Right => format!("{base}.2"),
    }
}

/// Base name and side of a doubled vertex name.
pub fn base_name(doubled: &str) -> Option<(&str, Side)> {
    if let Some(b) = doubled.strip_suffix(".1") {
        Some((b, Side::Left))
    } else {
        doubled.strip_suffix(".2").map(|b| (b, Side::Right))
    }
}

/// Bipartite double of a digraph: one left copy `x.1` and one right copy
/// `x.2` per vertex, and an edge `{x.1, y.2}` per arc `(x, y)`.
pub fn bipartite_double(d: &Digraph) -> BipartiteMultigraph {
    let left: Vec<String> = d
        .vertex_names()
        .iter()
        .map(|n| doubled_name(n, Side::Left))
        .collect();
    let right: Vec<String> = d
        .vertex_names()
        .iter()
        .map(|n| doubled_name(n, Side::Right))
        .collect();
    let edges: Vec<(String, String, u32)> = d
        .arcs()
        .map(|(u, v)| (doubled_name(u, Side::Left), doubled_name(v, Side::Right), 1))
        .collect();
    BipartiteMultigraph::new(left, right, edges).expect("double of a valid digraph is valid")
}

/// Perfect matching listed as sorted `(left, right)` name pairs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct OneFactor {
    edges: Vec<(String, String)>,
}

impl OneFactor {
    pub fn new(mut edges: Vec<(String, String)>) -> OneFactor {
        edges.sort_unstable();
        OneFactor { edges }
    }

    pub fn edges(&self) -> &[(String, String)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Right partner of a left vertex.
    pub fn image_of(&self, x: &str) -> Option<&str> {
        self.edges
            .binary_search_by(|(l, _)| l.as_str().cmp(x))
            .ok()
            .map(|p| self.edges[p].1.as_str())
    }
}
