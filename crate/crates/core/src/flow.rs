//! Integer max flow with a canonical minimum cut.
//!
//! Dinic's algorithm over an explicit arc list. Arcs keep their insertion
//! order, level search and augmentation scan adjacency in that order, and the
//! reported cut is always the set of nodes reachable from the source in the
//! final residual network, so results are deterministic.

use std::collections::BTreeSet;

use crate::error::Error;

/// Directed capacity arc of a [`FlowNetwork`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlowArc {
    pub tail: usize,
    pub head: usize,
    pub capacity: i64,
}

/// Finite capacitated network with one source and one sink. The source has
/// no incoming arcs and the sink no outgoing arcs.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    nodes: usize,
    source: usize,
    sink: usize,
    arcs: Vec<FlowArc>,
}

/// Per-arc flow values plus the total pushed from source to sink.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowAssignment {
    values: Vec<i64>,
    magnitude: i64,
}

impl FlowAssignment {
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, arc: usize) -> i64 {
        self.values[arc]
    }

    pub fn magnitude(&self) -> i64 {
        self.magnitude
    }
}

/// Source/sink partition of the nodes with the capacity crossing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    source_side: BTreeSet<usize>,
    sink_side: BTreeSet<usize>,
    capacity: i64,
}

impl Cut {
    pub fn source_side(&self) -> &BTreeSet<usize> {
        &self.source_side
    }

    pub fn sink_side(&self) -> &BTreeSet<usize> {
        &self.sink_side
    }

    pub fn capacity(&self) -> i64 {
        self.capacity
    }
}

impl FlowNetwork {
    pub fn new(
        nodes: usize,
        source: usize,
        sink: usize,
        arcs: Vec<FlowArc>,
    ) -> Result<FlowNetwork, Error> {
        if source >= nodes || sink >= nodes || source == sink {
            return Err(Error::InvalidNetwork(
                "source and sink must be distinct nodes".into(),
            ));
        }
        for a in &arcs {
            if a.tail >= nodes || a.head >= nodes {
                return Err(Error::InvalidNetwork("arc endpoint out of range".into()));
            }
            if a.tail == a.head {
                return Err(Error::InvalidNetwork("arc with equal endpoints".into()));
            }
            if a.capacity < 0 {
                return Err(Error::InvalidNetwork("negative capacity".into()));
            }
            if a.head == source {
                return Err(Error::InvalidNetwork("arc into the source".into()));
            }
            if a.tail == sink {
                return Err(Error::InvalidNetwork("arc out of the sink".into()));
            }
        }
        Ok(FlowNetwork {
            nodes,
            source,
            sink,
            arcs,
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arcs(&self) -> &[FlowArc] {
        &self.arcs
    }

    /// Maximum flow and the canonical minimum cut (source-reachable residual
    /// nodes). The two magnitudes always agree.
    pub fn max_flow(&self) -> (FlowAssignment, Cut) {
        // Residual edge 2i is arc i, edge 2i + 1 its reverse.
        let mut cap: Vec<i64> = Vec::with_capacity(self.arcs.len() * 2);
        let mut to: Vec<usize> = Vec::with_capacity(self.arcs.len() * 2);
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.nodes];
        for (i, a) in self.arcs.iter().enumerate() {
            adj[a.tail].push(2 * i);
            adj[a.head].push(2 * i + 1);
            cap.push(a.capacity);
            cap.push(0);
            to.push(a.head);
            to.push(a.tail);
        }

        let mut total: i64 = 0;
        loop {
            let level = self.levels(&adj, &to, &cap);
            if level[self.sink].is_none() {
                break;
            }
            let mut iter = vec![0usize; self.nodes];
            loop {
                let pushed = self.augment(
                    self.source,
                    i64::MAX,
                    &adj,
                    &to,
                    &mut cap,
                    &level,
                    &mut iter,
                );
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }

        let values: Vec<i64> = self
            .arcs
            .iter()
            .enumerate()
            .map(|(i, a)| a.capacity - cap[2 * i])
            .collect();
        let assignment = FlowAssignment {
            values,
            magnitude: total,
        };

        let mut reach = vec![false; self.nodes];
        reach[self.source] = true;
        let mut queue = vec![self.source];
        while let Some(u) = queue.pop() {
            for &e in &adj[u] {
                if cap[e] > 0 && !reach[to[e]] {
                    reach[to[e]] = true;
                    queue.push(to[e]);
                }
            }
        }
        let source_side: BTreeSet<usize> = (0..self.nodes).filter(|&u| reach[u]).collect();
        let sink_side: BTreeSet<usize> = (0..self.nodes).filter(|&u| !reach[u]).collect();
        let capacity: i64 = self
            .arcs
            .iter()
            .filter(|a| reach[a.tail] && !reach[a.head])
            .map(|a| a.capacity)
            .sum();
        debug_assert_eq!(total, capacity);
        let cut = Cut {
            source_side,
            sink_side,
            capacity,
        };
        (assignment, cut)
    }

    fn levels(&self, adj: &[Vec<usize>], to: &[usize], cap: &[i64]) -> Vec<Option<u32>> {
        let mut level = vec![None; self.nodes];
        level[self.source] = Some(0);
        let mut queue = std::collections::VecDeque::from([self.source]);
        while let Some(u) = queue.pop_front() {
            for &e in &adj[u] {
                if cap[e] > 0 && level[to[e]].is_none() {
                    level[to[e]] = Some(level[u].unwrap() + 1);
                    queue.push_back(to[e]);
                }
            }
        }
        level
    }

    #[allow(clippy::too_many_arguments)]
    fn augment(
        &self,
        u: usize,
        limit: i64,
        adj: &[Vec<usize>],
        to: &[usize],
        cap: &mut [i64],
        level: &[Option<u32>],
        iter: &mut [usize],
    ) -> i64 {
        if u == self.sink {
            return limit;
        }
        while iter[u] < adj[u].len() {
            let e = adj[u][iter[u]];
            let v = to[e];
            if cap[e] > 0 && level[v] == level[u].map(|l| l + 1) {
                let pushed = self.augment(v, limit.min(cap[e]), adj, to, cap, level, iter);
                if pushed > 0 {
                    cap[e] -= pushed;
                    cap[e ^ 1] += pushed;
                    return pushed;
                }
            }
            iter[u] += 1;
        }
        0
    }

    /// Checks that an assignment is a feasible flow of its stated magnitude.
    /// Fails with `InvalidFlow` when the value list does not match the arcs.
    pub fn check_flow(&self, flow: &FlowAssignment) -> Result<bool, Error> {
        if flow.values.len() != self.arcs.len() {
            return Err(Error::InvalidFlow);
        }
        for (a, &v) in self.arcs.iter().zip(&flow.values) {
            if v < 0 || v > a.capacity {
                return Ok(false);
            }
        }
        let mut net = vec![0i64; self.nodes];
        for (a, &v) in self.arcs.iter().zip(&flow.values) {
            net[a.tail] += v;
            net[a.head] -= v;
        }
        for u in 0..self.nodes {
            if u != self.source && u != self.sink && net[u] != 0 {
                return Ok(false);
            }
        }
        Ok(net[self.source] == flow.magnitude && net[self.sink] == -flow.magnitude)
    }
}
