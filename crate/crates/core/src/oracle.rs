//! Exhaustive reference implementations for small inputs.
//!
//! Every oracle enumerates the defining objects directly (subsets,
//! matchings, derangements) with no flow machinery, so the main algorithms
//! can be tested against them. Each is guarded by a size limit; the
//! `ORACLE_MAX` environment variable replaces the per-operation default.

use std::collections::BTreeSet;

use crate::derange::{DigraphCertificate, DigraphCondition};
use crate::error::Error;
use crate::graph::{BipartiteMultigraph, Digraph, OneFactor, Side};
use crate::thicken::{Certificate, CertificateKind};

const MAX_CONDITIONS_PART: usize = 20;
const MAX_TIGHT_PART: usize = 12;
const MAX_MATCHING_PART: usize = 8;
const MAX_DERANGEMENT_VERTICES: usize = 7;

fn guard(op: &str, size: usize, default_max: usize) -> Result<(), Error> {
    let max = std::env::var("ORACLE_MAX")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .unwrap_or(default_max);
    if size > max {
        return Err(Error::TooLarge(format!(
            "{op}: size {size} exceeds limit {max}"
        )));
    }
    Ok(())
}

/// Depth-first enumeration of nonempty index subsets in lexicographic
/// order; stops at the first subset for which `f` returns a value.
fn first_subset_hit<C>(n: usize, f: &mut dyn FnMut(&[usize]) -> Option<C>) -> Option<C> {
    fn rec<C>(
        start: usize,
        n: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> Option<C>,
    ) -> Option<C> {
        for i in start..n {
            cur.push(i);
            if let Some(c) = f(cur) {
                return Some(c);
            }
            if let Some(c) = rec(i + 1, n, cur, f) {
                return Some(c);
            }
            cur.pop();
        }
        None
    }
    rec(0, n, &mut Vec::new(), f)
}

/// First violated degree bound or counting condition of the 1-factor-cover
/// characterization, checked over every subset of each part.
pub fn brute_conditions_graph(
    g: &BipartiteMultigraph,
    k: u32,
) -> Result<Option<Certificate>, Error> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let nl = g.left_names().len();
    let nr = g.right_names().len();
    guard("condition subsets", nl.max(nr), MAX_CONDITIONS_PART)?;
    let kk = i64::from(k);
    for part in [Side::Left, Side::Right] {
        let names = match part {
            Side::Left => g.left_names(),
            Side::Right => g.right_names(),
        };
        for name in names {
            let deg = g.degree(name)?;
            if deg > kk {
                return Ok(Some(Certificate {
                    kind: CertificateKind::DegreeExceeded,
                    part,
                    t: vec![name.clone()],
                    lhs: kk,
                    rhs: deg,
                    k,
                }));
            }
        }
    }
    for part in [Side::Left, Side::Right] {
        let names = match part {
            Side::Left => g.left_names(),
            Side::Right => g.right_names(),
        };
        let hit = first_subset_hit(names.len(), &mut |idxs: &[usize]| {
            let t: BTreeSet<String> = idxs.iter().map(|&i| names[i].clone()).collect();
            let n = g.neighborhood(&t).expect("part members");
            let sum_n: i64 = n.iter().map(|v| g.degree(v).expect("neighbor")).sum();
            let sum_t: i64 = t.iter().map(|v| g.degree(v).expect("member")).sum();
            let lhs = kk * (n.len() as i64 - t.len() as i64);
            let rhs = sum_n - sum_t;
            (lhs < rhs).then(|| Certificate {
                kind: CertificateKind::ConditionIi,
                part,
                t: t.into_iter().collect(),
                lhs,
                rhs,
                k,
            })
        });
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

/// First violated condition of the derangement-generation
/// characterization, checked over every vertex subset.
pub fn brute_conditions_digraph(
    d: &Digraph,
    k: u32,
) -> Result<Option<DigraphCertificate>, Error> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    guard("condition subsets", d.vertex_count(), MAX_CONDITIONS_PART)?;
    let kk = i64::from(k);
    for name in d.vertex_names() {
        for deg in [d.out_degree(name)? as i64, d.in_degree(name)? as i64] {
            if deg > kk {
                return Ok(Some(DigraphCertificate {
                    kind: DigraphCondition::I,
                    t: vec![name.clone()],
                    lhs: kk,
                    rhs: deg,
                    k,
                }));
            }
        }
    }
    let names = d.vertex_names();
    let hit = first_subset_hit(names.len(), &mut |idxs: &[usize]| {
        let t: BTreeSet<String> = idxs.iter().map(|&i| names[i].clone()).collect();
        let report = crate::derange::check_conditions(d, &t, k).expect("vertex members");
        if !report.cond_ii.holds {
            return Some(DigraphCertificate {
                kind: DigraphCondition::Ii,
                t: t.into_iter().collect(),
                lhs: report.cond_ii.lhs,
                rhs: report.cond_ii.rhs,
                k,
            });
        }
        if !report.cond_iii.holds {
            return Some(DigraphCertificate {
                kind: DigraphCondition::Iii,
                t: t.into_iter().collect(),
                lhs: report.cond_iii.lhs,
                rhs: report.cond_iii.rhs,
                k,
            });
        }
        None
    });
    Ok(hit)
}

fn all_matchings_idx(g: &BipartiteMultigraph) -> Vec<Vec<u32>> {
    let nl = g.left_names().len();
    let nr = g.right_names().len();
    if nl != nr {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut partner: Vec<u32> = Vec::with_capacity(nl);
    let mut used = vec![false; nr];
    fn rec(
        g: &BipartiteMultigraph,
        i: usize,
        partner: &mut Vec<u32>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if i == g.left_names().len() {
            out.push(partner.clone());
            return;
        }
        for &(j, _) in g.adj_idx(i) {
            if !used[j as usize] {
                used[j as usize] = true;
                partner.push(j);
                rec(g, i + 1, partner, used, out);
                partner.pop();
                used[j as usize] = false;
            }
        }
    }
    rec(g, 0, &mut partner, &mut used, &mut out);
    out
}

/// Every perfect matching, ordered by the partner sequence of the sorted
/// left part. Multiple edge copies between the same pair contribute one
/// matching.
pub fn enumerate_perfect_matchings(g: &BipartiteMultigraph) -> Result<Vec<OneFactor>, Error> {
    let nl = g.left_names().len();
    let nr = g.right_names().len();
    guard("matching enumeration", nl.max(nr), MAX_MATCHING_PART)?;
    Ok(all_matchings_idx(g)
        .into_iter()
        .map(|partner| {
            OneFactor::new(
                partner
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| {
                        (
                            g.left_names()[i].clone(),
                            g.right_names()[j as usize].clone(),
                        )
                    })
                    .collect(),
            )
        })
        .collect())
}

/// Whether a perfect matching exists and every distinct edge lies in one,
/// decided by enumerating all perfect matchings.
pub fn brute_one_extendable(g: &BipartiteMultigraph) -> Result<bool, Error> {
    let nl = g.left_names().len();
    let nr = g.right_names().len();
    guard("matching enumeration", nl.max(nr), MAX_MATCHING_PART)?;
    if g.vertex_count() == 0 {
        return Ok(true);
    }
    let matchings = all_matchings_idx(g);
    if matchings.is_empty() {
        return Ok(false);
    }
    let mut covered: BTreeSet<(usize, u32)> = BTreeSet::new();
    for m in &matchings {
        for (i, &j) in m.iter().enumerate() {
            covered.insert((i, j));
        }
    }
    for i in 0..nl {
        for &(j, _) in g.adj_idx(i) {
            if !covered.contains(&(i, j)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether every nonempty subset of either part has a neighborhood at
/// least as large, with equality only when the back-neighborhood closes up.
/// Equivalent to 1-extendability for equal part sizes.
pub fn tight_neighborhood_extendable(g: &BipartiteMultigraph) -> Result<bool, Error> {
    let nl = g.left_names().len();
    let nr = g.right_names().len();
    guard("tight subsets", nl.max(nr), MAX_TIGHT_PART)?;
    if nl != nr {
        return Ok(false);
    }
    // adj[side][i] = distinct opposite-side neighbor indices.
    let sides: [Vec<Vec<u32>>; 2] = [
        (0..nl)
            .map(|i| g.adj_idx(i).iter().map(|&(j, _)| j).collect())
            .collect(),
        (0..nr)
            .map(|j| g.radj_idx(j).iter().map(|&(i, _)| i).collect())
            .collect(),
    ];
    for s in 0..2 {
        let fwd = &sides[s];
        let back = &sides[1 - s];
        let n = fwd.len();
        for mask in 1u32..(1 << n) {
            let mut nb: BTreeSet<u32> = BTreeSet::new();
            let mut size = 0i64;
            for i in 0..n {
                if mask & (1 << i) != 0 {
                    size += 1;
                    nb.extend(fwd[i].iter().copied());
                }
            }
            if (nb.len() as i64) < size {
                return Ok(false);
            }
            if nb.len() as i64 == size {
                let mut closure: BTreeSet<u32> = BTreeSet::new();
                for &j in &nb {
                    closure.extend(back[j as usize].iter().copied());
                }
                let t: BTreeSet<u32> =
                    (0..n as u32).filter(|i| mask & (1 << i) != 0).collect();
                if closure != t {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn first_multi_edge(g: &BipartiteMultigraph) -> Option<(String, String, u32)> {
    g.edges()
        .find(|&(_, _, mu)| mu > 1)
        .map(|(x, y, mu)| (x.to_string(), y.to_string(), mu))
}

/// Smallest family of distinct perfect matchings whose union is the edge
/// set, found by enumerating matchings and covers exhaustively. `None` when
/// no such family exists.
pub fn brute_min_cover(g: &BipartiteMultigraph) -> Result<Option<u32>, Error> {
    if let Some((x, y, mu)) = first_multi_edge(g) {
        return Err(Error::NotSimple { x, y, mu });
    }
    let nl = g.left_names().len();
    let nr = g.right_names().len();
    guard("matching enumeration", nl.max(nr), MAX_MATCHING_PART)?;
    if g.vertex_count() == 0 {
        return Ok(Some(0));
    }
    // Edge index per (left, right) pair; at most 64 with parts of size 8.
    let edges: Vec<(usize, u32)> = (0..nl)
        .flat_map(|i| g.adj_idx(i).iter().map(move |&(j, _)| (i, j)))
        .collect();
    let full: u64 = if edges.is_empty() {
        0
    } else {
        (!0u64) >> (64 - edges.len())
    };
    let edge_pos = |i: usize, j: u32| edges.iter().position(|&(a, b)| (a, b) == (i, j));
    let mut masks: BTreeSet<u64> = BTreeSet::new();
    for m in all_matchings_idx(g) {
        let mut mask = 0u64;
        for (i, &j) in m.iter().enumerate() {
            mask |= 1 << edge_pos(i, j).expect("matching edge");
        }
        masks.insert(mask);
    }
    if masks.is_empty() {
        return Ok(None);
    }
    let masks: Vec<u64> = masks.into_iter().collect();
    if masks.iter().fold(0u64, |a, m| a | m) != full {
        return Ok(None);
    }
    let lower = g.max_degree().max(1) as usize;
    for size in lower..=masks.len() {
        if cover_exists(&masks, full, 0, 0, size) {
            return Ok(Some(size as u32));
        }
    }
    unreachable!("the full mask union covers every edge")
}

fn cover_exists(masks: &[u64], full: u64, acc: u64, start: usize, remaining: usize) -> bool {
    if acc == full {
        return true;
    }
    if remaining == 0 || start >= masks.len() {
        return false;
    }
    if masks.len() - start < remaining {
        return false;
    }
    let mut rest = acc;
    for &m in &masks[start..] {
        rest |= m;
    }
    if rest != full {
        return false;
    }
    for i in start..masks.len() {
        if cover_exists(masks, full, acc | masks[i], i + 1, remaining - 1) {
            return true;
        }
    }
    false
}

fn all_derangements_idx(d: &Digraph) -> Vec<Vec<u32>> {
    let n = d.vertex_count();
    let mut out = Vec::new();
    let mut image: Vec<u32> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(d: &Digraph, i: usize, image: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<Vec<u32>>) {
        if i == d.vertex_count() {
            out.push(image.clone());
            return;
        }
        for &j in d.out_idx(i) {
            if !used[j as usize] {
                used[j as usize] = true;
                image.push(j);
                rec(d, i + 1, image, used, out);
                image.pop();
                used[j as usize] = false;
            }
        }
    }
    rec(d, 0, &mut image, &mut used, &mut out);
    out
}

/// Smallest set of derangements whose graphs union to the arc set, found
/// by enumerating every derangement inside the digraph. `None` when no
/// such set exists.
pub fn brute_min_derangements(d: &Digraph) -> Result<Option<u32>, Error> {
    guard("derangement enumeration", d.vertex_count(), MAX_DERANGEMENT_VERTICES)?;
    if d.vertex_count() == 0 {
        return Ok(Some(0));
    }
    let arcs: Vec<(u32, u32)> = (0..d.vertex_count())
        .flat_map(|i| d.out_idx(i).iter().map(move |&j| (i as u32, j)))
        .collect();
    if arcs.is_empty() {
        return Ok(None);
    }
    let full: u64 = (!0u64) >> (64 - arcs.len());
    let arc_pos = |i: u32, j: u32| arcs.iter().position(|&(a, b)| (a, b) == (i, j));
    let mut masks: BTreeSet<u64> = BTreeSet::new();
    for image in all_derangements_idx(d) {
        let mut mask = 0u64;
        for (i, &j) in image.iter().enumerate() {
            mask |= 1 << arc_pos(i as u32, j).expect("derangement arc");
        }
        masks.insert(mask);
    }
    if masks.is_empty() {
        return Ok(None);
    }
    let masks: Vec<u64> = masks.into_iter().collect();
    if masks.iter().fold(0u64, |a, m| a | m) != full {
        return Ok(None);
    }
    let lower = d.max_out_degree().max(d.max_in_degree()).max(1) as usize;
    for size in lower..=masks.len() {
        if cover_exists(&masks, full, 0, 0, size) {
            return Ok(Some(size as u32));
        }
    }
    unreachable!("the full mask union covers every arc")
}
