//! Covering a bipartite graph's edges with at most k 1-factors.
//!
//! A cover with at most k factors exists exactly when a k-regular thickening
//! does: the thickening splits into k factors which project back onto the
//! graph. The minimum is found by binary search, sound because feasibility
//! is monotone in k.

use std::collections::BTreeSet;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::Error;
use crate::graph::{BipartiteMultigraph, OneFactor, Side};
use crate::thicken::{k_regular_thickening, one_factorize, perfect_matching, Certificate, MatchingOutcome};
use crate::Feasibility;

/// Distinct 1-factors whose union is the whole edge set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneFactorCover {
    factors: Vec<OneFactor>,
}

impl OneFactorCover {
    fn new(factors: BTreeSet<OneFactor>) -> OneFactorCover {
        OneFactorCover {
            factors: factors.into_iter().collect(),
        }
    }

    pub fn factors(&self) -> &[OneFactor] {
        &self.factors
    }

    pub fn size(&self) -> usize {
        self.factors.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("cover serializes")
    }
}

impl Serialize for OneFactorCover {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("OneFactorCover", 2)?;
        s.serialize_field("k", &(self.factors.len() as u64))?;
        s.serialize_field("factors", &self.factors)?;
        s.end()
    }
}

/// Whether every edge lies in some perfect matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extendability {
    Extendable,
    /// Edge contained in no perfect matching.
    BlockedEdge { x: String, y: String },
    /// Set whose neighborhood is smaller than itself; no perfect matching at
    /// all.
    NoFactor { side: Side, t: Vec<String> },
}

/// Result of a minimum cover computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinCoverOutcome {
    Coverable { k_min: u32, cover: OneFactorCover },
    NotCoverable(Extendability),
}

/// Two-sided condition check value: `lhs = k(|N(T)| - |T|)` against
/// `rhs = sum of degrees over N(T) - sum over T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConditionCheck {
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

fn require_simple(g: &BipartiteMultigraph) -> Result<(), Error> {
    if let Some((x, y, mu)) = g.edges().find(|&(_, _, m)| m > 1) {
        return Err(Error::NotSimple {
            x: x.to_string(),
            y: y.to_string(),
            mu,
        });
    }
    Ok(())
}

/// Cover of all edges by at most k distinct 1-factors, or a certificate that
/// none exists.
pub fn cover_with_k(
    g: &BipartiteMultigraph,
    k: u32,
) -> Result<Feasibility<OneFactorCover, Certificate>, Error> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    require_simple(g)?;
    if g.vertex_count() == 0 {
        return Ok(Feasibility::Feasible(OneFactorCover::new(BTreeSet::new())));
    }
    match k_regular_thickening(g, k)? {
        Feasibility::Infeasible(cert) => Ok(Feasibility::Infeasible(cert)),
        Feasibility::Feasible(h) => {
            let factors = one_factorize(&h, k)?;
            let cover = OneFactorCover::new(factors.into_iter().collect());
            debug_assert!(cover.size() <= k as usize);
            debug_assert!(verify_cover(g, &cover));
            Ok(Feasibility::Feasible(cover))
        }
    }
}

/// Minimum number of 1-factors covering all edges, with a witness cover, or
/// the reason no finite cover exists.
pub fn min_cover(g: &BipartiteMultigraph) -> Result<MinCoverOutcome, Error> {
    require_simple(g)?;
    if g.vertex_count() == 0 {
        return Ok(MinCoverOutcome::Coverable {
            k_min: 0,
            cover: OneFactorCover::new(BTreeSet::new()),
        });
    }
    let hi = g.edge_count() as u32;
    let feasible_at_hi = hi > 0 && matches!(cover_with_k(g, hi)?, Feasibility::Feasible(_));
    if !feasible_at_hi {
        let reason = is_one_extendable(g)?;
        debug_assert!(!matches!(reason, Extendability::Extendable));
        return Ok(MinCoverOutcome::NotCoverable(reason));
    }
    let mut lo = (g.max_degree() as u32).max(1);
    let mut hi = hi;
    // Smallest feasible k in [lo, hi]; hi is feasible.
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match cover_with_k(g, mid)? {
            Feasibility::Feasible(_) => hi = mid,
            Feasibility::Infeasible(_) => lo = mid + 1,
        }
    }
    match cover_with_k(g, lo)? {
        Feasibility::Feasible(cover) => Ok(MinCoverOutcome::Coverable { k_min: lo, cover }),
        Feasibility::Infeasible(_) => unreachable!("binary search stops on a feasible k"),
    }
}

/// Whether a perfect matching exists and every edge lies in one. Returns the
/// first blocked edge or missing-factor witness otherwise.
pub fn is_one_extendable(g: &BipartiteMultigraph) -> Result<Extendability, Error> {
    require_simple(g)?;
    if let MatchingOutcome::Violator { side, t } = perfect_matching(g) {
        return Ok(Extendability::NoFactor { side, t });
    }
    let all: BTreeSet<String> = g
        .left_names()
        .iter()
        .chain(g.right_names())
        .cloned()
        .collect();
    for (x, y, _) in g.edges() {
        let mut rest = all.clone();
        rest.remove(x);
        rest.remove(y);
        let sub = g.induced(&rest)?;
        if let MatchingOutcome::Violator { .. } = perfect_matching(&sub) {
            return Ok(Extendability::BlockedEdge {
                x: x.to_string(),
                y: y.to_string(),
            });
        }
    }
    Ok(Extendability::Extendable)
}

/// Evaluates the counting condition for one witness set `t` lying inside a
/// single part.
pub fn check_condition_ii(
    g: &BipartiteMultigraph,
    t: &BTreeSet<String>,
    k: u32,
) -> Result<ConditionCheck, Error> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let mut sides = BTreeSet::new();
    for v in t {
        sides.insert(g.side_of(v)?);
    }
    if sides.len() > 1 {
        return Err(Error::InvalidT);
    }
    let n = g.neighborhood(t)?;
    let sum_n: i64 = n.iter().map(|v| g.degree(v).expect("neighbor")).sum();
    let sum_t: i64 = t.iter().map(|v| g.degree(v).expect("member")).sum();
    let lhs = i64::from(k) * (n.len() as i64 - t.len() as i64);
    let rhs = sum_n - sum_t;
    Ok(ConditionCheck {
        lhs,
        rhs,
        holds: lhs >= rhs,
    })
}

/// Whether `f` is a perfect matching of `g`: every vertex covered exactly
/// once, every pair adjacent.
pub fn is_one_factor(g: &BipartiteMultigraph, f: &OneFactor) -> bool {
    let mut lefts: BTreeSet<&str> = BTreeSet::new();
    let mut rights: BTreeSet<&str> = BTreeSet::new();
    for (x, y) in f.edges() {
        match g.multiplicity(x, y) {
            Ok(m) if m > 0 => {}
            _ => return false,
        }
        if !lefts.insert(x) || !rights.insert(y) {
            return false;
        }
    }
    lefts.len() == g.left_names().len() && rights.len() == g.right_names().len()
}

/// Whether the factors are pairwise distinct 1-factors of `g` whose union is
/// exactly the edge set.
pub fn verify_cover(g: &BipartiteMultigraph, cover: &OneFactorCover) -> bool {
    let mut seen: BTreeSet<&OneFactor> = BTreeSet::new();
    let mut union: BTreeSet<(&str, &str)> = BTreeSet::new();
    for f in cover.factors() {
        if !is_one_factor(g, f) || !seen.insert(f) {
            return false;
        }
        for (x, y) in f.edges() {
            union.insert((x, y));
        }
    }
    union.len() == g.distinct_edge_count()
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

    fn six_cycle() -> BipartiteMultigraph {
        simple(
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
        )
    }

    #[test]
    fn six_cycle_needs_two_factors() {
        let g = six_cycle();
        let MinCoverOutcome::Coverable { k_min, cover } = min_cover(&g).unwrap() else {
            panic!("C6 is coverable");
        };
        assert_eq!(k_min, 2);
        assert_eq!(cover.size(), 2);
        assert!(verify_cover(&g, &cover));
        assert!(matches!(
            cover_with_k(&g, 1).unwrap(),
            Feasibility::Infeasible(_)
        ));
    }

    #[test]
    fn single_edge_covers_itself() {
        let g = simple(&["x"], &["y"], &[("x", "y")]);
        let out = cover_with_k(&g, 3).unwrap();
        let Feasibility::Feasible(cover) = out else {
            panic!("coverable");
        };
        // Thickening repeats the edge, but duplicates collapse.
        assert_eq!(cover.size(), 1);
        assert_eq!(
            cover.to_json(),
            r#"{"k":1,"factors":[[["x","y"]]]}"#
        );
    }

    #[test]
    fn empty_graph_is_coverable_with_zero_factors() {
        let g = simple(&[], &[], &[]);
        let MinCoverOutcome::Coverable { k_min, cover } = min_cover(&g).unwrap() else {
            panic!("empty graph is coverable");
        };
        assert_eq!(k_min, 0);
        assert_eq!(cover.size(), 0);
    }

    #[test]
    fn edgeless_vertices_are_not_coverable() {
        let g = simple(&["a"], &["b"], &[]);
        let MinCoverOutcome::NotCoverable(reason) = min_cover(&g).unwrap() else {
            panic!("isolated vertices cannot be covered");
        };
        assert!(matches!(reason, Extendability::NoFactor { .. }));
    }

    #[test]
    fn blocked_edge_is_detected() {
        // Path a - b - c - d: the middle edge lies in no perfect matching.
        let g = simple(&["a", "c"], &["b", "d"], &[("a", "b"), ("c", "b"), ("c", "d")]);
        let out = is_one_extendable(&g).unwrap();
        assert_eq!(
            out,
            Extendability::BlockedEdge {
                x: "c".to_string(),
                y: "b".to_string()
            }
        );
        let MinCoverOutcome::NotCoverable(reason) = min_cover(&g).unwrap() else {
            panic!("path of length three is not coverable");
        };
        assert!(matches!(reason, Extendability::BlockedEdge { .. }));
    }

    #[test]
    fn condition_check_matches_direct_computation() {
        let g = six_cycle();
        let t: BTreeSet<String> = ["v1".to_string(), "v3".to_string()].into();
        let c = check_condition_ii(&g, &t, 2).unwrap();
        // N(T) = {v2, v4, v6}: lhs = 2(3 - 2) = 2, rhs = 6 - 4 = 2.
        assert_eq!((c.lhs, c.rhs, c.holds), (2, 2, true));
        let c = check_condition_ii(&g, &t, 1).unwrap();
        assert_eq!((c.lhs, c.rhs, c.holds), (1, 2, false));
        let bad: BTreeSet<String> = ["v1".to_string(), "v2".to_string()].into();
        assert!(matches!(
            check_condition_ii(&g, &bad, 2),
            Err(Error::InvalidT)
        ));
        let empty = BTreeSet::new();
        let c = check_condition_ii(&g, &empty, 2).unwrap();
        assert!(c.holds);
    }

    #[test]
    fn cover_rejects_multigraphs() {
        let g = BipartiteMultigraph::new(
            ["x"],
            ["y"],
            vec![("x".to_string(), "y".to_string(), 2)],
        )
        .unwrap();
        assert!(matches!(min_cover(&g), Err(Error::NotSimple { .. })));
    }

    #[test]
    fn star_certificate_survives_recheck() {
        use crate::thicken::certificate_holds;
        let g = simple(&["x"], &["y", "z", "w"], &[("x", "y"), ("x", "z"), ("x", "w")]);
        let Feasibility::Infeasible(cert) = cover_with_k(&g, 2).unwrap() else {
            panic!("a degree-3 vertex defeats k = 2");
        };
        assert!(certificate_holds(&g, &cert).unwrap());
    }
}
