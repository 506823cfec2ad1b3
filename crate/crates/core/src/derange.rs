//! Generating a digraph's arcs as the union of derangement graphs.
//!
//! A derangement contributes the arcs (x, s(x)); a set of derangements
//! generates the digraph when those arcs are exactly the arc set. Decisions
//! run on the bipartite double: each 1-factor of a cover is the graph of one
//! derangement, and certificates translate back to the digraph conditions.

use std::collections::{BTreeMap, BTreeSet};

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::Serialize;

use crate::cover::{cover_with_k, is_one_extendable, ConditionCheck, Extendability};
use crate::error::Error;
use crate::graph::{base_name, bipartite_double, Digraph, Side};
use crate::thicken::{perfect_matching, Certificate, CertificateKind, MatchingOutcome};
use crate::Feasibility;

/// Fixed-point-free permutation of a finite vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derangement {
    map: BTreeMap<String, String>,
}

impl Derangement {
    /// Validates that `map` is a bijection of its own key set without fixed
    /// points.
    pub fn new(map: BTreeMap<String, String>) -> Result<Derangement, Error> {
        let mut images: BTreeSet<&str> = BTreeSet::new();
        for (x, y) in &map {
            if x == y {
                return Err(Error::NotDerangement(format!("fixed point {x}")));
            }
            if !map.contains_key(y) {
                return Err(Error::InvalidPermutation(format!(
                    "image {y} is outside the domain"
                )));
            }
            if !images.insert(y) {
                return Err(Error::InvalidPermutation(format!("repeated image {y}")));
            }
        }
        Ok(Derangement { map })
    }

    pub fn domain(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }

    pub fn image_of(&self, x: &str) -> Option<&str> {
        self.map.get(x).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Arcs (x, s(x)) in sorted order.
    pub fn arcs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.iter().map(|(x, y)| (x.as_str(), y.as_str()))
    }

    /// Canonical cycle notation: cycles ordered by minimal element, each
    /// written starting from it, names separated by single spaces.
    pub fn cycle_notation(&self) -> String {
        let mut out = String::new();
        let mut visited: BTreeSet<&str> = BTreeSet::new();
        for start in self.map.keys() {
            if visited.contains(start.as_str()) {
                continue;
            }
            out.push('(');
            out.push_str(start);
            visited.insert(start);
            let mut cur = &self.map[start];
            while cur != start {
                out.push(' ');
                out.push_str(cur);
                visited.insert(cur);
                cur = &self.map[cur];
            }
            out.push(')');
        }
        out
    }

    /// Parses cycle notation over the vertex set `v`. Every vertex must
    /// appear in some cycle of length at least two.
    pub fn parse_cycles(s: &str, v: &BTreeSet<String>) -> Result<Derangement, Error> {
        let mut map: BTreeMap<String, String> = BTreeMap::new();
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            rest = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::InvalidPermutation(format!("expected '(' at {rest:?}")))?;
            let close = rest
                .find(')')
                .ok_or_else(|| Error::InvalidPermutation("unbalanced '('".to_string()))?;
            let names: Vec<&str> = rest[..close].split_whitespace().collect();
            rest = rest[close + 1..].trim_start();
            if names.is_empty() {
                return Err(Error::InvalidPermutation("empty cycle".to_string()));
            }
            if names.len() == 1 {
                return Err(Error::NotDerangement(format!("fixed point {}", names[0])));
            }
            for &n in &names {
                if !v.contains(n) {
                    return Err(Error::InvalidVertex(n.to_string()));
                }
                if !seen.insert(n) {
                    return Err(Error::InvalidPermutation(format!("{n} appears twice")));
                }
            }
            for (i, &n) in names.iter().enumerate() {
                map.insert(n.to_string(), names[(i + 1) % names.len()].to_string());
            }
        }
        if let Some(missing) = v.iter().find(|n| !seen.contains(n.as_str())) {
            return Err(Error::NotDerangement(format!("fixed point {missing}")));
        }
        Derangement::new(map)
    }
}

/// Derangements sorted by canonical cycle notation, duplicates collapsed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerangementSet {
    derangements: Vec<Derangement>,
}

impl DerangementSet {
    pub fn new(derangements: Vec<Derangement>) -> DerangementSet {
        let mut with_key: Vec<(String, Derangement)> = derangements
            .into_iter()
            .map(|d| (d.cycle_notation(), d))
            .collect();
        with_key.sort_by(|a, b| a.0.cmp(&b.0));
        with_key.dedup_by(|a, b| a.0 == b.0);
        DerangementSet {
            derangements: with_key.into_iter().map(|(_, d)| d).collect(),
        }
    }

    pub fn derangements(&self) -> &[Derangement] {
        &self.derangements
    }

    pub fn len(&self) -> usize {
        self.derangements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.derangements.is_empty()
    }

    pub fn notations(&self) -> Vec<String> {
        self.derangements.iter().map(Derangement::cycle_notation).collect()
    }

    /// Union of the derangement graphs.
    pub fn arcs(&self) -> BTreeSet<(String, String)> {
        self.derangements
            .iter()
            .flat_map(|d| d.arcs().map(|(x, y)| (x.to_string(), y.to_string())))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("derangement set serializes")
    }
}

impl Serialize for DerangementSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Notations<'a>(&'a [Derangement]);
        impl Serialize for Notations<'_> {
            fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for d in self.0 {
                    seq.serialize_element(&d.cycle_notation())?;
                }
                seq.end()
            }
        }
        let mut s = serializer.serialize_struct("DerangementSet", 2)?;
        s.serialize_field("k", &(self.derangements.len() as u64))?;
        s.serialize_field("derangements", &Notations(&self.derangements))?;
        s.end()
    }
}

/// Violated arc-count condition refuting generation by k derangements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DigraphCertificate {
    pub kind: DigraphCondition,
    #[serde(rename = "T")]
    pub t: Vec<String>,
    pub lhs: i64,
    pub rhs: i64,
    pub k: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DigraphCondition {
    /// A degree bound fails.
    #[serde(rename = "condition-i")]
    I,
    /// The out-neighborhood count fails.
    #[serde(rename = "condition-ii")]
    Ii,
    /// The in-neighborhood count fails.
    #[serde(rename = "condition-iii")]
    Iii,
}

impl DigraphCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

pub(crate) fn translate_certificate(cert: &Certificate) -> DigraphCertificate {
    let t: Vec<String> = cert
        .t
        .iter()
        .map(|v| base_name(v).expect("doubled name").0.to_string())
        .collect();
    let kind = match (cert.kind, cert.part) {
        (CertificateKind::DegreeExceeded, _) => DigraphCondition::I,
        (CertificateKind::ConditionIi, Side::Left) => DigraphCondition::Ii,
        (CertificateKind::ConditionIi, Side::Right) => DigraphCondition::Iii,
    };
    DigraphCertificate {
        kind,
        t,
        lhs: cert.lhs,
        rhs: cert.rhs,
        k: cert.k,
    }
}

/// Why no derangement set of any size generates the digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generability {
    Generable,
    /// |N(T)| < |T| for the out- (`forward`) or in-neighborhood.
    Deficient {
        forward: bool,
        t: Vec<String>,
        neighborhood: Vec<String>,
    },
    /// |N(T)| = |T| but the opposite neighborhood of N(T) differs from T.
    TightNotClosed {
        forward: bool,
        t: Vec<String>,
        closure: Vec<String>,
    },
}

impl Generability {
    /// Condition index in the finite-witness characterization: "i" for a
    /// deficiency, "ii"/"iii" for a tight out-/in-neighborhood that is not
    /// closed.
    pub fn condition_index(&self) -> Option<&'static str> {
        match self {
            Generability::Generable => None,
            Generability::Deficient { .. } => Some("i"),
            Generability::TightNotClosed { forward: true, .. } => Some("ii"),
            Generability::TightNotClosed { forward: false, .. } => Some("iii"),
        }
    }
}

/// Result of a minimum derangement computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinDerangementsOutcome {
    Generable { k_min: u32, set: DerangementSet },
    NotGenerable(Generability),
}

/// Result of checking a claimed generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyOutcome {
    Verified,
    Mismatch {
        missing: Vec<(String, String)>,
        extra: Vec<(String, String)>,
    },
}

fn factor_to_derangement(edges: &[(String, String)]) -> Derangement {
    let map: BTreeMap<String, String> = edges
        .iter()
        .map(|(lx, ry)| {
            let (x, _) = base_name(lx).expect("doubled name");
            let (y, _) = base_name(ry).expect("doubled name");
            (x.to_string(), y.to_string())
        })
        .collect();
    Derangement::new(map).expect("a 1-factor of the double is a derangement graph")
}

/// Set of at most k derangements generating `d` exactly, or a certificate
/// that none exists.
pub fn generate_with_k(
    d: &Digraph,
    k: u32,
) -> Result<Feasibility<DerangementSet, DigraphCertificate>, Error> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    if d.vertex_count() == 0 {
        return Ok(Feasibility::Feasible(DerangementSet::new(Vec::new())));
    }
    let double = bipartite_double(d);
    match cover_with_k(&double, k)? {
        Feasibility::Infeasible(cert) => {
            Ok(Feasibility::Infeasible(translate_certificate(&cert)))
        }
        Feasibility::Feasible(cover) => {
            let set = DerangementSet::new(
                cover
                    .factors()
                    .iter()
                    .map(|f| factor_to_derangement(f.edges()))
                    .collect(),
            );
            debug_assert!(matches!(
                verify_generates(d, &set),
                Ok(VerifyOutcome::Verified)
            ));
            Ok(Feasibility::Feasible(set))
        }
    }
}

/// Minimum number of derangements generating `d`, with a witness set, or the
/// reason none exists.
pub fn min_derangements(d: &Digraph) -> Result<MinDerangementsOutcome, Error> {
    if d.vertex_count() == 0 {
        return Ok(MinDerangementsOutcome::Generable {
            k_min: 0,
            set: DerangementSet::new(Vec::new()),
        });
    }
    let hi = d.arc_count() as u32;
    let feasible_at_hi = hi > 0 && matches!(generate_with_k(d, hi)?, Feasibility::Feasible(_));
    if !feasible_at_hi {
        let reason = can_generate_some(d)?;
        debug_assert!(!matches!(reason, Generability::Generable));
        return Ok(MinDerangementsOutcome::NotGenerable(reason));
    }
    let mut lo = (d.max_out_degree().max(d.max_in_degree()) as u32).max(1);
    let mut hi = hi;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match generate_with_k(d, mid)? {
            Feasibility::Feasible(_) => hi = mid,
            Feasibility::Infeasible(_) => lo = mid + 1,
        }
    }
    match generate_with_k(d, lo)? {
        Feasibility::Feasible(set) => Ok(MinDerangementsOutcome::Generable { k_min: lo, set }),
        Feasibility::Infeasible(_) => unreachable!("binary search stops on a feasible k"),
    }
}

fn strip_all(t: &[String]) -> Vec<String> {
    t.iter()
        .map(|v| base_name(v).expect("doubled name").0.to_string())
        .collect()
}

/// Whether any derangement set at all generates `d`, with a finite witness
/// set against one of the neighborhood conditions on failure.
pub fn can_generate_some(d: &Digraph) -> Result<Generability, Error> {
    if d.vertex_count() == 0 {
        return Ok(Generability::Generable);
    }
    let double = bipartite_double(d);
    match is_one_extendable(&double)? {
        Extendability::Extendable => Ok(Generability::Generable),
        Extendability::NoFactor { side, t } => {
            let forward = side == Side::Left;
            let bases = strip_all(&t);
            let tset: BTreeSet<String> = bases.iter().cloned().collect();
            let n = if forward {
                d.out_neighborhood(&tset)?
            } else {
                d.in_neighborhood(&tset)?
            };
            debug_assert!(n.len() < tset.len());
            Ok(Generability::Deficient {
                forward,
                t: bases,
                neighborhood: n.into_iter().collect(),
            })
        }
        Extendability::BlockedEdge { x, y } => {
            // Delete the endpoints; the leftover graph has no perfect
            // matching, and its witness set is tight or deficient in the
            // full double.
            let mut rest: BTreeSet<String> = double
                .left_names()
                .iter()
                .chain(double.right_names())
                .cloned()
                .collect();
            rest.remove(&x);
            rest.remove(&y);
            let sub = double.induced(&rest)?;
            let MatchingOutcome::Violator { side, t } = perfect_matching(&sub) else {
                unreachable!("a blocked edge leaves a matching deficit");
            };
            let forward = side == Side::Left;
            let bases = strip_all(&t);
            let tset: BTreeSet<String> = bases.iter().cloned().collect();
            let (n, back) = if forward {
                let n = d.out_neighborhood(&tset)?;
                let back = d.in_neighborhood(&n)?;
                (n, back)
            } else {
                let n = d.in_neighborhood(&tset)?;
                let back = d.out_neighborhood(&n)?;
                (n, back)
            };
            if n.len() < tset.len() {
                return Ok(Generability::Deficient {
                    forward,
                    t: bases,
                    neighborhood: n.into_iter().collect(),
                });
            }
            debug_assert_eq!(n.len(), tset.len());
            debug_assert_ne!(back, tset);
            Ok(Generability::TightNotClosed {
                forward,
                t: bases,
                closure: back.into_iter().collect(),
            })
        }
    }
}

/// Checks that the union of the derangement graphs is exactly the arc set.
pub fn verify_generates(d: &Digraph, s: &DerangementSet) -> Result<VerifyOutcome, Error> {
    let vertices: BTreeSet<&str> = d.vertex_names().iter().map(String::as_str).collect();
    for sigma in s.derangements() {
        let dom: BTreeSet<&str> = sigma.domain().collect();
        if dom != vertices {
            return Err(Error::InvalidPermutation(
                "domain differs from the vertex set".to_string(),
            ));
        }
    }
    let generated = s.arcs();
    let own: BTreeSet<(String, String)> = d
        .arcs()
        .map(|(u, v)| (u.to_string(), v.to_string()))
        .collect();
    let missing: Vec<(String, String)> = own.difference(&generated).cloned().collect();
    let extra: Vec<(String, String)> = generated.difference(&own).cloned().collect();
    if missing.is_empty() && extra.is_empty() {
        Ok(VerifyOutcome::Verified)
    } else {
        Ok(VerifyOutcome::Mismatch { missing, extra })
    }
}

/// Degree bounds and both counting conditions for one witness set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionsReport {
    pub max_out_degree: usize,
    pub max_in_degree: usize,
    pub degrees_ok: bool,
    pub cond_ii: ConditionCheck,
    pub cond_iii: ConditionCheck,
}

/// Evaluates the degree bounds of `d` and the two counting conditions for
/// the witness set `t` at bound `k`.
pub fn check_conditions(
    d: &Digraph,
    t: &BTreeSet<String>,
    k: u32,
) -> Result<ConditionsReport, Error> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    for v in t {
        if !d.contains(v) {
            return Err(Error::InvalidVertex(v.clone()));
        }
    }
    let kk = i64::from(k);
    let n_out = d.out_neighborhood(t)?;
    let sum_in_of_out: i64 = n_out
        .iter()
        .map(|v| d.in_degree(v).expect("neighbor") as i64)
        .sum();
    let sum_out_t: i64 = t
        .iter()
        .map(|v| d.out_degree(v).expect("member") as i64)
        .sum();
    let lhs_ii = kk * (n_out.len() as i64 - t.len() as i64);
    let rhs_ii = sum_in_of_out - sum_out_t;

    let n_in = d.in_neighborhood(t)?;
    let sum_out_of_in: i64 = n_in
        .iter()
        .map(|v| d.out_degree(v).expect("neighbor") as i64)
        .sum();
    let sum_in_t: i64 = t
        .iter()
        .map(|v| d.in_degree(v).expect("member") as i64)
        .sum();
    let lhs_iii = kk * (n_in.len() as i64 - t.len() as i64);
    let rhs_iii = sum_out_of_in - sum_in_t;

    Ok(ConditionsReport {
        max_out_degree: d.max_out_degree(),
        max_in_degree: d.max_in_degree(),
        degrees_ok: d.max_out_degree() as i64 <= kk && d.max_in_degree() as i64 <= kk,
        cond_ii: ConditionCheck {
            lhs: lhs_ii,
            rhs: rhs_ii,
            holds: lhs_ii >= rhs_ii,
        },
        cond_iii: ConditionCheck {
            lhs: lhs_iii,
            rhs: rhs_iii,
            holds: lhs_iii >= rhs_iii,
        },
    })
}

/// Recomputes a digraph certificate against `d` and confirms the claimed
/// violation, including the stored side values.
pub fn digraph_certificate_holds(d: &Digraph, cert: &DigraphCertificate) -> Result<bool, Error> {
    if cert.t.iter().any(|v| !d.contains(v)) {
        return Ok(false);
    }
    match cert.kind {
        DigraphCondition::I => {
            if cert.t.len() != 1 || cert.lhs != i64::from(cert.k) {
                return Ok(false);
            }
            let v = &cert.t[0];
            let dout = d.out_degree(v)? as i64;
            let din = d.in_degree(v)? as i64;
            Ok(cert.rhs > cert.lhs && (dout == cert.rhs || din == cert.rhs))
        }
        DigraphCondition::Ii | DigraphCondition::Iii => {
            if cert.t.is_empty() {
                return Ok(false);
            }
            let t: BTreeSet<String> = cert.t.iter().cloned().collect();
            let report = check_conditions(d, &t, cert.k)?;
            let check = if cert.kind == DigraphCondition::Ii {
                report.cond_ii
            } else {
                report.cond_iii
            };
            Ok(check.lhs == cert.lhs && check.rhs == cert.rhs && !check.holds)
        }
    }
}
