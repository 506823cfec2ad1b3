//! Decide whether a digraph's arc set is the union of at most k derangement
//! graphs, and produce either the derangements or a finite witness set that
//! no such family exists.
//!
//! The pipeline works on the bipartite double of the digraph, where each
//! derangement corresponds to a 1-factor:
//!
//! * [`graph`] — digraphs, bipartite multigraphs, and the double construction;
//! * [`dgf`] — a small text format for both graph kinds;
//! * [`flow`] — integral max-flow/min-cut on small networks;
//! * [`thicken`] — windowed degree-k thickening: complete a finite induced
//!   piece to a k-regular multigraph or extract a violating set;
//! * [`cover`] — minimum 1-factor covers and 1-extendability of bipartite
//!   graphs;
//! * [`derange`] — derangement sets for digraphs, with certificates phrased
//!   in terms of out/in-neighborhood deficiencies;
//! * [`lazy`] — infinite families given by neighbor functions, plus sound
//!   window refutation and lower-bound scans;
//! * [`oracle`] — exhaustive reference implementations used to cross-check
//!   everything on small inputs.
//!
//! All public entry points are deterministic: reordering the input never
//! changes an answer, and serialized outputs are byte-stable.

mod error;

pub mod cover;
pub mod derange;
pub mod dgf;
pub mod flow;
pub mod graph;
pub mod lazy;
pub mod oracle;
pub mod thicken;

pub use error::{Error, ParseErrorKind};

/// Outcome of a bounded existence question: the object itself, or a
/// certificate that it cannot exist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility<T, C> {
    Feasible(T),
    Infeasible(C),
}

impl<T, C> Feasibility<T, C> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn feasible(self) -> Option<T> {
        match self {
            Feasibility::Feasible(t) => Some(t),
            Feasibility::Infeasible(_) => None,
        }
    }

    pub fn infeasible(self) -> Option<C> {
        match self {
            Feasibility::Feasible(_) => None,
            Feasibility::Infeasible(c) => Some(c),
        }
    }
}
