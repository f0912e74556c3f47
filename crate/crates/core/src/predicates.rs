//! Structural hypotheses on groups: 2-Engel, central-by-2-Engel, and
//! cubes-central.

use serde::Serialize;

use crate::group::Group;
use crate::table::ElementId;

/// Outcome of an exhaustive predicate scan. `holds()` is true exactly when no
/// witness was found; a witness is always the lexicographically least
/// violating tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredicateResult {
    holds: bool,
    witness: Option<Vec<ElementId>>,
}

impl PredicateResult {
    pub fn pass() -> Self {
        PredicateResult { holds: true, witness: None }
    }

    pub fn fail(witness: Vec<ElementId>) -> Self {
        PredicateResult { holds: false, witness: Some(witness) }
    }

    pub fn from_witness(witness: Option<Vec<ElementId>>) -> Self {
        match witness {
            Some(w) => Self::fail(w),
            None => Self::pass(),
        }
    }

    pub fn holds(&self) -> bool {
        self.holds
    }

    pub fn witness(&self) -> Option<&[ElementId]> {
        self.witness.as_deref()
    }
}

fn first_pair(n: usize, mut bad: impl FnMut(ElementId, ElementId) -> bool) -> PredicateResult {
    for x in 0..n {
        for y in 0..n {
            if bad(x, y) {
                return PredicateResult::fail(vec![x, y]);
            }
        }
    }
    PredicateResult::pass()
}

/// `[[x, y], y] = e` for all `x, y`.
pub fn is_2_engel(g: &Group) -> PredicateResult {
    first_pair(g.order(), |x, y| g.commutator(g.commutator(x, y), y) != g.identity())
}

/// `G / Z(G)` is 2-Engel, tested as `[[x, y], y] ∈ Z(G)` for all `x, y`.
pub fn is_central_by_2_engel(g: &Group) -> PredicateResult {
    let central = g.center_mask();
    first_pair(g.order(), |x, y| !central[g.commutator(g.commutator(x, y), y)])
}

/// `b³ ∈ Z(G)` for every `b`.
pub fn cubes_central(g: &Group) -> PredicateResult {
    let central = g.center_mask();
    match g.elements().find(|&b| !central[g.power(b, 3)]) {
        Some(b) => PredicateResult::fail(vec![b]),
        None => PredicateResult::pass(),
    }
}
