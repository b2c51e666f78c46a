//! Exhaustive checks of five elementary facts about roots that the
//! integration argument relies on.
//!
//! 1. Nonproportional roots at an obtuse angle sum to a root.
//! 2. Distinct simple roots have `(α, α') ≤ 0` and `α - α' ∉ Φ`.
//! 3. A positive nonsimple root `β` has a simple `α` with `(β, α) > 0` and
//!    `β - α ∈ Φ`.
//! 4. If `β`, `β - α_i`, `β - α_j` lie in `Φ_0` for distinct simple roots,
//!    so does `β - α_i - α_j`.
//! 5. If `β + β'` is a positive nonsimple root, some simple `α` has
//!    `β + β' - α ∈ Φ` and `β - α` or `β' - α` in `Φ_0`.

use serde::Serialize;

use crate::root_system::{RootId, RootSum, RootSystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatementResult {
    pub statement: usize,
    pub holds: bool,
    /// Roots exhibiting the failure, in the order they appear in the statement.
    pub witness: Option<Vec<RootId>>,
    /// Number of instances examined.
    pub checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootFactsReport {
    pub system: String,
    pub statements: Vec<StatementResult>,
}

impl RootFactsReport {
    pub fn all_hold(&self) -> bool {
        self.statements.iter().all(|s| s.holds)
    }
}

fn in_phi0(s: RootSum) -> bool {
    s != RootSum::Undefined
}

fn is_root(s: RootSum) -> bool {
    matches!(s, RootSum::Root(_))
}

fn result(statement: usize, checked: usize, witness: Option<Vec<RootId>>) -> StatementResult {
    StatementResult {
        statement,
        holds: witness.is_none(),
        witness,
        checked,
    }
}

pub fn lemma61_predicates(phi: &RootSystem) -> RootFactsReport {
    RootFactsReport {
        system: phi.name(),
        statements: vec![
            obtuse_pairs(phi),
            simple_pairs(phi),
            positive_nonsimple(phi),
            two_simple_differences(phi),
            sum_and_summand(phi),
        ],
    }
}

fn obtuse_pairs(phi: &RootSystem) -> StatementResult {
    let mut checked = 0;
    for a in phi.root_ids() {
        for b in phi.root_ids() {
            if b == a || b == phi.neg(a) || phi.inner_product(a, b) >= 0 {
                continue;
            }
            checked += 1;
            if !is_root(phi.sum(a, b)) {
                return result(1, checked, Some(vec![a, b]));
            }
        }
    }
    result(1, checked, None)
}

fn simple_pairs(phi: &RootSystem) -> StatementResult {
    let mut checked = 0;
    for a in phi.simple_ids() {
        for b in phi.simple_ids().filter(|&b| b != a) {
            checked += 1;
            if phi.inner_product(a, b) > 0 || in_phi0(phi.difference(a, b)) {
                return result(2, checked, Some(vec![a, b]));
            }
        }
    }
    result(2, checked, None)
}

fn positive_nonsimple(phi: &RootSystem) -> StatementResult {
    let mut checked = 0;
    for b in phi.positive_ids().filter(|&b| !phi.is_simple(b)) {
        checked += 1;
        let ok = phi
            .simple_ids()
            .any(|a| phi.inner_product(b, a) > 0 && is_root(phi.difference(b, a)));
        if !ok {
            return result(3, checked, Some(vec![b]));
        }
    }
    result(3, checked, None)
}

fn two_simple_differences(phi: &RootSystem) -> StatementResult {
    let mut checked = 0;
    for b in phi.root_ids() {
        for ai in phi.simple_ids() {
            for aj in phi.simple_ids().filter(|&aj| aj != ai) {
                let (gi, gj) = (phi.difference(b, ai), phi.difference(b, aj));
                if !in_phi0(gi) || !in_phi0(gj) {
                    continue;
                }
                checked += 1;
                let delta = match gi {
                    RootSum::Root(g) => phi.difference(g, aj),
                    // β = α_i, so δ = -α_j.
                    _ => RootSum::Root(phi.neg(aj)),
                };
                if !in_phi0(delta) {
                    return result(4, checked, Some(vec![b, ai, aj]));
                }
            }
        }
    }
    result(4, checked, None)
}

fn sum_and_summand(phi: &RootSystem) -> StatementResult {
    let mut checked = 0;
    for b in phi.root_ids() {
        for b2 in phi.root_ids() {
            let RootSum::Root(s) = phi.sum(b, b2) else {
                continue;
            };
            if !phi.is_positive(s) || phi.is_simple(s) {
                continue;
            }
            checked += 1;
            let ok = phi.simple_ids().any(|a| {
                is_root(phi.difference(s, a))
                    && (in_phi0(phi.difference(b, a)) || in_phi0(phi.difference(b2, a)))
            });
            if !ok {
                return result(5, checked, Some(vec![b, b2]));
            }
        }
    }
    result(5, checked, None)
}

/// Statement 5 with "is a root" read strictly in `Φ` rather than `Φ_0`.
/// Fails already for `A_2`, which is why the `Φ_0` reading is the one used.
pub fn sum_and_summand_strict(phi: &RootSystem) -> Option<(RootId, RootId)> {
    for b in phi.root_ids() {
        for b2 in phi.root_ids() {
            let RootSum::Root(s) = phi.sum(b, b2) else {
                continue;
            };
            if !phi.is_positive(s) || phi.is_simple(s) {
                continue;
            }
            let ok = phi.simple_ids().any(|a| {
                is_root(phi.difference(s, a))
                    && (is_root(phi.difference(b, a)) || is_root(phi.difference(b2, a)))
            });
            if !ok {
                return Some((b, b2));
            }
        }
    }
    None
}
