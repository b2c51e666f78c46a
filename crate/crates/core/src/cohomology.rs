//! Cocycle checks and integration of symmetric 2-cocycles.
//!
//! Integration runs by induction on height: simple roots receive free values
//! `ξ_i`, a positive root `β = α + γ` with `α` simple gets
//! `ω¹(β) = ω¹(α) ω¹(γ) / ω²(α|γ)`, and a negative root gets
//! `ω¹(-β) = ω²(β|-β) / ω¹(β)`.

use serde::{Deserialize, Serialize};

use crate::chains::{enumerate_chains, Chain};
use crate::cochain::{coboundary, reversal, symmetry_class, Cochain, SymmetryClass};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::root_system::{Phi0, RootId, RootSum, RootSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleReport {
    pub is_closed: bool,
    /// First generator of `T_3` where `d²ω ≠ 1`, with the value there.
    pub witness: Option<(Chain, Monomial)>,
    pub symmetry: SymmetryClass,
    /// The three identities forced on a closed 2-form by `[α|-α|α]`,
    /// `[α|-α|α+β]` and `[α|β|-β]`.
    pub killing_identities_ok: bool,
    pub killing_witness: Option<Chain>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossCheck {
    /// Every alternative decomposition of every root.
    #[default]
    Full,
    /// Only roots whose id is a multiple of the stride.
    Sampled(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrationResult {
    pub omega1: Cochain,
    /// The values `ξ_i` on the simple roots, in Bourbaki order.
    pub free_variables: Vec<Monomial>,
    /// Whether the recheck `d¹ω¹ = ω²` passed.
    pub verified: bool,
}

fn check_degree(w: &Cochain, n: usize) -> Result<()> {
    if w.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: w.degree(),
        });
    }
    Ok(())
}

fn pair(a: RootId, b: RootId) -> Chain {
    Chain::from_ids([a, b])
}

pub fn is_cocycle(phi: &RootSystem, w: &Cochain) -> Result<CocycleReport> {
    check_degree(w, 2)?;
    w.check_system(phi)?;
    let dw = coboundary(phi, w)?;
    let witness = dw.values().next().map(|(c, m)| (c.clone(), m.clone()));
    let killing_witness = killing_identities(phi, w);
    Ok(CocycleReport {
        is_closed: witness.is_none(),
        witness,
        symmetry: symmetry_class(w).class,
        killing_identities_ok: killing_witness.is_none(),
        killing_witness,
    })
}

/// First chain `[α|β]` at which one of the three identities fails.
fn killing_identities(phi: &RootSystem, w: &Cochain) -> Option<Chain> {
    let opp = |a: RootId| w.get(&pair(a, phi.neg(a)));
    for a in phi.root_ids() {
        if opp(a) != opp(phi.neg(a)) {
            return Some(pair(a, phi.neg(a)));
        }
    }
    let two_chains = enumerate_chains(phi, 2).ok()?;
    two_chains.iter().find_map(|c| {
        let (a, b) = (c.entries()[0], c.entries()[1]);
        let RootSum::Root(s) = phi.sum(a, b) else {
            return None;
        };
        let v = w.get(c);
        let eq2 = opp(a).div(&w.get(&pair(phi.neg(a), s)));
        let eq3 = opp(b).div(&w.get(&pair(s, phi.neg(b))));
        (v != eq2 || v != eq3).then(|| c.clone())
    })
}

/// Integrate a symmetric 2-cocycle with `ξ = 1` on every simple root.
pub fn integrate_default(phi: &RootSystem, w: &Cochain) -> Result<IntegrationResult> {
    let xi = vec![w.variables().one(); phi.rank()];
    integrate(phi, w, &xi, CrossCheck::Full)
}

/// Integrate with symbolic `ξ`: the variable table gains `xi1..xil`.
pub fn integrate_symbolic(phi: &RootSystem, w: &Cochain) -> Result<IntegrationResult> {
    let names: Vec<String> = (1..=phi.rank()).map(|i| format!("xi{i}")).collect();
    let vars = w.variables().extended(names)?;
    let w = w.with_variables(vars.clone())?;
    let xi: Vec<Monomial> = (0..phi.rank())
        .map(|i| Monomial::var(vars.len(), vars.len() - phi.rank() + i, 1))
        .collect();
    integrate(phi, &w, &xi, CrossCheck::Full)
}

pub fn integrate(
    phi: &RootSystem,
    w: &Cochain,
    xi: &[Monomial],
    check: CrossCheck,
) -> Result<IntegrationResult> {
    integrate_inner(phi, w, xi, check, true)
}

/// Integration without the up-front symmetry and cocycle checks; a bad input
/// then surfaces as a [`Error::WellDefinednessViolation`] or `verified = false`.
pub fn integrate_unchecked(
    phi: &RootSystem,
    w: &Cochain,
    xi: &[Monomial],
    check: CrossCheck,
) -> Result<IntegrationResult> {
    integrate_inner(phi, w, xi, check, false)
}

fn integrate_inner(
    phi: &RootSystem,
    w: &Cochain,
    xi: &[Monomial],
    check: CrossCheck,
    validate: bool,
) -> Result<IntegrationResult> {
    check_degree(w, 2)?;
    w.check_system(phi)?;
    let k = w.variables().len();
    if xi.len() != phi.rank() {
        return Err(Error::PreconditionUnmet(format!(
            "expected {} free values, got {}",
            phi.rank(),
            xi.len()
        )));
    }
    if let Some(m) = xi.iter().find(|m| m.num_vars() != k) {
        return Err(Error::PreconditionUnmet(format!(
            "free value {m} does not have {k} exponents"
        )));
    }
    if validate {
        if let Some(witness) = reversal(w).first_difference(w) {
            return Err(Error::NotSymmetric { witness });
        }
        if let Some((witness, value)) = coboundary(phi, w)?.values().next() {
            return Err(Error::NotCocycle {
                witness: witness.clone(),
                value: value.clone(),
            });
        }
    }

    let mut vals: Vec<Monomial> = vec![w.variables().one(); phi.num_roots()];
    let via = |vals: &[Monomial], a: RootId, g: Phi0| match g {
        // β is simple itself; only reached from the cross-check.
        Phi0::Zero => vals[a as usize].clone(),
        Phi0::Root(g) => vals[a as usize]
            .mul(&vals[g as usize])
            .div(&w.get(&pair(a, g))),
    };
    for beta in phi.positive_ids() {
        if phi.is_simple(beta) {
            vals[beta as usize] = xi[beta as usize].clone();
            continue;
        }
        let (a, g) = phi.decompose_positive(beta)?;
        let v = via(&vals, a, g);
        let sampled = match check {
            CrossCheck::Full => true,
            CrossCheck::Sampled(stride) => beta as usize % stride.max(1) == 0,
        };
        if sampled {
            for (a2, g2) in phi.all_decompositions(beta) {
                if a2 == a {
                    continue;
                }
                let v2 = via(&vals, a2, g2);
                if v2 != v {
                    return Err(Error::WellDefinednessViolation {
                        root: beta,
                        first_simple: a,
                        first_value: v,
                        second_simple: a2,
                        second_value: v2,
                    });
                }
            }
        }
        vals[beta as usize] = v;
    }
    for beta in phi.positive_ids() {
        let nb = phi.neg(beta);
        vals[nb as usize] = w.get(&pair(beta, nb)).div(&vals[beta as usize]);
    }

    let omega1 = Cochain::from_fn(phi, 1, w.variables().clone(), |c| {
        vals[c.entries()[0] as usize].clone()
    })?;
    let verified = coboundary(phi, &omega1)?.first_difference(w).is_none();
    Ok(IntegrationResult {
        omega1,
        free_variables: xi.to_vec(),
        verified,
    })
}

/// Whether `d¹ω¹` is the identity.
pub fn is_closed_1form(phi: &RootSystem, w: &Cochain) -> Result<bool> {
    check_degree(w, 1)?;
    Ok(coboundary(phi, w)?.is_identity())
}

/// If a 2-form is the identity on positive pairs and on opposite pairs, it
/// is the identity everywhere when closed. Returns the exhaustive check.
pub fn check_vanishing_criterion(phi: &RootSystem, w: &Cochain) -> Result<bool> {
    check_degree(w, 2)?;
    w.check_system(phi)?;
    for (c, m) in w.values() {
        let (a, b) = (c.entries()[0], c.entries()[1]);
        if (phi.is_positive(a) && phi.is_positive(b)) || b == phi.neg(a) {
            return Err(Error::PreconditionUnmet(format!(
                "value {} on {}",
                m.render(w.variables()),
                c.render(phi)
            )));
        }
    }
    Ok(w.is_identity())
}

/// A closed 2-form that is not symmetric cannot be exact, because the image
/// of `d¹` is symmetric. Returns a chain where `ρ̂ω ≠ ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonExactnessCertificate {
    pub witness: Chain,
    pub value: Monomial,
    pub reversed_value: Monomial,
}

pub fn nonexactness_certificate(
    phi: &RootSystem,
    w: &Cochain,
) -> Result<Option<NonExactnessCertificate>> {
    let report = is_cocycle(phi, w)?;
    if let Some((witness, value)) = report.witness {
        return Err(Error::NotCocycle { witness, value });
    }
    let rev = reversal(w);
    Ok(rev.first_difference(w).map(|c| NonExactnessCertificate {
        value: w.get(&c),
        reversed_value: rev.get(&c),
        witness: c,
    }))
}
