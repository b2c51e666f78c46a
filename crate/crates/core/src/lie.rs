//! Monomial deformations of the Chevalley basis of a simple Lie algebra.
//!
//! Given a symmetric 2-cochain `ω` the bracket is
//!
//! ```text
//! [h_i, h_j] = 0
//! [h_i, e_α] = <α, α_i^∨> e_α
//! [e_α, e_β] = N_{α,β} ω(α|β) e_{α+β}      (α + β ∈ Φ)
//! [e_α, e_-α] = ω(α|-α) h_α
//! ```
//!
//! with `h_α` the coroot of `α` written over the simple coroots. The integers
//! `N_{α,β} = ±(p+1)` come from the extraspecial-pair construction.
//! Coefficients of brackets are integer combinations of monomials, so the
//! Jacobi identity is checked exactly.

use std::collections::{BTreeMap, HashMap};

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::cochain::{coboundary, reversal, Cochain};
use crate::cohomology::is_cocycle;
use crate::chains::Chain;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, VariableTable};
use crate::root_system::{LengthClass, RootId, RootSum, RootSystem};

pub const DEFAULT_SIGN_RANK_CAP: usize = 4;

/// Structure constants `N_{α,β}` for every pair with `α + β ∈ Φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignForm {
    system: String,
    values: HashMap<(RootId, RootId), i64>,
}

impl SignForm {
    /// `N_{α,β}`, or `1` for `β = -α`; `None` when `α + β ∉ Φ_0`.
    pub fn get(&self, phi: &RootSystem, a: RootId, b: RootId) -> Option<i64> {
        if b == phi.neg(a) {
            return Some(1);
        }
        self.values.get(&(a, b)).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Largest `p` with `b - p·a ∈ Φ`.
fn string_below(phi: &RootSystem, a: RootId, b: RootId) -> i64 {
    let mut p = 0;
    let mut cur = b;
    while let RootSum::Root(next) = phi.difference(cur, a) {
        p += 1;
        cur = next;
    }
    p
}

pub fn chevalley_signs(phi: &RootSystem) -> Result<SignForm> {
    chevalley_signs_with_cap(phi, DEFAULT_SIGN_RANK_CAP)
}

pub fn chevalley_signs_with_cap(phi: &RootSystem, cap: usize) -> Result<SignForm> {
    if phi.rank() > cap {
        return Err(Error::RankCapExceeded {
            rank: phi.rank(),
            cap,
        });
    }
    let mut special: HashMap<(RootId, RootId), i64> = HashMap::new();
    let norm = |r: RootId| Ratio::from_integer(phi.inner_product(r, r));
    // Positive ids are sorted by height, so every sum referenced below has
    // already been handled.
    for z in phi.positive_ids().filter(|&z| !phi.is_simple(z)) {
        let pairs: Vec<(RootId, RootId)> = phi
            .positive_ids()
            .filter_map(|r| match phi.difference(z, r) {
                RootSum::Root(s) if phi.is_positive(s) && r < s => Some((r, s)),
                _ => None,
            })
            .collect();
        let (r, s) = pairs[0];
        let nrs = string_below(phi, r, s) + 1;
        special.insert((r, s), nrs);
        for &(r2, s2) in &pairs[1..] {
            let mut acc = Ratio::from_integer(0);
            if let RootSum::Root(t) = phi.sum(s2, phi.neg(r)) {
                let x = lookup(phi, &special, s2, phi.neg(r))?;
                let y = lookup(phi, &special, r2, phi.neg(s))?;
                acc += Ratio::from_integer(x * y) / norm(t);
            }
            if let RootSum::Root(t) = phi.sum(phi.neg(r), r2) {
                let x = lookup(phi, &special, phi.neg(r), r2)?;
                let y = lookup(phi, &special, s2, phi.neg(s))?;
                acc += Ratio::from_integer(x * y) / norm(t);
            }
            let n = norm(z) / Ratio::from_integer(nrs) * acc;
            if !n.is_integer() || n.to_integer() == 0 {
                return Err(Error::InternalInvariantViolation(format!(
                    "structure constant for {} + {} is {n}",
                    phi.label(r2),
                    phi.label(s2)
                )));
            }
            special.insert((r2, s2), n.to_integer());
        }
    }
    let mut values = HashMap::new();
    for a in phi.root_ids() {
        for b in phi.root_ids() {
            if let RootSum::Root(_) = phi.sum(a, b) {
                values.insert((a, b), lookup(phi, &special, a, b)?);
            }
        }
    }
    let form = SignForm {
        system: phi.name(),
        values,
    };
    let vars = VariableTable::default();
    let alg = build_algebra(phi, &form, &Cochain::identity(phi, 2, vars))?;
    if let Some(w) = jacobi_check(&alg).witness {
        return Err(Error::InternalInvariantViolation(format!(
            "undeformed algebra fails Jacobi at {w:?}"
        )));
    }
    Ok(form)
}

/// `N_{a,b}` from the special-pair table via the standard relations:
/// `N_{b,a} = -N_{a,b}`, `N_{-a,-b} = -N_{a,b}`, and for `a + b + c = 0`,
/// `N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)`.
fn lookup(
    phi: &RootSystem,
    special: &HashMap<(RootId, RootId), i64>,
    a: RootId,
    b: RootId,
) -> Result<i64> {
    let missing = || {
        Error::InternalInvariantViolation(format!(
            "structure constant N({}, {}) requested before it is known",
            phi.label(a),
            phi.label(b)
        ))
    };
    let RootSum::Root(t) = phi.sum(a, b) else {
        return Err(missing());
    };
    let (pa, pb) = (phi.is_positive(a), phi.is_positive(b));
    if pa && pb {
        return if a < b {
            special.get(&(a, b)).copied().ok_or_else(missing)
        } else {
            special.get(&(b, a)).map(|n| -n).ok_or_else(missing)
        };
    }
    if !pa && !pb {
        return Ok(-lookup(phi, special, phi.neg(a), phi.neg(b))?);
    }
    let c = phi.neg(t);
    let norm = |r: RootId| phi.inner_product(r, r);
    // Exactly one of (b, c), (c, a) has both entries of the same sign.
    let n = if phi.is_positive(b) == phi.is_positive(c) {
        Ratio::new(norm(c), norm(a)) * lookup(phi, special, b, c)?
    } else {
        Ratio::new(norm(c), norm(b)) * lookup(phi, special, c, a)?
    };
    if !n.is_integer() {
        return Err(Error::InternalInvariantViolation(format!(
            "non-integral structure constant {n}"
        )));
    }
    Ok(n.to_integer())
}

/// Basis element of the algebra: `h_i` (Cartan) or `e_α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    H(usize),
    E(RootId),
}

/// `coeff · monomial · basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub basis: Basis,
    pub coeff: i64,
    pub monomial: Monomial,
}

#[derive(Clone, Debug)]
pub struct DeformedAlgebra {
    system: String,
    rank: usize,
    nroots: usize,
    vars: VariableTable,
    labels: Vec<String>,
    /// `table[i * dim + j]` holds `[b_i, b_j]`.
    table: Vec<Vec<Term>>,
}

impl DeformedAlgebra {
    pub fn system(&self) -> &str {
        &self.system
    }

    pub fn dim(&self) -> usize {
        self.rank + self.nroots
    }

    pub fn variables(&self) -> &VariableTable {
        &self.vars
    }

    pub fn index(&self, b: Basis) -> usize {
        match b {
            Basis::H(i) => i,
            Basis::E(r) => self.rank + r as usize,
        }
    }

    pub fn basis(&self, i: usize) -> Basis {
        if i < self.rank {
            Basis::H(i)
        } else {
            Basis::E((i - self.rank) as RootId)
        }
    }

    pub fn label(&self, b: Basis) -> &str {
        &self.labels[self.index(b)]
    }

    pub fn bracket(&self, x: Basis, y: Basis) -> &[Term] {
        &self.table[self.index(x) * self.dim() + self.index(y)]
    }

    /// Nonzero brackets `[x, y]` with `x` before `y`, in basis order.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (Basis, Basis, &[Term])> {
        let d = self.dim();
        (0..d).flat_map(move |i| {
            (i + 1..d).filter_map(move |j| {
                let t = &self.table[i * d + j];
                (!t.is_empty()).then(|| (self.basis(i), self.basis(j), t.as_slice()))
            })
        })
    }
}

pub fn build_algebra(phi: &RootSystem, signs: &SignForm, w: &Cochain) -> Result<DeformedAlgebra> {
    w.check_system(phi)?;
    if signs.system != phi.name() {
        return Err(Error::SystemMismatch {
            left: signs.system.clone(),
            right: phi.name(),
        });
    }
    if w.degree() != 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: w.degree(),
        });
    }
    if let Some(witness) = reversal(w).first_difference(w) {
        return Err(Error::NotSymmetric { witness });
    }
    let l = phi.rank();
    let n = phi.num_roots();
    let d = l + n;
    let one = w.variables().one();
    let mut table = vec![Vec::new(); d * d];
    let mut labels: Vec<String> = (1..=l).map(|i| format!("h{i}")).collect();
    labels.extend(phi.root_ids().map(|r| format!("e[{}]", phi.label(r))));

    for i in 0..l {
        for a in phi.root_ids() {
            let k = phi.pairing(a, i as RootId);
            if k != 0 {
                let e = l + a as usize;
                table[i * d + e].push(Term {
                    basis: Basis::E(a),
                    coeff: k,
                    monomial: one.clone(),
                });
                table[e * d + i].push(Term {
                    basis: Basis::E(a),
                    coeff: -k,
                    monomial: one.clone(),
                });
            }
        }
    }
    for a in phi.root_ids() {
        for b in phi.root_ids() {
            let slot = &mut table[(l + a as usize) * d + l + b as usize];
            let m = || w.get(&Chain::from_ids([a, b]));
            match phi.sum(a, b) {
                RootSum::Root(s) => slot.push(Term {
                    basis: Basis::E(s),
                    coeff: signs.get(phi, a, b).expect("sign for a root sum"),
                    monomial: m(),
                }),
                RootSum::Zero => {
                    let mono = m();
                    for (i, &c) in phi.coroot_coeffs(a).iter().enumerate() {
                        if c != 0 {
                            slot.push(Term {
                                basis: Basis::H(i),
                                coeff: c,
                                monomial: mono.clone(),
                            });
                        }
                    }
                }
                RootSum::Undefined => {}
            }
        }
    }
    Ok(DeformedAlgebra {
        system: phi.name(),
        rank: l,
        nroots: n,
        vars: w.variables().clone(),
        labels,
        table,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub ok: bool,
    /// A failing pair (antisymmetry) or triple, as basis labels.
    pub witness: Option<Vec<Basis>>,
    pub triples_checked: usize,
}

type Element = BTreeMap<(usize, Monomial), i64>;

fn add_into(acc: &mut Element, key: (usize, Monomial), v: i64) {
    use std::collections::btree_map::Entry;
    match acc.entry(key) {
        Entry::Vacant(e) => {
            e.insert(v);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += v;
            if *e.get() == 0 {
                e.remove();
            }
        }
    }
}

/// Expand `[[x, y], z] + [[y, z], x] + [[z, x], y]` for every basis triple.
pub fn jacobi_check(alg: &DeformedAlgebra) -> JacobiReport {
    let d = alg.dim();
    for i in 0..d {
        for j in i..d {
            let (x, y) = (alg.basis(i), alg.basis(j));
            let mut s = Element::new();
            for t in alg.bracket(x, y).iter().chain(alg.bracket(y, x)) {
                add_into(&mut s, (alg.index(t.basis), t.monomial.clone()), t.coeff);
            }
            if !s.is_empty() {
                return JacobiReport {
                    ok: false,
                    witness: Some(vec![x, y]),
                    triples_checked: 0,
                };
            }
        }
    }
    let triples: Vec<(usize, usize, usize)> = (0..d)
        .flat_map(|i| (i + 1..d).flat_map(move |j| (j + 1..d).map(move |k| (i, j, k))))
        .collect();
    let double = |acc: &mut Element, x: Basis, y: Basis, z: Basis| {
        for t in alg.bracket(x, y) {
            for u in alg.bracket(t.basis, z) {
                add_into(
                    acc,
                    (alg.index(u.basis), t.monomial.mul(&u.monomial)),
                    t.coeff * u.coeff,
                );
            }
        }
    };
    let bad = triples.par_iter().find_first(|&&(i, j, k)| {
        let (x, y, z) = (alg.basis(i), alg.basis(j), alg.basis(k));
        let mut acc = Element::new();
        double(&mut acc, x, y, z);
        double(&mut acc, y, z, x);
        double(&mut acc, z, x, y);
        !acc.is_empty()
    });
    JacobiReport {
        ok: bad.is_none(),
        witness: bad.map(|&(i, j, k)| vec![alg.basis(i), alg.basis(j), alg.basis(k)]),
        triples_checked: triples.len(),
    }
}

/// The cocycle condition, which is equivalent to the Jacobi identity of the
/// deformed algebra.
pub fn monomial_jacobi_check(phi: &RootSystem, w: &Cochain) -> Result<bool> {
    Ok(is_cocycle(phi, w)?.is_closed)
}

/// Rescaling `f_α = ω¹(α)^{-1} e_α` of the algebra built from `d¹ω¹` gives
/// back the undeformed brackets. Returns the first pair where it does not.
pub fn model_property_check(
    phi: &RootSystem,
    signs: &SignForm,
    w1: &Cochain,
) -> Result<Option<(Basis, Basis)>> {
    let w2 = coboundary(phi, w1)?;
    let deformed = build_algebra(phi, signs, &w2)?;
    let plain = build_algebra(phi, signs, &Cochain::identity(phi, 2, w1.variables().clone()))?;
    let scale = |b: Basis| match b {
        Basis::H(_) => w1.variables().one(),
        Basis::E(r) => w1.get(&Chain::from_ids([r])),
    };
    // [f_x, f_y] = s_x^{-1} s_y^{-1} [e_x, e_y] and e_z = s_z f_z.
    let d = deformed.dim();
    for i in 0..d {
        for j in 0..d {
            let (x, y) = (deformed.basis(i), deformed.basis(j));
            let lhs: Vec<Term> = deformed
                .bracket(x, y)
                .iter()
                .map(|t| Term {
                    basis: t.basis,
                    coeff: t.coeff,
                    monomial: t
                        .monomial
                        .mul(&scale(t.basis))
                        .div(&scale(x))
                        .div(&scale(y)),
                })
                .collect();
            if lhs != plain.bracket(x, y) {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KillingCount {
    /// `d¹ω¹(α|-α)` for positive short roots, rendered.
    pub short: Vec<String>,
    pub long: Vec<String>,
    /// Total exponent of each variable over all positive roots.
    pub totals: BTreeMap<String, i64>,
}

pub fn killing_counts(phi: &RootSystem, w1: &Cochain) -> Result<KillingCount> {
    w1.check_system(phi)?;
    if w1.degree() != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            found: w1.degree(),
        });
    }
    let vars = w1.variables();
    let mut short = Vec::new();
    let mut long = Vec::new();
    let mut totals = vars.one();
    for a in phi.positive_ids() {
        let m = w1
            .get(&Chain::from_ids([a]))
            .mul(&w1.get(&Chain::from_ids([phi.neg(a)])));
        totals = totals.mul(&m);
        let bucket = match phi.length_class(a) {
            LengthClass::Short => &mut short,
            LengthClass::Long => &mut long,
        };
        bucket.push(m.render(vars));
    }
    Ok(KillingCount {
        short,
        long,
        totals: vars
            .names()
            .iter()
            .cloned()
            .zip(totals.exponents().iter().copied())
            .collect(),
    })
}
