//! Deciding whether a natural 2-cocycle integrates to a natural 1-form.
//!
//! The symbolic integral is affine in the free values: in each variable `I_v`
//! the exponent of `ω¹(β)` is `a_β·x + c_β`, with `x` the exponents of `I_v`
//! in `ξ_1..ξ_l`. Variables decouple, so each one is a small integer
//! feasibility problem `a_β·x + c_β ≥ 0` for all roots `β`. The simple roots
//! and their negatives bound every coordinate, so the search box is finite.

use serde::Serialize;

use crate::cohomology::{integrate, integrate_symbolic, CrossCheck};
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::root_system::{RootId, RootSystem};

pub const DEFAULT_DENOMINATOR_CAP: u64 = 16;

/// `coeffs · x + constant ≥ 0`, coming from the exponent of `ω¹(root)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constraint {
    pub root: RootId,
    pub coeffs: Vec<i64>,
    pub constant: i64,
}

/// An irreducible set of constraints with no common integer solution:
/// dropping any one of them makes the rest feasible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VariableReport {
    pub variable: String,
    /// Exponents of this variable in `ξ_1..ξ_l`, if feasible.
    pub solution: Option<Vec<i64>>,
    pub certificate: Option<Certificate>,
    /// Smallest `n` with a solution in `(1/n)Z^l`, when infeasible over `Z`.
    pub min_denominator: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalReport {
    pub feasible: bool,
    /// The free values `ξ_i` when feasible.
    pub xi: Option<Vec<Monomial>>,
    /// The natural integral obtained from `xi`.
    pub omega1: Option<Cochain>,
    pub per_variable: Vec<VariableReport>,
    /// Least common multiple of the per-variable denominators; `None` when
    /// feasible over `Z` or when some variable exceeds the cap.
    pub min_denominator: Option<u64>,
}

pub fn natural_integrability(phi: &RootSystem, w: &Cochain) -> Result<NaturalReport> {
    natural_integrability_with_cap(phi, w, DEFAULT_DENOMINATOR_CAP)
}

pub fn natural_integrability_with_cap(
    phi: &RootSystem,
    w: &Cochain,
    denominator_cap: u64,
) -> Result<NaturalReport> {
    if let Some((c, _)) = w.values().find(|(_, m)| !m.is_natural()) {
        return Err(Error::NotNaturalInput { chain: c.clone() });
    }
    let sym = integrate_symbolic(phi, w)?;
    let k = w.variables().len();
    let l = phi.rank();

    let mut per_variable = Vec::with_capacity(k);
    for v in 0..k {
        let constraints: Vec<Constraint> = phi
            .root_ids()
            .map(|r| {
                let m = sym.omega1.get(&crate::chains::Chain::from_ids([r]));
                let e = m.exponents();
                Constraint {
                    root: r,
                    coeffs: e[k..k + l].to_vec(),
                    constant: e[v],
                }
            })
            .collect();
        let (solution, certificate, min_denominator) = match solve(&constraints, l) {
            Some(x) => (Some(x), None, None),
            None => {
                let cert = irreducible_subsystem(&constraints, l);
                let n = (2..=denominator_cap).find(|&n| {
                    let scaled: Vec<Constraint> = constraints
                        .iter()
                        .map(|c| Constraint {
                            constant: c.constant * n as i64,
                            ..c.clone()
                        })
                        .collect();
                    solve(&scaled, l).is_some()
                });
                (None, Some(cert), n)
            }
        };
        per_variable.push(VariableReport {
            variable: w.variables().names()[v].clone(),
            solution,
            certificate,
            min_denominator,
        });
    }

    let feasible = per_variable.iter().all(|r| r.solution.is_some());
    let (xi, omega1) = if feasible {
        let xi: Vec<Monomial> = (0..l)
            .map(|i| {
                Monomial::from_exponents(per_variable.iter().map(|r| r.solution.as_ref().unwrap()[i]))
            })
            .collect();
        let res = integrate(phi, w, &xi, CrossCheck::Full)?;
        if !res.verified || res.omega1.values().any(|(_, m)| !m.is_natural()) {
            return Err(Error::InternalInvariantViolation(
                "feasible point does not give a natural integral".into(),
            ));
        }
        (Some(xi), Some(res.omega1))
    } else {
        (None, None)
    };
    let min_denominator = if feasible {
        None
    } else {
        per_variable.iter().try_fold(1u64, |acc, r| match (&r.solution, r.min_denominator) {
            (Some(_), _) => Some(acc),
            (None, Some(n)) => Some(lcm(acc, n)),
            (None, None) => None,
        })
    };
    Ok(NaturalReport {
        feasible,
        xi,
        omega1,
        per_variable,
        min_denominator,
    })
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

#[derive(Clone, Debug)]
struct Bounds {
    lo: Vec<Option<i64>>,
    hi: Vec<Option<i64>>,
}

fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -div_floor(-a, b)
}

const MAX_ROUNDS: usize = 4096;

/// Tighten bounds towards a fixpoint; `false` on an empty box. Half-open
/// systems can creep forever, so the number of rounds is capped; the bounds
/// found so far stay valid.
fn propagate(cs: &[Constraint], b: &mut Bounds) -> bool {
    let n = b.lo.len();
    for _ in 0..MAX_ROUNDS {
        let mut changed = false;
        for c in cs {
            for j in 0..n {
                let aj = c.coeffs[j];
                if aj == 0 {
                    continue;
                }
                // Largest possible value of the other terms.
                let mut rest = Some(0i64);
                for i in (0..n).filter(|&i| i != j && c.coeffs[i] != 0) {
                    let ai = c.coeffs[i];
                    let bound = if ai > 0 { b.hi[i] } else { b.lo[i] };
                    rest = rest.zip(bound).map(|(r, v)| r + ai * v);
                }
                let Some(rest) = rest else { continue };
                // aj * x_j >= -constant - rest
                let need = -c.constant - rest;
                if aj > 0 {
                    let v = div_ceil(need, aj);
                    if b.lo[j].map_or(true, |l| v > l) {
                        b.lo[j] = Some(v);
                        changed = true;
                    }
                } else {
                    let v = div_floor(need, aj);
                    if b.hi[j].map_or(true, |h| v < h) {
                        b.hi[j] = Some(v);
                        changed = true;
                    }
                }
                if let (Some(l), Some(h)) = (b.lo[j], b.hi[j]) {
                    if l > h {
                        return false;
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Outcome {
    Feasible(Vec<i64>),
    Infeasible,
    /// The search had to guess a value for an unbounded coordinate and failed.
    Unknown,
}

/// Integer point satisfying every constraint, preferring small `|x_i|`.
///
/// Systems built from a root system are bounded in every coordinate, and on
/// bounded systems the answer is exact.
fn solve(cs: &[Constraint], n: usize) -> Option<Vec<i64>> {
    match solve_exact(cs, n) {
        Outcome::Feasible(x) => Some(x),
        _ => None,
    }
}

fn solve_exact(cs: &[Constraint], n: usize) -> Outcome {
    let mut b = Bounds {
        lo: vec![None; n],
        hi: vec![None; n],
    };
    if !propagate(cs, &mut b) {
        return Outcome::Infeasible;
    }
    let mut complete = true;
    match search(cs, b, &mut complete) {
        Some(x) => Outcome::Feasible(x),
        None if complete => Outcome::Infeasible,
        None => Outcome::Unknown,
    }
}

fn search(cs: &[Constraint], b: Bounds, complete: &mut bool) -> Option<Vec<i64>> {
    let n = b.lo.len();
    let width = |i: usize| match (b.lo[i], b.hi[i]) {
        (Some(l), Some(h)) => h - l,
        _ => i64::MAX,
    };
    let Some(j) = (0..n).filter(|&i| width(i) > 0).min_by_key(|&i| width(i)) else {
        let x: Vec<i64> = b.lo.iter().map(|l| l.unwrap()).collect();
        return satisfies(cs, &x).then_some(x);
    };
    let values: Vec<i64> = match (b.lo[j], b.hi[j]) {
        (Some(lo), Some(hi)) => {
            let mut v: Vec<i64> = (lo..=hi).collect();
            v.sort_by_key(|v| (v.abs(), *v < 0));
            v
        }
        (lo, hi) => {
            *complete = false;
            let v = 0i64.max(lo.unwrap_or(i64::MIN)).min(hi.unwrap_or(i64::MAX));
            vec![v]
        }
    };
    for v in values {
        let mut nb = b.clone();
        nb.lo[j] = Some(v);
        nb.hi[j] = Some(v);
        if propagate(cs, &mut nb) {
            if let Some(x) = search(cs, nb, complete) {
                return Some(x);
            }
        }
    }
    None
}

fn satisfies(cs: &[Constraint], x: &[i64]) -> bool {
    cs.iter()
        .all(|c| c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum::<i64>() + c.constant >= 0)
}

/// Deletion filter. Single-variable constraints bound the search box, so the
/// others are filtered first with the box in place, where the search is
/// exact; box constraints are then dropped whenever propagation alone still
/// refutes the system.
fn irreducible_subsystem(cs: &[Constraint], n: usize) -> Certificate {
    let is_box = |c: &Constraint| c.coeffs.iter().filter(|&&a| a != 0).count() <= 1;
    let mut keep: Vec<Constraint> = cs.to_vec();
    for pass_box in [false, true] {
        let mut i = 0;
        while i < keep.len() {
            if is_box(&keep[i]) != pass_box {
                i += 1;
                continue;
            }
            let mut trial = keep.clone();
            trial.remove(i);
            let refuted = if pass_box {
                let mut b = Bounds {
                    lo: vec![None; n],
                    hi: vec![None; n],
                };
                !propagate(&trial, &mut b)
            } else {
                solve_exact(&trial, n) == Outcome::Infeasible
            };
            if refuted {
                keep = trial;
            } else {
                i += 1;
            }
        }
    }
    Certificate { constraints: keep }
}
