#![allow(dead_code)]

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rootcoh::automorphism::weyl_generators;
use rootcoh::chains::{boundary_sum, enumerate_chains, Chain};
use rootcoh::cochain::{act, coboundary, cup, reversal, Cochain, CupConvention};
use rootcoh::cohomology::{check_vanishing_criterion, integrate, CrossCheck};
use rootcoh::root_facts::lemma61_predicates;
use rootcoh::{Monomial, RootId, RootSystem, VariableTable};

pub type Check = std::result::Result<(), String>;

pub fn sys(name: &str) -> RootSystem {
    RootSystem::new(name.parse().unwrap()).unwrap()
}

pub fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

pub fn ij() -> VariableTable {
    VariableTable::new(["I", "J"]).unwrap()
}

/// `r_0 .. r_5` of A2, going once around the hexagon starting at `α_1`.
pub fn hexagon(phi: &RootSystem) -> [RootId; 6] {
    let c = |v: [i32; 2]| phi.find(&v).unwrap();
    [c([1, 0]), c([1, 1]), c([0, 1]), c([-1, 0]), c([-1, -1]), c([0, -1])]
}

fn sgn(n: usize) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Random cochain with exponents in `[-bound, bound]` on every generator.
pub fn random_cochain(phi: &RootSystem, deg: usize, vars: &VariableTable, seed: u64, bound: i64) -> Cochain {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = Cochain::identity(phi, deg, vars.clone());
    for c in enumerate_chains(phi, deg).unwrap() {
        let m = Monomial::from_exponents((0..vars.len()).map(|_| rng.gen_range(-bound..=bound)));
        w.set(phi, c.clone(), m).unwrap();
    }
    w
}

fn expect_eq(what: &str, a: &Cochain, b: &Cochain) -> Check {
    match a.first_difference(b) {
        None => Ok(()),
        Some(c) => Err(format!("{what}: differs at {c}")),
    }
}

/// `∂∂ = 0` on every generator of `T_n`, `2 <= n <= max`.
pub fn boundary_squared(phi: &RootSystem, max: usize) -> Check {
    for n in 2..=max {
        for c in enumerate_chains(phi, n).map_err(|e| e.to_string())? {
            let once = rootcoh::boundary(phi, c);
            if !boundary_sum(phi, &once).is_zero() {
                return Err(format!("{}: ∂∂{} ≠ 0", phi.name(), c.render(phi)));
            }
        }
    }
    Ok(())
}

pub fn d_squared(phi: &RootSystem, seed: u64, max: usize) -> Check {
    for n in 1..=max {
        let w = random_cochain(phi, n, &ij(), seed, 5);
        let dd = coboundary(phi, &coboundary(phi, &w).unwrap()).unwrap();
        if !dd.is_identity() {
            return Err(format!("{}: dd ≠ 1 in degree {n}", phi.name()));
        }
    }
    Ok(())
}

pub fn leibniz(phi: &RootSystem, seed: u64) -> Check {
    for (p, q) in [(1, 1), (1, 2), (2, 1)] {
        let a = random_cochain(phi, p, &ij(), seed, 3);
        let b = random_cochain(phi, q, &ij(), seed ^ 0x9e37, 3);
        let m = CupConvention::Multiply;
        let lhs = coboundary(phi, &cup(phi, &a, &b, m).unwrap()).unwrap();
        let t1 = cup(phi, &coboundary(phi, &a).unwrap(), &b, m).unwrap();
        let t2 = cup(phi, &a, &coboundary(phi, &b).unwrap(), m).unwrap();
        let rhs = t1.mul(&t2.pow(sgn(p))).unwrap();
        expect_eq(&format!("{} Leibniz ({p},{q})", phi.name()), &lhs, &rhs)?;
    }
    Ok(())
}

pub fn reversal_commutes(phi: &RootSystem, seed: u64) -> Check {
    for n in 1..=2 {
        let w = random_cochain(phi, n, &ij(), seed, 5);
        let lhs = reversal(&coboundary(phi, &w).unwrap());
        let rhs = coboundary(phi, &reversal(&w)).unwrap();
        expect_eq(&format!("{} reversal/d degree {n}", phi.name()), &lhs, &rhs)?;
    }
    Ok(())
}

pub fn cup_reversal(phi: &RootSystem, seed: u64) -> Check {
    for (p, q) in [(1, 1), (1, 2), (2, 1)] {
        let a = random_cochain(phi, p, &ij(), seed, 3);
        let b = random_cochain(phi, q, &ij(), seed ^ 0x51ed, 3);
        let m = CupConvention::Multiply;
        let lhs = reversal(&cup(phi, &a, &b, m).unwrap());
        let rhs = cup(phi, &reversal(&b), &reversal(&a), m)
            .unwrap()
            .pow(sgn(p * q + 1));
        expect_eq(&format!("{} cup/reversal ({p},{q})", phi.name()), &lhs, &rhs)?;
    }
    Ok(())
}

/// Every Weyl generator commutes with `d`, reversal and the cup product.
pub fn equivariance(phi: &RootSystem, seed: u64) -> Check {
    let a = random_cochain(phi, 1, &ij(), seed, 4);
    let b = random_cochain(phi, 2, &ij(), seed ^ 0xabc, 4);
    let m = CupConvention::Multiply;
    for (k, s) in weyl_generators(phi).iter().enumerate() {
        let tag = |what: &str| format!("{} s{} {what}", phi.name(), k + 1);
        for w in [&a, &b] {
            expect_eq(
                &tag("d"),
                &act(s, &coboundary(phi, w).unwrap()),
                &coboundary(phi, &act(s, w)).unwrap(),
            )?;
            expect_eq(&tag("reversal"), &act(s, &reversal(w)), &reversal(&act(s, w)))?;
        }
        expect_eq(
            &tag("cup"),
            &act(s, &cup(phi, &a, &b, m).unwrap()),
            &cup(phi, &act(s, &a), &act(s, &b), m).unwrap(),
        )?;
    }
    Ok(())
}

pub fn root_facts(phi: &RootSystem) -> Check {
    let rep = lemma61_predicates(phi);
    match rep.statements.iter().find(|s| !s.holds) {
        None => Ok(()),
        Some(s) => Err(format!("{}: statement {} fails at {:?}", phi.name(), s.statement, s.witness)),
    }
}

/// `integrate(d¹ω¹)` with `ξ = ω¹|Δ` returns `ω¹`, and the difference of
/// `d¹` of the result and the input passes the vanishing criterion.
pub fn round_trip(phi: &RootSystem, seed: u64) -> Check {
    let w1 = random_cochain(phi, 1, &ij(), seed, 5);
    let w2 = coboundary(phi, &w1).unwrap();
    let xi: Vec<Monomial> = phi.simple_ids().map(|r| w1.get(&Chain::from_ids([r]))).collect();
    let res = integrate(phi, &w2, &xi, CrossCheck::Full).map_err(|e| format!("{}: {e}", phi.name()))?;
    if !res.verified {
        return Err(format!("{} seed {seed}: recheck failed", phi.name()));
    }
    expect_eq(&format!("{} seed {seed}", phi.name()), &res.omega1, &w1)?;
    let diff = coboundary(phi, &res.omega1).unwrap().div(&w2).unwrap();
    match check_vanishing_criterion(phi, &diff) {
        Ok(true) => Ok(()),
        other => Err(format!("{} seed {seed}: vanishing criterion {other:?}", phi.name())),
    }
}
