//! Monomial-valued cochains, the coboundary, cup product, reversal and the
//! automorphism action.
//!
//! Values are stored sparsely: a generator absent from the map takes the
//! identity monomial, and identity values are never stored. Two cochains are
//! therefore equal exactly when they agree on every generator.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automorphism::Automorphism;
use crate::chains::{boundary, enumerate_chains, is_valid_chain, sign, Chain, ChainSum};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, VariableTable};
use crate::root_system::RootSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    system: String,
    degree: usize,
    vars: VariableTable,
    values: BTreeMap<Chain, Monomial>,
}

/// How the cup product combines the two factors' values.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CupConvention {
    /// Exponents multiplied coordinate by coordinate (the ring product on `Z^k`).
    #[default]
    Multiply,
    /// Exponents added (the group law of monomials).
    Add,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetryClass {
    Symmetric,
    Antisymmetric,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryReport {
    pub class: SymmetryClass,
    /// Set when the cochain is both symmetric and antisymmetric.
    pub both: bool,
    /// A generator where `ρ̂ω ≠ ω`, if any.
    pub asymmetry_witness: Option<Chain>,
}

/// `κ_n = C(n+1, 2) + 1`.
pub fn kappa(n: usize) -> usize {
    n * (n + 1) / 2 + 1
}

/// The sign `(-1)^{κ_n}` of the reversal in degree `n`.
pub fn reversal_sign(n: usize) -> i64 {
    sign(kappa(n))
}

impl Cochain {
    /// The identity cochain of degree `n`.
    pub fn identity(phi: &RootSystem, degree: usize, vars: VariableTable) -> Self {
        Cochain {
            system: phi.name(),
            degree,
            vars,
            values: BTreeMap::new(),
        }
    }

    /// Build a cochain by evaluating `f` on every generator of `T_n`.
    pub fn from_fn<F>(phi: &RootSystem, degree: usize, vars: VariableTable, f: F) -> Result<Self>
    where
        F: Fn(&Chain) -> Monomial + Sync,
    {
        let chains = enumerate_chains(phi, degree)?;
        let k = vars.len();
        let values = chains
            .par_iter()
            .filter_map(|c| {
                let m = f(c);
                debug_assert_eq!(m.num_vars(), k);
                (!m.is_one()).then(|| (c.clone(), m))
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        Ok(Cochain {
            system: phi.name(),
            degree,
            vars,
            values,
        })
    }

    pub fn system(&self) -> &str {
        &self.system
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn variables(&self) -> &VariableTable {
        &self.vars
    }

    /// Stored (non-identity) values in generator order.
    pub fn values(&self) -> impl Iterator<Item = (&Chain, &Monomial)> {
        self.values.iter()
    }

    pub fn is_identity(&self) -> bool {
        self.values.is_empty()
    }

    /// Value on a generator; the identity when unlisted.
    pub fn get(&self, c: &Chain) -> Monomial {
        self.values
            .get(c)
            .cloned()
            .unwrap_or_else(|| self.vars.one())
    }

    /// Set the value on a generator after validating it.
    pub fn set(&mut self, phi: &RootSystem, c: Chain, m: Monomial) -> Result<()> {
        self.check_system(phi)?;
        if c.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: c.degree(),
            });
        }
        if m.num_vars() != self.vars.len() {
            return Err(Error::Parse(format!(
                "monomial has {} exponents, expected {}",
                m.num_vars(),
                self.vars.len()
            )));
        }
        if !is_valid_chain(phi, c.entries()) {
            return Err(Error::InvalidChain(c.render(phi)));
        }
        self.put(c, m);
        Ok(())
    }

    fn put(&mut self, c: Chain, m: Monomial) {
        if m.is_one() {
            self.values.remove(&c);
        } else {
            self.values.insert(c, m);
        }
    }

    pub(crate) fn check_system(&self, phi: &RootSystem) -> Result<()> {
        if self.system != phi.name() {
            return Err(Error::SystemMismatch {
                left: self.system.clone(),
                right: phi.name(),
            });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Cochain) -> Result<()> {
        if self.system != other.system {
            return Err(Error::SystemMismatch {
                left: self.system.clone(),
                right: other.system.clone(),
            });
        }
        if self.vars != other.vars {
            return Err(Error::VariableMismatch {
                left: self.vars.names().to_vec(),
                right: other.vars.names().to_vec(),
            });
        }
        Ok(())
    }

    /// Linear extension to `C_n`: `Σ k·c ↦ Π ω(c)^k`.
    pub fn evaluate(&self, s: &ChainSum) -> Result<Monomial> {
        if !s.is_zero() && s.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: s.degree(),
            });
        }
        let mut acc = self.vars.one();
        for (c, k) in s.terms() {
            if let Some(m) = self.values.get(c) {
                acc = acc.mul(&m.pow(k));
            }
        }
        Ok(acc)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut out = self.clone();
        for (c, m) in &other.values {
            let v = out.get(c).mul(m);
            out.put(c.clone(), v);
        }
        Ok(out)
    }

    /// Pointwise inverse.
    pub fn inv(&self) -> Cochain {
        self.pow(-1)
    }

    /// Pointwise power.
    pub fn pow(&self, n: i64) -> Cochain {
        let mut out = Cochain {
            values: BTreeMap::new(),
            ..self.clone()
        };
        if n != 0 {
            for (c, m) in &self.values {
                out.values.insert(c.clone(), m.pow(n));
            }
        }
        out
    }

    pub fn div(&self, other: &Cochain) -> Result<Cochain> {
        self.mul(&other.inv())
    }

    /// Append fresh variables (value exponents padded with zeros).
    pub fn with_variables(&self, vars: VariableTable) -> Result<Cochain> {
        if vars.len() < self.vars.len() || vars.names()[..self.vars.len()] != *self.vars.names() {
            return Err(Error::VariableMismatch {
                left: self.vars.names().to_vec(),
                right: vars.names().to_vec(),
            });
        }
        let extra = vars.len() - self.vars.len();
        Ok(Cochain {
            system: self.system.clone(),
            degree: self.degree,
            values: self
                .values
                .iter()
                .map(|(c, m)| (c.clone(), m.extended(extra)))
                .collect(),
            vars,
        })
    }

    /// First generator of `T_n` on which the two cochains differ.
    pub fn first_difference(&self, other: &Cochain) -> Option<Chain> {
        let mut keys: Vec<&Chain> = self.values.keys().chain(other.values.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find(|c| self.get(c) != other.get(c)).cloned()
    }
}

/// `dω(c) = ω(∂c)` on every generator of `T_{n+1}`.
pub fn coboundary(phi: &RootSystem, w: &Cochain) -> Result<Cochain> {
    w.check_system(phi)?;
    Cochain::from_fn(phi, w.degree + 1, w.vars.clone(), |c| {
        w.evaluate(&boundary(phi, c))
            .expect("boundary has the cochain's degree")
    })
}

/// `(ω^p ∪ ω^q)(r_1|...|r_{p+q}) = ω^p(r_1|...|r_p) ⊙ ω^q(r_{p+1}|...|r_{p+q})`.
pub fn cup(phi: &RootSystem, a: &Cochain, b: &Cochain, conv: CupConvention) -> Result<Cochain> {
    a.check_system(phi)?;
    a.check_compatible(b)?;
    let p = a.degree;
    Cochain::from_fn(phi, p + b.degree, a.vars.clone(), |c| {
        let (l, r) = c.split(p);
        let (x, y) = (a.get(&l), b.get(&r));
        match conv {
            CupConvention::Multiply => x.exponent_product(&y),
            CupConvention::Add => x.mul(&y),
        }
    })
}

/// `ρ̂ⁿω(c) = ω(reversed c)^{(-1)^{κ_n}}`.
pub fn reversal(w: &Cochain) -> Cochain {
    let s = reversal_sign(w.degree);
    Cochain {
        system: w.system.clone(),
        degree: w.degree,
        vars: w.vars.clone(),
        values: w
            .values
            .iter()
            .map(|(c, m)| (c.reversed(), m.pow(s)))
            .collect(),
    }
}

pub fn symmetry_class(w: &Cochain) -> SymmetryReport {
    let rev = reversal(w);
    let sym = rev == *w;
    let anti = rev == w.inv();
    let class = match (sym, anti) {
        (true, _) => SymmetryClass::Symmetric,
        (false, true) => SymmetryClass::Antisymmetric,
        _ => SymmetryClass::Neither,
    };
    SymmetryReport {
        class,
        both: sym && anti,
        asymmetry_witness: rev.first_difference(w),
    }
}

/// `(σω)(σc) = ω(c)`.
pub fn act(sigma: &Automorphism, w: &Cochain) -> Cochain {
    Cochain {
        system: w.system.clone(),
        degree: w.degree,
        vars: w.vars.clone(),
        values: w
            .values
            .iter()
            .map(|(c, m)| (sigma.apply_chain(c), m.clone()))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::{generate_aut_group, weyl_generators, DEFAULT_GROUP_CAP};
    use crate::root_system::{LengthClass, RootId};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sys(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    fn vi() -> VariableTable {
        VariableTable::new(["I"]).unwrap()
    }

    fn a2r(a2: &RootSystem, i: usize) -> RootId {
        const C: [[i32; 2]; 6] = [[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]];
        a2.find(&C[i % 6]).unwrap()
    }

    fn random(phi: &RootSystem, n: usize, seed: u64) -> Cochain {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chains = enumerate_chains(phi, n).unwrap();
        let vals: BTreeMap<Chain, Monomial> = chains
            .iter()
            .map(|c| (c.clone(), Monomial::from_exponents([rng.gen_range(-3..=3), rng.gen_range(-3..=3)])))
            .collect();
        let vars = VariableTable::new(["I", "J"]).unwrap();
        Cochain::from_fn(phi, n, vars, |c| vals[c].clone()).unwrap()
    }

    /// The antisymmetric A2 cochain: I on [r_i|r_{i+2}], I^-1 on [r_i|r_{i+4}].
    fn a2_antisym(a2: &RootSystem) -> Cochain {
        let mut w = Cochain::identity(a2, 2, vi());
        for i in 0..6 {
            let c = Chain::from_ids([a2r(a2, i), a2r(a2, i + 2)]);
            w.set(a2, c, Monomial::from_exponents([1])).unwrap();
            let c = Chain::from_ids([a2r(a2, i), a2r(a2, i + 4)]);
            w.set(a2, c, Monomial::from_exponents([-1])).unwrap();
        }
        w
    }

    #[test]
    fn kappa_signs() {
        assert_eq!((1..=4).map(kappa).collect::<Vec<_>>(), vec![2, 4, 7, 11]);
        assert_eq!(reversal_sign(2), 1);
        assert_eq!(reversal_sign(3), -1);
    }

    #[test]
    fn evaluate_is_linear() {
        let a2 = sys("A2");
        let w = a2_antisym(&a2);
        assert!(w.evaluate(&ChainSum::zero(2)).unwrap().is_one());
        let c = Chain::from_ids([a2r(&a2, 0), a2r(&a2, 2)]);
        let twice = ChainSum::from_chain(c.clone()).scale(2);
        assert_eq!(w.evaluate(&twice).unwrap(), w.get(&c).pow(2));
        assert!(w.evaluate(&ChainSum::from_chain(Chain::from_ids([0]))).is_err());
    }

    #[test]
    fn coboundary_of_one_forms() {
        let a2 = sys("A2");
        let w = random(&a2, 1, 7);
        let dw = coboundary(&a2, &w).unwrap();
        for c in enumerate_chains(&a2, 2).unwrap() {
            let (x, y) = (c.entries()[0], c.entries()[1]);
            let mut expect = w.get(&Chain::from_ids([x])).mul(&w.get(&Chain::from_ids([y])));
            if let crate::RootSum::Root(s) = a2.sum(x, y) {
                expect = expect.div(&w.get(&Chain::from_ids([s])));
            }
            assert_eq!(dw.get(c), expect);
        }
    }

    #[test]
    fn b2_short_root_form() {
        let b2 = sys("B2");
        let w = Cochain::from_fn(&b2, 1, vi(), |c| {
            let e = (b2.length_class(c.entries()[0]) == LengthClass::Short) as i64;
            Monomial::from_exponents([e])
        })
        .unwrap();
        let dw = coboundary(&b2, &w).unwrap();
        for c in enumerate_chains(&b2, 2).unwrap() {
            let e = dw.get(c).exponents()[0];
            assert!(e == 0 || e == 2, "{c}: {e}");
        }
        assert!(!dw.is_identity());
    }

    #[test]
    fn d_squared_is_identity() {
        for name in ["A1", "A2", "B2", "G2", "A3", "B3", "C3"] {
            let phi = sys(name);
            for n in 1..=2 {
                let w = random(&phi, n, 11 + n as u64);
                let dd = coboundary(&phi, &coboundary(&phi, &w).unwrap()).unwrap();
                assert!(dd.is_identity(), "{name} degree {n}");
            }
        }
    }

    #[test]
    fn cup_small_example() {
        let a2 = sys("A2");
        let mut a = Cochain::identity(&a2, 1, vi());
        a.set(&a2, Chain::from_ids([a2r(&a2, 1)]), Monomial::from_exponents([1]))
            .unwrap();
        let prod = cup(&a2, &a, &a, CupConvention::Multiply).unwrap();
        let sum = cup(&a2, &a, &a, CupConvention::Add).unwrap();
        // alpha(r4) = 1, alpha(r1) = I: the ring product gives 1, the group law I.
        let d = Chain::from_ids([a2r(&a2, 4), a2r(&a2, 1)]);
        assert_eq!(prod.get(&d).render(&vi()), "1");
        assert_eq!(sum.get(&d).render(&vi()), "I");
        assert!(prod.is_identity());
    }

    #[test]
    fn leibniz_rule() {
        for name in ["A2", "B2"] {
            let phi = sys(name);
            for (p, q) in [(1, 1), (1, 2), (2, 1)] {
                let a = random(&phi, p, 3);
                let b = random(&phi, q, 5);
                let lhs = coboundary(&phi, &cup(&phi, &a, &b, CupConvention::Multiply).unwrap()).unwrap();
                let t1 = cup(&phi, &coboundary(&phi, &a).unwrap(), &b, CupConvention::Multiply).unwrap();
                let t2 = cup(&phi, &a, &coboundary(&phi, &b).unwrap(), CupConvention::Multiply).unwrap();
                let rhs = t1.mul(&t2.pow(sign(p))).unwrap();
                assert_eq!(lhs.first_difference(&rhs), None, "{name} ({p},{q})");
            }
        }
    }

    #[test]
    fn reversal_commutes_with_d() {
        for name in ["A2", "B2", "G2"] {
            let phi = sys(name);
            for n in 1..=2 {
                let w = random(&phi, n, 21);
                let lhs = reversal(&coboundary(&phi, &w).unwrap());
                let rhs = coboundary(&phi, &reversal(&w)).unwrap();
                assert_eq!(lhs, rhs, "{name} {n}");
            }
        }
    }

    #[test]
    fn cup_reversal_law() {
        for name in ["A2", "B2"] {
            let phi = sys(name);
            for (p, q) in [(1, 1), (1, 2)] {
                let a = random(&phi, p, 8);
                let b = random(&phi, q, 9);
                let lhs = reversal(&cup(&phi, &a, &b, CupConvention::Multiply).unwrap());
                let rhs = cup(&phi, &reversal(&b), &reversal(&a), CupConvention::Multiply)
                    .unwrap()
                    .pow(sign(p * q + 1));
                assert_eq!(lhs, rhs, "{name} ({p},{q})");
            }
        }
    }

    #[test]
    fn symmetry_classes() {
        let a2 = sys("A2");
        let w1 = random(&a2, 1, 1);
        assert_eq!(symmetry_class(&w1).class, SymmetryClass::Symmetric);
        let anti = a2_antisym(&a2);
        let rep = symmetry_class(&anti);
        assert_eq!(rep.class, SymmetryClass::Antisymmetric);
        assert!(!rep.both);
        assert!(rep.asymmetry_witness.is_some());
        let one = Cochain::identity(&a2, 2, vi());
        let rep = symmetry_class(&one);
        assert_eq!(rep.class, SymmetryClass::Symmetric);
        assert!(rep.both);
        let dw = coboundary(&a2, &w1).unwrap();
        assert_eq!(symmetry_class(&dw).class, SymmetryClass::Symmetric);
        let danti = coboundary(&a2, &random(&a2, 2, 4)).unwrap();
        assert_eq!(symmetry_class(&danti).class, SymmetryClass::Neither);
    }

    #[test]
    fn d_preserves_antisymmetry() {
        let b2 = sys("B2");
        let w = random(&b2, 2, 17);
        let anti = w.div(&reversal(&w)).unwrap();
        assert_eq!(symmetry_class(&anti).class, SymmetryClass::Antisymmetric);
        let d = coboundary(&b2, &anti).unwrap();
        assert_eq!(reversal(&d), d.inv());
        let symm = w.mul(&reversal(&w)).unwrap();
        let d = coboundary(&b2, &symm).unwrap();
        assert_eq!(reversal(&d), d);
    }

    #[test]
    fn automorphism_action() {
        let a2 = sys("A2");
        let w = a2_antisym(&a2);
        let id = Automorphism::identity(&a2);
        assert_eq!(act(&id, &w), w);
        let images = vec![a2.coeffs(a2r(&a2, 1)).to_vec(), a2.coeffs(a2r(&a2, 3)).to_vec()];
        let rot = Automorphism::from_simple_images(&a2, &images, false).unwrap();
        for i in 0..6 {
            assert_eq!(rot.apply(a2r(&a2, i)), a2r(&a2, i + 1));
        }
        assert_eq!(act(&rot, &w), w);

        for name in ["B2", "A3", "B3"] {
            let phi = sys(name);
            let w = random(&phi, 1, 2);
            let gens = generate_aut_group(&phi, DEFAULT_GROUP_CAP).unwrap();
            for g in weyl_generators(&phi).iter().chain(gens.iter().take(8)) {
                let lhs = act(g, &coboundary(&phi, &w).unwrap());
                let rhs = coboundary(&phi, &act(g, &w)).unwrap();
                assert_eq!(lhs, rhs, "{name}");
            }
        }
    }

    #[test]
    fn mismatches_rejected() {
        let a2 = sys("A2");
        let b2 = sys("B2");
        let w = Cochain::identity(&a2, 1, vi());
        assert!(matches!(coboundary(&b2, &w), Err(Error::SystemMismatch { .. })));
        let v = Cochain::identity(&a2, 1, VariableTable::new(["J"]).unwrap());
        assert!(matches!(w.mul(&v), Err(Error::VariableMismatch { .. })));
        let mut w2 = w.clone();
        assert!(w2
            .set(&a2, Chain::from_ids([0, 2]), Monomial::from_exponents([1]))
            .is_err());
    }
}
