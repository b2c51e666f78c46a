//! Chain generators `[r_1|...|r_n]` and the boundary operator.
//!
//! A tuple of nonzero roots is a generator of `T_n` when every merge of two
//! neighbouring entries lands in `Phi_0` and the merged tuple is again a
//! chain (tuples containing `0` are the zero chain and always qualify). This
//! is equivalent to requiring every contiguous block sum to lie in `Phi_0`,
//! which is the test used for enumeration; [`is_valid_chain_recursive`] keeps
//! the literal definition around for cross-checking.

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::root_system::{Phi0, RootId, RootSum, RootSystem, CACHED_DEGREES};

pub const DEFAULT_DEGREE_CAP: usize = 4;
pub const DEGREE_CAP_ENV: &str = "ROOTCOH_DEGREE_CAP";

/// The chain-degree cap: `ROOTCOH_DEGREE_CAP` if set, otherwise 4.
pub fn degree_cap() -> usize {
    std::env::var(DEGREE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&c: &usize| c >= 1)
        .unwrap_or(DEFAULT_DEGREE_CAP)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain(SmallVec<[RootId; 4]>);

impl Chain {
    pub fn from_ids<I: IntoIterator<Item = RootId>>(ids: I) -> Self {
        Chain(ids.into_iter().collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[RootId] {
        &self.0
    }

    pub fn reversed(&self) -> Chain {
        Chain(self.0.iter().rev().copied().collect())
    }

    pub fn split(&self, p: usize) -> (Chain, Chain) {
        (
            Chain::from_ids(self.0[..p].iter().copied()),
            Chain::from_ids(self.0[p..].iter().copied()),
        )
    }

    /// Coordinates of each entry, as used in the JSON formats.
    pub fn coords(&self, phi: &RootSystem) -> Vec<Vec<i32>> {
        self.0.iter().map(|&r| phi.coeffs(r).to_vec()).collect()
    }

    pub fn from_coords(phi: &RootSystem, coords: &[Vec<i32>]) -> Result<Chain> {
        let mut ids = SmallVec::new();
        for c in coords {
            match phi.find_phi0(c)? {
                Phi0::Root(r) => ids.push(r),
                Phi0::Zero => {
                    return Err(Error::InvalidChain(
                        "zero entries denote the zero chain, not a generator".into(),
                    ))
                }
            }
        }
        if ids.is_empty() {
            return Err(Error::InvalidChain("empty chain".into()));
        }
        let chain = Chain(ids);
        if !is_valid_chain(phi, chain.entries()) {
            return Err(Error::InvalidChain(format!(
                "{} is not in T_{}",
                chain.render(phi),
                chain.degree()
            )));
        }
        Ok(chain)
    }

    pub fn render(&self, phi: &RootSystem) -> String {
        let parts: Vec<String> = self.0.iter().map(|&r| phi.label(r)).collect();
        format!("[{}]", parts.join("|"))
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| format!("r{r}")).collect();
        write!(f, "[{}]", parts.join("|"))
    }
}

/// Block-sum test: every contiguous run of entries sums into `Phi_0`.
pub fn is_valid_chain(phi: &RootSystem, entries: &[RootId]) -> bool {
    if entries.is_empty() {
        return false;
    }
    for i in 0..entries.len() {
        let mut acc = Phi0::Root(entries[i]);
        for &r in &entries[i + 1..] {
            match phi.root_sum(acc, Phi0::Root(r)).as_phi0() {
                Some(s) => acc = s,
                None => return false,
            }
        }
    }
    true
}

/// The inductive membership test, applied literally.
pub fn is_valid_chain_recursive(phi: &RootSystem, entries: &[Phi0]) -> bool {
    if entries.is_empty() {
        return false;
    }
    if entries.len() == 1 || entries.contains(&Phi0::Zero) {
        return true;
    }
    for i in 0..entries.len() - 1 {
        let Some(s) = phi.root_sum(entries[i], entries[i + 1]).as_phi0() else {
            return false;
        };
        let mut merged: Vec<Phi0> = Vec::with_capacity(entries.len() - 1);
        merged.extend_from_slice(&entries[..i]);
        merged.push(s);
        merged.extend_from_slice(&entries[i + 2..]);
        if !is_valid_chain_recursive(phi, &merged) {
            return false;
        }
    }
    true
}

/// All generators of `T_n`, in lexicographic order of root ids.
///
/// Results for small degrees are cached on the root system.
pub fn enumerate_chains(phi: &RootSystem, n: usize) -> Result<&[Chain]> {
    enumerate_chains_with_cap(phi, n, degree_cap())
}

pub fn enumerate_chains_with_cap(phi: &RootSystem, n: usize, cap: usize) -> Result<&[Chain]> {
    if n == 0 || n > cap || n > CACHED_DEGREES {
        return Err(Error::DegreeCapExceeded {
            degree: n,
            cap: cap.min(CACHED_DEGREES),
        });
    }
    Ok(phi.chain_cache[n].get_or_init(|| build_chains(phi, n)))
}

fn build_chains(phi: &RootSystem, n: usize) -> Vec<Chain> {
    if n == 1 {
        return phi.root_ids().map(|r| Chain::from_ids([r])).collect();
    }
    let prev = phi.chain_cache[n - 1].get_or_init(|| build_chains(phi, n - 1));
    let mut out = Vec::new();
    let mut suffix: Vec<Phi0> = Vec::with_capacity(n);
    for c in prev {
        // suffix[i] = r_i + ... + r_{n-2}, all in Phi_0 since c is valid.
        suffix.clear();
        let e = c.entries();
        let mut acc = Phi0::Zero;
        for &r in e.iter().rev() {
            acc = phi
                .root_sum(acc, Phi0::Root(r))
                .as_phi0()
                .expect("prefix chain is valid");
            suffix.push(acc);
        }
        'next: for r in phi.root_ids() {
            for &s in &suffix {
                if phi.root_sum(s, Phi0::Root(r)) == RootSum::Undefined {
                    continue 'next;
                }
            }
            let mut ids: SmallVec<[RootId; 4]> = e.iter().copied().collect();
            ids.push(r);
            out.push(Chain(ids));
        }
    }
    // Prefix order times root order is already lexicographic.
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    out
}

/// An element of `C_n`: an integer combination of generators of one degree.
///
/// Zero chains are never stored; a term that would contain `0` is dropped.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ChainSum {
    degree: usize,
    terms: BTreeMap<Chain, i64>,
}

impl ChainSum {
    pub fn zero(degree: usize) -> Self {
        ChainSum {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_chain(c: Chain) -> Self {
        let mut s = Self::zero(c.degree());
        s.add_term(c, 1);
        s
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Chain, i64)> {
        self.terms.iter().map(|(c, &k)| (c, k))
    }

    pub fn coefficient(&self, c: &Chain) -> i64 {
        self.terms.get(c).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, c: Chain, k: i64) {
        debug_assert_eq!(c.degree(), self.degree);
        if k == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(c) {
            Entry::Vacant(v) => {
                v.insert(k);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += k;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    /// Add a term given by `Phi_0` entries; anything containing `0` is dropped.
    fn add_phi0_term(&mut self, entries: &[Phi0], k: i64) {
        let mut ids = SmallVec::with_capacity(entries.len());
        for e in entries {
            match e {
                Phi0::Zero => return,
                Phi0::Root(r) => ids.push(*r),
            }
        }
        self.add_term(Chain(ids), k);
    }

    pub fn add(&self, other: &ChainSum) -> ChainSum {
        let mut out = self.clone();
        for (c, k) in other.terms() {
            out.add_term(c.clone(), k);
        }
        out
    }

    pub fn scale(&self, k: i64) -> ChainSum {
        let mut out = ChainSum::zero(self.degree);
        if k != 0 {
            for (c, v) in self.terms() {
                out.terms.insert(c.clone(), v * k);
            }
        }
        out
    }
}

/// `∂[r_0|...|r_n] = [r_1|...|r_n] + Σ_j (-1)^j [...|r_{j-1}+r_j|...] - (-1)^n [r_0|...|r_{n-1}]`.
///
/// The boundary of a degree-1 chain is zero.
pub fn boundary(phi: &RootSystem, c: &Chain) -> ChainSum {
    let e = c.entries();
    let m = e.len();
    let mut out = ChainSum::zero(m.saturating_sub(1));
    if m < 2 {
        return out;
    }
    let n = m - 1;
    let roots: Vec<Phi0> = e.iter().map(|&r| Phi0::Root(r)).collect();
    out.add_phi0_term(&roots[1..], 1);
    let mut merged: Vec<Phi0> = Vec::with_capacity(n);
    for j in 1..=n {
        let s = phi
            .root_sum(roots[j - 1], roots[j])
            .as_phi0()
            .expect("boundary of an invalid chain");
        merged.clear();
        merged.extend_from_slice(&roots[..j - 1]);
        merged.push(s);
        merged.extend_from_slice(&roots[j + 1..]);
        out.add_phi0_term(&merged, sign(j));
    }
    out.add_phi0_term(&roots[..n], -sign(n));
    out
}

/// Linear extension of [`boundary`].
pub fn boundary_sum(phi: &RootSystem, s: &ChainSum) -> ChainSum {
    let mut out = ChainSum::zero(s.degree().saturating_sub(1));
    for (c, k) in s.terms() {
        for (d, v) in boundary(phi, c).terms() {
            out.add_term(d.clone(), k * v);
        }
    }
    out
}

#[inline]
pub(crate) fn sign(n: usize) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::RootSystem;

    fn sys(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    /// The A2 roots labelled r_0..r_5 counter-clockwise from alpha_1.
    fn r(a2: &RootSystem, i: usize) -> RootId {
        const C: [[i32; 2]; 6] = [[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]];
        a2.find(&C[i % 6]).unwrap()
    }

    #[test]
    fn validity_examples() {
        let a2 = sys("A2");
        assert!(is_valid_chain(&a2, &[r(&a2, 0), r(&a2, 2)]));
        assert!(!is_valid_chain(&a2, &[r(&a2, 0), r(&a2, 1)]));
        let b3 = sys("B3");
        for a in b3.root_ids() {
            assert!(is_valid_chain(&b3, &[a, b3.neg(a), a]));
        }
    }

    #[test]
    fn a1_chains() {
        let a1 = sys("A1");
        let t2 = enumerate_chains(&a1, 2).unwrap();
        assert_eq!(t2, &[Chain::from_ids([0, 1]), Chain::from_ids([1, 0])]);
    }

    #[test]
    fn degree_cap_enforced() {
        let a2 = sys("A2");
        assert!(matches!(
            enumerate_chains_with_cap(&a2, 5, 4),
            Err(Error::DegreeCapExceeded { degree: 5, cap: 4 })
        ));
        assert!(enumerate_chains_with_cap(&a2, 0, 4).is_err());
        assert_eq!(enumerate_chains_with_cap(&a2, 5, 5).unwrap().len() > 0, true);
    }

    #[test]
    fn boundary_of_pairs() {
        let a2 = sys("A2");
        let c = Chain::from_ids([r(&a2, 0), r(&a2, 2)]);
        let b = boundary(&a2, &c);
        assert_eq!(b.coefficient(&Chain::from_ids([r(&a2, 2)])), 1);
        assert_eq!(b.coefficient(&Chain::from_ids([r(&a2, 1)])), -1);
        assert_eq!(b.coefficient(&Chain::from_ids([r(&a2, 0)])), 1);
        assert_eq!(b.terms().count(), 3);

        // The middle term of [a|-a] is the zero chain and drops out.
        let c = Chain::from_ids([r(&a2, 0), r(&a2, 3)]);
        let b = boundary(&a2, &c);
        assert_eq!(b.terms().count(), 2);
        assert_eq!(b.coefficient(&Chain::from_ids([r(&a2, 0)])), 1);
        assert_eq!(b.coefficient(&Chain::from_ids([r(&a2, 3)])), 1);

        assert!(boundary(&a2, &Chain::from_ids([r(&a2, 0)])).is_zero());
    }

    #[test]
    fn boundary_is_linear() {
        let a2 = sys("A2");
        assert!(boundary_sum(&a2, &ChainSum::zero(2)).is_zero());
        let c = Chain::from_ids([r(&a2, 0), r(&a2, 2)]);
        let two_c = ChainSum::from_chain(c.clone()).scale(2);
        assert_eq!(boundary_sum(&a2, &two_c), boundary(&a2, &c).scale(2));
    }

    #[test]
    fn chain_sum_cancellation() {
        let mut s = ChainSum::zero(1);
        s.add_term(Chain::from_ids([0]), 2);
        s.add_term(Chain::from_ids([0]), -2);
        assert!(s.is_zero());
    }

    #[test]
    fn coords_round_trip_and_rejection() {
        let b2 = sys("B2");
        let c = Chain::from_coords(&b2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(c.coords(&b2), vec![vec![1, 0], vec![0, 1]]);
        assert!(Chain::from_coords(&b2, &[vec![1, 0], vec![1, 0]]).is_err());
        assert!(Chain::from_coords(&b2, &[vec![0, 0]]).is_err());
        assert!(Chain::from_coords(&b2, &[vec![2, 0]]).is_err());
    }
}
