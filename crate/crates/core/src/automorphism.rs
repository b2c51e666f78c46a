//! Automorphisms of a root system as permutations of its roots.
//!
//! `Aut(Phi)` is the Weyl group extended by the Dynkin-diagram symmetries.
//! Groups are enumerated explicitly, so enumeration is refused above a cap.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::chains::Chain;
use crate::error::{Error, Result};
use crate::root_system::{RootId, RootSystem, Series};

pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    perm: Vec<RootId>,
    is_weyl: bool,
}

impl Automorphism {
    pub fn identity(phi: &RootSystem) -> Self {
        Automorphism {
            perm: phi.root_ids().collect(),
            is_weyl: true,
        }
    }

    /// Build from the images of the simple roots (as coordinate vectors).
    ///
    /// Fails if the induced linear map does not permute the roots.
    pub fn from_simple_images(phi: &RootSystem, images: &[Vec<i32>], is_weyl: bool) -> Result<Self> {
        let l = phi.rank();
        if images.len() != l {
            return Err(Error::PreconditionUnmet(format!(
                "expected {l} simple-root images, got {}",
                images.len()
            )));
        }
        let mut perm = Vec::with_capacity(phi.num_roots());
        let mut seen = HashSet::new();
        for r in phi.root_ids() {
            let mut v = vec![0i32; l];
            for (i, &m) in phi.coeffs(r).iter().enumerate() {
                for k in 0..l {
                    v[k] += m * images[i][k];
                }
            }
            let img = phi.find(&v).ok_or_else(|| Error::UnknownRoot(v.clone()))?;
            if !seen.insert(img) {
                return Err(Error::PreconditionUnmet("map is not injective on roots".into()));
            }
            perm.push(img);
        }
        Ok(Automorphism { perm, is_weyl })
    }

    pub fn is_weyl(&self) -> bool {
        self.is_weyl
    }

    pub fn permutation(&self) -> &[RootId] {
        &self.perm
    }

    #[inline]
    pub fn apply(&self, r: RootId) -> RootId {
        self.perm[r as usize]
    }

    pub fn apply_chain(&self, c: &Chain) -> Chain {
        Chain::from_ids(c.entries().iter().map(|&r| self.apply(r)))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            perm: other.perm.iter().map(|&r| self.perm[r as usize]).collect(),
            is_weyl: self.is_weyl && other.is_weyl,
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut perm = vec![0; self.perm.len()];
        for (i, &j) in self.perm.iter().enumerate() {
            perm[j as usize] = i as RootId;
        }
        Automorphism {
            perm,
            is_weyl: self.is_weyl,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Check `σ(a ⊞ b) = σ(a) ⊞ σ(b)` on every defined sum.
    pub fn respects_sums(&self, phi: &RootSystem) -> bool {
        phi.root_ids().all(|a| {
            phi.root_ids().all(|b| {
                use crate::root_system::RootSum::*;
                match (phi.sum(a, b), phi.sum(self.apply(a), self.apply(b))) {
                    (Root(s), Root(t)) => self.apply(s) == t,
                    (Zero, Zero) | (Undefined, Undefined) => true,
                    _ => false,
                }
            })
        })
    }
}

/// The simple reflections `s_i(beta) = beta - <beta, alpha_i^vee> alpha_i`.
pub fn weyl_generators(phi: &RootSystem) -> Vec<Automorphism> {
    let l = phi.rank();
    (0..l)
        .map(|i| {
            let ai = phi.simple(i);
            let perm = phi
                .root_ids()
                .map(|r| {
                    let k = phi.pairing(r, ai) as i32;
                    let mut v = phi.coeffs(r).to_vec();
                    v[i] -= k;
                    phi.find(&v).expect("reflection of a root is a root")
                })
                .collect();
            Automorphism {
                perm,
                is_weyl: true,
            }
        })
        .collect()
}

/// Non-identity permutations of the simple roots preserving the Cartan matrix.
pub fn diagram_automorphisms(phi: &RootSystem) -> Vec<Automorphism> {
    let a = phi.cartan_matrix();
    let l = phi.rank();
    let mut out = Vec::new();
    let mut assign = vec![usize::MAX; l];
    let mut used = vec![false; l];
    search_diagram(a, 0, &mut assign, &mut used, &mut out);
    out.into_iter()
        .filter(|p| p.iter().enumerate().any(|(i, &j)| i != j))
        .map(|p| {
            let images: Vec<Vec<i32>> = (0..l)
                .map(|i| {
                    let mut v = vec![0; l];
                    v[p[i]] = 1;
                    v
                })
                .collect();
            Automorphism::from_simple_images(phi, &images, false)
                .expect("diagram symmetry permutes roots")
        })
        .collect()
}

fn search_diagram(
    a: &[Vec<i32>],
    i: usize,
    assign: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    let l = a.len();
    if i == l {
        out.push(assign.clone());
        return;
    }
    for j in 0..l {
        if used[j] {
            continue;
        }
        let ok = (0..i).all(|k| a[i][k] == a[j][assign[k]] && a[k][i] == a[assign[k]][j]);
        if ok {
            assign[i] = j;
            used[j] = true;
            search_diagram(a, i + 1, assign, used, out);
            used[j] = false;
        }
    }
    assign[i] = usize::MAX;
}

/// Order of the Weyl group from the classical formulas.
pub fn weyl_group_order(phi: &RootSystem) -> u128 {
    let ty = phi.cartan_type();
    let l = ty.rank as u128;
    let fact = |n: u128| (1..=n).product::<u128>();
    match ty.series {
        Series::A => fact(l + 1),
        Series::B | Series::C => (1u128 << l) * fact(l),
        Series::D => (1u128 << (l - 1)) * fact(l),
        Series::E => match ty.rank {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        Series::F => 1152,
        Series::G => 12,
    }
}

/// Order of the diagram-symmetry group (including the identity).
pub fn diagram_group_order(phi: &RootSystem) -> u128 {
    diagram_automorphisms(phi).len() as u128 + 1
}

/// Enumerate the Weyl group, refusing above `cap` elements.
pub fn generate_weyl_group(phi: &RootSystem, cap: usize) -> Result<Vec<Automorphism>> {
    let order = weyl_group_order(phi);
    if order > cap as u128 {
        return Err(Error::GroupTooLarge { order, cap });
    }
    Ok(close(phi, &weyl_generators(phi)))
}

/// Enumerate `Aut(Phi)`, refusing above `cap` elements.
pub fn generate_aut_group(phi: &RootSystem, cap: usize) -> Result<Vec<Automorphism>> {
    let order = weyl_group_order(phi) * diagram_group_order(phi);
    if order > cap as u128 {
        return Err(Error::GroupTooLarge { order, cap });
    }
    let weyl: HashSet<Vec<RootId>> = close(phi, &weyl_generators(phi))
        .into_iter()
        .map(|g| g.perm)
        .collect();
    let mut gens = weyl_generators(phi);
    gens.extend(diagram_automorphisms(phi));
    let mut all = close(phi, &gens);
    for g in &mut all {
        g.is_weyl = weyl.contains(&g.perm);
    }
    Ok(all)
}

/// Breadth-first closure under right multiplication by the generators.
fn close(phi: &RootSystem, gens: &[Automorphism]) -> Vec<Automorphism> {
    let id = Automorphism::identity(phi);
    let mut seen: HashMap<Vec<RootId>, usize> = HashMap::new();
    let mut out = vec![id.clone()];
    seen.insert(id.perm.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let h = out[i].compose(g);
            if !seen.contains_key(&h.perm) {
                seen.insert(h.perm.clone(), out.len());
                queue.push_back(out.len());
                out.push(h);
            }
        }
    }
    out
}

/// Partition of the roots into orbits of the given group elements.
pub fn root_orbits(phi: &RootSystem, group: &[Automorphism]) -> Vec<Vec<RootId>> {
    let mut seen = vec![false; phi.num_roots()];
    let mut orbits = Vec::new();
    for r in phi.root_ids() {
        if seen[r as usize] {
            continue;
        }
        let mut orbit: Vec<RootId> = group.iter().map(|g| g.apply(r)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &s in &orbit {
            seen[s as usize] = true;
        }
        orbits.push(orbit);
    }
    orbits
}
