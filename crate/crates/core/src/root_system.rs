//! Reduced root systems built from their Cartan matrices.
//!
//! Roots are identified by their integer coordinates over the simple roots
//! (Bourbaki numbering). Positive roots come first, ordered by height and then
//! lexicographically (so that `alpha_1` precedes `alpha_2`); the negative roots
//! follow in the same order, i.e. root `npos + i` is `-(root i)`.
//!
//! Inner products are normalized so that short roots have squared length 2;
//! with this normalization every inner product is an integer.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::chains::Chain;
use crate::error::{Error, Result};

/// Index of a root inside [`RootSystem::roots`].
pub type RootId = u16;

/// Degrees up to this bound have their chain generators cached on the system.
pub(crate) const CACHED_DEGREES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Series> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }

    pub fn supports_rank(self, rank: usize) -> bool {
        match self {
            Series::A => rank >= 1,
            Series::B => rank >= 2,
            Series::C => rank >= 3,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        }
    }
}

/// A root system identifier such as `B2` or `E8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub series: Series,
    pub rank: usize,
}

impl CartanType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        if !series.supports_rank(rank) {
            return Err(Error::InvalidType {
                series: series.letter(),
                rank,
            });
        }
        Ok(CartanType { series, rank })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::Parse("empty root system name".into()))?;
        let series = Series::from_letter(letter)
            .ok_or_else(|| Error::Parse(format!("unknown series in {s:?}")))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        CartanType::new(series, rank)
    }
}

/// Cartan matrix with entries `A[i][j] = <alpha_i, alpha_j^vee>`.
pub fn cartan_matrix(ty: CartanType) -> Vec<Vec<i32>> {
    let l = ty.rank;
    let mut a = vec![vec![0i32; l]; l];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match ty.series {
        Series::A | Series::B | Series::C => {
            for i in 1..l {
                link(i - 1, i);
            }
        }
        Series::D => {
            for i in 1..l - 1 {
                link(i - 1, i);
            }
            link(l - 3, l - 1);
        }
        Series::E => {
            link(0, 2);
            link(2, 3);
            link(1, 3);
            for i in 4..l {
                link(i - 1, i);
            }
        }
        Series::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        Series::G => link(0, 1),
    }
    match ty.series {
        // alpha_l short
        Series::B => a[l - 2][l - 1] = -2,
        // alpha_l long
        Series::C => a[l - 1][l - 2] = -2,
        // alpha_1, alpha_2 long; alpha_3, alpha_4 short
        Series::F => a[1][2] = -2,
        // alpha_1 short, alpha_2 long
        Series::G => a[1][0] = -3,
        _ => {}
    }
    a
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthClass {
    Short,
    Long,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub coeffs: Vec<i32>,
    pub height: i32,
    /// In simply-laced systems every root is classified as long.
    pub length: LengthClass,
}

/// An element of `Phi_0 = Phi ∪ {0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phi0 {
    Zero,
    Root(RootId),
}

/// Result of the partial addition on `Phi_0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootSum {
    Root(RootId),
    Zero,
    Undefined,
}

impl RootSum {
    pub fn as_phi0(self) -> Option<Phi0> {
        match self {
            RootSum::Root(r) => Some(Phi0::Root(r)),
            RootSum::Zero => Some(Phi0::Zero),
            RootSum::Undefined => None,
        }
    }
}

#[derive(Debug)]
pub struct RootSystem {
    ty: CartanType,
    cartan: Vec<Vec<i32>>,
    gram: Vec<Vec<i64>>,
    roots: Vec<Root>,
    npos: usize,
    index: HashMap<Vec<i32>, RootId>,
    sums: Vec<RootSum>,
    pub(crate) chain_cache: [OnceLock<Vec<Chain>>; CACHED_DEGREES + 1],
}

/// Build the root system of the given type.
pub fn build_root_system(series: Series, rank: usize) -> Result<RootSystem> {
    RootSystem::new(CartanType::new(series, rank)?)
}

impl RootSystem {
    pub fn new(ty: CartanType) -> Result<Self> {
        let cartan = cartan_matrix(ty);
        let gram = gram_from_cartan(&cartan)?;
        let l = ty.rank;

        let mut positive = positive_roots(&cartan);
        positive.sort_by(|a, b| {
            let ha: i32 = a.iter().sum();
            let hb: i32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let npos = positive.len();
        if 2 * npos > RootId::MAX as usize {
            return Err(Error::InternalInvariantViolation(
                "too many roots for RootId".into(),
            ));
        }

        let norm = |c: &[i32]| -> i64 {
            let mut s = 0i64;
            for i in 0..l {
                for j in 0..l {
                    s += c[i] as i64 * c[j] as i64 * gram[i][j];
                }
            }
            s
        };
        let max_norm = positive.iter().map(|c| norm(c)).max().unwrap_or(2);

        let mut roots = Vec::with_capacity(2 * npos);
        for sign in [1, -1] {
            for c in &positive {
                let coeffs: Vec<i32> = c.iter().map(|x| sign * x).collect();
                let height = coeffs.iter().sum();
                let length = if norm(&coeffs) == max_norm {
                    LengthClass::Long
                } else {
                    LengthClass::Short
                };
                roots.push(Root {
                    coeffs,
                    height,
                    length,
                });
            }
        }
        let index: HashMap<Vec<i32>, RootId> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.coeffs.clone(), i as RootId))
            .collect();

        let n = roots.len();
        let mut sums = Vec::with_capacity(n * n);
        for a in &roots {
            for b in &roots {
                let v: Vec<i32> = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
                sums.push(if v.iter().all(|&x| x == 0) {
                    RootSum::Zero
                } else if let Some(&id) = index.get(&v) {
                    RootSum::Root(id)
                } else {
                    RootSum::Undefined
                });
            }
        }

        Ok(RootSystem {
            ty,
            cartan,
            gram,
            roots,
            npos,
            index,
            sums,
            chain_cache: Default::default(),
        })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn name(&self) -> String {
        self.ty.to_string()
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Gram matrix of the simple roots, short roots of squared length 2.
    pub fn gram_matrix(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, id: RootId) -> &Root {
        &self.roots[id as usize]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn root_ids(&self) -> impl Iterator<Item = RootId> + '_ {
        (0..self.roots.len()).map(|i| i as RootId)
    }

    pub fn positive_ids(&self) -> impl Iterator<Item = RootId> + '_ {
        (0..self.npos).map(|i| i as RootId)
    }

    /// Simple roots in Bourbaki order; they are the first `rank` ids.
    pub fn simple_ids(&self) -> impl Iterator<Item = RootId> + '_ {
        (0..self.rank()).map(|i| i as RootId)
    }

    pub fn simple(&self, i: usize) -> RootId {
        debug_assert!(i < self.rank());
        i as RootId
    }

    pub fn is_positive(&self, id: RootId) -> bool {
        (id as usize) < self.npos
    }

    pub fn is_simple(&self, id: RootId) -> bool {
        (id as usize) < self.rank()
    }

    pub fn neg(&self, id: RootId) -> RootId {
        let i = id as usize;
        if i < self.npos {
            (i + self.npos) as RootId
        } else {
            (i - self.npos) as RootId
        }
    }

    pub fn height(&self, id: RootId) -> i32 {
        self.roots[id as usize].height
    }

    pub fn length_class(&self, id: RootId) -> LengthClass {
        self.roots[id as usize].length
    }

    pub fn coeffs(&self, id: RootId) -> &[i32] {
        &self.roots[id as usize].coeffs
    }

    pub fn find(&self, coeffs: &[i32]) -> Option<RootId> {
        self.index.get(coeffs).copied()
    }

    /// Look up a `Phi_0` element from coordinates; the zero vector is `Zero`.
    pub fn find_phi0(&self, coeffs: &[i32]) -> Result<Phi0> {
        if coeffs.len() != self.rank() {
            return Err(Error::UnknownRoot(coeffs.to_vec()));
        }
        if coeffs.iter().all(|&c| c == 0) {
            return Ok(Phi0::Zero);
        }
        self.find(coeffs)
            .map(Phi0::Root)
            .ok_or_else(|| Error::UnknownRoot(coeffs.to_vec()))
    }

    /// Partial addition of two nonzero roots.
    #[inline]
    pub fn sum(&self, a: RootId, b: RootId) -> RootSum {
        self.sums[a as usize * self.roots.len() + b as usize]
    }

    /// Partial addition on `Phi_0`; `Zero` is the identity.
    pub fn root_sum(&self, a: Phi0, b: Phi0) -> RootSum {
        match (a, b) {
            (Phi0::Zero, Phi0::Zero) => RootSum::Zero,
            (Phi0::Zero, Phi0::Root(r)) | (Phi0::Root(r), Phi0::Zero) => RootSum::Root(r),
            (Phi0::Root(x), Phi0::Root(y)) => self.sum(x, y),
        }
    }

    /// `a - b` inside `Phi_0`.
    pub fn difference(&self, a: RootId, b: RootId) -> RootSum {
        self.sum(a, self.neg(b))
    }

    pub fn inner_product(&self, a: RootId, b: RootId) -> i64 {
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let mut s = 0i64;
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                s += x as i64 * y as i64 * self.gram[i][j];
            }
        }
        s
    }

    /// `<a, b^vee> = 2 (a, b) / (b, b)`.
    pub fn pairing(&self, a: RootId, b: RootId) -> i64 {
        2 * self.inner_product(a, b) / self.inner_product(b, b)
    }

    /// Split a positive root as `alpha + (beta - alpha)` with `alpha` simple.
    ///
    /// The simple root of smallest Bourbaki index is chosen.
    pub fn decompose_positive(&self, beta: RootId) -> Result<(RootId, Phi0)> {
        if !self.is_positive(beta) {
            return Err(Error::PreconditionUnmet(format!(
                "root {:?} is not positive",
                self.coeffs(beta)
            )));
        }
        for alpha in self.simple_ids() {
            match self.difference(beta, alpha) {
                RootSum::Zero => return Ok((alpha, Phi0::Zero)),
                RootSum::Root(g) if self.is_positive(g) => return Ok((alpha, Phi0::Root(g))),
                _ => {}
            }
        }
        Err(Error::InternalInvariantViolation(format!(
            "positive root {:?} has no simple-root decomposition",
            self.coeffs(beta)
        )))
    }

    /// All simple roots `alpha` with `beta - alpha` in `Phi_0^+`.
    pub fn all_decompositions(&self, beta: RootId) -> Vec<(RootId, Phi0)> {
        self.simple_ids()
            .filter_map(|alpha| match self.difference(beta, alpha) {
                RootSum::Zero => Some((alpha, Phi0::Zero)),
                RootSum::Root(g) if self.is_positive(g) => Some((alpha, Phi0::Root(g))),
                _ => None,
            })
            .collect()
    }

    /// Coefficients of the coroot `beta^vee` over the simple coroots.
    pub fn coroot_coeffs(&self, beta: RootId) -> Vec<i64> {
        let nb = self.inner_product(beta, beta);
        self.coeffs(beta)
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                let num = m as i64 * self.gram[i][i];
                debug_assert_eq!(num % nb, 0);
                num / nb
            })
            .collect()
    }

    pub fn highest_height(&self) -> i32 {
        self.roots[..self.npos]
            .iter()
            .map(|r| r.height)
            .max()
            .unwrap_or(0)
    }

    /// Human-readable label, e.g. `a1+2a2` or `-(a1+a2)`.
    pub fn label(&self, id: RootId) -> String {
        let c = self.coeffs(id);
        let positive = self.is_positive(id);
        let mut parts = Vec::new();
        for (i, &m) in c.iter().enumerate() {
            let m = m.abs();
            match m {
                0 => {}
                1 => parts.push(format!("a{}", i + 1)),
                _ => parts.push(format!("{m}a{}", i + 1)),
            }
        }
        let body = parts.join("+");
        if positive {
            body
        } else if parts.len() == 1 {
            format!("-{body}")
        } else {
            format!("-({body})")
        }
    }
}

fn gram_from_cartan(cartan: &[Vec<i32>]) -> Result<Vec<Vec<i64>>> {
    // (alpha_i, alpha_j) = A[i][j] * d_j with d_j = (alpha_j, alpha_j) / 2.
    // Symmetry forces A[i][j] d_j = A[j][i] d_i; propagate along the diagram.
    let l = cartan.len();
    let mut d: Vec<Option<(i64, i64)>> = vec![None; l];
    d[0] = Some((1, 1));
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        let (num, den) = d[i].unwrap();
        for j in 0..l {
            if i == j || cartan[i][j] == 0 {
                continue;
            }
            // d_j = d_i * A[j][i] / A[i][j]
            let (nn, dd) = (num * cartan[j][i] as i64, den * cartan[i][j] as i64);
            let g = gcd(nn.abs(), dd.abs());
            let (nn, dd) = if dd < 0 { (-nn / g, -dd / g) } else { (nn / g, dd / g) };
            match d[j] {
                None => {
                    d[j] = Some((nn, dd));
                    stack.push(j);
                }
                Some((a, b)) if a * dd != b * nn => {
                    return Err(Error::InternalInvariantViolation(
                        "Cartan matrix is not symmetrizable".into(),
                    ))
                }
                _ => {}
            }
        }
    }
    let d: Vec<(i64, i64)> = d
        .into_iter()
        .map(|x| x.ok_or_else(|| Error::InternalInvariantViolation("disconnected diagram".into())))
        .collect::<Result<_>>()?;
    // Scale so that the smallest d is 1.
    let lcm_den = d.iter().fold(1, |acc, &(_, b)| acc / gcd(acc, b) * b);
    let ints: Vec<i64> = d.iter().map(|&(a, b)| a * (lcm_den / b)).collect();
    let g = ints.iter().fold(0, |acc, &x| gcd(acc, x));
    let ints: Vec<i64> = ints.iter().map(|x| x / g).collect();
    Ok((0..l)
        .map(|i| (0..l).map(|j| cartan[i][j] as i64 * ints[j]).collect())
        .collect())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Positive roots via simple-root strings: `beta + alpha_i` is a root iff
/// `p - <beta, alpha_i^vee> > 0`, where `p` is how far the `alpha_i`-string
/// extends below `beta`.
fn positive_roots(cartan: &[Vec<i32>]) -> Vec<Vec<i32>> {
    let l = cartan.len();
    let mut found: HashSet<Vec<i32>> = HashSet::new();
    let mut all = Vec::new();
    let mut layer: BTreeSet<Vec<i32>> = (0..l)
        .map(|i| {
            let mut v = vec![0; l];
            v[i] = 1;
            v
        })
        .collect();
    while !layer.is_empty() {
        for v in &layer {
            found.insert(v.clone());
            all.push(v.clone());
        }
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..l {
                let pairing: i32 = (0..l).map(|j| beta[j] * cartan[j][i]).sum();
                let mut p = 0;
                let mut v = beta.clone();
                loop {
                    v[i] -= 1;
                    if found.contains(&v) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut w = beta.clone();
                    w[i] += 1;
                    if !found.contains(&w) {
                        next.insert(w);
                    }
                }
            }
        }
        layer = next;
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn classical_root_counts() {
        for (name, count) in [
            ("A1", 2),
            ("A2", 6),
            ("A3", 12),
            ("B2", 8),
            ("B3", 18),
            ("C3", 18),
            ("C4", 32),
            ("D4", 24),
            ("D5", 40),
            ("G2", 12),
            ("F4", 48),
            ("E6", 72),
            ("E7", 126),
            ("E8", 240),
        ] {
            assert_eq!(sys(name).num_roots(), count, "{name}");
        }
    }

    #[test]
    fn invalid_types_rejected() {
        for bad in ["A0", "B1", "C2", "D3", "E5", "E9", "F3", "G3", "X2", "A"] {
            assert!(bad.parse::<CartanType>().is_err(), "{bad}");
        }
        assert_eq!(
            build_root_system(Series::D, 3).unwrap_err(),
            Error::InvalidType {
                series: 'D',
                rank: 3
            }
        );
    }

    #[test]
    fn a2_positive_roots_and_sums() {
        let a2 = sys("A2");
        let pos: Vec<_> = a2.positive_ids().map(|i| a2.coeffs(i).to_vec()).collect();
        assert_eq!(pos, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        let r0 = a2.find(&[1, 0]).unwrap();
        let r1 = a2.find(&[1, 1]).unwrap();
        let r2 = a2.find(&[0, 1]).unwrap();
        let r3 = a2.find(&[-1, 0]).unwrap();
        assert_eq!(a2.sum(r0, r2), RootSum::Root(r1));
        assert_eq!(a2.sum(r0, r3), RootSum::Zero);
        assert_eq!(a2.sum(r0, r1), RootSum::Undefined);
    }

    #[test]
    fn a1_opposites() {
        let a1 = sys("A1");
        assert_eq!(a1.num_roots(), 2);
        assert_eq!(a1.sum(0, 1), RootSum::Zero);
        assert_eq!(a1.root_sum(Phi0::Zero, Phi0::Root(0)), RootSum::Root(0));
        assert_eq!(a1.root_sum(Phi0::Zero, Phi0::Zero), RootSum::Zero);
    }

    #[test]
    fn b2_lengths_and_products() {
        let b2 = sys("B2");
        let long: BTreeSet<Vec<i32>> = b2
            .root_ids()
            .filter(|&r| b2.length_class(r) == LengthClass::Long)
            .map(|r| b2.coeffs(r).to_vec())
            .collect();
        let expected: BTreeSet<Vec<i32>> = [vec![1, 0], vec![-1, 0], vec![1, 2], vec![-1, -2]]
            .into_iter()
            .collect();
        assert_eq!(long, expected);
        assert_eq!(b2.inner_product(1, 1), 2);
        assert_eq!(b2.inner_product(0, 0), 4);
        let a2 = sys("A2");
        assert_eq!(a2.inner_product(0, 1), -1);
    }

    #[test]
    fn decompositions() {
        let a2 = sys("A2");
        let top = a2.find(&[1, 1]).unwrap();
        assert_eq!(a2.decompose_positive(top).unwrap(), (0, Phi0::Root(1)));
        assert_eq!(a2.decompose_positive(1).unwrap(), (1, Phi0::Zero));

        let b2 = sys("B2");
        let top = b2.find(&[1, 2]).unwrap();
        let mid = b2.find(&[1, 1]).unwrap();
        assert_eq!(b2.decompose_positive(top).unwrap(), (1, Phi0::Root(mid)));
        assert!(b2.decompose_positive(b2.neg(top)).is_err());
    }

    #[test]
    fn coroots() {
        let b2 = sys("B2");
        // (a1+a2)^vee = 2 a1^vee + a2^vee since a1 is long and a1+a2 short.
        let mid = b2.find(&[1, 1]).unwrap();
        assert_eq!(b2.coroot_coeffs(mid), vec![2, 1]);
        let top = b2.find(&[1, 2]).unwrap();
        assert_eq!(b2.coroot_coeffs(top), vec![1, 1]);
    }

    #[test]
    fn labels() {
        let b2 = sys("B2");
        assert_eq!(b2.label(b2.find(&[1, 2]).unwrap()), "a1+2a2");
        assert_eq!(b2.label(b2.find(&[-1, -1]).unwrap()), "-(a1+a2)");
        assert_eq!(b2.label(b2.find(&[0, -1]).unwrap()), "-a2");
    }
}
