//! Laurent monomials `I_1^{m_1} ... I_k^{m_k}` stored as exponent vectors.
//!
//! The group law of monomials (multiplication) is exponent addition, and the
//! ring product used by the cup product is exponent-wise multiplication. All
//! arithmetic inside the crate is additive on exponents; names only appear
//! when rendering.

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(SmallVec<[i64; 4]>);

impl Monomial {
    /// The identity monomial `1` in `k` variables.
    pub fn one(k: usize) -> Self {
        Monomial(SmallVec::from_elem(0, k))
    }

    pub fn from_exponents<I: IntoIterator<Item = i64>>(exps: I) -> Self {
        Monomial(exps.into_iter().collect())
    }

    /// The monomial `I_var^exp`.
    pub fn var(k: usize, var: usize, exp: i64) -> Self {
        let mut m = Self::one(k);
        m.0[var] = exp;
        m
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// All exponents nonnegative, i.e. the monomial is natural.
    pub fn is_natural(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// Monomial product (exponent addition).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Monomial quotient (exponent subtraction).
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|a| -a).collect())
    }

    /// Integer power (exponent scaling).
    pub fn pow(&self, n: i64) -> Monomial {
        Monomial(self.0.iter().map(|a| a * n).collect())
    }

    /// Ring product of the exponents, coordinate by coordinate.
    pub fn exponent_product(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect())
    }

    /// Append `extra` zero exponents.
    pub fn extended(&self, extra: usize) -> Monomial {
        let mut m = self.clone();
        m.0.extend(std::iter::repeat(0).take(extra));
        m
    }

    pub fn render(&self, vars: &VariableTable) -> String {
        let mut parts = Vec::new();
        for (name, &e) in vars.names().iter().zip(&self.0) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Ordered names of the monomial variables, e.g. `["I", "J"]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VariableTable(Vec<String>);

impl VariableTable {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(names: I) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::Parse("empty variable name".into()));
            }
            if names[..i].contains(n) {
                return Err(Error::Parse(format!("duplicate variable name {n:?}")));
            }
        }
        Ok(VariableTable(names))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// A new table with `extra` names appended; fails on collisions.
    pub fn extended<S: Into<String>, I: IntoIterator<Item = S>>(&self, extra: I) -> Result<Self> {
        Self::new(self.0.iter().cloned().chain(extra.into_iter().map(Into::into)))
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.len())
    }

    /// Parse a multiplicative rendering such as `I^2*J^-1` or `1`.
    pub fn parse(&self, text: &str) -> Result<Monomial> {
        let mut m = self.one();
        let text = text.trim();
        if text == "1" || text.is_empty() {
            return Ok(m);
        }
        for factor in text.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (
                    n.trim(),
                    e.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                ),
                None => (factor, 1),
            };
            let idx = self
                .position(name)
                .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
            m.0[idx] += exp;
        }
        Ok(m)
    }
}
