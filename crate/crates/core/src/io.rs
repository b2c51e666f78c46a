//! JSON encodings of roots, chains, cochains and integration results.
//!
//! Roots are coefficient vectors over the simple roots, chains are arrays of
//! roots, and monomials are objects mapping every variable to its exponent.
//! On input a monomial may also be a rendered string such as `"I*J^-1"`.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::chains::Chain;
use crate::cochain::{reversal_sign, Cochain};
use crate::cohomology::IntegrationResult;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, VariableTable};
use crate::root_system::RootSystem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonomialRepr {
    Exponents(BTreeMap<String, i64>),
    Text(String),
}

impl MonomialRepr {
    pub fn resolve(&self, vars: &VariableTable) -> Result<Monomial> {
        match self {
            MonomialRepr::Text(t) => vars.parse(t),
            MonomialRepr::Exponents(map) => {
                let mut exps = vec![0; vars.len()];
                for (name, &e) in map {
                    let i = vars
                        .position(name)
                        .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                    exps[i] = e;
                }
                Ok(Monomial::from_exponents(exps))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValueEntry {
    pub chain: Vec<Vec<i32>>,
    pub monomial: MonomialRepr,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainFile {
    pub root_system: String,
    pub degree: usize,
    #[serde(default)]
    pub variables: Vec<String>,
    /// Fill in each reversed chain from its listed partner.
    #[serde(default, skip_serializing_if = "is_false")]
    pub symmetric_closure: bool,
    /// As `symmetric_closure`, with the inverse value.
    #[serde(default, skip_serializing_if = "is_false")]
    pub antisymmetric_closure: bool,
    pub values: Vec<ValueEntry>,
}

fn is_false(b: &bool) -> bool {
    !*b
}

pub fn parse_system(name: &str) -> Result<RootSystem> {
    RootSystem::new(name.parse()?)
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn monomial_to_json(m: &Monomial, vars: &VariableTable) -> Value {
    let map: serde_json::Map<String, Value> = vars
        .names()
        .iter()
        .zip(m.exponents())
        .map(|(n, &e)| (n.clone(), json!(e)))
        .collect();
    Value::Object(map)
}

pub fn chain_to_json(phi: &RootSystem, c: &Chain) -> Value {
    json!(c.coords(phi))
}

pub fn chains_to_json(phi: &RootSystem, cs: &[Chain]) -> Value {
    Value::Array(cs.iter().map(|c| chain_to_json(phi, c)).collect())
}

pub fn chain_from_json(phi: &RootSystem, text: &str) -> Result<Chain> {
    let coords: Vec<Vec<i32>> = parse_json(text)?;
    Chain::from_coords(phi, &coords)
}

/// Build the cochain described by `file`, returning its root system too.
pub fn cochain_from_file(file: &CochainFile) -> Result<(RootSystem, Cochain)> {
    let phi = parse_system(&file.root_system)?;
    if file.symmetric_closure && file.antisymmetric_closure {
        return Err(Error::Parse(
            "symmetric_closure and antisymmetric_closure are exclusive".into(),
        ));
    }
    let vars = VariableTable::new(file.variables.iter().cloned())?;
    let mut w = Cochain::identity(&phi, file.degree, vars.clone());
    let mut listed = HashSet::new();
    let mut entries = Vec::with_capacity(file.values.len());
    for e in &file.values {
        let c = Chain::from_coords(&phi, &e.chain)?;
        if !listed.insert(c.clone()) {
            return Err(Error::Parse(format!("chain {} listed twice", c.render(&phi))));
        }
        let m = e.monomial.resolve(&vars)?;
        w.set(&phi, c.clone(), m.clone())?;
        entries.push((c, m));
    }
    let s = reversal_sign(file.degree);
    let closure = if file.symmetric_closure {
        Some(s)
    } else if file.antisymmetric_closure {
        Some(-s)
    } else {
        None
    };
    if let Some(k) = closure {
        for (c, m) in entries {
            let r = c.reversed();
            if !listed.contains(&r) {
                w.set(&phi, r, m.pow(k))?;
            }
        }
    }
    Ok((phi, w))
}

pub fn read_cochain(text: &str) -> Result<(RootSystem, Cochain)> {
    cochain_from_file(&parse_json(text)?)
}

/// Listing of every non-identity value, in chain order.
pub fn cochain_to_file(phi: &RootSystem, w: &Cochain) -> CochainFile {
    let vars = w.variables();
    CochainFile {
        root_system: phi.name(),
        degree: w.degree(),
        variables: vars.names().to_vec(),
        symmetric_closure: false,
        antisymmetric_closure: false,
        values: w
            .values()
            .map(|(c, m)| ValueEntry {
                chain: c.coords(phi),
                monomial: MonomialRepr::Exponents(
                    vars.names().iter().cloned().zip(m.exponents().iter().copied()).collect(),
                ),
            })
            .collect(),
    }
}

pub fn cochain_to_json(phi: &RootSystem, w: &Cochain) -> Value {
    serde_json::to_value(cochain_to_file(phi, w)).expect("cochain serializes")
}

/// A 1-cochain as a full table over `Φ`, identity values included.
pub fn one_form_table(phi: &RootSystem, w: &Cochain) -> Value {
    let rows: Vec<Value> = phi
        .root_ids()
        .map(|r| {
            let m = w.get(&Chain::from_ids([r]));
            json!({
                "root": phi.coeffs(r),
                "label": phi.label(r),
                "monomial": monomial_to_json(&m, w.variables()),
                "text": m.render(w.variables()),
            })
        })
        .collect();
    Value::Array(rows)
}

pub fn integration_to_json(phi: &RootSystem, res: &IntegrationResult) -> Value {
    let vars = res.omega1.variables();
    let free: serde_json::Map<String, Value> = phi
        .simple_ids()
        .zip(&res.free_variables)
        .map(|(r, m)| (phi.label(r), monomial_to_json(m, vars)))
        .collect();
    json!({
        "root_system": phi.name(),
        "variables": vars.names(),
        "verified": res.verified,
        "free_variables": free,
        "omega1": one_form_table(phi, &res.omega1),
    })
}

/// Values `ξ_1..ξ_l`: an array of monomials, or an object keyed by simple
/// root labels (`"a1"`, ...). Missing keys default to `1`.
pub fn read_xi(phi: &RootSystem, vars: &VariableTable, text: &str) -> Result<Vec<Monomial>> {
    let v: Value = parse_json(text)?;
    let one = |v: &Value| -> Result<Monomial> {
        let r: MonomialRepr =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        r.resolve(vars)
    };
    match v {
        Value::Array(items) => {
            if items.len() != phi.rank() {
                return Err(Error::Parse(format!(
                    "expected {} values for xi, found {}",
                    phi.rank(),
                    items.len()
                )));
            }
            items.iter().map(one).collect()
        }
        Value::Object(map) => {
            let labels: Vec<String> = phi.simple_ids().map(|r| phi.label(r)).collect();
            if let Some(k) = map.keys().find(|k| !labels.contains(k)) {
                return Err(Error::Parse(format!("unknown simple root {k:?} in xi")));
            }
            labels
                .iter()
                .map(|l| map.get(l).map(one).unwrap_or_else(|| Ok(vars.one())))
                .collect()
        }
        _ => Err(Error::Parse("xi must be an array or object".into())),
    }
}
