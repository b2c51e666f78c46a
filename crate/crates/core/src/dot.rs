//! Graphviz rendering of `T_2`: one node per root, one edge `a -> b` per
//! generator `[a|b]`. Edges are coloured by the value of a 2-cochain, or by
//! whether `a + b` is zero when no cochain is given.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::chains::enumerate_chains;
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::root_system::{RootSum, RootSystem};

const PALETTE: [&str; 8] = [
    "black", "red", "blue", "darkgreen", "orange", "purple", "brown", "cyan4",
];

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn t2_dot(phi: &RootSystem, w: Option<&Cochain>) -> Result<String> {
    if let Some(w) = w {
        w.check_system(phi)?;
        if w.degree() != 2 {
            return Err(Error::DegreeMismatch {
                expected: 2,
                found: w.degree(),
            });
        }
    }
    let chains = enumerate_chains(phi, 2)?;
    let class = |c: &crate::chains::Chain| -> String {
        match w {
            Some(w) => w.get(c).render(w.variables()),
            None => match phi.sum(c.entries()[0], c.entries()[1]) {
                RootSum::Zero => "sum zero".into(),
                _ => "sum a root".into(),
            },
        }
    };
    let mut colours: BTreeMap<String, &str> = BTreeMap::new();
    for c in chains {
        colours.entry(class(c)).or_insert("");
    }
    for (i, v) in colours.values_mut().enumerate() {
        *v = PALETTE[i % PALETTE.len()];
    }

    let mut out = String::new();
    writeln!(out, "digraph T2_{} {{", phi.name()).unwrap();
    writeln!(out, "  node [shape=ellipse];").unwrap();
    for r in phi.root_ids() {
        writeln!(out, "  r{r} [label=\"{}\"];", escape(&phi.label(r))).unwrap();
    }
    for c in chains {
        let (a, b) = (c.entries()[0], c.entries()[1]);
        writeln!(out, "  r{a} -> r{b} [color={}];", colours[&class(c)]).unwrap();
    }
    writeln!(out, "  subgraph cluster_legend {{").unwrap();
    writeln!(out, "    label=\"legend\";").unwrap();
    for (i, (name, colour)) in colours.iter().enumerate() {
        writeln!(
            out,
            "    k{i} [shape=plaintext, label=\"{}\", fontcolor={colour}];",
            escape(name)
        )
        .unwrap();
    }
    writeln!(out, "  }}").unwrap();
    writeln!(out, "}}").unwrap();
    Ok(out)
}
