//! JSON and text reports. Roots appear as coefficient vectors in JSON and as
//! labels such as `a1+2a2` in text.

use rootcoh::chains::{Chain, ChainSum};
use rootcoh::cochain::{symmetry_class, Cochain, SymmetryClass};
use rootcoh::cohomology::{is_cocycle, IntegrationResult};
use rootcoh::io::{chain_to_json, cochain_to_json, monomial_to_json};
use rootcoh::lie::{Basis, DeformedAlgebra, JacobiReport, KillingCount};
use rootcoh::natural::NaturalReport;
use rootcoh::root_facts::RootFactsReport;
use rootcoh::{Error, Result, RootId, RootSystem};
use serde_json::{json, Value};

fn root(phi: &RootSystem, r: RootId) -> Value {
    json!(phi.coeffs(r))
}

fn class_name(c: SymmetryClass) -> &'static str {
    match c {
        SymmetryClass::Symmetric => "symmetric",
        SymmetryClass::Antisymmetric => "antisymmetric",
        SymmetryClass::Neither => "neither",
    }
}

pub fn chain_sum_json(phi: &RootSystem, s: &ChainSum) -> Value {
    Value::Array(
        s.terms()
            .map(|(c, k)| json!({ "coefficient": k, "chain": chain_to_json(phi, c) }))
            .collect(),
    )
}

pub fn chain_sum_text(phi: &RootSystem, s: &ChainSum) -> String {
    if s.is_zero() {
        return "0".into();
    }
    s.terms()
        .map(|(c, k)| format!("{}{} {}", if k < 0 { "-" } else { "+" }, k.abs(), c.render(phi)))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn cochain_out(phi: &RootSystem, w: &Cochain, format: crate::Format) -> String {
    match format {
        crate::Format::Text => {
            let mut s = format!("{} degree {} over {:?}\n", phi.name(), w.degree(), w.variables().names());
            for (c, m) in w.values() {
                s += &format!("{} = {}\n", c.render(phi), m.render(w.variables()));
            }
            s
        }
        _ => crate::emit(&cochain_to_json(phi, w)),
    }
}

pub fn error_witness(phi: &RootSystem, e: &Error) -> Value {
    match e {
        Error::NotSymmetric { witness } => json!({
            "kind": "not_symmetric",
            "chain": chain_to_json(phi, witness),
        }),
        Error::NotCocycle { witness, value } => json!({
            "kind": "not_cocycle",
            "chain": chain_to_json(phi, witness),
            "exponents": value.exponents(),
        }),
        Error::WellDefinednessViolation { root: r, first_simple, first_value, second_simple, second_value } => json!({
            "kind": "not_well_defined",
            "root": root(phi, *r),
            "first_simple": root(phi, *first_simple),
            "first_exponents": first_value.exponents(),
            "second_simple": root(phi, *second_simple),
            "second_exponents": second_value.exponents(),
        }),
        other => json!({ "kind": "other", "message": other.to_string() }),
    }
}

pub fn describe_error(phi: &RootSystem, e: &Error) -> String {
    match e {
        Error::NotSymmetric { witness } => format!("not symmetric at {}", witness.render(phi)),
        Error::NotCocycle { witness, value } => {
            format!("not closed: d value at {} has exponents {:?}", witness.render(phi), value.exponents())
        }
        Error::WellDefinednessViolation { root: r, first_simple, second_simple, .. } => format!(
            "integration of {} depends on the decomposition ({} vs {})",
            phi.label(*r),
            phi.label(*first_simple),
            phi.label(*second_simple)
        ),
        other => other.to_string(),
    }
}

/// `check` report as JSON and text, plus whether the cochain is closed.
pub fn check_report(phi: &RootSystem, w: &Cochain) -> Result<(Value, String, bool)> {
    let vars = w.variables();
    let (closed, witness, class, killing) = if w.degree() == 2 {
        let rep = is_cocycle(phi, w)?;
        (rep.is_closed, rep.witness, rep.symmetry, Some((rep.killing_identities_ok, rep.killing_witness)))
    } else {
        let d = rootcoh::cochain::coboundary(phi, w)?;
        let witness = d.values().next().map(|(c, m)| (c.clone(), m.clone()));
        (witness.is_none(), witness, symmetry_class(w).class, None)
    };
    let mut v = json!({
        "root_system": phi.name(),
        "degree": w.degree(),
        "closed": closed,
        "symmetry": class_name(class),
        "witness": witness.as_ref().map(|(c, m)| json!({
            "chain": chain_to_json(phi, c),
            "value": monomial_to_json(m, vars),
        })),
    });
    let mut text = format!(
        "{} degree {}: {}, {}\n",
        phi.name(),
        w.degree(),
        if closed { "closed" } else { "not closed" },
        class_name(class)
    );
    if let Some((c, m)) = &witness {
        text += &format!("witness: d({}) = {}\n", c.render(phi), m.render(vars));
    }
    if let Some((ok, kw)) = killing {
        v["killing_identities_ok"] = json!(ok);
        v["killing_witness"] = json!(kw.as_ref().map(|c| chain_to_json(phi, c)));
        text += &format!("killing identities: {}\n", if ok { "hold" } else { "fail" });
    }
    Ok((v, text, closed))
}

pub fn integration_text(phi: &RootSystem, res: &IntegrationResult) -> String {
    let vars = res.omega1.variables();
    let mut s = format!("{} integral ({})\n", phi.name(), if res.verified { "verified" } else { "NOT verified" });
    for r in phi.root_ids() {
        s += &format!("{} -> {}\n", phi.label(r), res.omega1.get(&Chain::from_ids([r])).render(vars));
    }
    s
}

pub fn natural_json(phi: &RootSystem, rep: &NaturalReport) -> Value {
    let per: Vec<Value> = rep
        .per_variable
        .iter()
        .map(|v| {
            json!({
                "variable": v.variable,
                "solution": v.solution,
                "min_denominator": v.min_denominator,
                "certificate": v.certificate.as_ref().map(|c| c.constraints.iter().map(|k| json!({
                    "root": root(phi, k.root),
                    "coefficients": k.coeffs,
                    "constant": k.constant,
                })).collect::<Vec<_>>()),
            })
        })
        .collect();
    let mut v = json!({
        "root_system": phi.name(),
        "feasible": rep.feasible,
        "min_denominator": rep.min_denominator,
        "per_variable": per,
    });
    if let (Some(xi), Some(w1)) = (&rep.xi, &rep.omega1) {
        let labels = phi.simple_ids().map(|r| phi.label(r));
        v["xi"] = json!(labels
            .zip(xi)
            .map(|(l, m)| (l, monomial_to_json(m, w1.variables())))
            .collect::<serde_json::Map<_, _>>());
        v["omega1"] = rootcoh::io::one_form_table(phi, w1);
    }
    v
}

pub fn natural_text(phi: &RootSystem, rep: &NaturalReport) -> String {
    let mut s = format!(
        "{}: {}\n",
        phi.name(),
        if rep.feasible { "natural integral exists" } else { "no natural integral" }
    );
    for v in &rep.per_variable {
        match (&v.solution, &v.certificate) {
            (Some(x), _) => s += &format!("{}: exponents on simple roots {x:?}\n", v.variable),
            (None, Some(c)) => {
                s += &format!("{}: infeasible; conflicting constraints:\n", v.variable);
                for k in &c.constraints {
                    s += &format!("  {}: {} >= 0\n", phi.label(k.root), linear(&k.coeffs, k.constant));
                }
                if let Some(n) = v.min_denominator {
                    s += &format!("  feasible with denominators {n}\n");
                }
            }
            (None, None) => s += &format!("{}: undecided\n", v.variable),
        }
    }
    s
}

/// `a·x + c` as text, e.g. `x1 + 2*x2 - 1`.
fn linear(coeffs: &[i64], constant: i64) -> String {
    let mut s = String::new();
    let mut push = |k: i64, var: Option<usize>| {
        if k == 0 {
            return;
        }
        let sign = if k < 0 { "-" } else { "+" };
        if s.is_empty() {
            if k < 0 {
                s.push('-');
            }
        } else {
            s += &format!(" {sign} ");
        }
        match (k.abs(), var) {
            (1, Some(i)) => s += &format!("x{}", i + 1),
            (a, Some(i)) => s += &format!("{a}*x{}", i + 1),
            (a, None) => s += &a.to_string(),
        }
    };
    for (i, &a) in coeffs.iter().enumerate() {
        push(a, Some(i));
    }
    push(constant, None);
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn term_json(alg: &DeformedAlgebra, t: &rootcoh::lie::Term) -> Value {
    json!({
        "basis": alg.label(t.basis),
        "coefficient": t.coeff,
        "monomial": monomial_to_json(&t.monomial, alg.variables()),
    })
}

pub fn algebra_json(alg: &DeformedAlgebra) -> Value {
    let basis: Vec<&str> = (0..alg.dim()).map(|i| alg.label(alg.basis(i))).collect();
    let brackets: Vec<Value> = alg
        .nonzero_brackets()
        .map(|(x, y, terms)| {
            json!({
                "left": alg.label(x),
                "right": alg.label(y),
                "terms": terms.iter().map(|t| term_json(alg, t)).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "basis": basis, "variables": alg.variables().names(), "brackets": brackets })
}

pub fn algebra_text(alg: &DeformedAlgebra) -> String {
    let mut s = String::new();
    for (x, y, terms) in alg.nonzero_brackets() {
        let rhs: Vec<String> = terms
            .iter()
            .map(|t| format!("{}*{}*{}", t.coeff, t.monomial.render(alg.variables()), alg.label(t.basis)))
            .collect();
        s += &format!("[{}, {}] = {}\n", alg.label(x), alg.label(y), rhs.join(" + "));
    }
    s
}

fn witness_labels(alg: &DeformedAlgebra, w: &[Basis]) -> Vec<String> {
    w.iter().map(|b| alg.label(*b).to_string()).collect()
}

pub fn jacobi_json(alg: &DeformedAlgebra, j: &JacobiReport) -> Value {
    json!({
        "ok": j.ok,
        "witness": j.witness.as_ref().map(|w| witness_labels(alg, w)),
        "triples_checked": j.triples_checked,
    })
}

pub fn jacobi_text(alg: &DeformedAlgebra, j: &JacobiReport) -> String {
    match &j.witness {
        None => format!("jacobi: ok ({} triples)\n", j.triples_checked),
        Some(w) => format!("jacobi: fails at {}\n", witness_labels(alg, w).join(", ")),
    }
}

pub fn killing_text(k: &KillingCount) -> String {
    let totals: Vec<String> = k.totals.iter().map(|(n, e)| format!("{n}^{e}")).collect();
    format!(
        "short count: {}\nlong count: {}\ntotals: {}\n",
        k.short.join(" + "),
        k.long.join(" + "),
        totals.join(" ")
    )
}

pub fn facts_json(phi: &RootSystem, rep: &RootFactsReport) -> Value {
    let st: Vec<Value> = rep
        .statements
        .iter()
        .map(|s| {
            json!({
                "statement": s.statement,
                "holds": s.holds,
                "checked": s.checked,
                "witness": s.witness.as_ref().map(|w| w.iter().map(|&r| root(phi, r)).collect::<Vec<_>>()),
            })
        })
        .collect();
    json!({ "root_system": rep.system, "all_hold": rep.all_hold(), "statements": st })
}

pub fn facts_text(phi: &RootSystem, rep: &RootFactsReport) -> String {
    let mut s = String::new();
    for st in &rep.statements {
        s += &format!(
            "statement {}: {} ({} instances)",
            st.statement,
            if st.holds { "holds" } else { "fails" },
            st.checked
        );
        if let Some(w) = &st.witness {
            let w: Vec<String> = w.iter().map(|&r| phi.label(r)).collect();
            s += &format!(" at {}", w.join(", "));
        }
        s.push('\n');
    }
    s
}
