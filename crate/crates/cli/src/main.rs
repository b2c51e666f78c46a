//! `rootcoh`: batch front-end for the rootcoh library.
//!
//! Exit codes: 0 success, 1 verification failure (witness on stdout),
//! 2 malformed input (message on stderr).

mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use rootcoh::automorphism::{generate_aut_group, generate_weyl_group, root_orbits, DEFAULT_GROUP_CAP};
use rootcoh::chains::{boundary, enumerate_chains};
use rootcoh::cochain::{act, coboundary, cup, Cochain, CupConvention};
use rootcoh::cohomology::{integrate, integrate_symbolic, CrossCheck};
use rootcoh::io::{self, parse_system, read_cochain, read_xi};
use rootcoh::lie::{build_algebra, chevalley_signs, jacobi_check, killing_counts};
use rootcoh::natural::natural_integrability;
use rootcoh::root_facts::lemma61_predicates;
use rootcoh::{dot, Error, RootSystem};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "rootcoh", version, about = "Cohomology of root systems with monomial coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for library-level parallelism.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Group {
    Weyl,
    Aut,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    Multiply,
    Add,
}

#[derive(Subcommand)]
enum Command {
    /// List the generators of T_n.
    Enumerate {
        #[arg(long)]
        system: String,
        #[arg(long)]
        degree: usize,
        /// 2-cochain used to colour edges in DOT output.
        #[arg(long)]
        cochain: Option<PathBuf>,
    },
    /// Boundary of a single chain.
    Boundary {
        #[arg(long)]
        system: String,
        /// Chain as JSON (e.g. `[[1,0],[0,1]]`) or a file containing it.
        #[arg(long)]
        chain: String,
    },
    /// Coboundary of a cochain.
    D {
        #[arg(long)]
        cochain: PathBuf,
    },
    /// Cup product of two cochains.
    Cup {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long, value_enum, default_value_t = Convention::Multiply)]
        convention: Convention,
    },
    /// Closedness, symmetry class and the identities forced on 2-cocycles.
    Check {
        #[arg(long)]
        cochain: PathBuf,
    },
    /// Integrate a symmetric 2-cocycle to a 1-cochain.
    Integrate {
        #[arg(long)]
        cochain: PathBuf,
        /// JSON file with the values on the simple roots.
        #[arg(long, conflicts_with = "symbolic")]
        xi: Option<PathBuf>,
        /// Keep the simple-root values as variables xi1..xil.
        #[arg(long)]
        symbolic: bool,
        /// Choose simple-root values so every value has nonnegative exponents.
        #[arg(long, conflicts_with_all = ["symbolic", "xi"])]
        require_natural: bool,
        /// Cross-check only every n-th root for well-definedness.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Decide whether a natural 2-cocycle has a natural integral.
    Natural {
        #[arg(long)]
        cochain: PathBuf,
    },
    /// Bracket table of the deformed Lie algebra.
    LieModel {
        #[arg(long)]
        cochain: PathBuf,
        #[arg(long)]
        check_jacobi: bool,
        #[arg(long)]
        counts: bool,
    },
    /// Root orbits, or the orbit of a cochain, under a group.
    Orbit {
        #[arg(long)]
        system: Option<String>,
        #[arg(long, value_enum, default_value_t = Group::Weyl)]
        group: Group,
        #[arg(long)]
        cochain: Option<PathBuf>,
    },
    /// Check the five elementary root facts used by integration.
    Lemma61 {
        #[arg(long)]
        system: String,
    },
}

/// Result of a command: the report plus whether verification failed.
struct Report {
    body: String,
    failed: bool,
}

fn input_error(e: Error) -> anyhow::Error {
    anyhow::Error::new(e)
}

fn load(path: &Path) -> anyhow::Result<(RootSystem, Cochain)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_cochain(&text).map_err(input_error).with_context(|| format!("loading {}", path.display()))
}

fn emit(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn ok(body: String) -> Outcome {
    Ok(Report { body, failed: false })
}

type Outcome = Result<Report, Failure>;

/// Errors split by exit code.
enum Failure {
    Input(anyhow::Error),
    Verification { body: String, message: String },
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

fn is_verification(e: &Error) -> bool {
    matches!(
        e,
        Error::NotSymmetric { .. }
            | Error::NotCocycle { .. }
            | Error::WellDefinednessViolation { .. }
            | Error::PreconditionUnmet(_)
            | Error::InternalInvariantViolation(_)
    )
}

/// Library error raised while running a mathematical check.
fn lib_failure(phi: &RootSystem, e: Error, format: Format) -> Failure {
    if !is_verification(&e) {
        return Failure::Input(input_error(e));
    }
    let v = render::error_witness(phi, &e);
    let body = match format {
        Format::Text => format!("verification failed: {}\n", render::describe_error(phi, &e)),
        _ => emit(&json!({ "error": v })),
    };
    Failure::Verification {
        body,
        message: render::describe_error(phi, &e),
    }
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    if format == Format::Dot && !matches!(cli.command, Command::Enumerate { .. }) {
        return Err(anyhow::anyhow!("--format dot is only available for enumerate").into());
    }
    match cli.command {
        Command::Enumerate { system, degree, cochain } => {
            let phi = parse_system(&system).map_err(input_error)?;
            if format == Format::Dot {
                if degree != 2 {
                    return Err(anyhow::anyhow!("DOT output needs --degree 2").into());
                }
                let w = match &cochain {
                    Some(p) => {
                        let (psi, w) = load(p)?;
                        if psi.name() != phi.name() {
                            return Err(input_error(Error::SystemMismatch {
                                left: psi.name(),
                                right: phi.name(),
                            })
                            .into());
                        }
                        Some(w)
                    }
                    None => None,
                };
                return ok(dot::t2_dot(&phi, w.as_ref()).map_err(input_error)?);
            }
            let chains = enumerate_chains(&phi, degree).map_err(input_error)?;
            ok(match format {
                Format::Text => chains.iter().map(|c| c.render(&phi) + "\n").collect(),
                _ => emit(&io::chains_to_json(&phi, chains)),
            })
        }
        Command::Boundary { system, chain } => {
            let phi = parse_system(&system).map_err(input_error)?;
            let text = if Path::new(&chain).is_file() {
                std::fs::read_to_string(&chain)?
            } else {
                chain
            };
            let c = io::chain_from_json(&phi, &text).map_err(input_error)?;
            let b = boundary(&phi, &c);
            ok(match format {
                Format::Text => render::chain_sum_text(&phi, &b) + "\n",
                _ => emit(&render::chain_sum_json(&phi, &b)),
            })
        }
        Command::D { cochain } => {
            let (phi, w) = load(&cochain)?;
            let d = coboundary(&phi, &w).map_err(input_error)?;
            ok(render::cochain_out(&phi, &d, format))
        }
        Command::Cup { left, right, convention } => {
            let (phi, a) = load(&left)?;
            let (_, b) = load(&right)?;
            let conv = match convention {
                Convention::Multiply => CupConvention::Multiply,
                Convention::Add => CupConvention::Add,
            };
            let c = cup(&phi, &a, &b, conv).map_err(input_error)?;
            ok(render::cochain_out(&phi, &c, format))
        }
        Command::Check { cochain } => {
            let (phi, w) = load(&cochain)?;
            let (v, text, closed) = render::check_report(&phi, &w).map_err(input_error)?;
            let body = match format {
                Format::Text => text,
                _ => emit(&v),
            };
            Ok(Report { body, failed: !closed })
        }
        Command::Integrate { cochain, xi, symbolic, require_natural, sample } => {
            let (phi, w) = load(&cochain)?;
            let check = match sample {
                Some(n) if n > 1 => CrossCheck::Sampled(n),
                _ => CrossCheck::Full,
            };
            let res = if symbolic {
                integrate_symbolic(&phi, &w)
            } else if require_natural {
                let rep = natural_integrability(&phi, &w).map_err(|e| lib_failure(&phi, e, format))?;
                match rep.xi {
                    Some(xi) => integrate(&phi, &w, &xi, check),
                    None => {
                        let v = render::natural_json(&phi, &rep);
                        let body = match format {
                            Format::Text => render::natural_text(&phi, &rep),
                            _ => emit(&v),
                        };
                        return Err(Failure::Verification {
                            body,
                            message: "no natural integral exists".into(),
                        });
                    }
                }
            } else {
                let xi = match &xi {
                    Some(p) => read_xi(&phi, w.variables(), &std::fs::read_to_string(p)?)
                        .map_err(input_error)?,
                    None => vec![w.variables().one(); phi.rank()],
                };
                integrate(&phi, &w, &xi, check)
            }
            .map_err(|e| lib_failure(&phi, e, format))?;
            let body = match format {
                Format::Text => render::integration_text(&phi, &res),
                _ => emit(&io::integration_to_json(&phi, &res)),
            };
            Ok(Report { body, failed: !res.verified })
        }
        Command::Natural { cochain } => {
            let (phi, w) = load(&cochain)?;
            let rep = natural_integrability(&phi, &w).map_err(|e| lib_failure(&phi, e, format))?;
            ok(match format {
                Format::Text => render::natural_text(&phi, &rep),
                _ => emit(&render::natural_json(&phi, &rep)),
            })
        }
        Command::LieModel { cochain, check_jacobi, counts } => {
            let (phi, w) = load(&cochain)?;
            // A 1-cochain stands for its coboundary.
            let (w2, w1) = match w.degree() {
                1 => (coboundary(&phi, &w).map_err(input_error)?, Some(w)),
                2 => (w, None),
                n => {
                    return Err(input_error(Error::DegreeMismatch { expected: 2, found: n }).into())
                }
            };
            let signs = chevalley_signs(&phi).map_err(input_error)?;
            let alg = build_algebra(&phi, &signs, &w2).map_err(|e| lib_failure(&phi, e, format))?;
            let mut out = json!({
                "root_system": phi.name(),
                "algebra": render::algebra_json(&alg),
            });
            let mut text = render::algebra_text(&alg);
            let mut failed = false;
            if check_jacobi {
                let j = jacobi_check(&alg);
                failed |= !j.ok;
                out["jacobi"] = render::jacobi_json(&alg, &j);
                text += &render::jacobi_text(&alg, &j);
            }
            if counts {
                let w1 = match w1 {
                    Some(w1) => w1,
                    None => {
                        let xi = vec![w2.variables().one(); phi.rank()];
                        integrate(&phi, &w2, &xi, CrossCheck::Full)
                            .map_err(|e| lib_failure(&phi, e, format))?
                            .omega1
                    }
                };
                let k = killing_counts(&phi, &w1).map_err(input_error)?;
                text += &render::killing_text(&k);
                out["killing_counts"] = serde_json::to_value(&k)?;
            }
            let body = match format {
                Format::Text => text,
                _ => emit(&out),
            };
            Ok(Report { body, failed })
        }
        Command::Orbit { system, group, cochain } => {
            let (phi, w) = match (&cochain, &system) {
                (Some(p), _) => {
                    let (phi, w) = load(p)?;
                    if let Some(s) = &system {
                        if parse_system(s).map_err(input_error)?.name() != phi.name() {
                            return Err(anyhow::anyhow!("--system does not match the cochain file").into());
                        }
                    }
                    (phi, Some(w))
                }
                (None, Some(s)) => (parse_system(s).map_err(input_error)?, None),
                (None, None) => return Err(anyhow::anyhow!("--system or --cochain is required").into()),
            };
            let elements = match group {
                Group::Weyl => generate_weyl_group(&phi, DEFAULT_GROUP_CAP),
                Group::Aut => generate_aut_group(&phi, DEFAULT_GROUP_CAP),
            }
            .map_err(input_error)?;
            let group_name = match group {
                Group::Weyl => "weyl",
                Group::Aut => "aut",
            };
            let orbits: Vec<Vec<Vec<i32>>> = root_orbits(&phi, &elements)
                .iter()
                .map(|o| o.iter().map(|&r| phi.coeffs(r).to_vec()).collect())
                .collect();
            let mut out = json!({
                "root_system": phi.name(),
                "group": group_name,
                "group_order": elements.len(),
                "root_orbits": orbits,
            });
            let mut text = format!(
                "{} {group_name} group of order {}\nroot orbits: {}\n",
                phi.name(),
                elements.len(),
                orbits.len()
            );
            if let Some(w) = &w {
                let mut images: Vec<Cochain> = Vec::new();
                let mut stabilizer = 0;
                for s in &elements {
                    let img = act(s, w);
                    if img == *w {
                        stabilizer += 1;
                    }
                    if !images.contains(&img) {
                        images.push(img);
                    }
                }
                out["cochain_orbit_size"] = json!(images.len());
                out["stabilizer_order"] = json!(stabilizer);
                out["invariant"] = json!(images.len() == 1);
                text += &format!(
                    "cochain orbit size: {}\nstabilizer order: {stabilizer}\n",
                    images.len()
                );
            }
            ok(match format {
                Format::Text => text,
                _ => emit(&out),
            })
        }
        Command::Lemma61 { system } => {
            let phi = parse_system(&system).map_err(input_error)?;
            let rep = lemma61_predicates(&phi);
            let body = match format {
                Format::Text => render::facts_text(&phi, &rep),
                _ => emit(&render::facts_json(&phi, &rep)),
            };
            Ok(Report { body, failed: !rep.all_hold() })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.max(1))
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(Report { body, failed }) => {
            print!("{body}");
            if failed {
                eprintln!("verification failed");
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Verification { body, message }) => {
            print!("{body}");
            eprintln!("verification failed: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
