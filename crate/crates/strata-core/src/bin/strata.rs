//! Command line front end. Results go to stdout; diagnostics to stderr.
//! Exit codes: 0 success, 1 domain error (JSON error object on stderr),
//! 2 usage or input parse failure.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;
use strata_core::aut::{
    automorphism_group, verify_rigidity, PinRule, PosetAutomorphism, RigidityError,
    RigidityOutcome, DEFAULT_AUT_BUDGET,
};
use strata_core::finitegroup::{
    codim2_property, enumerate_group, group_from_json_str, preserves_form, pseudo_reflections,
    regular_rep, table_from_json_str, FiniteMatrixGroup, FormKind, FormSearch, GroupError,
    DEFAULT_GROUP_BOUND, DEFAULT_SUBGROUP_BOUND,
};
use strata_core::linalg::{q_from_str, q_to_string, Q, QMat};
use strata_core::matrixrep::{
    hm_torus_stable, is_semisimple, n2r2_invariants, representation_type, ClassifyError,
    HmError, MatrixTuple, TupleError,
};
use strata_core::poset::{PosetError, RtPoset};
use strata_core::reptype::{QuotientContext, RepType, RepTypeError};

#[derive(Parser)]
#[command(
    name = "strata",
    version,
    about = "Representation types, their refinement poset, and exact classification of rational matrix tuples"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum HasseFormat {
    #[default]
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Representation type combinatorics.
    Rt {
        #[command(subcommand)]
        cmd: RtCmd,
    },
    /// Classify a tuple of rational matrices read from a JSON file.
    Classify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Test whether a tuple generates a semisimple algebra (closed orbit).
    Semisimple {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// The five invariant coordinates of a pair of 2x2 matrices.
    #[command(name = "invariants2x2")]
    Invariants2x2 {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// One-torus stability for weights and coordinates.
    Hm {
        /// Comma-separated integer weights, e.g. 1,-1,0
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        weights: Vec<i64>,
        /// Comma-separated rational coordinates, e.g. 1,0,-2/3
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        coords: Vec<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Finite rational matrix groups.
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
}

#[derive(Subcommand)]
enum RtCmd {
    /// List all representation types of total dimension n in listing order.
    Enum {
        n: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Export the cover diagram of the refinement poset.
    Hasse {
        n: u32,
        #[arg(long, value_enum, default_value_t)]
        format: HasseFormat,
    },
    /// Is the first type below-or-equal the second in the refinement order?
    Leq {
        fine: String,
        coarse: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Stratum dimension of a type in the l-shifted quotient of r-tuples.
    Dim {
        r#type: String,
        #[arg(long = "l")]
        l: u32,
        #[arg(long = "r")]
        r: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// The dual type (swap dimension and multiplicity in every pair).
    Dual {
        r#type: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// The automorphism group of the refinement poset.
    Aut {
        n: u32,
        #[arg(long, default_value_t = DEFAULT_AUT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Certify that fixing every type containing a (1,1) pair forces the
    /// identity automorphism.
    Rigidity {
        n: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Enumerate a group from JSON generators and report its properties.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GROUP_BOUND)]
        bound: usize,
        #[arg(long, default_value_t = DEFAULT_SUBGROUP_BOUND)]
        subgroup_bound: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Build the left regular representation from a JSON multiplication table.
    Regular {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

enum CliError {
    Usage(String),
    Domain(serde_json::Value),
}

fn domain(kind: &str, message: String) -> CliError {
    CliError::Domain(json!({ "error": { "kind": kind, "message": message } }))
}

fn domain_with(kind: &str, message: String, key: &str, value: serde_json::Value) -> CliError {
    CliError::Domain(json!({ "error": { "kind": kind, "message": message, key: value } }))
}

fn parse_type(s: &str) -> Result<RepType, CliError> {
    s.parse::<RepType>().map_err(|e| CliError::Usage(format!("invalid type {:?}: {}", s, e)))
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {}", path.display(), e)))
}

fn poset_for(n: u32) -> Result<RtPoset, CliError> {
    RtPoset::new(n).map_err(|e| match e {
        PosetError::InvalidDimension => domain("invalid_dimension", e.to_string()),
        PosetError::NotAnElement(..) => domain("not_an_element", e.to_string()),
    })
}

fn tuple_from(path: &PathBuf) -> Result<MatrixTuple, CliError> {
    let text = read_file(path)?;
    MatrixTuple::from_json_str(&text).map_err(|e| match e {
        TupleError::WrongShape { .. } => domain("wrong_shape", e.to_string()),
        TupleError::NotInvertible => domain("not_invertible", e.to_string()),
        other => CliError::Usage(other.to_string()),
    })
}

fn group_error(e: GroupError) -> CliError {
    match e {
        GroupError::NonInvertibleGenerator { .. } => {
            domain("non_invertible_generator", e.to_string())
        }
        GroupError::BoundExceeded { .. } => domain("bound_exceeded", e.to_string()),
        GroupError::InvalidTable(_) => domain("invalid_table", e.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

fn q_json(v: &Q) -> serde_json::Value {
    json!(q_to_string(v))
}

fn mat_json(m: &QMat) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = (0..m.rows())
        .map(|i| {
            let row: Vec<serde_json::Value> = (0..m.cols())
                .map(|j| {
                    use num_traits::One;
                    let v = m.at(i, j);
                    if v.denom().is_one() {
                        if let Ok(x) = i64::try_from(v.numer().clone()) {
                            return json!(x);
                        }
                    }
                    q_json(v)
                })
                .collect();
            json!(row)
        })
        .collect();
    json!(rows)
}

fn cycles_text(sigma: &PosetAutomorphism, labels: &[String]) -> String {
    if sigma.is_identity() {
        return "id".to_string();
    }
    sigma
        .cycles()
        .iter()
        .map(|cycle| {
            let parts: Vec<&str> = cycle.iter().map(|&i| labels[i].as_str()).collect();
            format!("({})", parts.join(" "))
        })
        .collect::<Vec<_>>()
        .join("")
}

fn cycles_json(sigma: &PosetAutomorphism, labels: &[String]) -> serde_json::Value {
    let cycles: Vec<Vec<&str>> = sigma
        .cycles()
        .iter()
        .map(|cycle| cycle.iter().map(|&i| labels[i].as_str()).collect())
        .collect();
    json!(cycles)
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.cmd {
        Cmd::Rt { cmd } => run_rt(cmd),
        Cmd::Classify { file, format } => {
            let t = tuple_from(&file)?;
            let c = representation_type(&t).map_err(|e| match e {
                ClassifyError::NotSplitOverRationals { ref factor } => domain_with(
                    "not_split_over_rationals",
                    e.to_string(),
                    "factor",
                    json!(factor.to_string()),
                ),
            })?;
            match format {
                Format::Text => Ok(c.rep_type.to_string()),
                Format::Json => {
                    let blocks: Vec<serde_json::Value> = c
                        .decomposition
                        .blocks
                        .iter()
                        .map(|b| {
                            json!({
                                "dim": b.dim,
                                "mult": b.mult,
                                "field_degree": b.field_degree,
                                "idempotent": mat_json(&b.idempotent),
                            })
                        })
                        .collect();
                    Ok(json!({
                        "type": c.rep_type.to_string(),
                        "algebra_dim": c.algebra_dim,
                        "radical_dim": c.radical_dim,
                        "layer_dims": c.layer_dims,
                        "blocks": blocks,
                    })
                    .to_string())
                }
            }
        }
        Cmd::Semisimple { file, format } => {
            let t = tuple_from(&file)?;
            let s = is_semisimple(&t);
            match format {
                Format::Text => Ok(s.to_string()),
                Format::Json => Ok(json!({ "semisimple": s }).to_string()),
            }
        }
        Cmd::Invariants2x2 { file, format } => {
            let t = tuple_from(&file)?;
            let inv = n2r2_invariants(&t).map_err(|e| domain("wrong_shape", e.to_string()))?;
            match format {
                Format::Text => {
                    Ok(inv.iter().map(q_to_string).collect::<Vec<_>>().join(" "))
                }
                Format::Json => {
                    let vals: Vec<String> = inv.iter().map(q_to_string).collect();
                    Ok(json!({ "invariants": vals }).to_string())
                }
            }
        }
        Cmd::Hm { weights, coords, format } => {
            let coords: Vec<Q> = coords
                .iter()
                .map(|s| {
                    q_from_str(s)
                        .ok_or_else(|| CliError::Usage(format!("invalid coordinate {:?}", s)))
                })
                .collect::<Result<_, _>>()?;
            let stable = hm_torus_stable(&weights, &coords).map_err(|e| match e {
                HmError::LengthMismatch { .. } => domain("length_mismatch", e.to_string()),
            })?;
            match format {
                Format::Text => Ok(stable.to_string()),
                Format::Json => Ok(json!({ "stable": stable }).to_string()),
            }
        }
        Cmd::Group { cmd } => run_group(cmd),
    }
}

fn run_rt(cmd: RtCmd) -> Result<String, CliError> {
    match cmd {
        RtCmd::Enum { n, format } => {
            let p = poset_for(n)?;
            let labels: Vec<String> = p.elements().iter().map(|t| t.to_string()).collect();
            match format {
                Format::Text => Ok(labels.join("\n")),
                Format::Json => Ok(json!({ "n": n, "elements": labels }).to_string()),
            }
        }
        RtCmd::Hasse { n, format } => {
            let p = poset_for(n)?;
            match format {
                HasseFormat::Dot => Ok(p.to_dot().trim_end().to_string()),
                HasseFormat::Json => Ok(p.to_json()),
            }
        }
        RtCmd::Leq { fine, coarse, format } => {
            let mu = parse_type(&fine)?;
            let tau = parse_type(&coarse)?;
            let p = poset_for(tau.total_dim() as u32)?;
            let ans = p.leq(&mu, &tau).map_err(|e| domain("not_an_element", e.to_string()))?;
            match format {
                Format::Text => Ok(ans.to_string()),
                Format::Json => Ok(json!({
                    "fine": mu.to_string(),
                    "coarse": tau.to_string(),
                    "leq": ans,
                })
                .to_string()),
            }
        }
        RtCmd::Dim { r#type, l, r, format } => {
            let tau = parse_type(&r#type)?;
            let ctx = QuotientContext { l, n: tau.total_dim() as u32, r };
            let dim = tau.stratum_dim(&ctx).map_err(|e| match e {
                RepTypeError::RankTooSmall { .. } => domain("rank_too_small", e.to_string()),
                other => domain("dimension_mismatch", other.to_string()),
            })?;
            match format {
                Format::Text => Ok(dim.to_string()),
                Format::Json => Ok(json!({
                    "type": tau.to_string(),
                    "l": l,
                    "n": ctx.n,
                    "r": r,
                    "dim": dim,
                })
                .to_string()),
            }
        }
        RtCmd::Dual { r#type, format } => {
            let tau = parse_type(&r#type)?;
            let dual = tau.dual();
            match format {
                Format::Text => Ok(dual.to_string()),
                Format::Json => Ok(json!({
                    "type": tau.to_string(),
                    "dual": dual.to_string(),
                })
                .to_string()),
            }
        }
        RtCmd::Aut { n, budget, format } => {
            let p = poset_for(n)?;
            let g = automorphism_group(&p, budget);
            if !g.complete {
                return Err(domain_with(
                    "budget_exceeded",
                    format!("automorphism search stopped after {} nodes", g.nodes_visited),
                    "nodes_visited",
                    json!(g.nodes_visited),
                ));
            }
            let labels: Vec<String> = p.elements().iter().map(|t| t.to_string()).collect();
            match format {
                Format::Text => {
                    let mut lines = vec![format!("order {}", g.elements.len())];
                    for sigma in &g.elements {
                        lines.push(cycles_text(sigma, &labels));
                    }
                    Ok(lines.join("\n"))
                }
                Format::Json => {
                    let autos: Vec<serde_json::Value> =
                        g.elements.iter().map(|s| cycles_json(s, &labels)).collect();
                    Ok(json!({
                        "n": n,
                        "order": g.elements.len(),
                        "nodes_visited": g.nodes_visited,
                        "automorphisms": autos,
                    })
                    .to_string())
                }
            }
        }
        RtCmd::Rigidity { n, format } => {
            let p = poset_for(n)?;
            let outcome = verify_rigidity(&p).map_err(|e| match e {
                RigidityError::Undetermined => domain("undetermined", e.to_string()),
            })?;
            let labels: Vec<String> = p.elements().iter().map(|t| t.to_string()).collect();
            match outcome {
                RigidityOutcome::Rigid { trace } => match format {
                    Format::Text => {
                        let mut lines = vec!["OK".to_string()];
                        for step in &trace {
                            let rule = match &step.rule {
                                PinRule::Hypothesis => "hypothesis".to_string(),
                                PinRule::SplitPin { pin } => format!("split-pin {}", pin),
                                PinRule::MergePin { pin } => format!("merge-pin {}", pin),
                            };
                            lines.push(format!("m={} {} {}", step.m, step.target, rule));
                        }
                        Ok(lines.join("\n"))
                    }
                    Format::Json => {
                        let steps: Vec<serde_json::Value> = trace
                            .iter()
                            .map(|s| {
                                let rule = match &s.rule {
                                    PinRule::Hypothesis => json!({ "kind": "hypothesis" }),
                                    PinRule::SplitPin { pin } => {
                                        json!({ "kind": "split_pin", "pin": pin.to_string() })
                                    }
                                    PinRule::MergePin { pin } => {
                                        json!({ "kind": "merge_pin", "pin": pin.to_string() })
                                    }
                                };
                                json!({
                                    "target": s.target.to_string(),
                                    "m": s.m,
                                    "rule": rule,
                                })
                            })
                            .collect();
                        Ok(json!({ "n": n, "outcome": "rigid", "trace": steps }).to_string())
                    }
                },
                RigidityOutcome::Violated { witness } => match format {
                    Format::Text => {
                        Ok(format!("VIOLATED\n{}", cycles_text(&witness, &labels)))
                    }
                    Format::Json => Ok(json!({
                        "n": n,
                        "outcome": "violated",
                        "witness": cycles_json(&witness, &labels),
                    })
                    .to_string()),
                },
            }
        }
    }
}

fn group_doc(g: &FiniteMatrixGroup) -> serde_json::Value {
    let gens: Vec<serde_json::Value> = if g.order() == 1 {
        vec![mat_json(g.element(0))]
    } else {
        (1..g.order()).map(|i| mat_json(g.element(i))).collect()
    };
    json!({ "n": g.n(), "order": g.order(), "generators": gens })
}

fn run_group(cmd: GroupCmd) -> Result<String, CliError> {
    match cmd {
        GroupCmd::Analyze { file, bound, subgroup_bound, format } => {
            let text = read_file(&file)?;
            let gens = group_from_json_str(&text).map_err(group_error)?;
            let g = enumerate_group(&gens, bound).map_err(group_error)?;
            let refl = pseudo_reflections(&g);
            let codim2 = codim2_property(&g, subgroup_bound).map_err(group_error)?;
            let sym = preserves_form(&g, FormKind::Symmetric);
            let alt = preserves_form(&g, FormKind::Alternating);
            let form_status = |f: &FormSearch| match f {
                FormSearch::Found(_) => "found",
                FormSearch::None => "none",
                FormSearch::Indeterminate { .. } => "indeterminate",
            };
            match format {
                Format::Text => {
                    let mut lines = Vec::new();
                    lines.push(format!("order {}", g.order()));
                    lines.push(format!("pseudo-reflections {}", refl.len()));
                    match &codim2.witness {
                        None => lines.push("codim2 true".to_string()),
                        Some(w) => {
                            let a: Vec<String> =
                                w.normal_subgroup.members.iter().map(|m| m.to_string()).collect();
                            let b: Vec<String> =
                                w.overgroup.members.iter().map(|m| m.to_string()).collect();
                            lines.push(format!(
                                "codim2 false (A=[{}] B=[{}] dims {} {})",
                                a.join(","),
                                b.join(","),
                                w.dim_fixed_normal,
                                w.dim_fixed_over
                            ));
                        }
                    }
                    lines.push(format!("symmetric-form {}", form_status(&sym)));
                    lines.push(format!("alternating-form {}", form_status(&alt)));
                    Ok(lines.join("\n"))
                }
                Format::Json => {
                    let witness = codim2.witness.as_ref().map(|w| {
                        json!({
                            "normal_subgroup": w.normal_subgroup.members,
                            "overgroup": w.overgroup.members,
                            "dim_fixed_normal": w.dim_fixed_normal,
                            "dim_fixed_over": w.dim_fixed_over,
                        })
                    });
                    let form_json = |f: &FormSearch| match f {
                        FormSearch::Found(m) => json!({ "status": "found", "form": mat_json(m) }),
                        FormSearch::None => json!({ "status": "none" }),
                        FormSearch::Indeterminate { space_dim } => {
                            json!({ "status": "indeterminate", "space_dim": space_dim })
                        }
                    };
                    Ok(json!({
                        "order": g.order(),
                        "n": g.n(),
                        "pseudo_reflections": refl,
                        "codim2": {
                            "holds": codim2.holds,
                            "subgroup_count": codim2.subgroup_count,
                            "witness": witness,
                        },
                        "symmetric_form": form_json(&sym),
                        "alternating_form": form_json(&alt),
                    })
                    .to_string())
                }
            }
        }
        GroupCmd::Regular { file, format } => {
            let text = read_file(&file)?;
            let table = table_from_json_str(&text).map_err(group_error)?;
            let g = regular_rep(&table).map_err(group_error)?;
            match format {
                Format::Text | Format::Json => Ok(group_doc(&g).to_string()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            let written = writeln!(stdout, "{}", out).and_then(|_| stdout.flush());
            match written {
                Ok(()) => ExitCode::SUCCESS,
                // a consumer that stopped reading is not our error
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {}", e);
                    ExitCode::from(2)
                }
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Err(CliError::Domain(obj)) => {
            eprintln!("{}", obj);
            ExitCode::from(1)
        }
    }
}
