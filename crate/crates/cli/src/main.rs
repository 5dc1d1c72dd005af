//! Batch command-line interface over the matchfields library. One job per
//! invocation; results go to standard output as text or, with `--json`, as a
//! deterministic result document.

mod input;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use matchfields::matching_field::MatchingField;
use matchfields::matroid::{algebraic_matroid, is_matroidal, matroid_subdivision};
use matchfields::pluecker::{
    is_toric_degeneration, matching_field_ideal, matching_field_polytope, newton_okounkov_body,
    pluecker_forms, pluecker_ideal, ToricMethod,
};
use matchfields::poly::{Ideal, Order};
use matchfields::polyhedra::{ehrhart_polynomial, lattice_normalized_volume, lattice_point_count};
use matchfields::tope::TopeField;
use matchfields::{Error, Limits};
use serde_json::{json, Value};
use std::io::{Read, Write};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "matchfields",
    version,
    about = "Matching fields for Grassmannians and partial flag varieties: \
             tuples, coherence, ideals, toric degenerations, polytopes, \
             Newton-Okounkov bodies, matroids, and tope fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a JSON result document instead of plain text
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args)]
struct SourceOpts {
    /// Diagonal field: GRADES (comma-separated) and N
    #[arg(long, num_args = 2, value_names = ["GRADES", "N"])]
    diagonal: Option<Vec<String>>,
    /// Permutation-induced Grassmannian field: K, N, SIGMA (comma-separated)
    #[arg(long, num_args = 3, value_names = ["K", "N", "SIGMA"])]
    permutation: Option<Vec<String>>,
    /// Weight matrix, rows ";"-separated and entries ","-separated, or @FILE
    #[arg(long, value_name = "MATRIX")]
    weight: Option<String>,
    /// Tuple list: grades ";"-separated, tuples ","-separated, entries
    /// concatenated when n <= 9 (else space-separated), or @FILE
    #[arg(long, value_name = "TUPLES")]
    tuples: Option<String>,
    /// JSON document previously produced by `tuples --json` ("-" for stdin)
    #[arg(long, value_name = "FILE")]
    tuples_json: Option<String>,
    /// Grades, comma-separated; required with --tuples, optional with
    /// --weight (defaults to the row count)
    #[arg(short = 'k', long = "grades", value_name = "GRADES")]
    grades: Option<String>,
    /// Ground set size; required with --tuples, checked against --weight
    #[arg(short = 'n', long = "ground", value_name = "N")]
    n: Option<usize>,
}

#[derive(Args)]
struct CommonArgs {
    #[command(flatten)]
    source: SourceOpts,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MethodOpt {
    Groebner,
    Volume,
    Subduction,
}

#[derive(Args)]
struct ToricArgs {
    #[command(flatten)]
    source: SourceOpts,
    /// Degeneration test to run
    #[arg(long, value_enum, default_value = "groebner")]
    method: MethodOpt,
}

#[derive(Args)]
struct PolytopeArgs {
    #[command(flatten)]
    source: SourceOpts,
    /// Print the vertices, flattened row-major (default)
    #[arg(long, group = "mode")]
    vertices: bool,
    /// Print the lattice-normalized volume
    #[arg(long, group = "mode")]
    volume: bool,
    /// Print the lattice point count of the R-th dilate together with the
    /// Ehrhart polynomial coefficients
    #[arg(long, value_name = "R", group = "mode")]
    ehrhart: Option<u32>,
}

#[derive(Args)]
struct NobodyArgs {
    #[command(flatten)]
    source: SourceOpts,
    /// Override the SAGBI degree cap
    #[arg(long, value_name = "D")]
    degree_cap: Option<u32>,
}

#[derive(Args)]
struct SubdivisionArgs {
    #[command(flatten)]
    source: SourceOpts,
    /// Also report whether every cell satisfies basis exchange
    #[arg(long)]
    check_matroidal: bool,
}

#[derive(Args)]
struct MatroidArgs {
    #[command(flatten)]
    source: SourceOpts,
    /// List all bases
    #[arg(long, group = "mode")]
    bases: bool,
    /// List all circuits
    #[arg(long, group = "mode")]
    circuits: bool,
    /// Print the rank only
    #[arg(long, group = "mode")]
    rank: bool,
}

#[derive(Args)]
struct TopeArgs {
    #[command(flatten)]
    source: SourceOpts,
    /// Test the linkage property
    #[arg(long, group = "mode")]
    linkage: bool,
    /// Amalgamate at these block indices, left to right
    #[arg(long, value_name = "I[,J,...]", group = "mode")]
    amalgamate: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// List the tuples, one grade per line
    Tuples(CommonArgs),
    /// Report whether the field is coherent
    Coherent(CommonArgs),
    /// Print a weight matrix inducing the field
    WeightMatrix(CommonArgs),
    /// Print the induced weight on the Pluecker variables
    PlueckerWeight(CommonArgs),
    /// Generators of the matching field ideal
    Ideal(CommonArgs),
    /// Generators of the Pluecker ideal
    PlueckerIdeal(CommonArgs),
    /// Test for a toric degeneration
    Toric(ToricArgs),
    /// Matching field polytope
    Polytope(PolytopeArgs),
    /// Newton-Okounkov body
    Nobody(NobodyArgs),
    /// Matroid subdivision of the hypersimplex
    Subdivision(SubdivisionArgs),
    /// Algebraic matroid of the field
    Matroid(MatroidArgs),
    /// Tope field queries
    Tope(TopeArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Tuples(_) => "tuples",
            Command::Coherent(_) => "coherent",
            Command::WeightMatrix(_) => "weight-matrix",
            Command::PlueckerWeight(_) => "pluecker-weight",
            Command::Ideal(_) => "ideal",
            Command::PlueckerIdeal(_) => "pluecker-ideal",
            Command::Toric(_) => "toric",
            Command::Polytope(_) => "polytope",
            Command::Nobody(_) => "nobody",
            Command::Subdivision(_) => "subdivision",
            Command::Matroid(_) => "matroid",
            Command::Tope(_) => "tope",
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = if e.is_resource() {
            4
        } else if matches!(e, Error::Parse(_)) {
            2
        } else {
            3
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// Successful run: the field plus the command payload in both formats.
struct Outcome {
    field: MatchingField,
    payload: Value,
    text: String,
}

/// Print to stdout, treating a closed pipe as a normal early exit rather
/// than an error (e.g. when output is piped into `head`). Returns false
/// only on a genuine write failure.
fn print_stdout(text: &str) -> bool {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}").and_then(|()| out.flush()) {
        Ok(()) => true,
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => true,
        Err(e) => {
            eprintln!("error: failed writing to stdout: {e}");
            false
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    match execute(&cli.command) {
        Ok(outcome) => {
            let text = if cli.json {
                let doc = output::document(name, &outcome.field, outcome.payload);
                serde_json::to_string_pretty(&doc).expect("serialize")
            } else {
                outcome.text
            };
            if print_stdout(&text) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(failure) => {
            if cli.json {
                let doc = output::error_document(name, &failure.message);
                if !print_stdout(&serde_json::to_string_pretty(&doc).expect("serialize")) {
                    return ExitCode::FAILURE;
                }
            } else {
                eprintln!("error: {}", failure.message);
            }
            ExitCode::from(failure.code)
        }
    }
}

fn execute(command: &Command) -> Result<Outcome, Failure> {
    let limits = limits_from_env()?;
    match command {
        Command::Tuples(args) => {
            let mf = build_field(&args.source)?;
            let lines: Vec<String> = (0..mf.grades().len())
                .map(|g| {
                    let tuples: Vec<String> = mf
                        .tuples_of_grade(g)
                        .iter()
                        .map(|t| output::entries_text(t, mf.n()))
                        .collect();
                    tuples.join(",")
                })
                .collect();
            let payload: Vec<Value> = (0..mf.grades().len())
                .map(|g| json!(mf.tuples_of_grade(g)))
                .collect();
            Ok(Outcome {
                payload: Value::Array(payload),
                text: lines.join("\n"),
                field: mf,
            })
        }
        Command::Coherent(args) => {
            let mf = build_field(&args.source)?;
            let verdict = mf.is_coherent();
            Ok(Outcome {
                payload: json!(verdict),
                text: verdict.to_string(),
                field: mf,
            })
        }
        Command::WeightMatrix(args) => {
            let mf = build_field(&args.source)?;
            let rows = mf.weight_matrix()?;
            Ok(Outcome {
                payload: output::weight_value(&rows),
                text: output::weight_text(&rows),
                field: mf,
            })
        }
        Command::PlueckerWeight(args) => {
            let mf = build_field(&args.source)?;
            let w = mf.induced_weight()?;
            Ok(Outcome {
                payload: Value::Array(w.iter().map(output::int_value).collect()),
                text: output::join(w.iter(), ","),
                field: mf,
            })
        }
        Command::Ideal(args) => {
            let mf = build_field(&args.source)?;
            let ideal = matching_field_ideal(&mf, &limits)?;
            Ok(render_ideal(mf, &ideal))
        }
        Command::PlueckerIdeal(args) => {
            let mf = build_field(&args.source)?;
            let pa = pluecker_forms(mf.grades(), mf.n())?;
            let ideal = pluecker_ideal(&pa, &limits)?;
            Ok(render_ideal(mf, &ideal))
        }
        Command::Toric(args) => {
            let mf = build_field(&args.source)?;
            let method = match args.method {
                MethodOpt::Groebner => ToricMethod::Groebner,
                MethodOpt::Volume => ToricMethod::Volume,
                MethodOpt::Subduction => ToricMethod::Subduction,
            };
            let verdict = is_toric_degeneration(&mf, method, &limits)?;
            Ok(Outcome {
                payload: json!(verdict),
                text: verdict.to_string(),
                field: mf,
            })
        }
        Command::Polytope(args) => {
            let mf = build_field(&args.source)?;
            let p = matching_field_polytope(&mf);
            if args.volume {
                let v = lattice_normalized_volume(&p)?;
                Ok(Outcome {
                    payload: output::rat_value(&v),
                    text: output::rat_text(&v),
                    field: mf,
                })
            } else if let Some(dilate) = args.ehrhart {
                let count = lattice_point_count(&p, dilate, &limits)?;
                let coeffs = ehrhart_polynomial(&p, &limits)?;
                let coeff_texts: Vec<String> = coeffs.iter().map(output::rat_text).collect();
                Ok(Outcome {
                    payload: json!({
                        "dilate": dilate,
                        "count": count,
                        "coefficients": coeff_texts,
                    }),
                    text: format!("count={}\ncoefficients={}", count, coeff_texts.join(",")),
                    field: mf,
                })
            } else {
                let (payload, text) = vertices_output(&p.vertices);
                Ok(Outcome {
                    payload,
                    text,
                    field: mf,
                })
            }
        }
        Command::Nobody(args) => {
            let mf = build_field(&args.source)?;
            let mut limits = limits;
            if let Some(cap) = args.degree_cap {
                limits.degree_cap = cap;
            }
            let body = newton_okounkov_body(&mf, &limits)?;
            let volume = lattice_normalized_volume(&body.polytope)?;
            let (vertices, vertex_lines) = vertices_output(&body.polytope.vertices);
            Ok(Outcome {
                payload: json!({
                    "vertices": vertices,
                    "volume": output::rat_text(&volume),
                }),
                text: format!("{}\nvolume={}", vertex_lines, output::rat_text(&volume)),
                field: mf,
            })
        }
        Command::Subdivision(args) => {
            let mf = build_field(&args.source)?;
            let cells = matroid_subdivision(&mf)?;
            let mut lines: Vec<String> = cells
                .iter()
                .map(|cell| {
                    let subsets: Vec<String> = cell
                        .iter()
                        .map(|s| output::entries_text(s, mf.n()))
                        .collect();
                    subsets.join(",")
                })
                .collect();
            let payload = if args.check_matroidal {
                let verdict = is_matroidal(&cells);
                lines.push(format!("matroidal={verdict}"));
                json!({ "cells": cells, "matroidal": verdict })
            } else {
                json!(cells)
            };
            Ok(Outcome {
                payload,
                text: lines.join("\n"),
                field: mf,
            })
        }
        Command::Matroid(args) => {
            let mf = build_field(&args.source)?;
            let m = algebraic_matroid(&mf)?;
            if args.bases || args.circuits {
                let index_sets = if args.bases {
                    m.bases(&limits)?
                } else {
                    m.circuits(&limits)?
                };
                let labelled = m.label_sets(&index_sets);
                let lines: Vec<String> = labelled
                    .iter()
                    .map(|set| {
                        let subsets: Vec<String> = set
                            .iter()
                            .map(|s| output::entries_text(s, mf.n()))
                            .collect();
                        subsets.join(",")
                    })
                    .collect();
                Ok(Outcome {
                    payload: json!(labelled),
                    text: lines.join("\n"),
                    field: mf,
                })
            } else if args.rank {
                Ok(Outcome {
                    payload: json!(m.rank()),
                    text: m.rank().to_string(),
                    field: mf,
                })
            } else {
                Ok(Outcome {
                    payload: json!({ "rank": m.rank(), "elements": m.size() }),
                    text: format!("rank {} on {} elements", m.rank(), m.size()),
                    field: mf,
                })
            }
        }
        Command::Tope(args) => {
            let mf = build_field(&args.source)?;
            let tf = TopeField::from_matching_field(&mf)?;
            if args.linkage {
                let verdict = tf.is_linkage();
                Ok(Outcome {
                    payload: json!(verdict),
                    text: verdict.to_string(),
                    field: mf,
                })
            } else if let Some(indices_text) = &args.amalgamate {
                let indices = input::parse_usize_list(indices_text, "block index")?;
                let blocks = tf.tope_type().len();
                for &i in &indices {
                    if !(1..=blocks).contains(&i) {
                        return Err(usage(format!(
                            "block index {i} outside 1..={blocks}"
                        )));
                    }
                }
                let result = tf.amalgamation_sequence(&indices)?;
                let mut lines = vec![format!(
                    "type={}",
                    output::join(result.tope_type().iter(), ",")
                )];
                for tuple in result.tuples() {
                    lines.push(output::entries_text(tuple, result.n()));
                }
                Ok(Outcome {
                    payload: json!({
                        "type": result.tope_type(),
                        "tuples": result.tuples(),
                    }),
                    text: lines.join("\n"),
                    field: mf,
                })
            } else {
                Ok(Outcome {
                    payload: json!({ "n": tf.n(), "type": tf.tope_type() }),
                    text: format!(
                        "n={} type={}",
                        tf.n(),
                        output::join(tf.tope_type().iter(), ",")
                    ),
                    field: mf,
                })
            }
        }
    }
}

fn render_ideal(mf: MatchingField, ideal: &Ideal) -> Outcome {
    let order = Order::grevlex(&ideal.ring);
    let gens: Vec<String> = ideal
        .gens
        .iter()
        .map(|g| g.render(&ideal.ring, &order))
        .collect();
    let text = if gens.is_empty() {
        "0".to_string()
    } else {
        gens.join("\n")
    };
    Outcome {
        payload: json!(gens),
        text,
        field: mf,
    }
}

/// Vertex list as JSON plus one line per vertex. Integral coordinates render
/// as JSON integers; fractional ones as exact strings.
fn vertices_output(vertices: &[Vec<matchfields::linalg::Rat>]) -> (Value, String) {
    let payload: Vec<Value> = vertices
        .iter()
        .map(|v| Value::Array(v.iter().map(output::rat_value).collect()))
        .collect();
    let lines: Vec<String> = vertices
        .iter()
        .map(|v| {
            let coords: Vec<String> = v.iter().map(output::rat_text).collect();
            coords.join(",")
        })
        .collect();
    (Value::Array(payload), lines.join("\n"))
}

fn build_field(src: &SourceOpts) -> Result<MatchingField, Failure> {
    let provided = [
        src.diagonal.is_some(),
        src.permutation.is_some(),
        src.weight.is_some(),
        src.tuples.is_some(),
        src.tuples_json.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if provided != 1 {
        return Err(usage(
            "exactly one of --diagonal, --permutation, --weight, --tuples, --tuples-json is required",
        ));
    }

    if let Some(vals) = &src.diagonal {
        reject_field_shape_flags(src, "--diagonal")?;
        let grades = input::parse_usize_list(&vals[0], "grade")?;
        let n = parse_single(&vals[1], "n")?;
        return Ok(MatchingField::diagonal(&grades, n)?);
    }
    if let Some(vals) = &src.permutation {
        reject_field_shape_flags(src, "--permutation")?;
        let k = parse_single(&vals[0], "k")?;
        let n = parse_single(&vals[1], "n")?;
        let sigma = input::parse_usize_list(&vals[2], "permutation")?;
        return Ok(MatchingField::from_permutation(k, n, &sigma)?);
    }
    if let Some(raw) = &src.weight {
        let text = read_arg_text(raw)?;
        let rows = input::parse_weight_matrix(&text)?;
        let n = rows[0].len();
        if let Some(given) = src.n {
            if given != n {
                return Err(usage(format!(
                    "-n {given} disagrees with the {n}-column weight matrix"
                )));
            }
        }
        let grades = match &src.grades {
            Some(g) => input::parse_usize_list(g, "grade")?,
            None => vec![rows.len()],
        };
        return Ok(MatchingField::from_weight_matrix(&grades, n, rows)?);
    }
    if let Some(raw) = &src.tuples {
        let text = read_arg_text(raw)?;
        let n = src
            .n
            .ok_or_else(|| usage("--tuples requires -n (ground set size)"))?;
        let grades_text = src
            .grades
            .as_ref()
            .ok_or_else(|| usage("--tuples requires -k/--grades"))?;
        let grades = input::parse_usize_list(grades_text, "grade")?;
        let tuples = input::parse_tuple_text(&text, n)?;
        return Ok(MatchingField::from_tuples(&grades, n, &tuples)?);
    }
    if let Some(path) = &src.tuples_json {
        reject_field_shape_flags(src, "--tuples-json")?;
        let text = if path == "-" {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| usage(format!("cannot read stdin: {e}")))?;
            buf
        } else {
            std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {path}: {e}")))?
        };
        let (grades, n, tuples) = input::parse_tuples_document(&text)?;
        return Ok(MatchingField::from_tuples(&grades, n, &tuples)?);
    }
    unreachable!("a source was counted above")
}

fn reject_field_shape_flags(src: &SourceOpts, source_name: &str) -> Result<(), Failure> {
    if src.grades.is_some() || src.n.is_some() {
        return Err(usage(format!(
            "-k/--grades and -n do not apply to {source_name}"
        )));
    }
    Ok(())
}

fn parse_single(text: &str, what: &str) -> Result<usize, Failure> {
    text.trim()
        .parse::<usize>()
        .map_err(|_| usage(format!("invalid {what}: {text:?}")))
}

/// `@FILE` values load the file; anything else is taken literally.
fn read_arg_text(raw: &str) -> Result<String, Failure> {
    match raw.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {path}: {e}"))),
        None => Ok(raw.to_string()),
    }
}

fn limits_from_env() -> Result<Limits, Failure> {
    let mut limits = Limits::default();
    if let Some(v) = env_value("MF_PAIR_BUDGET")? {
        limits.pair_budget = v
            .parse()
            .map_err(|_| usage(format!("invalid MF_PAIR_BUDGET: {v:?}")))?;
    }
    if let Some(v) = env_value("MF_ENUM_BUDGET")? {
        limits.enum_budget = v
            .parse()
            .map_err(|_| usage(format!("invalid MF_ENUM_BUDGET: {v:?}")))?;
    }
    if let Some(v) = env_value("MF_DEGREE_CAP")? {
        limits.degree_cap = v
            .parse()
            .map_err(|_| usage(format!("invalid MF_DEGREE_CAP: {v:?}")))?;
    }
    Ok(limits)
}

fn env_value(name: &str) -> Result<Option<String>, Failure> {
    match std::env::var(name) {
        Ok(v) => Ok(Some(v)),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(usage(format!("cannot read {name}: {e}"))),
    }
}
