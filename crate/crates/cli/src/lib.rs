//! The `laumut` command line.
//!
//! Every subcommand prints one JSON document. Exit status 0 means success,
//! 1 a domain failure (the document then describes it), 2 a usage or parse
//! error (message on stderr).

pub mod svg;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use laumut::deformation::{
    build_family_with_options, verify_main_theorem_with_options, FamilyOptions,
};
use laumut::laurent::{newton_polytope, parse, parse_with_rank, LaurentPolynomial, ParseError};
use laumut::mutation::{apply_mutation, facet_mutation_spec, is_mutation, MutationSpec};
use laumut::mutgraph::{canonical_form, explore_graph, mutation_neighbors, NeighborOutcome};
use laumut::polyhedra::{contains_origin_interior, dual_ehrhart_counts, DEFAULT_WITNESS_BOUND};
use laumut::{Error, LatticeVector};

use svg::{render_panels, Panel};

pub const WITNESS_BOUND_VAR: &str = "LAUMUT_WITNESS_BOUND";

#[derive(Parser, Debug)]
#[command(name = "laumut", version, about = "Mutations of Laurent polynomials and their toric degenerations")]
pub struct CommandRequest {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Newton polytope, facets and dual Ehrhart counts of each input.
    Newton {
        #[command(flatten)]
        input: InputArgs,
        /// Largest dilation for dual Ehrhart counts (0 to skip).
        #[arg(long, default_value_t = 6)]
        kmax: u32,
    },
    /// Edges of the Newton polygon and whether each facet mutation applies.
    Facets {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Divisibility test and the hypotheses of the degeneration theorem.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        direction: DirectionArgs,
    },
    /// Apply a mutation.
    Mutate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        direction: DirectionArgs,
        /// Also draw the two Newton polygons.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Polyhedra and cones of the degeneration.
    Family {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        direction: DirectionArgs,
        /// Also draw delta0, delta_inf, delta00 and delta01.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Run every check of the degeneration and report each.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        direction: DirectionArgs,
    },
    /// Breadth-first exploration of facet mutations.
    Graph {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
    /// Draw Newton polygons (or the polyhedra of a family) as SVG.
    Render {
        #[command(flatten)]
        input: InputArgs,
        /// Draw the family polyhedra instead of the Newton polygons.
        #[arg(long)]
        family: bool,
        #[command(flatten)]
        direction: DirectionArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// A Laurent polynomial, e.g. "x^-1*y + 2*y + x*y + y^-1". Repeatable.
    #[arg(long = "f", value_name = "POLY")]
    pub polys: Vec<String>,
    /// File with one polynomial per line; `#` starts a comment.
    #[arg(long, value_name = "PATH")]
    pub file: Option<PathBuf>,
    /// Number of variables (default: highest variable used).
    #[arg(long)]
    pub rank: Option<usize>,
    /// Write the document here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Pretty-print JSON and add a short summary on stderr.
    #[arg(long)]
    pub pretty: bool,
}

#[derive(Args, Debug, Clone, Default)]
pub struct DirectionArgs {
    /// Variable to divide: x, y, z or z1, z2, ...
    #[arg(long, value_name = "VAR")]
    pub divide: Option<String>,
    /// Mutation direction as a covector, e.g. "0,1".
    #[arg(long, value_name = "COVECTOR", allow_hyphen_values = true)]
    pub u: Option<String>,
    /// Facet index from `laumut facets`; the divisor is then 1 + x in an adapted basis.
    #[arg(long, value_name = "INDEX")]
    pub facet: Option<usize>,
    /// Divisor g, in the variables of the polynomial.
    #[arg(long = "by", value_name = "POLY")]
    pub divisor: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Json,
    Dot,
}

/// What to print and with which exit status.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub body: String,
    pub summary: Option<String>,
}

/// A usage or parse problem: exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<ParseError> for UsageError {
    fn from(e: ParseError) -> Self {
        UsageError(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, UsageError>;

fn witness_bound() -> CliResult<i64> {
    match std::env::var(WITNESS_BOUND_VAR) {
        Err(_) => Ok(DEFAULT_WITNESS_BOUND),
        Ok(v) => v
            .trim()
            .parse::<i64>()
            .ok()
            .filter(|b| *b >= 0)
            .ok_or_else(|| UsageError(format!("{WITNESS_BOUND_VAR} must be a nonnegative integer, got {v:?}"))),
    }
}

fn read_polys(input: &InputArgs) -> CliResult<Vec<LaurentPolynomial>> {
    let mut texts: Vec<(String, String)> = input
        .polys
        .iter()
        .map(|t| ("--f".to_string(), t.clone()))
        .collect();
    if let Some(path) = &input.file {
        let content = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
        for (i, line) in content.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                texts.push((format!("{}:{}", path.display(), i + 1), line.to_string()));
            }
        }
    }
    if texts.is_empty() {
        return Err(UsageError("no input polynomial: use --f or --file".into()));
    }
    texts
        .into_iter()
        .map(|(origin, t)| {
            let parsed = match input.rank {
                Some(r) => parse_with_rank(&t, r),
                None => parse(&t),
            };
            parsed.map_err(|e| UsageError(format!("{origin}: {e}\n  {t}\n  {}^", " ".repeat(e.position))))
        })
        .collect()
}

fn single_poly(input: &InputArgs) -> CliResult<LaurentPolynomial> {
    let mut polys = read_polys(input)?;
    if polys.len() != 1 {
        return Err(UsageError(format!("expected one polynomial, got {}", polys.len())));
    }
    Ok(polys.remove(0))
}

fn variable_index(name: &str, rank: usize) -> CliResult<usize> {
    let idx = match name {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        _ => name
            .strip_prefix('z')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| i >= 1)
            .map(|i| i - 1),
    };
    match idx {
        Some(i) if i < rank => Ok(i),
        _ => Err(UsageError(format!("unknown variable {name:?} for a polynomial in {rank} variables"))),
    }
}

fn parse_covector(text: &str, rank: usize) -> CliResult<LatticeVector> {
    let coords: std::result::Result<Vec<i64>, _> = text.split(',').map(|c| c.trim().parse::<i64>()).collect();
    let coords = coords.map_err(|_| UsageError(format!("cannot read covector {text:?}")))?;
    if coords.len() != rank {
        return Err(UsageError(format!("covector {text:?} needs {rank} entries")));
    }
    Ok(LatticeVector::from_i64(&coords))
}

/// Builds the `MutationSpec`; library errors here are usage errors (bad direction or divisor).
fn read_spec(f: &LaurentPolynomial, d: &DirectionArgs) -> CliResult<MutationSpec> {
    let given = [d.divide.is_some(), d.u.is_some(), d.facet.is_some()]
        .iter()
        .filter(|b| **b)
        .count();
    if given != 1 {
        return Err(UsageError("give exactly one of --divide, --u, --facet".into()));
    }
    let rank = f.rank();
    if let Some(i) = d.facet {
        if d.divisor.is_some() {
            return Err(UsageError("--by is implied by --facet".into()));
        }
        let p = newton_polytope(f).map_err(|e| UsageError(e.to_string()))?;
        return facet_mutation_spec(&p, i).map_err(|e| UsageError(format!("facet {i}: {e}")));
    }
    let text = d
        .divisor
        .as_deref()
        .ok_or_else(|| UsageError("--by is required with --divide and --u".into()))?;
    let g = parse_with_rank(text, rank).map_err(|e| UsageError(format!("--by: {e}")))?;
    let spec = if let Some(v) = &d.divide {
        MutationSpec::divide_variable(rank, variable_index(v, rank)?, &g)
    } else {
        MutationSpec::new(&parse_covector(d.u.as_deref().unwrap_or_default(), rank)?, &g)
    };
    spec.map_err(|e| UsageError(e.to_string()))
}

fn to_json<T: Serialize>(value: &T, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("serializable")
    } else {
        serde_json::to_string(value).expect("serializable")
    }
}

fn failure(kind: &str, e: &Error) -> Value {
    let details: Vec<String> = match e {
        Error::Hypotheses(v) => v.clone(),
        other => vec![other.to_string()],
    };
    json!({ "ok": false, "error": kind, "details": details })
}

fn write_svg(path: &Path, panels: &[Panel]) -> CliResult<std::result::Result<(), Error>> {
    match render_panels(panels) {
        Ok(svg) => {
            std::fs::write(path, svg)
                .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
            Ok(Ok(()))
        }
        Err(e) => Ok(Err(e)),
    }
}

fn newton_doc(f: &LaurentPolynomial, kmax: u32) -> Value {
    let p = match newton_polytope(f) {
        Ok(p) => p,
        Err(e) => return json!({ "polynomial": f.to_string(), "error": e.to_string() }),
    };
    let vertices = if f.rank() == 2 {
        p.polygon_cycle().unwrap_or_else(|_| p.vertices().to_vec())
    } else {
        p.vertices().to_vec()
    };
    let interior = contains_origin_interior(&p);
    let mut doc = json!({
        "polynomial": f.to_string(),
        "rank": f.rank(),
        "vertices": vertices,
        "halfspaces": p.halfspaces(),
        "equations": p.equations(),
        "origin_interior": interior,
    });
    if interior && kmax > 0 {
        if let Ok(c) = dual_ehrhart_counts(&p, kmax) {
            doc["dual_ehrhart"] = json!(c);
        }
    }
    if f.rank() == 2 {
        if let Ok(form) = canonical_form(&p) {
            doc["canonical_form"] = json!(form);
        }
    }
    doc
}

/// Runs one request. Usage problems come back as `Err`.
pub fn run(request: &CommandRequest) -> CliResult<Outcome> {
    let bound = witness_bound()?;
    let options = FamilyOptions { witness_bound: bound };
    let ok = |body: String, summary: Option<String>| Outcome { code: 0, body, summary };
    let fail = |body: String, summary: Option<String>| Outcome { code: 1, body, summary };

    match &request.command {
        Command::Newton { input, kmax } => {
            let polys = read_polys(input)?;
            let docs: Vec<Value> = polys.iter().map(|f| newton_doc(f, *kmax)).collect();
            let any_error = docs.iter().any(|d| d.get("error").is_some());
            let body = if docs.len() == 1 {
                to_json(&docs[0], input.pretty)
            } else {
                to_json(&docs, input.pretty)
            };
            let summary = Some(format!("{} polytope(s)", docs.len()));
            Ok(if any_error { fail(body, summary) } else { ok(body, summary) })
        }
        Command::Facets { input } => {
            let f = single_poly(input)?;
            match mutation_neighbors(&f) {
                Ok(ns) => {
                    let rows: Vec<Value> = ns
                        .iter()
                        .map(|n| {
                            let mut row = json!({
                                "facet": n.facet,
                                "edge": [n.edge.0, n.edge.1],
                                "u": n.u,
                                "divisor": n.divisor.to_string(),
                            });
                            match &n.outcome {
                                NeighborOutcome::Mutated { polynomial, .. } => {
                                    row["mutable"] = json!(true);
                                    row["mutated"] = json!(polynomial.to_string());
                                }
                                NeighborOutcome::NotDivisible { slice } => {
                                    row["mutable"] = json!(false);
                                    row["failing_slice"] = json!(slice);
                                }
                            }
                            row
                        })
                        .collect();
                    let mutable = ns
                        .iter()
                        .filter(|n| matches!(n.outcome, NeighborOutcome::Mutated { .. }))
                        .count();
                    Ok(ok(
                        to_json(&json!({ "polynomial": f.to_string(), "facets": rows }), input.pretty),
                        Some(format!("{} facets, {mutable} mutable", ns.len())),
                    ))
                }
                Err(e) => Ok(fail(to_json(&failure("precondition", &e), input.pretty), Some(e.to_string()))),
            }
        }
        Command::Check { input, direction } => {
            let f = single_poly(input)?;
            let spec = read_spec(&f, direction)?;
            let (divisible, report) = match is_mutation(&f, &spec) {
                Ok(r) => r,
                Err(e) => return Ok(fail(to_json(&failure("precondition", &e), input.pretty), Some(e.to_string()))),
            };
            let mut hypotheses = Vec::new();
            if !divisible {
                hypotheses.push(format!(
                    "not a mutation: slice {} is not divisible",
                    report.first_failure().unwrap_or_default()
                ));
            }
            match newton_polytope(&f) {
                Ok(p) if contains_origin_interior(&p) => {}
                _ => hypotheses.push("origin not in interior of the Newton polytope".into()),
            }
            if report.k >= 0 || report.l <= 0 {
                hypotheses.push(format!(
                    "slice range k = {}, l = {} does not satisfy k < 0 < l",
                    report.k, report.l
                ));
            }
            let passed = hypotheses.is_empty();
            let doc = json!({
                "ok": passed,
                "is_mutation": divisible,
                "hypotheses_failed": hypotheses,
                "spec": spec,
                "report": report,
            });
            let summary = Some(if passed {
                "mutation; hypotheses hold".to_string()
            } else {
                hypotheses.join("; ")
            });
            let body = to_json(&doc, input.pretty);
            Ok(if passed { ok(body, summary) } else { fail(body, summary) })
        }
        Command::Mutate { input, direction, svg } => {
            let f = single_poly(input)?;
            let spec = read_spec(&f, direction)?;
            match apply_mutation(&f, &spec) {
                Ok(phi) => {
                    let doc = json!({
                        "ok": true,
                        "input": f.to_string(),
                        "spec": spec,
                        "mutated": phi.to_string(),
                        "support": phi.support(),
                    });
                    if let Some(path) = svg {
                        let panels = match (newton_polytope(&f), newton_polytope(&phi)) {
                            (Ok(a), Ok(b)) => vec![Panel::new("f", a), Panel::new("phi(f)", b)],
                            _ => vec![],
                        };
                        if let Err(e) = write_svg(path, &panels)? {
                            return Ok(fail(to_json(&failure("render", &e), input.pretty), Some(e.to_string())));
                        }
                    }
                    Ok(ok(to_json(&doc, input.pretty), Some(phi.to_string())))
                }
                Err(e) => Ok(fail(to_json(&failure("not_a_mutation", &e), input.pretty), Some(e.to_string()))),
            }
        }
        Command::Family { input, direction, svg } => {
            let f = single_poly(input)?;
            let spec = read_spec(&f, direction)?;
            match build_family_with_options(&f, &spec, options) {
                Ok(fam) => {
                    if let Some(path) = svg {
                        if let Err(e) = write_svg(path, &family_panels(&fam))? {
                            return Ok(fail(to_json(&failure("render", &e), input.pretty), Some(e.to_string())));
                        }
                    }
                    Ok(ok(
                        to_json(&fam, input.pretty),
                        Some(format!("sigma_inf has {} rays", fam.sigma_inf.rays().len())),
                    ))
                }
                Err(e) => Ok(fail(to_json(&failure("family", &e), input.pretty), Some(e.to_string()))),
            }
        }
        Command::Verify { input, direction } => {
            let f = single_poly(input)?;
            let spec = read_spec(&f, direction)?;
            let report = verify_main_theorem_with_options(&f, &spec, options);
            let summary = report
                .checks
                .iter()
                .map(|c| format!("{:<30} {:?}", c.name, c.status))
                .collect::<Vec<_>>()
                .join("\n");
            let body = to_json(&report, input.pretty);
            Ok(if report.passed { ok(body, Some(summary)) } else { fail(body, Some(summary)) })
        }
        Command::Graph { input, depth, format } => {
            let f = single_poly(input)?;
            match explore_graph(&f, *depth) {
                Ok(g) => {
                    let body = match format {
                        GraphFormat::Json if input.pretty => g.to_json(),
                        GraphFormat::Json => serde_json::to_string(&g).expect("serializable"),
                        GraphFormat::Dot => g.to_dot(),
                    };
                    Ok(ok(
                        body,
                        Some(format!("{} nodes, {} edges, {} failed facets", g.nodes.len(), g.edges.len(), g.failures.len())),
                    ))
                }
                Err(e) => Ok(fail(to_json(&failure("precondition", &e), input.pretty), Some(e.to_string()))),
            }
        }
        Command::Render { input, family, direction } => {
            let polys = read_polys(input)?;
            let panels = if *family {
                let f = &polys[0];
                let spec = read_spec(f, direction)?;
                match build_family_with_options(f, &spec, options) {
                    Ok(fam) => family_panels(&fam),
                    Err(e) => return Ok(fail(to_json(&failure("family", &e), input.pretty), Some(e.to_string()))),
                }
            } else {
                let mut panels = Vec::new();
                for f in &polys {
                    match newton_polytope(f) {
                        Ok(p) => panels.push(Panel::new(f.to_string(), p)),
                        Err(e) => return Ok(fail(to_json(&failure("render", &e), input.pretty), Some(e.to_string()))),
                    }
                }
                panels
            };
            match render_panels(&panels) {
                Ok(svg) => Ok(ok(svg, Some(format!("{} panel(s)", panels.len())))),
                Err(e) => Ok(fail(to_json(&failure("render", &e), input.pretty), Some(e.to_string()))),
            }
        }
    }
}

fn family_panels(fam: &laumut::deformation::FamilyData) -> Vec<Panel> {
    vec![
        Panel::new("delta0", fam.delta0.clone()),
        Panel::new("delta_inf", fam.delta_inf.clone()),
        Panel::new("delta00", fam.delta00.clone()),
        Panel::new("delta01", fam.delta01.clone()),
    ]
}

/// Where the document goes.
pub fn output_path(request: &CommandRequest) -> Option<&Path> {
    let input = match &request.command {
        Command::Newton { input, .. }
        | Command::Facets { input }
        | Command::Check { input, .. }
        | Command::Mutate { input, .. }
        | Command::Family { input, .. }
        | Command::Verify { input, .. }
        | Command::Graph { input, .. }
        | Command::Render { input, .. } => input,
    };
    input.output.as_deref()
}

pub fn pretty(request: &CommandRequest) -> bool {
    match &request.command {
        Command::Newton { input, .. }
        | Command::Facets { input }
        | Command::Check { input, .. }
        | Command::Mutate { input, .. }
        | Command::Family { input, .. }
        | Command::Verify { input, .. }
        | Command::Graph { input, .. }
        | Command::Render { input, .. } => input.pretty,
    }
}
