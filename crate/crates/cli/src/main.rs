//! `starcomp`: command-line front end for the star-complement toolkit.

mod input;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use starcomp::exactla::{char_poly, format_rational, is_nonmain, LinalgError, Matrix};
use starcomp::extender::{build_compat_graph, enumerate_candidates, maximal_extensions, ExtendError, ExtendOptions};
use starcomp::graph::GraphError;
use starcomp::multipartite::{solution_explorer, theorem_check, MultipartiteError};
use starcomp::starset::{find_star_sets, verify_star_set, SearchOptions, StarSetError, DEFAULT_BUDGET};
use starcomp::{Graph, Rational};

pub const SCHEMA: &str = "starcomp/1";

#[derive(Debug, Parser)]
#[command(name = "starcomp", version, about = "Star sets, star complements and maximal extensions in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for searches; 0 uses all cores. Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Maximum number of subsets a search may examine.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
struct GraphArg {
    /// graph6 string, or split:s,t  cocktail:p  complete:n  path:n  cycle:n  empty:n
    #[arg(long, value_parser = input::parse_graph)]
    graph: Graph,
}

#[derive(Debug, Args)]
struct MuArg {
    /// Eigenvalue as an integer or fraction p/q.
    #[arg(long, allow_hyphen_values = true, value_parser = input::parse_mu)]
    mu: Rational,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Characteristic polynomial, rational eigenvalues and their main/non-main status.
    Spectrum {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// All star sets of a graph for an eigenvalue.
    Starsets {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        mu: MuArg,
    },
    /// Checks one vertex set and prints its certificate.
    Verify {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        mu: MuArg,
        /// Comma-separated vertices.
        #[arg(long = "x", value_parser = input::parse_vertices, default_value = "")]
        x: input::Vertices,
    },
    /// Candidate neighbourhoods for star vertices over a star complement.
    Candidates {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        mu: MuArg,
        /// Keep only candidates compatible with a non-main eigenvalue.
        #[arg(long)]
        nonmain: bool,
    },
    /// Maximal graphs with the given star complement, up to isomorphism.
    Extend {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        mu: MuArg,
        #[arg(long)]
        nonmain: bool,
        /// Keep only regular graphs.
        #[arg(long)]
        regular_only: bool,
        /// Report every compatible candidate set, not only the maximal ones.
        #[arg(long)]
        all_cliques: bool,
    },
    /// Checks the classification for K_s ∇ tK_1 with μ = −t, t = 2..=t-max.
    Theorem {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t_max: usize,
    },
    /// Integral types (a, b) satisfying both constraints over a parameter grid.
    Explore {
        /// Range lo..hi.
        #[arg(long, value_parser = input::parse_range)]
        s: std::ops::RangeInclusive<usize>,
        /// Range lo..hi.
        #[arg(long, value_parser = input::parse_range)]
        t: std::ops::RangeInclusive<usize>,
        /// Integer range lo..hi or a comma-separated list of rationals.
        #[arg(long, allow_hyphen_values = true, value_parser = input::parse_mu_list)]
        mu: input::MuList,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Spectrum { .. } => "spectrum",
            Command::Starsets { .. } => "starsets",
            Command::Verify { .. } => "verify",
            Command::Candidates { .. } => "candidates",
            Command::Extend { .. } => "extend",
            Command::Theorem { .. } => "theorem",
            Command::Explore { .. } => "explore",
        }
    }
}

#[derive(Debug)]
enum Failure {
    /// The request could not be carried out.
    Usage { kind: &'static str, detail: String },
    /// A report was produced but a check in it failed.
    Verification(Value),
    /// An internal consistency check failed.
    Broken { kind: &'static str, detail: String },
}

impl Failure {
    fn usage(kind: &'static str, detail: impl ToString) -> Self {
        Failure::Usage {
            kind,
            detail: detail.to_string(),
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::usage("graph", e)
    }
}

impl From<LinalgError> for Failure {
    fn from(e: LinalgError) -> Self {
        Failure::usage("linalg", e)
    }
}

impl From<StarSetError> for Failure {
    fn from(e: StarSetError) -> Self {
        Failure::usage("starset", e)
    }
}

impl From<ExtendError> for Failure {
    fn from(e: ExtendError) -> Self {
        match e {
            ExtendError::Postcondition(g) => Failure::Broken {
                kind: "postcondition",
                detail: format!("assembled graph {g} fails star-set verification"),
            },
            e => Failure::usage("extend", e),
        }
    }
}

impl From<MultipartiteError> for Failure {
    fn from(e: MultipartiteError) -> Self {
        match e {
            MultipartiteError::Extend(e) => e.into(),
            e => Failure::usage("multipartite", e),
        }
    }
}

fn to_value(report: &impl serde::Serialize) -> Value {
    serde_json::to_value(report).expect("reports serialize")
}

fn spectrum(g: &Graph) -> Result<Value, Failure> {
    let p = char_poly(&Matrix::adjacency(g))?;
    let (mut roots, cofactor) = p.rational_roots()?;
    roots.sort_by(|a, b| b.0.cmp(&a.0));
    let roots = roots
        .iter()
        .map(|(r, m)| {
            Ok(json!({
                "eigenvalue": format_rational(r),
                "multiplicity": m,
                "main": !is_nonmain(g, r)?,
            }))
        })
        .collect::<Result<Vec<_>, LinalgError>>()?;
    let unfactored = (cofactor.degree() > Some(0)).then(|| cofactor.to_string());
    Ok(json!({
        "graph": g.to_string(),
        "order": g.order(),
        "size": g.size(),
        "char_poly": p.to_string(),
        "roots": roots,
        "unfactored": unfactored,
    }))
}

fn execute(command: &Command, common: &Common) -> Result<Value, Failure> {
    let search = SearchOptions {
        budget: common.budget,
        threads: common.threads,
    };
    match command {
        Command::Spectrum { graph } => spectrum(&graph.graph),
        Command::Starsets { graph, mu } => {
            let sets = find_star_sets(&graph.graph, &mu.mu, search)?;
            Ok(json!({
                "graph": graph.graph.to_string(),
                "mu": format_rational(&mu.mu),
                "multiplicity": sets.first().map_or(0, Vec::len),
                "count": sets.len(),
                "star_sets": sets,
            }))
        }
        Command::Verify { graph, mu, x } => {
            let cert = verify_star_set(&graph.graph, &mu.mu, &x.0)?;
            let value = to_value(&cert);
            if cert.is_valid() {
                Ok(value)
            } else {
                Err(Failure::Verification(value))
            }
        }
        Command::Candidates { graph, mu, nonmain } => {
            let h = &graph.graph;
            // If μ is an eigenvalue of H, H is not a star complement and nothing extends it.
            let (candidates, admissible) = match enumerate_candidates(h, &mu.mu, *nonmain, common.budget) {
                Ok(c) => (c, true),
                Err(ExtendError::Linalg(LinalgError::MuIsEigenvalue { .. })) => (Vec::new(), false),
                Err(e) => return Err(e.into()),
            };
            let mut pairs = Vec::new();
            if admissible {
                let table = build_compat_graph(h, &mu.mu, &candidates)?;
                for i in 0..table.len() {
                    for j in i + 1..table.len() {
                        let class = table.class(i, j);
                        if class.is_compatible() {
                            pairs.push(json!({ "pair": [i, j], "class": class }));
                        }
                    }
                }
            }
            Ok(json!({
                "H": h.to_string(),
                "mu": format_rational(&mu.mu),
                "nonmain": nonmain,
                "admissible": admissible,
                "count": candidates.len(),
                "candidates": candidates,
                "compatible": pairs,
            }))
        }
        Command::Extend {
            graph,
            mu,
            nonmain,
            regular_only,
            all_cliques,
        } => {
            let opts = ExtendOptions {
                nonmain: *nonmain,
                regular_only: *regular_only,
                maximal_only: !*all_cliques,
                budget: common.budget,
                threads: common.threads,
            };
            Ok(to_value(&maximal_extensions(&graph.graph, &mu.mu, opts)?))
        }
        Command::Theorem { s, t_max } => {
            let report = theorem_check(*s, *t_max, common.threads)?;
            let mut value = to_value(&report);
            value["holds"] = json!(report.holds());
            if report.holds() {
                Ok(value)
            } else {
                Err(Failure::Verification(value))
            }
        }
        Command::Explore { s, t, mu } => Ok(to_value(&solution_explorer(s.clone(), t.clone(), &mu.0, common.threads)?)),
    }
}

fn envelope(command: &str, body: Value) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    out.insert("command".into(), json!(command));
    if let Value::Object(fields) = body {
        out.extend(fields);
    }
    Value::Object(out)
}

fn error_envelope(kind: &str, detail: &str) -> Value {
    json!({ "schema": SCHEMA, "error": kind, "detail": detail })
}

fn emit(format: Format, command: &str, value: &Value) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("valid JSON")),
        Format::Text => print!("{}", render::text(command, value)),
    }
}

fn report_error(format: Format, kind: &str, detail: &str) {
    match format {
        Format::Json => println!("{}", error_envelope(kind, detail)),
        Format::Text => eprintln!("error ({kind}): {detail}"),
    }
}

/// Usage errors can occur before `--format` is parsed, so look for it
/// directly.
fn requested_format(args: &[String]) -> Format {
    let text = args
        .windows(2)
        .any(|w| w[0] == "--format" && w[1] == "text")
        || args.iter().any(|a| a == "--format=text");
    if text {
        Format::Text
    } else {
        Format::Json
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            match requested_format(&args) {
                Format::Json => println!("{}", error_envelope("usage", e.render().to_string().trim())),
                Format::Text => eprint!("{}", e.render()),
            }
            return ExitCode::from(2);
        }
    };
    let name = cli.command.name();
    match execute(&cli.command, &cli.common) {
        Ok(body) => {
            emit(cli.common.format, name, &envelope(name, body));
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(body)) => {
            emit(cli.common.format, name, &envelope(name, body));
            ExitCode::from(1)
        }
        Err(Failure::Usage { kind, detail }) => {
            report_error(cli.common.format, kind, &detail);
            ExitCode::from(2)
        }
        Err(Failure::Broken { kind, detail }) => {
            report_error(cli.common.format, kind, &detail);
            ExitCode::from(1)
        }
    }
}
