mod parse;
mod sweep;

use std::fs;
use std::io::{self, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use circm_core::graph::ISOMORPHISM_LIMIT;
use circm_core::properties::{
    complex_report, graph_report, Checks, PropertyReport, ReportOptions, DEFAULT_NODE_BUDGET,
};
use circm_core::verifier::{all_circulants, verify_theorems, TheoremId, VerificationReport, VerifyScope};
use circm_core::{
    build_chain_complex, independence_complex, is_isomorphic_small, lex_product, make_circulant, CirculantSpec,
    Complex, FieldChoice, Graph,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "circm", version, about = "Cohen-Macaulay analysis of circulant graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report the properties of one independence complex.
    Analyze(AnalyzeArgs),
    /// Run a family of cases, one JSON line each.
    Sweep(SweepArgs),
    /// Check the classification theorems over a bounded scope.
    Verify(VerifyArgs),
    /// Form the lexicographic product G[H] of two circulants and analyze it.
    Lexprod(LexprodArgs),
    /// Write a graph, complex or boundary matrix in a text format.
    Export(ExportArgs),
}

/// Where the graph or complex comes from.
#[derive(Args, Debug)]
struct Source {
    /// Vertex count of the circulant C_n(S).
    #[arg(long, requires = "set", conflicts_with_all = ["edges_file", "facets_file"])]
    n: Option<usize>,
    /// Connection set S, comma separated (empty for the edgeless graph).
    #[arg(long, value_delimiter = ',', num_args = 0.., requires = "n")]
    set: Option<Vec<usize>>,
    /// Read the graph from an edges-v1 file.
    #[arg(long, conflicts_with = "facets_file")]
    edges_file: Option<PathBuf>,
    /// Read a simplicial complex from a facets-v1 file.
    #[arg(long)]
    facets_file: Option<PathBuf>,
}

enum Input {
    Graph(Graph),
    Complex(Complex),
}

impl Source {
    fn load(&self) -> Result<Input> {
        if let (Some(n), Some(set)) = (self.n, &self.set) {
            let spec = CirculantSpec::new(n, set.iter().copied())?;
            return Ok(Input::Graph(make_circulant(&spec)));
        }
        if let Some(path) = &self.edges_file {
            return Ok(Input::Graph(Graph::from_edges_v1(&read(path)?)?));
        }
        if let Some(path) = &self.facets_file {
            return Ok(Input::Complex(Complex::from_facets_v1(&read(path)?)?));
        }
        bail!("no input: give --n and --set, --edges-file or --facets-file")
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

#[derive(Args, Debug)]
struct Output {
    /// Print JSON (the default when stdout is not a terminal).
    #[arg(long, conflicts_with = "table")]
    json: bool,
    /// Print a human-readable table even when stdout is not a terminal.
    #[arg(long)]
    table: bool,
}

impl Output {
    fn table(&self) -> bool {
        !self.json && (self.table || io::stdout().is_terminal())
    }
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: Source,
    /// Coefficient field: `q` or `gf:P`.
    #[arg(long, default_value = "q")]
    field: FieldChoice,
    /// Subset of wc,cm,bb,vd,sh,pdim,betti, or `all`.
    #[arg(long, default_value = "all")]
    checks: Checks,
    /// Node budget of the shelling search.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Lift the vertex-count guard on the projective dimension.
    #[arg(long)]
    allow_large: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    /// C_n(1..d).
    Contiguous,
    /// C_2n(a, n).
    Cubic,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_enum, default_value = "contiguous")]
    family: Family,
    /// Inclusive range of d.
    #[arg(long, default_value = "1..4", value_parser = parse::range)]
    d_range: (usize, usize),
    /// Inclusive range of n, with endpoints linear in d.
    #[arg(long, default_value = "2d..4d+6", value_parser = parse::linear_range)]
    n_range: (parse::Linear, parse::Linear),
    /// Largest 2n for the cubic family.
    #[arg(long = "max-2n", default_value_t = 12)]
    max_two_n: usize,
    #[arg(long, default_value = "q")]
    field: FieldChoice,
    #[arg(long, default_value = "cm,bb,vd,sh")]
    checks: Checks,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    #[arg(long)]
    allow_large: bool,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, env = "CIRCM_JOBS", value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// `all` or one of brown41, main, buchsbaum, cubic, lexwc, lemma-h2.
    #[arg(long, default_value = "all")]
    theorem: String,
    #[arg(long, default_value_t = 4)]
    d_max: usize,
    #[arg(long = "max-2n", default_value_t = 12)]
    max_two_n: usize,
    /// Largest factor of the lexicographic products.
    #[arg(long, default_value_t = 5)]
    lex_max: usize,
    /// Values of d for lemma-h2 (repeatable or comma separated).
    #[arg(long, value_delimiter = ',')]
    d: Vec<usize>,
    #[arg(long, default_value = "q")]
    field: FieldChoice,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    #[arg(long)]
    allow_large: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct LexprodArgs {
    /// Outer factor, e.g. `C_2(1)` or `2:1`.
    #[arg(value_parser = parse::circulant)]
    g: CirculantSpec,
    /// Inner factor.
    #[arg(value_parser = parse::circulant)]
    h: CirculantSpec,
    #[arg(long, default_value = "q")]
    field: FieldChoice,
    #[arg(long, default_value = "cm,bb,vd")]
    checks: Checks,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    #[arg(long)]
    allow_large: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    #[value(name = "edges-v1")]
    EdgesV1,
    #[value(name = "facets-v1")]
    FacetsV1,
    #[value(name = "smat-v1")]
    SmatV1,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum)]
    format: Format,
    /// Boundary map ∂_i to dump with smat-v1.
    #[arg(long, default_value_t = 1)]
    dim: usize,
    /// Write here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

/// 3 for guard violations, 1 for internal inconsistencies, 2 otherwise.
fn exit_code_for(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        match cause.downcast_ref::<circm_core::Error>() {
            Some(err) if err.is_guard() => return 3,
            Some(circm_core::Error::Inconsistency(_)) => return 1,
            _ => {}
        }
    }
    2
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Analyze(args) => analyze(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Verify(args) => verify(args),
        Command::Lexprod(args) => lexprod(args),
        Command::Export(args) => export(args),
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn warn_negative_h(report: &PropertyReport) {
    if !report.h_nonnegative {
        eprintln!("warning: h-vector {:?} has a negative entry", report.h_vector);
    }
}

fn analyze(args: AnalyzeArgs) -> Result<ExitCode> {
    let options = ReportOptions {
        checks: args.checks,
        node_budget: args.budget,
        allow_large: args.allow_large,
    };
    let report = match args.source.load()? {
        Input::Graph(g) => graph_report(&g, args.field, &options)?,
        Input::Complex(c) => complex_report(&c, args.field, &options)?,
    };
    warn_negative_h(&report);
    if args.output.table() {
        print!("{report}");
    } else {
        print_json(&report)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn run_sweep(args: SweepArgs) -> Result<ExitCode> {
    let jobs = match args.jobs {
        Some(j) => j as usize,
        None => std::thread::available_parallelism().map_or(1, usize::from),
    };
    let options = ReportOptions {
        checks: args.checks,
        node_budget: args.budget,
        allow_large: args.allow_large,
    };
    let lines: Vec<String> = match args.family {
        Family::Contiguous => {
            let cases = sweep::contiguous_cases(args.d_range, args.n_range);
            sweep::run_parallel(&cases, jobs, |&(d, n)| {
                serde_json::to_string(&sweep::contiguous_line(d, n, args.field, &options))
            })?
            .into_iter()
            .collect::<Result<_, _>>()?
        }
        Family::Cubic => {
            let cases = sweep::cubic_cases(args.max_two_n);
            sweep::run_parallel(&cases, jobs, |&(two_n, a)| {
                serde_json::to_string(&sweep::cubic_line(two_n, a, args.field))
            })?
            .into_iter()
            .collect::<Result<_, _>>()?
        }
    };
    let mut out = io::stdout().lock();
    for line in lines {
        writeln!(out, "{line}")?;
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let theorems = if args.theorem == "all" {
        TheoremId::ALL.to_vec()
    } else {
        vec![args.theorem.parse::<TheoremId>()?]
    };
    let defaults = VerifyScope::default();
    let scope = VerifyScope {
        theorems,
        d_max: args.d_max,
        max_two_n: args.max_two_n,
        lex_max_vertices: args.lex_max,
        h2_d: if args.d.is_empty() { defaults.h2_d } else { args.d },
        field: args.field,
        node_budget: args.budget,
        allow_large: args.allow_large,
    };
    let report = verify_theorems(&scope);
    if args.output.table() {
        print_verification(&report)?;
    } else {
        print_json(&report)?;
    }
    // The H̃₂ experiment gathers evidence; it never fails the run.
    let failed = report
        .theorems
        .iter()
        .any(|t| t.theorem_id != TheoremId::LemmaH2 && !t.passed());
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn print_verification(report: &VerificationReport) -> Result<()> {
    let mut out = io::stdout().lock();
    for t in &report.theorems {
        let status = if t.passed() { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "{:<10} {status}  {} cases  ({})",
            t.theorem_id.as_str(),
            t.cases_run,
            t.scope
        )?;
        for f in &t.failures {
            writeln!(out, "  failure {}: {}", f.case, f.detail)?;
        }
        for note in &t.notes {
            writeln!(out, "  note    {note}")?;
        }
    }
    writeln!(out, "overall    {}", if report.passed() { "PASS" } else { "FAIL" })?;
    Ok(())
}

#[derive(Serialize)]
struct LexprodOutput {
    product: String,
    vertex_count: usize,
    edge_count: usize,
    /// Circulants on the same vertex count isomorphic to the product;
    /// omitted beyond the brute-force isomorphism limit.
    #[serde(skip_serializing_if = "Option::is_none")]
    isomorphic_circulants: Option<Vec<String>>,
    report: PropertyReport,
}

fn lexprod(args: LexprodArgs) -> Result<ExitCode> {
    let g = make_circulant(&args.g);
    let h = make_circulant(&args.h);
    let product = lex_product(&g, &h)?;
    let name = format!("{}[{}]", args.g, args.h);
    let n = product.vertex_count();

    let isomorphic_circulants = if n <= ISOMORPHISM_LIMIT {
        let edges = product.edge_count();
        let mut found = Vec::new();
        for spec in all_circulants(n).into_iter().filter(|s| s.n() == n) {
            let c = make_circulant(&spec);
            if c.edge_count() == edges && is_isomorphic_small(&product, &c)? {
                found.push(spec.to_string());
            }
        }
        Some(found)
    } else {
        None
    };

    let options = ReportOptions {
        checks: args.checks,
        node_budget: args.budget,
        allow_large: args.allow_large,
    };
    let mut report = complex_report(&independence_complex(&product), args.field, &options)?;
    report.graph = Some(name.clone());
    warn_negative_h(&report);

    let output = LexprodOutput {
        product: name,
        vertex_count: n,
        edge_count: product.edge_count(),
        isomorphic_circulants,
        report,
    };
    if args.output.table() {
        print!("{}", output.report);
        match &output.isomorphic_circulants {
            Some(list) if list.is_empty() => println!("isomorphic to  no circulant on {n} vertices"),
            Some(list) => println!("isomorphic to  {}", list.join(", ")),
            None => println!("isomorphic to  (not tested beyond {ISOMORPHISM_LIMIT} vertices)"),
        }
    } else {
        print_json(&output)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn export(args: ExportArgs) -> Result<ExitCode> {
    let input = args.source.load()?;
    let text = match (args.format, input) {
        (Format::EdgesV1, Input::Graph(g)) => g.to_edges_v1(),
        (Format::EdgesV1, Input::Complex(_)) => bail!("edges-v1 needs a graph, not a facet file"),
        (Format::FacetsV1, Input::Graph(g)) => independence_complex(&g).to_facets_v1(),
        (Format::FacetsV1, Input::Complex(c)) => c.to_facets_v1(),
        (Format::SmatV1, input) => {
            let c = match input {
                Input::Graph(g) => independence_complex(&g),
                Input::Complex(c) => c,
            };
            let chain = build_chain_complex(&c, FieldChoice::ExactRational);
            chain
                .boundary(args.dim as i64)
                .ok_or_else(|| {
                    anyhow!(circm_core::Error::Domain(format!(
                        "no boundary map in degree {}: complex has dimension {}",
                        args.dim,
                        chain.dim()
                    )))
                })?
                .to_smat_v1()
        }
    };
    match args.output {
        Some(path) => fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(ExitCode::SUCCESS)
}
