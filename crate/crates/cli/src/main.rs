use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use chroma::chromatic::{chromatic_polynomial_normalized, h_vector};
use chroma::complex::{Theory, DEFAULT_MAX_EDGES};
use chroma::graph::families::{cycle, path};
use chroma::graph::io::{parse_edge_list, parse_graph6};
use chroma::graph::{Graph, Normalized};
use chroma::homology::{betti_table_normalized, differential_smith_forms};
use chroma::verify::runner::run_graphs;
use chroma::verify::{Check, CheckReport, GraphCorpus, Summary, Verifier};
use chroma::Error;

#[derive(Parser)]
#[command(name = "chroma", version, about = "Chromatic graph cohomology with exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute cohomology and chromatic invariants of one graph.
    Compute(ComputeArgs),
    /// Run named checks on one graph.
    Verify(VerifyArgs),
    /// Run checks over a generated corpus of small connected graphs.
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct Input {
    /// Edge-list file (`-` for stdin). Stdin is read when no input is given.
    #[arg(short, long, value_name = "PATH", conflicts_with_all = ["graph", "g6"])]
    input: Option<PathBuf>,
    /// Inline edge list, e.g. `n 3 base 0; 0 1; 1 2; 0 2`.
    #[arg(long, value_name = "EDGES", conflicts_with = "g6")]
    graph: Option<String>,
    /// graph6 string.
    #[arg(long, value_name = "G6")]
    g6: Option<String>,
    /// Base vertex, overriding the one in the input.
    #[arg(long, value_name = "V")]
    base: Option<usize>,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    input: Input,
    /// Reduced theory (the default).
    #[arg(long, conflicts_with = "standard")]
    reduced: bool,
    /// Standard theory.
    #[arg(long)]
    standard: bool,
    /// Betti table `[[i, j, b], ...]`.
    #[arg(long)]
    betti: bool,
    /// Poincaré polynomial `[[i, j, c], ...]` for the terms `c t^i q^j`.
    #[arg(long)]
    poincare: bool,
    /// Chromatic polynomial, coefficients lowest degree first.
    #[arg(long)]
    chromatic: bool,
    /// h-vector of a connected graph.
    #[arg(long)]
    hvector: bool,
    /// Invariant factors of every differential.
    #[arg(long)]
    snf: bool,
    /// Aligned text instead of JSON.
    #[arg(long)]
    text: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Check names; see `--all`.
    #[arg(value_name = "CHECK", required_unless_present = "all")]
    checks: Vec<String>,
    /// Run every check, skipping those whose preconditions fail.
    #[arg(long, conflicts_with = "checks")]
    all: bool,
    #[command(flatten)]
    input: Input,
    /// Edge for direct_sum, pendant and whitney (default: every applicable edge).
    #[arg(long)]
    edge: Option<usize>,
    /// Second graph for union and whitney, as an inline edge list.
    #[arg(long = "with", value_name = "EDGES")]
    partner: Option<String>,
    /// Edge of the second graph for whitney (default 0).
    #[arg(long)]
    with_edge: Option<usize>,
    /// One line per report instead of JSON lines.
    #[arg(long)]
    text: bool,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, default_value_t = 7)]
    max_n: usize,
    #[arg(long, default_value_t = 12)]
    max_e: usize,
    /// Comma-separated check names, or `all`.
    #[arg(long, default_value = "all", value_delimiter = ',')]
    checks: Vec<String>,
    /// Worker threads (default: available cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Write every report to this file as JSON lines.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
}

enum Failure {
    Error(Error),
    Io(io::Error),
    ChecksFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(args) => compute(args),
        Command::Verify(args) => verify(args),
        Command::Corpus(args) => corpus(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::ChecksFailed) => ExitCode::from(1),
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_size_guard() { 3 } else { 2 })
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn max_edges() -> Outcome<usize> {
    match std::env::var("CHROMA_MAX_E") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Error(Error::Precondition(format!("CHROMA_MAX_E=`{v}` is not a number")))),
        Err(_) => Ok(DEFAULT_MAX_EDGES),
    }
}

fn read_input(input: &Input) -> Outcome<Normalized> {
    let parsed = if let Some(text) = &input.graph {
        parse_edge_list(text)?
    } else if let Some(g6) = &input.g6 {
        Normalized::Simple(parse_graph6(g6)?)
    } else {
        let mut text = String::new();
        match &input.input {
            Some(p) if p.as_os_str() != "-" => text = std::fs::read_to_string(p)?,
            _ => {
                io::stdin().read_to_string(&mut text)?;
            }
        }
        parse_edge_list(&text)?
    };
    Ok(match (parsed, input.base) {
        (Normalized::Simple(g), Some(b)) => Normalized::Simple(g.with_base(b)?),
        (parsed, _) => parsed,
    })
}

fn simple(g: Normalized) -> Outcome<Graph> {
    g.simple()
        .ok_or_else(|| Failure::Error(Error::Precondition("graph has a loop".into())))
}

fn compute(args: ComputeArgs) -> Outcome<()> {
    let g = read_input(&args.input)?;
    let limit = max_edges()?;
    let theory = if args.standard { Theory::Standard } else { Theory::Reduced };
    let nothing_chosen = !(args.betti || args.poincare || args.chromatic || args.hvector || args.snf);
    let (want_betti, want_poincare) = (args.betti || nothing_chosen, args.poincare || nothing_chosen);

    let mut out = Map::new();
    let mut text = String::new();
    out.insert("theory".into(), json!(theory.name()));
    text += &format!("theory: {}\n", theory.name());

    if want_betti || want_poincare {
        let table = betti_table_normalized(&g, theory, limit)?;
        if want_betti {
            out.insert("betti".into(), json!(table));
            text += &format!("betti:\n{table}");
        }
        if want_poincare {
            let p = table.poincare();
            out.insert("poincare".into(), json!(p));
            text += &format!("poincare: {p}\n");
        }
    }
    if args.chromatic {
        let p = chromatic_polynomial_normalized(&g);
        out.insert("chromatic".into(), json!(p));
        text += &format!("chromatic: {p}\n");
    }
    if args.hvector {
        let h = h_vector(&simple(g.clone())?)?;
        let shown: Vec<String> = h.0.iter().map(ToString::to_string).collect();
        out.insert("hvector".into(), json!(h));
        text += &format!("hvector: {}\n", shown.join(" "));
    }
    if args.snf {
        let forms = match &g {
            Normalized::Simple(g) => differential_smith_forms(g, theory, limit)?,
            Normalized::Loop => Default::default(),
        };
        let rows: Vec<Value> = forms.iter().map(|(&(i, j), f)| json!([i, j, f])).collect();
        out.insert("snf".into(), Value::Array(rows));
        text += "snf:\n";
        for ((i, j), f) in &forms {
            let torsion: Vec<String> = f.torsion().iter().map(ToString::to_string).collect();
            text += &format!("  d^{{{i},{j}}}: rank {}, torsion [{}]\n", f.rank(), torsion.join(", "));
        }
    }

    if args.text {
        print!("{text}");
    } else {
        println!("{}", Value::Object(out));
    }
    Ok(())
}

fn default_partners() -> Vec<Graph> {
    vec![Graph::single_vertex(), path(2), cycle(3)]
}

/// Reports for one named check, expanding unset edges and partners to every
/// applicable choice.
fn run_check(v: &Verifier, check: Check, g: &Graph, args: &VerifyArgs, partner: Option<&Graph>) -> chroma::Result<Vec<CheckReport>> {
    let edges = |applicable: Vec<usize>| args.edge.map_or(applicable, |e| vec![e]);
    let reports = match check {
        Check::DirectSum => {
            let non_bridges = (0..g.edge_count()).filter(|&e| !g.is_bridge(e).unwrap_or(true)).collect();
            edges(non_bridges).into_iter().map(|e| v.check_direct_sum(g, e)).collect::<Result<_, _>>()?
        }
        Check::Pendant => edges(g.pendant_edges())
            .into_iter()
            .map(|e| v.check_pendant(g, e))
            .collect::<Result<_, _>>()?,
        Check::Union => partner
            .map_or_else(default_partners, |p| vec![p.clone()])
            .iter()
            .map(|p| v.check_union(g, p))
            .collect::<Result<_, _>>()?,
        Check::Whitney => {
            let p = partner.cloned().unwrap_or_else(|| cycle(3));
            let e2 = args.with_edge.unwrap_or(0);
            edges((0..g.edge_count()).collect())
                .into_iter()
                .map(|e| v.check_whitney(g, e, &p, e2))
                .collect::<Result<_, _>>()?
        }
        _ => vec![v.check(check, g)?],
    };
    if reports.is_empty() {
        return Ok(vec![CheckReport::skipped(check, g, "no applicable edge")]);
    }
    Ok(reports)
}

fn verify(args: VerifyArgs) -> Outcome<()> {
    let g = simple(read_input(&args.input)?)?;
    let checks: Vec<Check> = if args.all {
        Check::ALL.to_vec()
    } else {
        args.checks.iter().map(|c| c.parse()).collect::<Result<_, _>>()?
    };
    let partner = match &args.partner {
        Some(text) => Some(simple(parse_edge_list(text)?)?),
        None => None,
    };
    let v = Verifier::with_edge_limit(max_edges()?);

    let mut reports = Vec::new();
    for check in checks {
        match run_check(&v, check, &g, &args, partner.as_ref()) {
            Ok(r) => reports.extend(r),
            Err(e) if args.all && !e.is_size_guard() => reports.push(CheckReport::skipped(check, &g, e.to_string())),
            Err(e) => return Err(e.into()),
        }
    }

    let mut stdout = io::stdout().lock();
    for r in &reports {
        if args.text {
            writeln!(stdout, "{r}")?;
        } else {
            writeln!(stdout, "{}", json!(r))?;
        }
    }
    if reports.iter().any(CheckReport::failed) {
        return Err(Failure::ChecksFailed);
    }
    Ok(())
}

fn corpus(args: CorpusArgs) -> Outcome<()> {
    let mut checks = Vec::new();
    for name in &args.checks {
        if name == "all" {
            checks.extend(Check::ALL);
        } else {
            checks.push(name.parse::<Check>()?);
        }
    }
    checks.sort();
    checks.dedup();

    let jobs = args
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let corpus = GraphCorpus::new(args.max_n, args.max_e);
    let v = Verifier::with_edge_limit(max_edges()?);
    let reports = run_graphs(&v, &checks, &corpus.graphs(), args.max_e, jobs);

    if let Some(path) = &args.report {
        let mut file = BufWriter::new(File::create(path)?);
        for r in &reports {
            writeln!(file, "{}", json!(r))?;
        }
        file.flush()?;
    }
    for r in reports.iter().filter(|r| r.failed()) {
        eprintln!("{r}");
    }
    let summary = Summary::of(&reports);
    print!("{summary}");
    if summary.all_passed() {
        Ok(())
    } else {
        Err(Failure::ChecksFailed)
    }
}
