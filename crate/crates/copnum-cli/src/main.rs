//! Command-line front end for the cops-and-robbers engine.
//!
//! Subcommands compose over pipes: `construct` writes graph6 to stdout,
//! `solve` and `play` read graph6 from an argument, a file, or stdin.
//! Progress and other diagnostics go to stderr; stdout carries only the
//! machine-readable answer.  Exit codes: 0 success, 1 claim failed,
//! 2 usage, 3 unreadable input, 4 contract violation (bad domain),
//! 5 refusal (solver caps, losing play, checkpoint mismatch),
//! 6 interrupted.

use std::fs;
use std::io::{self, Read as _, Write as _};
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, OnceLock};

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use copnum::census::{
    census, check_nine_vertex, check_petersen_unique, derive_min_orders, render, sha256_hex,
    CensusError, CensusOptions, CensusSource, RenderFormat,
};
use copnum::construct::{self, ConstructError, TaggedGraph};
use copnum::generate::{generate_graphs, ingest_corpus, StreamError};
use copnum::graph6;
use copnum::solver::{cop_number, cops_win, play_transcript, SolverError, MAX_COPS};
use copnum::Graph;

mod exit_code {
    pub const OK: i32 = 0;
    pub const CLAIM_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const INPUT: i32 = 3;
    pub const CONTRACT: i32 = 4;
    pub const REFUSED: i32 = 5;
    pub const INTERRUPTED: i32 = 6;
}

#[derive(Parser)]
#[command(
    name = "copnum",
    version,
    about = "Exact cops-and-robbers solving, enumeration, and census tooling",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the cop number of one graph, or test a fixed cop count
    Solve(SolveArgs),
    /// Print every graph of one order, one graph6 record per line
    Enumerate(EnumerateArgs),
    /// Tabulate graphs by cop number across orders
    Census(CensusArgs),
    /// Emit a named construction as graph6
    Construct(ConstructArgs),
    /// Check a named claim exhaustively and print a certificate
    Verify(VerifyArgs),
    /// Print an optimal-play transcript
    Play(PlayArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// graph6 record, or a file holding one; stdin when omitted
    input: Option<String>,
    /// Test this many cops instead of searching for the minimum
    #[arg(long)]
    k: Option<usize>,
    /// Also print the worst-case capture time under optimal play
    #[arg(long)]
    capture_time: bool,
    /// Also print the optimal-play transcript
    #[arg(long)]
    strategy: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Order to enumerate (the built-in generator covers 1..=10)
    #[arg(long)]
    n: usize,
    /// Keep only connected graphs
    #[arg(long)]
    connected: bool,
    /// Worker threads (default: all cores)
    #[arg(long)]
    jobs: Option<NonZeroUsize>,
}

#[derive(Args)]
struct CensusArgs {
    /// Census every generated graph of orders 1..=N
    #[arg(
        long,
        value_name = "N",
        required_unless_present = "corpus",
        conflicts_with = "corpus"
    )]
    n_max: Option<usize>,
    /// Census a graph6 corpus file instead (one record per line, one order)
    #[arg(long, value_name = "PATH")]
    corpus: Option<PathBuf>,
    /// Largest cop count tracked exactly; anything above lands in overflow
    #[arg(long, default_value_t = 3)]
    k_max: usize,
    /// Worker threads (default: all cores)
    #[arg(long)]
    jobs: Option<NonZeroUsize>,
    /// Directory for resumable checkpoints (also receives census.json)
    #[arg(long, value_name = "DIR")]
    checkpoint: Option<PathBuf>,
    /// Table format on stdout
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Args)]
struct ConstructArgs {
    /// petersen | path:N | cycle:N | complete:N | star:N | pg:Q |
    /// plus-k:SEED:HOST:K[:ANCHOR]  (SEED and HOST are graph6 records)
    name: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Claim to check
    #[arg(long, value_enum)]
    claim: ClaimArg,
    /// Horizon for sub-runs of nine-vertex (default: full strength)
    #[arg(long, value_name = "N", conflicts_with = "corpus")]
    n_max: Option<usize>,
    /// Take the evidence from a graph6 corpus file instead of the generator
    #[arg(long, value_name = "PATH")]
    corpus: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long)]
    jobs: Option<NonZeroUsize>,
    /// Directory for resumable checkpoints
    #[arg(long, value_name = "DIR")]
    checkpoint: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClaimArg {
    /// Every connected graph on at most 9 vertices is caught by 2 cops
    NineVertex,
    /// Exactly one order-10 graph needs 3 cops, and it is the Petersen graph
    PetersenUnique,
}

#[derive(Args)]
struct PlayArgs {
    /// graph6 record, or a file holding one; stdin when omitted
    input: Option<String>,
    /// Number of cops to field
    #[arg(long)]
    cops: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
    Json,
}

impl From<FormatArg> for RenderFormat {
    fn from(f: FormatArg) -> RenderFormat {
        match f {
            FormatArg::Text => RenderFormat::Text,
            FormatArg::Csv => RenderFormat::Csv,
            FormatArg::Json => RenderFormat::Json,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            classify(&err)
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Solve(a) => cmd_solve(a),
        Cmd::Enumerate(a) => cmd_enumerate(a),
        Cmd::Census(a) => cmd_census(a),
        Cmd::Construct(a) => cmd_construct(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Play(a) => cmd_play(a),
    }
}

// ---------------------------------------------------------------------
// Exit-code classification.

fn classify(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<CensusError>() {
            return census_code(e);
        }
        if let Some(e) = cause.downcast_ref::<SolverError>() {
            return solver_code(e);
        }
        if let Some(e) = cause.downcast_ref::<StreamError>() {
            return stream_code(e);
        }
        if cause.downcast_ref::<ConstructError>().is_some() {
            return exit_code::CONTRACT;
        }
        if cause.downcast_ref::<graph6::ParseError>().is_some()
            || cause.downcast_ref::<io::Error>().is_some()
            || cause.downcast_ref::<serde_json::Error>().is_some()
        {
            return exit_code::INPUT;
        }
    }
    exit_code::CONTRACT
}

fn census_code(e: &CensusError) -> i32 {
    match e {
        CensusError::Stream(s) => stream_code(s),
        CensusError::Solver(s) => solver_code(s),
        CensusError::Io(_) | CensusError::Json(_) | CensusError::Corrupt { .. } => {
            exit_code::INPUT
        }
        CensusError::BadKMax(_) | CensusError::IncompleteTable { .. } => exit_code::CONTRACT,
        CensusError::CheckpointMismatch { .. } => exit_code::REFUSED,
        CensusError::Interrupted => exit_code::INTERRUPTED,
    }
}

fn solver_code(e: &SolverError) -> i32 {
    match e {
        SolverError::Disconnected | SolverError::NoCops | SolverError::AlreadyCaptured => {
            exit_code::CONTRACT
        }
        SolverError::CapExceeded { .. }
        | SolverError::CopNumberAboveCap { .. }
        | SolverError::NoWinningMove
        | SolverError::CopsLose { .. } => exit_code::REFUSED,
    }
}

fn stream_code(e: &StreamError) -> i32 {
    match e {
        StreamError::OrderOutOfRange(_) => exit_code::CONTRACT,
        _ => exit_code::INPUT,
    }
}

// ---------------------------------------------------------------------
// Shared plumbing.

/// Interpret the input as a file path when one exists, a graph6 literal
/// otherwise, and stdin when absent; the first nonempty line counts.
fn read_graph_input(arg: Option<&str>) -> Result<Graph> {
    let text = match arg {
        Some(s) if Path::new(s).exists() => {
            fs::read_to_string(s).with_context(|| format!("reading {s}"))?
        }
        Some(s) => s.to_string(),
        None => {
            let mut buf = String::new();
            io::stdin()
                .read_to_string(&mut buf)
                .context("reading stdin")?;
            buf
        }
    };
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| anyhow!("no graph6 record in the input"))?;
    Ok(graph6::parse(line.as_bytes())?)
}

fn cop_noun(k: usize) -> String {
    if k == 1 {
        "1 cop".to_string()
    } else {
        format!("{k} cops")
    }
}

fn setup_jobs(jobs: Option<NonZeroUsize>) -> Result<()> {
    if let Some(j) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.get())
            .build_global()
            .context("configuring worker threads")?;
    }
    Ok(())
}

/// A flag flipped by the first Ctrl-C; the second one kills the process
/// the ordinary way.
fn sigint_flag() -> Arc<AtomicBool> {
    static FLAG: OnceLock<Arc<AtomicBool>> = OnceLock::new();
    extern "C" fn on_sigint(_: libc::c_int) {
        if let Some(flag) = flag_cell().get() {
            flag.store(true, Ordering::SeqCst);
        }
        unsafe {
            libc::signal(libc::SIGINT, libc::SIG_DFL);
        }
    }
    fn flag_cell() -> &'static OnceLock<Arc<AtomicBool>> {
        &FLAG
    }
    let flag = flag_cell()
        .get_or_init(|| Arc::new(AtomicBool::new(false)))
        .clone();
    let handler: extern "C" fn(libc::c_int) = on_sigint;
    unsafe {
        libc::signal(libc::SIGINT, handler as libc::sighandler_t);
    }
    flag
}

fn corpus_source(path: &Path) -> Result<CensusSource> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let graphs = ingest_corpus(&text)?;
    Ok(CensusSource::Corpus {
        graphs,
        sha256: sha256_hex(text.as_bytes()),
    })
}

// ---------------------------------------------------------------------
// Subcommands.

fn cmd_solve(a: SolveArgs) -> Result<i32> {
    let g = read_graph_input(a.input.as_deref())?;
    let need_details = a.capture_time || a.strategy;
    let result = match a.k {
        None => {
            let c = cop_number(&g)?;
            println!("c(G) = {c}");
            if need_details {
                Some(cops_win(&g, c)?)
            } else {
                None
            }
        }
        Some(k) => {
            let res = cops_win(&g, k)?;
            if res.cops_win_overall() {
                println!("{} sufficient", cop_noun(k));
            } else {
                println!("{} insufficient", cop_noun(k));
            }
            Some(res)
        }
    };
    if let Some(res) = &result {
        if a.capture_time {
            if let Some((_, t)) = res.optimal_opening() {
                println!("capture time = {t}");
            }
        }
        if a.strategy && res.cops_win_overall() {
            let transcript = play_transcript(&g, res.cop_count())?;
            print!("{transcript}");
        }
    }
    Ok(exit_code::OK)
}

fn cmd_enumerate(a: EnumerateArgs) -> Result<i32> {
    setup_jobs(a.jobs)?;
    let level = generate_graphs(a.n)?;
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    for i in 0..level.len() {
        if a.connected && !level.graph(i).is_connected() {
            continue;
        }
        writeln!(out, "{}", level.form(i).as_str())?;
    }
    out.flush()?;
    Ok(exit_code::OK)
}

fn cmd_census(a: CensusArgs) -> Result<i32> {
    setup_jobs(a.jobs)?;
    let source = match (&a.n_max, &a.corpus) {
        (Some(n), None) => CensusSource::Generated { n_max: *n },
        (None, Some(path)) => corpus_source(path)?,
        _ => unreachable!("clap enforces exactly one census source"),
    };
    let opts = CensusOptions {
        k_max: a.k_max,
        checkpoint_dir: a.checkpoint.clone(),
        stop: Some(sigint_flag()),
        progress: true,
        ..CensusOptions::default()
    };
    let table = census(source, &opts)?;
    print!("{}", render(&table, a.format.into()));
    if a.format == FormatArg::Text {
        if let Ok(report) = derive_min_orders(&table) {
            println!();
            print!("{report}");
        }
    }
    if let Some(dir) = &a.checkpoint {
        let path = dir.join("census.json");
        fs::write(&path, render(&table, RenderFormat::Json))
            .with_context(|| format!("writing {}", path.display()))?;
        eprintln!("table written to {}", path.display());
    }
    eprintln!("census finished in {:.1}s", table.wall_time_secs);
    Ok(exit_code::OK)
}

enum BuildError {
    Grammar(String),
    Domain(anyhow::Error),
}

fn grammar(msg: String) -> BuildError {
    BuildError::Grammar(msg)
}

fn parse_count(text: &str, what: &str) -> Result<usize, BuildError> {
    text.parse::<usize>()
        .map_err(|_| grammar(format!("{what} must be a non-negative integer, got {text:?}")))
}

fn parse_record(text: &str, what: &str) -> Result<Graph, BuildError> {
    graph6::parse(text.as_bytes())
        .map_err(|e| BuildError::Domain(anyhow::Error::new(e).context(format!("{what} record"))))
}

fn build_construction(request: &str) -> Result<Graph, BuildError> {
    let dom = |e: ConstructError| BuildError::Domain(e.into());
    let parts: Vec<&str> = request.split(':').collect();
    match parts.as_slice() {
        ["petersen"] => Ok(construct::petersen()),
        ["path", n] => construct::path(parse_count(n, "path order")?).map_err(dom),
        ["cycle", n] => construct::cycle(parse_count(n, "cycle order")?).map_err(dom),
        ["complete", n] => construct::complete(parse_count(n, "complete order")?).map_err(dom),
        ["star", n] => construct::star(parse_count(n, "star order")?).map_err(dom),
        ["pg", q] => {
            construct::projective_plane_incidence(parse_count(q, "field order")?).map_err(dom)
        }
        ["plus-k", seed, host, k] | ["plus-k", seed, host, k, _] => {
            let seed = parse_record(seed, "seed")?;
            let host_graph = parse_record(host, "host")?;
            let k = parse_count(k, "cop count")?;
            let anchor = match parts.get(4) {
                Some(a) => parse_count(a, "anchor")?,
                None => 0,
            };
            if anchor >= host_graph.order() {
                return Err(grammar(format!(
                    "anchor {anchor} is not a vertex of the order-{} host",
                    host_graph.order()
                )));
            }
            let host = TaggedGraph::with_anchor(host_graph, anchor);
            construct::plus_k(&seed, &host, k)
                .map(|t| t.graph)
                .map_err(dom)
        }
        _ => Err(grammar(format!("unknown construction {request:?}"))),
    }
}

fn cmd_construct(a: ConstructArgs) -> Result<i32> {
    match build_construction(&a.name) {
        Ok(g) => {
            println!("{}", graph6::emit(&g));
            Ok(exit_code::OK)
        }
        Err(BuildError::Grammar(msg)) => {
            eprintln!("error: {msg}");
            eprintln!(
                "constructions: petersen | path:N | cycle:N | complete:N | star:N | pg:Q | plus-k:SEED:HOST:K[:ANCHOR]"
            );
            Ok(exit_code::USAGE)
        }
        Err(BuildError::Domain(e)) => Err(e),
    }
}

fn cmd_verify(a: VerifyArgs) -> Result<i32> {
    setup_jobs(a.jobs)?;
    let full_horizon = match a.claim {
        ClaimArg::NineVertex => 9,
        ClaimArg::PetersenUnique => 10,
    };
    let horizon = a.n_max.unwrap_or(full_horizon);
    let source = match &a.corpus {
        Some(path) => corpus_source(path)?,
        None => {
            eprintln!("{}", effort_note(horizon));
            CensusSource::Generated { n_max: horizon }
        }
    };
    let opts = CensusOptions {
        k_max: 3,
        checkpoint_dir: a.checkpoint.clone(),
        stop: Some(sigint_flag()),
        progress: true,
        ..CensusOptions::default()
    };
    let table = census(source, &opts)?;
    let cert = match a.claim {
        ClaimArg::NineVertex => check_nine_vertex(&table, horizon.min(9)),
        ClaimArg::PetersenUnique => check_petersen_unique(&table),
    };
    println!("{}", serde_json::to_string_pretty(&cert)?);
    if cert.pass {
        eprintln!("PASS: {}", cert.detail);
        Ok(exit_code::OK)
    } else {
        eprintln!("FAIL: {}", cert.detail);
        Ok(exit_code::CLAIM_FAILED)
    }
}

fn effort_note(horizon: usize) -> String {
    let estimate = match horizon {
        0..=8 => "a few seconds",
        9 => "about a minute per core",
        _ => "tens of minutes to an hour per core; checkpointing recommended",
    };
    format!("sweeping every graph through order {horizon}; expect {estimate}")
}

fn cmd_play(a: PlayArgs) -> Result<i32> {
    let g = read_graph_input(a.input.as_deref())?;
    match play_transcript(&g, a.cops) {
        Ok(transcript) => {
            print!("{transcript}");
            Ok(exit_code::OK)
        }
        Err(SolverError::CopsLose { k }) => {
            match cop_number(&g) {
                Ok(c) => eprintln!("{} insufficient; c(G)={c}", cop_noun(k)),
                Err(_) => eprintln!("{} insufficient; c(G) > {MAX_COPS}", cop_noun(k)),
            }
            Ok(exit_code::REFUSED)
        }
        Err(e) => Err(e.into()),
    }
}
