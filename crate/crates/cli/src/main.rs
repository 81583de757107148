use std::fmt;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use listedge::engine::{color_graph_with, ColorOptions};
use listedge::gen::{generate_random, superset_lists, GenParams};
use listedge::io::{
    parse_coloring, parse_instance, write_coloring, write_instance, write_trace, Instance,
};
use listedge::lists::{check_bound, generate_from_bounds};
use listedge::oracle::{exhaustive_color, DEFAULT_LIMIT};
use listedge::{Algorithm, BoundMode, ListAssignment, Multigraph, PartialColoring};
use rayon::prelude::*;

#[derive(Parser)]
#[command(
    name = "listedge",
    version,
    about = "List edge-coloring of multigraphs under local list-size bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Color an instance and print the coloring.
    Color(ColorArgs),
    /// Check a coloring against an instance.
    Verify(VerifyArgs),
    /// Exhaustive search for a coloring on a small instance.
    Oracle(OracleArgs),
    /// Write a random instance.
    Gen(GenArgs),
    /// Color many random instances in parallel and summarize.
    Bench(BenchArgs),
}

#[derive(Args)]
struct ColorArgs {
    file: PathBuf,
    /// shannon, vizing, koenig, or explicit (lists taken from the file).
    #[arg(long)]
    mode: BoundMode,
    /// With --mode explicit: the bound the lists are claimed to satisfy.
    #[arg(long, value_name = "MODE")]
    assume_bound: Option<BoundMode>,
    /// Write one JSON trace record per shift or coloring.
    #[arg(long, value_name = "FILE")]
    trace: Option<PathBuf>,
    /// Print run statistics as JSON on stderr.
    #[arg(long)]
    stats: bool,
    /// Write the coloring here instead of stdout.
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    coloring: PathBuf,
    /// Needed when the instance has no lists; generates them from this bound.
    #[arg(long)]
    mode: Option<BoundMode>,
}

#[derive(Args)]
struct OracleArgs {
    file: PathBuf,
    /// Needed when the instance has no lists.
    #[arg(long)]
    mode: Option<BoundMode>,
    #[arg(long, default_value_t = DEFAULT_LIMIT)]
    limit: usize,
}

#[derive(Args, Clone)]
struct GraphArgs {
    #[arg(short, long)]
    n: usize,
    /// Maximum degree Δ.
    #[arg(short = 'd', long)]
    max_degree: usize,
    /// Maximum edge multiplicity μ.
    #[arg(short = 'u', long, default_value_t = 1)]
    max_multiplicity: usize,
    #[arg(long)]
    bipartite: bool,
    /// Fraction of the n·Δ/2 edge slots to fill.
    #[arg(long, default_value_t = 1.0)]
    fill: f64,
}

impl GraphArgs {
    fn params(&self, seed: u64) -> GenParams {
        GenParams::new(self.n, self.max_degree, self.max_multiplicity, seed)
            .bipartite(self.bipartite)
            .fill(self.fill)
    }
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write explicit lists: random supersets meeting this bound.
    #[arg(long, value_name = "MODE")]
    lists: Option<BoundMode>,
    /// Extra colors beyond the bound when writing lists.
    #[arg(long, default_value_t = 2)]
    spare: usize,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    mode: BoundMode,
    #[arg(long, default_value_t = 100)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    first_seed: u64,
    /// Print one line per seed as well as the summary.
    #[arg(long)]
    per_run: bool,
}

/// The input was well-formed but the answer is negative.
#[derive(Debug)]
struct Rejected(String);

impl fmt::Display for Rejected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Rejected {}

#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    use listedge::Error as E;
    for cause in err.chain() {
        if cause.is::<Rejected>() {
            return 1;
        }
        if cause.is::<Usage>() || cause.is::<io::Error>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e {
                E::BoundViolation(_) | E::NotBipartite => 1,
                e if e.is_internal() => 3,
                _ => 2,
            };
        }
    }
    2
}

fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn algorithm_for(mode: BoundMode) -> Result<Algorithm> {
    Algorithm::from_mode(mode)
        .ok_or_else(|| usage("--assume-bound must name shannon, vizing or koenig"))
}

/// Resolves the lists and the algorithm for `color`.
fn lists_for(
    inst: &Instance,
    mode: BoundMode,
    assume: Option<BoundMode>,
) -> Result<(ListAssignment, Algorithm)> {
    match mode {
        BoundMode::Explicit => {
            let Some(assume) = assume else {
                return Err(usage("--mode explicit requires --assume-bound"));
            };
            let algo = algorithm_for(assume)?;
            Ok((explicit_lists(inst)?, algo))
        }
        mode => {
            if inst.lists.is_some() {
                return Err(usage(format!(
                    "instance carries explicit lists; use --mode explicit --assume-bound {mode}"
                )));
            }
            if assume.is_some_and(|a| a != mode) {
                return Err(usage("--assume-bound only applies to --mode explicit"));
            }
            let algo = algorithm_for(mode)?;
            Ok((generate_from_bounds(&inst.graph, mode)?, algo))
        }
    }
}

fn explicit_lists(inst: &Instance) -> Result<ListAssignment> {
    match &inst.lists {
        Some(l) => Ok(l.clone()),
        None if inst.graph.edge_count() == 0 => Ok(ListAssignment::new(&inst.graph, vec![])?),
        None => Err(usage(
            "instance has no lists; pass a bound mode instead of explicit",
        )),
    }
}

/// Lists for `verify` and `oracle`: from the file, or generated from `mode`.
fn lists_for_check(inst: &Instance, mode: Option<BoundMode>) -> Result<ListAssignment> {
    match (mode, &inst.lists) {
        (None | Some(BoundMode::Explicit), _) => explicit_lists(inst),
        (Some(_), Some(_)) => Err(usage("instance carries explicit lists; omit --mode")),
        (Some(mode), None) => Ok(generate_from_bounds(&inst.graph, mode)?),
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn cmd_color(args: &ColorArgs) -> Result<()> {
    let inst = read_instance(&args.file)?;
    let (lists, algo) = lists_for(&inst, args.mode, args.assume_bound)?;
    let opts = ColorOptions {
        record_trace: args.trace.is_some(),
        ..ColorOptions::default()
    };
    let run = color_graph_with(&inst.graph, &lists, algo, &opts)?;
    if let Some(path) = &args.trace {
        let file =
            fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        write_trace(BufWriter::new(file), &run.trace)?;
    }
    if args.stats {
        eprintln!("{}", serde_json::to_string(&run.stats)?);
    }
    let mut out = output(args.output.as_deref())?;
    out.write_all(write_coloring(run.coloring.assignment()).as_bytes())?;
    out.flush()?;
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<()> {
    let inst = read_instance(&args.file)?;
    let lists = lists_for_check(&inst, args.mode)?;
    let text = fs::read_to_string(&args.coloring)
        .with_context(|| format!("reading {}", args.coloring.display()))?;
    let colors = parse_coloring(&text, inst.graph.edge_count())?;
    if let Some(e) = colors.iter().position(Option::is_none) {
        bail!(Rejected(format!("edge {e} is uncolored")));
    }
    let phi = PartialColoring::from_assignment(&inst.graph, &lists, &colors)
        .map_err(|e| Rejected(e.to_string()))?;
    let report = phi.verify();
    if !report.is_ok() {
        bail!(Rejected(format!("{:?}", report.findings)));
    }
    println!(
        "ok: {} edges, proper and within lists",
        inst.graph.edge_count()
    );
    Ok(())
}

fn cmd_oracle(args: &OracleArgs) -> Result<()> {
    let inst = read_instance(&args.file)?;
    let lists = lists_for_check(&inst, args.mode)?;
    match exhaustive_color(&inst.graph, &lists, args.limit)? {
        Some(colors) => {
            let colors: Vec<_> = colors.into_iter().map(Some).collect();
            print!("{}", write_coloring(&colors));
            Ok(())
        }
        None => bail!(Rejected("no proper list edge-coloring exists".into())),
    }
}

fn cmd_gen(args: &GenArgs) -> Result<()> {
    let params = args.graph.params(args.seed);
    let g = generate_random(&params)?;
    let lists = match args.lists {
        Some(mode) => {
            let mut rng = GenParams::new(0, 0, 0, args.seed ^ 0x5eed).rng();
            Some(superset_lists(&g, mode, args.spare, &mut rng)?)
        }
        None => None,
    };
    print!("{}", write_instance(&g, lists.as_ref()));
    Ok(())
}

struct BenchRow {
    seed: u64,
    m: usize,
    delta: usize,
    result: std::result::Result<listedge::RunStats, listedge::Error>,
    micros: u128,
}

fn bench_one(args: &BenchArgs, algo: Algorithm, seed: u64) -> Result<BenchRow> {
    let g: Multigraph = generate_random(&args.graph.params(seed))?;
    let lists = generate_from_bounds(&g, algo.bound_mode())?;
    debug_assert!(check_bound(&g, &lists, algo.bound_mode())?.passed());
    let start = Instant::now();
    let result = color_graph_with(&g, &lists, algo, &ColorOptions::default()).map(|run| run.stats);
    Ok(BenchRow {
        seed,
        m: g.edge_count(),
        delta: g.max_degree(),
        result,
        micros: start.elapsed().as_micros(),
    })
}

fn cmd_bench(args: &BenchArgs) -> Result<()> {
    let algo = algorithm_for(args.mode)?;
    if algo == Algorithm::Koenig && !args.graph.bipartite {
        return Err(usage("koenig mode needs --bipartite"));
    }
    let seeds: Vec<u64> = (args.first_seed..args.first_seed + args.seeds).collect();
    let start = Instant::now();
    let rows = seeds
        .par_iter()
        .map(|&s| bench_one(args, algo, s))
        .collect::<Result<Vec<_>>>()?;
    let wall = start.elapsed();

    let mut out = io::stdout().lock();
    if args.per_run {
        writeln!(
            out,
            "seed\tm\tdelta\thappy\tcontent\tfans\tpaths\tmax_chain\tmax_step_ops\tmicros"
        )?;
    }
    let mut failures = Vec::new();
    let (mut happy, mut content, mut ops, mut max_chain, mut max_ops) =
        (0usize, 0usize, 0u64, 0usize, 0u64);
    let runs = rows.len();
    for row in rows {
        match row.result {
            Ok(s) => {
                happy += s.happy_steps;
                content += s.content_steps;
                ops += s.total_ops;
                max_chain = max_chain.max(s.max_chain_length);
                max_ops = max_ops.max(s.max_step_ops);
                if args.per_run {
                    writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                        row.seed,
                        row.m,
                        row.delta,
                        s.happy_steps,
                        s.content_steps,
                        s.fan_shifts,
                        s.path_shifts,
                        s.max_chain_length,
                        s.max_step_ops,
                        row.micros
                    )?;
                }
            }
            Err(e) => failures.push((row.seed, e)),
        }
    }
    writeln!(
        out,
        "mode {algo}: {} runs, {} failures, wall {wall:.2?}",
        runs,
        failures.len()
    )?;
    writeln!(
        out,
        "steps: {happy} happy, {content} content; max chain {max_chain}; ops {ops} total, {max_ops} max per step"
    )?;
    for (seed, e) in &failures {
        writeln!(out, "seed {seed}: {e}")?;
    }
    out.flush()?;
    if let Some((seed, e)) = failures.into_iter().next() {
        return Err(anyhow::Error::new(e).context(format!("bench run for seed {seed} failed")));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Color(a) => cmd_color(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Bench(a) => cmd_bench(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
