//! `ufs` command-line driver.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 runtime error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ufs::bench::{run_suite, BenchConfig, Suite};
use ufs::engine::{run, EngineConfig, LocalEmission, DEFAULT_HASH_SEED};
use ufs::generators::{generate, GenSpec, GraphKind};
use ufs::io::{read_edges, read_labeling, write_edges, write_labeling, write_metrics, EdgeFormat, IdDictionary};
use ufs::{sequential_components, Election, Result};

#[derive(Parser)]
#[command(name = "ufs", version, about = "Connected components by union-find shuffle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic edge list.
    Gen(GenArgs),
    /// Label connected components of an edge list.
    Run(RunArgs),
    /// Check a labeling against a sequential union-find over the same edges.
    Verify(VerifyArgs),
    /// Compare algorithms over a generated dataset suite; writes CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Edge list file.
    #[arg(long, short)]
    input: PathBuf,
    /// tsv or csv; defaults from the file extension.
    #[arg(long)]
    format: Option<EdgeFormat>,
    /// Treat ids as opaque strings and encode them densely.
    #[arg(long)]
    encode_strings: bool,
}

impl InputArgs {
    fn read(&self) -> Result<(Vec<ufs::Edge>, Option<IdDictionary>)> {
        let format = self.format.unwrap_or_else(|| EdgeFormat::from_path(&self.input));
        read_edges(&self.input, format, self.encode_strings)
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: GraphKind,
    #[arg(long)]
    nodes: usize,
    /// Random edges (sparse), bridges (clique_clusters) or extra edges (skewed_lcc).
    #[arg(long)]
    edges: Option<usize>,
    #[arg(long, default_value_t = 32)]
    cluster_size: usize,
    #[arg(long, default_value_t = 8)]
    hubs: usize,
    #[arg(long, default_value_t = 2.0)]
    tail_exponent: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Keep generation-order ids instead of a seeded permutation.
    #[arg(long)]
    no_permute: bool,
    /// Emit edges in seeded random order.
    #[arg(long)]
    shuffle_edges: bool,
    #[arg(long, short)]
    output: PathBuf,
    #[arg(long)]
    format: Option<EdgeFormat>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Labeling output file.
    #[arg(long, short)]
    output: PathBuf,
    #[arg(long, default_value_t = 8)]
    partitions: usize,
    #[arg(long, default_value_t = Election::Min)]
    election: Election,
    /// Send both endpoints of every edge instead of running the local union-find.
    #[arg(long)]
    no_local_uf: bool,
    /// Emit one record per merging edge from the local union-find.
    #[arg(long)]
    per_edge_emission: bool,
    /// Write run metrics as JSON.
    #[arg(long)]
    metrics: Option<PathBuf>,
    #[arg(long)]
    max_rounds: Option<usize>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_HASH_SEED)]
    hash_seed: u64,
    /// Live record count above which checkpoints spill to $UFS_TMPDIR.
    #[arg(long)]
    memory_budget: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, short)]
    labeling: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value = "quick")]
    suite: Suite,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 16)]
    partitions: usize,
    #[arg(long)]
    workers: Option<usize>,
    /// CSV destination; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn parse_kind(s: &str) -> std::result::Result<GraphKind, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode> {
    match command {
        Command::Gen(args) => gen(args),
        Command::Run(args) => run_cmd(args),
        Command::Verify(args) => verify(args),
        Command::Bench(args) => bench(args),
    }
}

fn gen(args: GenArgs) -> Result<ExitCode> {
    let mut spec = GenSpec::new(args.kind, args.nodes, args.seed);
    if let Some(e) = args.edges {
        spec.edge_count = e;
    } else if args.kind == GraphKind::CliqueClusters {
        spec.edge_count = 0;
    }
    spec.cluster_size = args.cluster_size;
    spec.hub_count = args.hubs;
    spec.tail_exponent = args.tail_exponent;
    spec.permute_ids = !args.no_permute;
    spec.shuffle_edges = args.shuffle_edges;

    let (edges, truth) = generate(&spec)?;
    let format = args.format.unwrap_or_else(|| EdgeFormat::from_path(&args.output));
    write_edges(&args.output, &edges, format)?;
    eprintln!(
        "wrote {} edges to {} (components: {}, max degree: {})",
        edges.len(),
        args.output.display(),
        truth.component_count.map_or_else(|| "unknown".to_owned(), |c| c.to_string()),
        truth.max_degree
    );
    Ok(ExitCode::SUCCESS)
}

fn run_cmd(args: RunArgs) -> Result<ExitCode> {
    let (edges, dict) = args.input.read()?;
    let mut config = EngineConfig {
        k: args.partitions,
        election: args.election,
        local_uf: !args.no_local_uf,
        local_emission: if args.per_edge_emission { LocalEmission::PerEdge } else { LocalEmission::Flattened },
        max_rounds: args.max_rounds,
        hash_seed: args.hash_seed,
        memory_budget: args.memory_budget,
        ..EngineConfig::default()
    };
    if let Some(w) = args.workers {
        config.worker_count = w;
    }
    let (labeling, metrics) = run(&edges, &config)?;
    write_labeling(&args.output, &labeling, dict.as_ref())?;
    if let Some(path) = &args.metrics {
        write_metrics(path, &metrics)?;
    }
    eprintln!(
        "{} nodes, {} components, {} + {} rounds",
        labeling.len(),
        labeling.component_count(),
        metrics.phase2_rounds,
        metrics.phase3_rounds
    );
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let (edges, mut dict) = args.input.read()?;
    let labeling = read_labeling(&args.labeling, dict.as_mut())?;
    let expected = sequential_components(&edges);
    match expected.partition_mismatch(&labeling) {
        None => {
            eprintln!("ok: {} nodes in {} components", labeling.len(), labeling.component_count());
            Ok(ExitCode::SUCCESS)
        }
        Some(node) => {
            let name = dict.as_ref().and_then(|d| d.decode(node)).map_or_else(|| node.to_string(), str::to_owned);
            eprintln!("mismatch: labeling disagrees with the edge list at node {name}");
            Ok(ExitCode::from(1))
        }
    }
}

fn bench(args: BenchArgs) -> Result<ExitCode> {
    let mut config = BenchConfig { seed: args.seed, partitions: args.partitions, ..BenchConfig::default() };
    if let Some(w) = args.workers {
        config.workers = w;
    }
    let report = run_suite(args.suite, &config)?;
    match &args.output {
        Some(path) => report.write_csv(BufWriter::new(File::create(path)?))?,
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            report.write_csv(&mut lock)?;
            lock.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
