mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use cfcolor::classes::ResidualClass;
use cfcolor::{Variant, Vertex, VertexSet};
use clap::{Args, Parser, Subcommand, ValueEnum};

use report::RunReport;

/// Conflict-free coloring under closed and open neighborhoods.
///
/// Exit codes: 0 success / valid / YES, 1 invalid / NO / input outside the
/// solver's class, 2 usage or I/O error, 3 size-guard refusal, 4 a solver
/// output failed re-verification.
#[derive(Parser)]
#[command(name = "cfcolor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    /// closed neighborhoods N[v]
    Cn,
    /// open neighborhoods N(v)
    On,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Cn => Variant::Closed,
            VariantArg::On => Variant::Open,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClassArg {
    Cluster,
    Threshold,
}

impl From<ClassArg> for ResidualClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Cluster => ResidualClass::Cluster,
            ClassArg::Threshold => ResidualClass::Threshold,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Auto,
    Bipartite,
    Split,
    Cograph,
    Lemma1,
    Interval,
    Fpt,
    Threshold,
    Oracle,
}

/// `auto`, `none`, or a comma-separated vertex list.
#[derive(Clone, Debug)]
enum ModulatorArg {
    Auto,
    Given(VertexSet),
}

fn parse_modulator(s: &str) -> Result<ModulatorArg, String> {
    match s.trim() {
        "auto" => Ok(ModulatorArg::Auto),
        "none" | "" => Ok(ModulatorArg::Given(VertexSet::new())),
        list => list
            .split(',')
            .map(|t| t.trim().parse::<Vertex>().map_err(|_| format!("bad vertex id `{t}`")))
            .collect::<Result<VertexSet, _>>()
            .map(ModulatorArg::Given),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a coloring file against a graph.
    Verify {
        #[arg(long, value_enum)]
        variant: VariantArg,
        graph: PathBuf,
        coloring: PathBuf,
    },
    /// Exact chromatic number, or a yes/no answer for --k, by exhaustive search.
    Oracle {
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = cfcolor::oracle::DEFAULT_LIMIT)]
        limit: usize,
        /// Witness coloring file [default: graph path with extension .col]
        #[arg(long)]
        out: Option<PathBuf>,
        graph: PathBuf,
    },
    /// List the classes a graph belongs to, with certificates.
    Recognize { graph: PathBuf },
    /// Smallest vertex set whose removal leaves a cluster or threshold graph.
    Modulator {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long)]
        budget: usize,
        graph: PathBuf,
    },
    /// Compute a conflict-free coloring.
    Solve(SolveArgs),
    /// Reduce a graph with a cluster modulator to a bounded kernel.
    Kernelize(KernelizeArgs),
    /// Split-graph gadget from graph coloring.
    #[command(subcommand)]
    Gadget(GadgetCommand),
    /// Generate a seeded random instance with its certificate.
    Gen(GenArgs),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    variant: VariantArg,
    #[arg(long, value_enum, default_value_t = Strategy::Auto)]
    strategy: Strategy,
    /// Interval representation file (interval strategy)
    #[arg(long)]
    intervals: Option<PathBuf>,
    /// Modulator: `auto`, `none` or a list like `0,4,7` (lemma1, fpt, threshold)
    #[arg(long, value_parser = parse_modulator)]
    modulator: Option<ModulatorArg>,
    /// Largest modulator searched for when the modulator is `auto`
    #[arg(long, default_value_t = 6)]
    budget: usize,
    /// Vertex limit for exhaustive search (oracle and kernel solving)
    #[arg(long, default_value_t = cfcolor::oracle::DEFAULT_LIMIT)]
    limit: usize,
    /// With the fpt strategy: decide whether k colors suffice instead of minimizing
    #[arg(long)]
    k: Option<usize>,
    /// Coloring file [default: graph path with extension .col]
    #[arg(long)]
    out: Option<PathBuf>,
    graph: PathBuf,
}

#[derive(Args)]
struct KernelizeArgs {
    #[arg(long, value_enum)]
    variant: VariantArg,
    #[arg(long)]
    k: usize,
    /// Cluster modulator: `auto`, `none` or a list like `0,4,7`
    #[arg(long, value_parser = parse_modulator)]
    modulator: ModulatorArg,
    #[arg(long, default_value_t = 6)]
    budget: usize,
    /// Kernel graph file [default: graph path with extension .kernel.cf]
    #[arg(long)]
    out: Option<PathBuf>,
    /// Provenance sidecar [default: graph path with extension .kernel.map]
    #[arg(long)]
    map: Option<PathBuf>,
    graph: PathBuf,
}

#[derive(Subcommand)]
enum GadgetCommand {
    /// Write the split graph H and the vertex map.
    Encode {
        #[arg(long)]
        k: usize,
        /// [default: graph path with extension .gadget.cf]
        #[arg(long)]
        out: Option<PathBuf>,
        /// [default: graph path with extension .gadget.map]
        #[arg(long)]
        map: Option<PathBuf>,
        graph: PathBuf,
    },
    /// Check that G is k-colorable exactly when H has an open-neighborhood (k+2)-coloring.
    Validate {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = cfcolor::oracle::DEFAULT_LIMIT)]
        limit: usize,
        graph: PathBuf,
    },
}

#[derive(Args)]
struct GenArgs {
    /// cluster, interval, cluster-modulator, threshold-modulator, threshold,
    /// split, bipartite, cograph or random
    #[arg(long)]
    class: cfcolor::generators::GenClass,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    d: usize,
    /// Edge probability
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Clique sizes such as `3,2` (cluster and cluster-modulator)
    #[arg(long, value_delimiter = ',')]
    cliques: Option<Vec<usize>>,
    /// Allow disconnected output
    #[arg(long)]
    disconnected: bool,
    /// Graph file [default: <class>-n<N>-s<SEED>.cf]; the certificate goes
    /// next to it with extension .cert
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Why a command stopped early.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(String),
    /// The input is outside what the requested computation accepts.
    Rejected(String),
    Guard(String),
    Defect(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Rejected(_) => 1,
            Failure::Usage(_) | Failure::Io(_) => 2,
            Failure::Guard(_) => 3,
            Failure::Defect(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Io(m) | Failure::Rejected(m) | Failure::Guard(m) | Failure::Defect(m) => m,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Yes,
    No,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::iter::once("cfcolor".to_string())
        .chain(std::env::args().skip(1))
        .collect();
    let cli = Cli::parse();
    let mut report = RunReport::new(&argv);
    let result = commands::run(cli.command, &mut report);
    report.mark("total");
    let code = match &result {
        Ok(Status::Yes) => 0,
        Ok(Status::No) => 1,
        Err(f) => {
            report.put("error", f.message());
            eprintln!("error: {}", f.message());
            f.code()
        }
    };
    report.put("exit", code);
    print!("{report}");
    ExitCode::from(code)
}
