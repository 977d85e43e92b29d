use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pdakit::analytics::{table_report, write_csv, Table};
use pdakit::combinators::{
    combine_same_colors, combine_same_colors_fold, cycle_product, star_product, tensor_product, CombinatorError,
};
use pdakit::families::{FamilyError, FamilySpec};
use pdakit::graphs::{ColoredBipartiteGraph, GraphError, Label};
use pdakit::pda::{equivalent, read_pda, write_pda, Equivalence, DEFAULT_EQUIVALENCE_BUDGET};
use pdakit::sim::{demand_sweep, exhaustive_demands, simulate_demands, DemandVector, FileLibrary};
use pdakit::{Execution, PdaArray};

/// Build, combine, check and simulate placement delivery arrays.
#[derive(Parser)]
#[command(name = "pdakit", version)]
struct Cli {
    /// Run every check on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a PDA from a named family and write it to a file.
    Build(BuildArgs),
    /// Check the three PDA conditions; exit 1 if any fails.
    Validate { file: PathBuf },
    /// Print K, F, Z, S, g, M/N and R of a valid PDA.
    Params { file: PathBuf },
    /// Apply a combinator to one or more PDA files.
    Combine(CombineArgs),
    /// Run the caching scheme byte by byte over one or more demand vectors.
    Simulate(SimulateArgs),
    /// Print a parameter table as CSV, exact values beside the printed ones.
    Table {
        /// II, III, ..., IX
        which: Table,
        /// Add a Stirling estimate column for F.
        #[arg(long)]
        estimate: bool,
    },
    /// Decide whether two PDAs differ only by row, column and color
    /// permutations. Exit 0 equivalent, 1 inequivalent, 2 budget exhausted.
    Equiv {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EQUIVALENCE_BUDGET)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    DisjointUnion,
    IntersectionT,
    RestrictedCombined,
    Trivial,
    Star,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    a: Option<u32>,
    #[arg(long)]
    b: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    SameColors,
    Star,
    Tensor,
    Cycle,
}

#[derive(Args)]
struct CombineArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    /// Cycle length for `--mode cycle`.
    #[arg(long)]
    m: Option<usize>,
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct SimulateArgs {
    file: PathBuf,
    /// Library size N.
    #[arg(long)]
    files: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Bytes per file; defaults to F.
    #[arg(long)]
    file_len: Option<usize>,
    /// One demand vector, 1-based file numbers.
    #[arg(long, value_delimiter = ',', conflicts_with = "exhaustive")]
    demand: Option<Vec<usize>>,
    /// Every demand vector, however many there are.
    #[arg(long)]
    exhaustive: bool,
}

/// An outcome with its exit code: 1 failed check, 2 usage, 3 internal.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn check(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Range { .. } => Failure::usage(e.to_string()),
            other => Failure::internal(format!("family construction failed: {other}")),
        }
    }
}

impl From<CombinatorError> for Failure {
    fn from(e: CombinatorError) -> Self {
        match e {
            CombinatorError::TooFewOperands { .. } | CombinatorError::Graph(GraphError::UnsupportedCycle { .. }) => {
                Failure::usage(e.to_string())
            }
            other => Failure::check(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn load(path: &Path) -> Result<PdaArray, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    read_pda(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_valid(path: &Path, exec: Execution) -> Result<PdaArray, Failure> {
    let p = load(path)?;
    let report = p.validate_with(exec);
    if !report.is_valid() {
        return Err(Failure::check(format!("{}: {report}", path.display())));
    }
    Ok(p)
}

/// Writes only arrays that re-validate; anything else is a bug upstream.
fn save(p: &PdaArray, path: &Path, exec: Execution) -> Outcome {
    let report = p.validate_with(exec);
    if !report.is_valid() {
        return Err(Failure::internal(format!("constructed array is not a PDA: {report}")));
    }
    fs::write(path, write_pda(p))?;
    println!("wrote {} ({})", path.display(), p.params().map_err(|e| Failure::internal(e.to_string()))?);
    Ok(())
}

fn need(value: Option<u32>, flag: &str, family: &str) -> Result<u32, Failure> {
    value.ok_or_else(|| Failure::usage(format!("--family {family} needs --{flag}")))
}

fn build(args: BuildArgs, exec: Execution) -> Outcome {
    let n = |f| need(args.n, "n", f);
    let a = |f| need(args.a, "a", f);
    let b = |f| need(args.b, "b", f);
    let t = |f| need(args.t, "t", f);
    let spec = match args.family {
        Family::DisjointUnion => {
            FamilySpec::DisjointUnion { n: n("disjoint-union")?, a: a("disjoint-union")?, b: b("disjoint-union")? }
        }
        Family::IntersectionT => {
            let f = "intersection-t";
            FamilySpec::IntersectionT { n: n(f)?, a: a(f)?, b: b(f)?, t: t(f)? }
        }
        Family::RestrictedCombined => {
            let f = "restricted-combined";
            FamilySpec::RestrictedCombined { n: n(f)?, a: a(f)?, b: b(f)?, t: t(f)? }
        }
        Family::Trivial => FamilySpec::Trivial,
        Family::Star => FamilySpec::Star { m: need(args.m, "m", "star")? },
    };
    save(&spec.build()?, &args.output, exec)
}

fn validate(file: &Path, exec: Execution) -> Outcome {
    let p = load(file)?;
    let report = p.validate_with(exec);
    println!("{report}");
    if report.is_valid() {
        Ok(())
    } else {
        Err(Failure { code: 1, message: String::new() })
    }
}

fn params(file: &Path, exec: Execution) -> Outcome {
    let p = load_valid(file, exec)?;
    let record = p.params().map_err(|e| Failure::internal(e.to_string()))?;
    println!("{record}");
    Ok(())
}

/// Bipartite split of a tensor product of two PDA graphs: a vertex is on
/// the left when its first coordinate is a row of the first array.
fn first_factor_row(label: &Label) -> bool {
    let first = label.as_tuple().and_then(|t| t.first());
    let tag = first.and_then(Label::as_tuple).and_then(|t| t.first());
    tag == Some(&Label::name("L"))
}

fn combine(args: CombineArgs, exec: Execution) -> Outcome {
    let graphs = args
        .inputs
        .iter()
        .map(|path| load_valid(path, exec).map(ColoredBipartiteGraph::from))
        .collect::<Result<Vec<_>, _>>()?;
    let pair = |what: &str| match graphs.as_slice() {
        [a, b] => Ok((a, b)),
        _ => Err(Failure::usage(format!("--mode {what} takes exactly two inputs"))),
    };
    let graph = match args.mode {
        Mode::SameColors if graphs.len() == 2 => {
            let out = combine_same_colors(&graphs[0], &graphs[1])?;
            for m in &out.mismatches {
                eprintln!("note: closed-form prediction differs, {m}");
            }
            out.graph
        }
        Mode::SameColors => combine_same_colors_fold(&graphs)?,
        Mode::Star => star_product(&graphs)?,
        Mode::Tensor => {
            let (a, b) = pair("tensor")?;
            tensor_product(&a.to_general(), &b.to_general())?
                .to_bipartite(first_factor_row)
                .map_err(|e| Failure::internal(e.to_string()))?
        }
        Mode::Cycle => {
            let m = args.m.ok_or_else(|| Failure::usage("--mode cycle needs --m"))?;
            match graphs.as_slice() {
                [base] => cycle_product(base, m)?,
                _ => return Err(Failure::usage("--mode cycle takes exactly one input")),
            }
        }
    };
    let p = graph.to_pda().map_err(|e| Failure::check(format!("result is not a PDA: {e}")))?;
    save(&p, &args.output, exec)
}

fn simulate(args: SimulateArgs, exec: Execution) -> Outcome {
    let p = load_valid(&args.file, exec)?;
    if args.files == 0 {
        return Err(Failure::usage("--files must be at least 1"));
    }
    let file_len = args.file_len.unwrap_or(p.rows());
    let lib = FileLibrary::random(args.files, file_len, args.seed).map_err(|e| Failure::usage(e.to_string()))?;
    let demands = match &args.demand {
        Some(d) => {
            let d = DemandVector::from_one_based(d).ok_or_else(|| Failure::usage("demands are 1-based"))?;
            d.check(p.cols(), args.files).map_err(|e| Failure::usage(e.to_string()))?;
            vec![d]
        }
        None if args.exhaustive => exhaustive_demands(p.cols(), args.files),
        None => demand_sweep(p.cols(), args.files, args.seed),
    };
    let results = simulate_demands(&p, &lib, &demands, exec);
    let mut out = io::stdout().lock();
    let mut failed = 0;
    for (d, r) in demands.iter().zip(&results) {
        match r {
            Ok(()) => writeln!(out, "{d} pass")?,
            Err(e) => {
                failed += 1;
                writeln!(out, "{d} FAIL {e}")?;
            }
        }
    }
    let record = p.params().map_err(|e| Failure::internal(e.to_string()))?;
    writeln!(
        out,
        "demands: {} passed: {} broadcasts: {} rate: {}",
        demands.len(),
        demands.len() - failed,
        record.s,
        record.rate
    )?;
    if failed > 0 {
        return Err(Failure::internal(format!("{failed} demand vectors failed to decode on a valid PDA")));
    }
    Ok(())
}

fn table(which: Table, estimate: bool) -> Outcome {
    write_csv(&table_report(which), io::stdout().lock(), estimate).map_err(|e| Failure::usage(e.to_string()))
}

fn equiv(first: &Path, second: &Path, budget: u64) -> Outcome {
    let verdict = equivalent(&load(first)?, &load(second)?, budget);
    println!("{}", verdict.label());
    match verdict {
        Equivalence::Equivalent(_) => Ok(()),
        Equivalence::Inequivalent => Err(Failure { code: 1, message: String::new() }),
        Equivalence::BudgetExhausted => Err(Failure { code: 2, message: String::new() }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    let outcome = match cli.command {
        Command::Build(args) => build(args, exec),
        Command::Validate { file } => validate(&file, exec),
        Command::Params { file } => params(&file, exec),
        Command::Combine(args) => combine(args, exec),
        Command::Simulate(args) => simulate(args, exec),
        Command::Table { which, estimate } => table(which, estimate),
        Command::Equiv { first, second, budget } => equiv(&first, &second, budget),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, message }) => {
            if !message.is_empty() {
                eprintln!("error: {message}");
            }
            ExitCode::from(code)
        }
    }
}
