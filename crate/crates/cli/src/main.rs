use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nilcomm::commutant::matrix_report;
use nilcomm::field::DEFAULT_PRIME;
use nilcomm::greene::greene_lambda;
use nilcomm::uchain::{lambda_u, max_simple_u_chains, u_profile};
use nilcomm::uprocess::{canonical_process, enumerate_full_processes_capped, DEFAULT_TRACE_CAP};
use nilcomm::verify::{
    sweep, MatrixOptions, SweepOptions, SweepReport, DEFAULT_MAX_N, SCHEMA_VERSION,
};
use nilcomm::{Partition, Poset, PrimeField};

#[derive(Parser)]
#[command(
    name = "nilcomm",
    version,
    about = "Chain invariants and U-processes of nilpotent Jordan types"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report λ(P), λ_U(P), r_P and the canonical U-process of one partition.
    Invariants(InvariantsArgs),
    /// Check every partition of every n in N_MIN..=N_MAX.
    Verify(VerifyArgs),
    /// Write the poset as Graphviz DOT or the full invariant record as JSON.
    Export(ExportArgs),
}

#[derive(Args, Clone)]
struct SamplingArgs {
    /// Prime modulus for matrix sampling.
    #[arg(long, env = "NILCOMM_PRIME", default_value_t = DEFAULT_PRIME)]
    prime: u64,
    /// Samples per partition.
    #[arg(long, default_value_t = 5)]
    samples: usize,
    /// Seed of the first sample; sample i uses seed + i.
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct InvariantsArgs {
    /// Partition, e.g. 5,4,3,3,2,1.
    #[arg(short = 'p', long = "partition")]
    partition: Partition,
    /// Include the maximum simple U-chains.
    #[arg(long)]
    max_simple: bool,
    /// Include every full U-process, not just the canonical one.
    #[arg(long)]
    all_processes: bool,
    /// Estimate the generic commutator Jordan type by sampling.
    #[arg(long)]
    with_matrix: bool,
    /// Human-readable output instead of JSON.
    #[arg(long)]
    text: bool,
    #[command(flatten)]
    sampling: SamplingArgs,
}

#[derive(Args)]
struct VerifyArgs {
    n_min: usize,
    n_max: usize,
    /// Also run the sampled-matrix checks.
    #[arg(long)]
    with_matrix: bool,
    /// Treat a sampled type different from λ_U as a failure.
    #[arg(long)]
    strict_conjecture: bool,
    /// Abort a partition's process enumeration past this many traces.
    #[arg(long, default_value_t = DEFAULT_TRACE_CAP)]
    max_traces: usize,
    /// Largest n accepted.
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    max_n: usize,
    /// Print the whole report as JSON.
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    sampling: SamplingArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(short = 'p', long = "partition")]
    partition: Partition,
    #[arg(long, value_enum)]
    format: Format,
    /// Output file; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

type CliResult<T> = Result<T, Box<dyn std::error::Error>>;

fn field(args: &SamplingArgs) -> CliResult<PrimeField> {
    Ok(PrimeField::new(args.prime)?)
}

struct RecordOptions<'a> {
    max_simple: bool,
    all_processes: bool,
    matrix: Option<&'a SamplingArgs>,
}

fn invariant_record(p: &Partition, opts: &RecordOptions) -> CliResult<Value> {
    let poset = Poset::build(p);
    let mut record = json!({
        "schema": SCHEMA_VERSION,
        "P": p,
        "n": p.n(),
        "lambda": greene_lambda(&poset)?,
        "lambda_U": lambda_u(p),
        "u_profile": u_profile(p),
        "r": p.r(),
        "canonical_process": canonical_process(p)?.to_json(),
    });
    if opts.max_simple {
        record["max_simple"] = json!(max_simple_u_chains(p));
    }
    if opts.all_processes {
        let traces = enumerate_full_processes_capped(p, DEFAULT_TRACE_CAP)?;
        record["processes"] = json!(traces.iter().map(|t| t.to_json()).collect::<Vec<_>>());
    }
    if let Some(s) = opts.matrix {
        record["matrix"] = json!(matrix_report(p, &field(s)?, s.samples, s.seed)?);
    }
    Ok(record)
}

fn seq(v: &Value) -> String {
    match v {
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(Value::to_string).collect();
            format!("({})", inner.join(","))
        }
        other => other.to_string(),
    }
}

fn print_text(record: &Value, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "P         = {}", seq(&record["P"]))?;
    writeln!(out, "lambda    = {}", seq(&record["lambda"]))?;
    writeln!(out, "lambda_U  = {}", seq(&record["lambda_U"]))?;
    writeln!(out, "u_k       = {}", seq(&record["u_profile"]))?;
    writeln!(out, "r_P       = {}", record["r"])?;
    if let Some(m) = record.get("max_simple") {
        writeln!(
            out,
            "max |U_a| = {} at a in {}",
            m["cardinality"],
            seq(&m["anchors"])
        )?;
    }
    let steps = record["canonical_process"]["steps"]
        .as_array()
        .cloned()
        .unwrap_or_default();
    let anchors: Vec<Value> = steps.iter().map(|s| s["a"].clone()).collect();
    writeln!(
        out,
        "canonical process anchors = {}",
        seq(&Value::Array(anchors))
    )?;
    if let Some(traces) = record.get("processes").and_then(Value::as_array) {
        writeln!(out, "full processes = {}", traces.len())?;
        for t in traces {
            let a: Vec<Value> = t["steps"]
                .as_array()
                .into_iter()
                .flatten()
                .map(|s| s["a"].clone())
                .collect();
            writeln!(
                out,
                "  anchors {} -> Q = {}",
                seq(&Value::Array(a)),
                seq(&t["Q"])
            )?;
        }
    }
    if let Some(m) = record.get("matrix") {
        writeln!(
            out,
            "Q_est     = {} (prime {}, seeds {}, agrees with lambda_U: {})",
            seq(&m["Q_est"]),
            m["prime"],
            seq(&m["seeds"]),
            m["agree"]
        )?;
    }
    Ok(())
}

fn run_invariants(args: InvariantsArgs) -> CliResult<ExitCode> {
    let record = invariant_record(
        &args.partition,
        &RecordOptions {
            max_simple: args.max_simple,
            all_processes: args.all_processes,
            matrix: args.with_matrix.then_some(&args.sampling),
        },
    )?;
    let mut out = io::stdout().lock();
    if args.text {
        print_text(&record, &mut out)?;
    } else {
        writeln!(out, "{}", serde_json::to_string_pretty(&record)?)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn summarize(report: &SweepReport, out: &mut impl Write) -> io::Result<()> {
    for c in &report.partition_counts {
        writeln!(out, "n = {:>2}: {} partitions", c.n, c.enumerated)?;
    }
    let traces: usize = report.records.iter().map(|r| r.processes).sum();
    writeln!(
        out,
        "checked {} partitions, {} full U-processes",
        report.records.len(),
        traces
    )?;
    if let Some(c) = &report.conjecture {
        writeln!(
            out,
            "Q_est = lambda_U on {}/{} partitions",
            c.agreeing, c.checked
        )?;
        for p in &c.disagreeing {
            writeln!(out, "  differs at {p}")?;
        }
    }
    writeln!(out, "hard failures: {}", report.failures.len())?;
    for f in &report.failures {
        let at = f
            .partition
            .as_ref()
            .map(|p| p.to_string())
            .unwrap_or_default();
        writeln!(out, "  {:?} {at}: {}", f.check, f.detail)?;
    }
    Ok(())
}

fn run_verify(args: VerifyArgs) -> CliResult<ExitCode> {
    let mut opts = SweepOptions::new(args.n_min, args.n_max);
    opts.max_n = args.max_n;
    opts.trace_cap = args.max_traces;
    opts.strict_conjecture = args.strict_conjecture;
    if args.with_matrix {
        opts.matrix = Some(MatrixOptions {
            field: field(&args.sampling)?,
            samples: args.sampling.samples,
            seed: args.sampling.seed,
        });
    }
    let report = match sweep(&opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(2));
        }
    };
    let mut out = io::stdout().lock();
    if args.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    } else {
        summarize(&report, &mut out)?;
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn run_export(args: ExportArgs) -> CliResult<ExitCode> {
    let text = match args.format {
        Format::Dot => Poset::build(&args.partition).to_dot(),
        Format::Json => {
            let mut record = invariant_record(
                &args.partition,
                &RecordOptions {
                    max_simple: true,
                    all_processes: false,
                    matrix: None,
                },
            )?;
            record["poset"] = json!(Poset::build(&args.partition).to_json());
            serde_json::to_string_pretty(&record)? + "\n"
        }
    };
    match args.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Invariants(a) => run_invariants(a),
        Command::Verify(a) => run_verify(a),
        Command::Export(a) => run_export(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::FAILURE
    })
}
