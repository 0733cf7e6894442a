//! Command-line surface: argument parsing, thread pool, output files and
//! exit codes.
//!
//! Every flag can also be set through an environment variable named
//! `SSPG3_<FLAG>`, for example `SSPG3_P=11` or `SSPG3_THREADS=8`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::classify::VarietyKind;
use crate::enumerate::{
    enumerate_dim2, enumerate_dim3, find_hyperelliptic, EnumConfig, EnumerationResult, SeedOrder,
    PRNG_NAME,
};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::reconstruct::CurveModel;
use crate::seeds::supersingular_lambdas;
use crate::symplectic::coset_reps;
use crate::verify::{cartier_manin_hyperelliptic, hasse_witt_quartic, verify_json};

/// Success.
pub const EXIT_OK: i32 = 0;
/// A search finished without a result (random-walk step cap).
pub const EXIT_NO_RESULT: i32 = 1;
/// Bad arguments or input.
pub const EXIT_USAGE: i32 = 2;
/// An internal consistency check failed.
pub const EXIT_INTERNAL: i32 = 3;
/// Checkpoint or output file problem.
pub const EXIT_IO: i32 = 4;

/// Output format version written into summaries.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "superspecial",
    version,
    about = "Superspecial genus-3 curves via the (2,2,2)-isogeny graph"
)]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "SSPG3_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct PrimeArg {
    /// The characteristic, a prime p > 7.
    #[arg(long, env = "SSPG3_P")]
    pub p: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate superspecial genus-2 curves.
    Enumerate2 {
        #[command(flatten)]
        prime: PrimeArg,
        /// Directory for `genus2.jsonl`.
        #[arg(long, env = "SSPG3_OUT_DIR")]
        out_dir: Option<PathBuf>,
    },
    /// Enumerate superspecial genus-3 curves.
    Enumerate3 {
        #[command(flatten)]
        prime: PrimeArg,
        /// Directory for `summary.json`, `curves.jsonl` and `counts.csv`.
        #[arg(long, env = "SSPG3_OUT_DIR", default_value = ".")]
        out_dir: PathBuf,
        /// Checkpoint file; resumed from when it exists.
        #[arg(long, env = "SSPG3_CHECKPOINT")]
        checkpoint: Option<PathBuf>,
        /// Processed nodes between checkpoint writes.
        #[arg(long, env = "SSPG3_CHECKPOINT_EVERY", default_value_t = 1000)]
        checkpoint_every: usize,
        /// Stop once #L1 + #L2 reaches this externally known count.
        #[arg(long, env = "SSPG3_STOP_AT_COUNT")]
        stop_at_count: Option<usize>,
        /// Include full invariant tuples in the records.
        #[arg(long, env = "SSPG3_EMIT_INVARIANTS")]
        emit_invariants: bool,
        /// Also write `counts.csv`.
        #[arg(long, env = "SSPG3_CSV")]
        csv: bool,
        /// Draw square-root signs pseudo-randomly from this seed.
        #[arg(long, env = "SSPG3_SIGN_SEED")]
        sign_seed: Option<u64>,
        /// Process the initial seeds in reverse order.
        #[arg(long, env = "SSPG3_REVERSE_SEEDS")]
        reverse_seeds: bool,
        /// Nodes per parallel batch.
        #[arg(long, env = "SSPG3_BATCH", default_value_t = 64)]
        batch: usize,
    },
    /// Find one superspecial hyperelliptic genus-3 curve.
    FindHyp {
        #[command(flatten)]
        prime: PrimeArg,
        /// Random-walk seed.
        #[arg(long, env = "SSPG3_SEED", default_value_t = 0)]
        seed: u64,
        /// Random-walk step cap.
        #[arg(long, env = "SSPG3_MAX_STEPS", default_value_t = 10_000_000)]
        max_steps: u64,
        /// Skip the known families and always walk.
        #[arg(long, env = "SSPG3_FORCE_WALK")]
        force_walk: bool,
    },
    /// Compute the Cartier–Manin or Hasse–Witt matrix of a curve.
    Verify {
        #[command(flatten)]
        prime: PrimeArg,
        /// Curve JSON, or `@path` to read it from a file.
        #[arg(long, env = "SSPG3_CURVE")]
        curve: String,
    },
    /// Print the Γ₀(2) coset representatives.
    ExportCosets {
        /// Genus, 2 or 3.
        #[arg(long, env = "SSPG3_G", default_value_t = 3, value_parser = clap::value_parser!(u8).range(2..=3))]
        g: u8,
    },
}

/// Exit code for an error. `user_input` marks errors caused by data the
/// user supplied rather than by the pipeline.
pub fn exit_code(e: &Error, user_input: bool) -> i32 {
    match e {
        Error::InvalidPrime(_) | Error::Parse(_) => EXIT_USAGE,
        Error::NotSmooth(_) | Error::FieldMismatch(..) if user_input => EXIT_USAGE,
        Error::Checkpoint(_) | Error::Io(_) | Error::Json(_) => EXIT_IO,
        Error::GaveUp(_) => EXIT_NO_RESULT,
        _ => EXIT_INTERNAL,
    }
}

/// Parses arguments, runs the command and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .try_init();
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let user_input = matches!(cli.command, Command::Verify { .. });
    let mut stdout = std::io::stdout().lock();
    match run(&cli, &mut stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e, user_input)
        }
    }
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(Error::Parse("--threads must be positive".into()));
        }
        b = b.num_threads(n);
    }
    b.build()
        .map_err(|e| Error::InvariantViolation(format!("thread pool: {e}")))
}

/// Runs a parsed command, writing human-facing output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let pool = pool(cli.threads)?;
    match &cli.command {
        Command::Enumerate2 { prime, out_dir } => {
            let f = PrimeField::new(prime.p)?;
            let seeds = supersingular_lambdas(f)?;
            let classes = pool.install(|| enumerate_dim2(&seeds, &coset_reps(2)?))?;
            let mut classes: Vec<_> = classes.iter().collect();
            classes.sort_by(|a, b| a.fingerprint.cmp(&b.fingerprint));
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(dir)?;
                let mut w =
                    std::io::BufWriter::new(std::fs::File::create(dir.join("genus2.jsonl"))?);
                for c in &classes {
                    let rec = json!({"fingerprint": c.fingerprint, "model": CurveModel::Hyperelliptic(c.model.clone())});
                    writeln!(w, "{rec}")?;
                }
            }
            let summary = json!({"p": f.p(), "lambda1": seeds.len(), "lambda2": classes.len()});
            writeln!(out, "{summary}")?;
        }
        Command::Enumerate3 {
            prime,
            out_dir,
            checkpoint,
            checkpoint_every,
            stop_at_count,
            emit_invariants,
            csv,
            sign_seed,
            reverse_seeds,
            batch,
        } => {
            let f = PrimeField::new(prime.p)?;
            let cfg = EnumConfig {
                stop_at_count: *stop_at_count,
                checkpoint: checkpoint.clone(),
                checkpoint_every: (*checkpoint_every).max(1),
                batch: *batch,
                sign_seed: *sign_seed,
                seed_order: if *reverse_seeds {
                    SeedOrder::Reversed
                } else {
                    SeedOrder::Natural
                },
                emit_invariants: *emit_invariants,
                ..EnumConfig::default()
            };
            let res = pool.install(|| enumerate_dim3(f, &cfg))?;
            certify(&res)?;
            write_outputs(&res, f, out_dir, *csv)?;
            writeln!(out, "{}", summary_json(&res, f, true))?;
        }
        Command::FindHyp {
            prime,
            seed,
            max_steps,
            force_walk,
        } => {
            let f = PrimeField::new(prime.p)?;
            let found = pool.install(|| find_hyperelliptic(f, *seed, *max_steps, *force_walk))?;
            let cm = cartier_manin_hyperelliptic(&found.model.rhs(), 3)?;
            if !cm.is_zero() {
                return Err(Error::InvariantViolation(
                    "found curve fails the Cartier–Manin check".into(),
                ));
            }
            let mut rec = serde_json::to_value(&found)?;
            rec["type"] = json!("hyperelliptic");
            rec["superspecial"] = json!(true);
            writeln!(out, "{rec}")?;
        }
        Command::Verify { prime, curve } => {
            let f = PrimeField::new(prime.p)?;
            let text = match curve.strip_prefix('@') {
                Some(path) => std::fs::read_to_string(path)?,
                None => curve.clone(),
            };
            let json: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("curve JSON: {e}")))?;
            let verdict = verify_json(f, &json)?;
            for row in &verdict.matrix.entries {
                let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                writeln!(out, "[{}]", cells.join(", "))?;
            }
            writeln!(out, "superspecial: {}", verdict.superspecial)?;
        }
        Command::ExportCosets { g } => {
            let table = coset_reps(*g as usize)?;
            for rep in table.reps() {
                writeln!(out, "{}", serde_json::to_string(&rep.rows())?)?;
            }
        }
    }
    Ok(())
}

/// Runs the superspeciality oracle on every emitted curve.
pub fn certify(res: &EnumerationResult) -> Result<()> {
    use rayon::prelude::*;
    res.nodes
        .par_iter()
        .filter(|n| n.kind.is_jacobian())
        .try_for_each(|n| {
            let m = match &n.model {
                Some(CurveModel::Quartic(q)) => hasse_witt_quartic(&q.coeffs)?,
                Some(CurveModel::Hyperelliptic(h)) => cartier_manin_hyperelliptic(&h.rhs(), h.g)?,
                None => {
                    return Err(Error::InvariantViolation(format!(
                        "curve {} has no model",
                        n.key
                    )))
                }
            };
            if m.is_zero() {
                Ok(())
            } else {
                Err(Error::InvariantViolation(format!(
                    "curve {} is not superspecial",
                    n.key
                )))
            }
        })
}

/// Summary object. Timing is omitted when `with_timing` is false, which
/// makes the summary reproducible byte for byte.
pub fn summary_json(
    res: &EnumerationResult,
    f: PrimeField,
    with_timing: bool,
) -> serde_json::Value {
    let c = &res.counts;
    let s = &res.stats;
    let mut v = json!({
        "format_version": FORMAT_VERSION,
        "p": res.p,
        "nonresidue": f.nonresidue(),
        "prng": PRNG_NAME,
        "L1": c.l1,
        "L2": c.l2,
        "L3": c.l3,
        "L4": c.l4,
        "total": c.total,
        "lambda1": c.lambda1,
        "lambda2": c.lambda2,
        "nodes": s.nodes_processed,
        "edges": s.edges,
        "compl": s.compl,
        "compl_ratio": if c.total == 0 { 0.0 } else { s.compl as f64 / c.total as f64 },
        "stopped_early": res.stopped_early,
    });
    if with_timing {
        v["seconds"] = json!(s.seconds);
    }
    v
}

/// Sorted curve records as JSON lines.
pub fn curves_jsonl(res: &EnumerationResult) -> Result<String> {
    let mut s = String::new();
    for i in res.sorted_curves() {
        s.push_str(&serde_json::to_string(&res.nodes[i].record(i))?);
        s.push('\n');
    }
    Ok(s)
}

/// Counts as a two-line CSV: a header row and one row of values.
pub fn counts_csv(res: &EnumerationResult) -> String {
    let c = &res.counts;
    format!(
        "p,L1,L2,L3,L4,total\n{},{},{},{},{},{}\n",
        res.p, c.l1, c.l2, c.l3, c.l4, c.total
    )
}

/// Writes `summary.json`, `curves.jsonl` and optionally `counts.csv`.
pub fn write_outputs(res: &EnumerationResult, f: PrimeField, dir: &Path, csv: bool) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(
        dir.join("summary.json"),
        serde_json::to_string_pretty(&summary_json(res, f, true))? + "\n",
    )?;
    std::fs::write(dir.join("curves.jsonl"), curves_jsonl(res)?)?;
    if csv {
        std::fs::write(dir.join("counts.csv"), counts_csv(res))?;
    }
    let q = res.keys(VarietyKind::PlaneQuartic).len();
    log::info!(
        "p={}: {} quartics, {} hyperelliptic, {} nodes",
        res.p,
        q,
        res.counts.l2,
        res.counts.total
    );
    Ok(())
}
