//! The `cancellative` command line.
//!
//! Exit codes are shared by every subcommand: 0 on success (or when the
//! checked property holds), 2 when a verified property is violated, and 1 for
//! usage, parse and I/O errors.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{self, bound_report};
use crate::constructions::{self, Family};
use crate::error::{Error, Result};
use crate::io::{self, Cell, Table};
use crate::lattice::{ChainProduct, LatticeOp, Point, PointSet};
use crate::search::{self, SearchConfig, SearchMode};
use crate::tables::{self, ParamRange, TableFamily};
use crate::verifier::{self, Property};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VIOLATED: i32 = 2;

/// Environment variable holding the default worker count for `search`.
pub const THREADS_ENV: &str = "CANCELLATIVE_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "cancellative",
    version,
    about = "Strongly cancellative and recovering sets on Boolean lattices and chain products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an explicit strongly cancellative set.
    Construct(ConstructArgs),
    /// Check a set file against a property.
    Verify(VerifyArgs),
    /// Search for a maximum set with a property.
    Search(SearchArgs),
    /// Compare the best known construction with the upper bound.
    Bounds(BoundsArgs),
    /// Pair statistics and entropies of a set file.
    Entropy(EntropyArgs),
    /// Construction size against bound over a parameter range.
    Table(TableArgs),
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// block-bn, diagonal, compose or power
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    l1: Option<u32>,
    #[arg(long)]
    l2: Option<u32>,
    #[arg(long)]
    l: Option<u32>,
    #[arg(long)]
    k: Option<usize>,
    /// Base set file for `compose`.
    #[arg(long)]
    base: Option<PathBuf>,
    /// Output file; the set goes to stdout when omitted.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Set file, or `-` for stdin.
    path: PathBuf,
    #[arg(long, value_parser = parse_property)]
    property: Property,
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// `b:<n>`, `d:<l1>,<l2>,...` or `d:<l>^<k>`
    #[arg(long, value_parser = parse_lattice)]
    lattice: ChainProduct,
    #[arg(long, value_parser = parse_property)]
    property: Property,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    #[arg(long, env = THREADS_ENV, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    node_budget: Option<u64>,
    /// Set file whose points seed the search.
    #[arg(long)]
    seed: Option<PathBuf>,
    /// Also write the best set as a set file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seconds between progress lines on stderr.
    #[arg(long)]
    progress: Option<f64>,
    /// Skip the single-threaded re-run that makes the reported set canonical.
    #[arg(long)]
    no_canonical: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Greedy,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
    Text,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long, value_parser = parse_lattice)]
    lattice: ChainProduct,
    #[arg(long, value_parser = parse_property)]
    property: Property,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

#[derive(Args, Debug)]
struct EntropyArgs {
    /// Set file, or `-` for stdin.
    path: PathBuf,
    #[arg(long, default_value = "meet", value_parser = parse_op)]
    op: LatticeOp,
    /// Anchor point as comma-separated coordinates, e.g. `1,0,1,0`.
    #[arg(long, value_parser = parse_point)]
    anchor: Option<Point>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// sc-bn, d2, dlk or rec-bn
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    l: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    l1: Option<String>,
    #[arg(long)]
    l2: Option<String>,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
}

fn parse_lattice(s: &str) -> std::result::Result<ChainProduct, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_property(s: &str) -> std::result::Result<Property, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_op(s: &str) -> std::result::Result<LatticeOp, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_point(s: &str) -> std::result::Result<Point, String> {
    s.split(',')
        .map(|c| c.trim().parse::<u32>().map_err(|_| format!("bad coordinate {c:?}")))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(Point::new)
}

/// Standard streams, injectable for tests.
pub struct Streams<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

/// Parses `args` (program name first) and runs the command; returns the
/// process exit code.
pub fn run<I, T>(args: I, streams: &mut Streams<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                streams.stderr.write_all(text.as_bytes())
            } else {
                streams.stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Construct(a) => construct(a, streams),
        Command::Verify(a) => verify(a, streams),
        Command::Search(a) => search_cmd(a, streams),
        Command::Bounds(a) => bounds_cmd(a, streams),
        Command::Entropy(a) => entropy_cmd(a, streams),
        Command::Table(a) => table_cmd(a, streams),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(streams.stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn load(path: &Path, streams: &mut Streams<'_>) -> Result<PointSet> {
    let loaded = if path == Path::new("-") {
        let mut text = String::new();
        streams.stdin.read_to_string(&mut text)?;
        io::parse_set(&text)?
    } else {
        io::read_set(path)?
    };
    for w in &loaded.warnings {
        writeln!(streams.stderr, "warning: {w}")?;
    }
    Ok(loaded.set)
}

fn require<T>(value: Option<T>, flag: &str, family: Family) -> Result<T> {
    value.ok_or_else(|| Error::InvalidParameter(format!("--{flag} is required for family {family}")))
}

fn construct(a: ConstructArgs, streams: &mut Streams<'_>) -> Result<i32> {
    let family: Family = a.family.parse()?;
    let set = match family {
        Family::BlockBn => constructions::block_construction(require(a.n, "n", family)?)?,
        Family::Diagonal => constructions::diagonal_construction(require(a.l1, "l1", family)?, require(a.l2, "l2", family)?)?,
        Family::Compose => {
            let base = load(&require(a.base, "base", family)?, streams)?;
            constructions::product_composition(&base, require(a.k, "k", family)?)?
        }
        Family::Power => constructions::power_construction(require(a.l, "l", family)?, require(a.k, "k", family)?)?,
    };
    let summary = format!("family={} size={}", family, set.len());
    match a.out {
        Some(path) => {
            io::write_set(&path, &set)?;
            writeln!(streams.stdout, "{summary}")?;
        }
        None => {
            streams.stdout.write_all(io::format_set(&set).as_bytes())?;
            writeln!(streams.stderr, "{summary}")?;
        }
    }
    Ok(EXIT_OK)
}

fn verify(a: VerifyArgs, streams: &mut Streams<'_>) -> Result<i32> {
    let set = load(&a.path, streams)?;
    match verifier::find_violation(&set, a.property) {
        None => {
            writeln!(streams.stdout, "OK size={}", set.len())?;
            Ok(EXIT_OK)
        }
        Some(v) => {
            writeln!(streams.stdout, "{}", serde_json::to_string(&v)?)?;
            Ok(EXIT_VIOLATED)
        }
    }
}

fn search_cmd(a: SearchArgs, streams: &mut Streams<'_>) -> Result<i32> {
    if a.threads == 0 {
        return Err(Error::InvalidParameter("--threads must be positive".into()));
    }
    let mode = match a.mode {
        ModeArg::Exact => SearchMode::Exact,
        ModeArg::Greedy => SearchMode::Greedy,
    };
    let mut config = SearchConfig::new(a.lattice, a.property)
        .mode(mode)
        .threads(a.threads)
        .canonical_witness(!a.no_canonical);
    if let Some(budget) = a.node_budget {
        config = config.node_budget(budget);
    }
    if let Some(path) = &a.seed {
        config = config.seed(load(path, streams)?);
    }
    if let Some(secs) = a.progress {
        let interval = Duration::try_from_secs_f64(secs)
            .map_err(|_| Error::InvalidParameter(format!("bad progress interval {secs}")))?;
        config = config.progress_interval(interval);
    }
    let result = search::run(&config)?;
    if let Some(path) = &a.out {
        io::write_set(path, &result.best_set)?;
    }
    writeln!(streams.stdout, "{}", io::search_result_json(&result, a.property, mode))?;
    Ok(EXIT_OK)
}

fn bounds_cmd(a: BoundsArgs, streams: &mut Streams<'_>) -> Result<i32> {
    let report = bound_report(&a.lattice, a.property);
    match a.format {
        ReportFormat::Json => writeln!(streams.stdout, "{}", serde_json::to_string(&report)?)?,
        ReportFormat::Text => {
            let mut t = Table::new(&["lattice", "property", "construction", "size", "bound", "formula", "tight"]);
            t.push(vec![
                Cell::Text(report.lattice.clone()),
                Cell::Text(report.property.to_string()),
                report.construction.clone().map_or(Cell::Empty, Cell::Text),
                report.construction_size.map_or(Cell::Empty, Cell::Int),
                report.upper_bound.map_or(Cell::Empty, Cell::Float),
                report.bound_name.clone().map_or(Cell::Empty, Cell::Text),
                Cell::Bool(report.tight),
            ]);
            streams.stdout.write_all(t.to_text().as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize, Default)]
#[serde(rename_all = "camelCase")]
struct EntropyReport {
    size: usize,
    operation: &'static str,
    max_multiplicity: usize,
    #[serde(serialize_with = "io::serialize_sig9")]
    pair_entropy: f64,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "io::serialize_sig9_opt")]
    lower_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "io::serialize_sig9_opt")]
    marginal_sum: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sandwich_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    anchor: Option<Point>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "io::serialize_sig9_opt")]
    anchored_entropy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "io::serialize_sig9_opt")]
    log2_size_minus_one: Option<f64>,
}

fn entropy_cmd(a: EntropyArgs, streams: &mut Streams<'_>) -> Result<i32> {
    let set = load(&a.path, streams)?;
    let stats = verifier::pair_statistics(&set, a.op)?;
    let mut report = EntropyReport {
        size: set.len(),
        operation: a.op.name(),
        max_multiplicity: stats.max_multiplicity,
        pair_entropy: stats.distribution.entropy(),
        ..Default::default()
    };
    if set.lattice().is_boolean() && set.len() >= 2 && verifier::is_recovering(&set) {
        let e = bounds::empirical_recovering_entropy(&set)?;
        let (h, marginal) = match a.op {
            LatticeOp::Meet => (e.h_meet, e.marginal_sum_meet),
            LatticeOp::Join => (e.h_join, e.marginal_sum_join),
        };
        report.lower_bound = Some(e.lower_bound);
        report.marginal_sum = Some(marginal);
        report.sandwich_holds = Some(e.lower_bound <= h + 1e-9 && h <= marginal + 1e-9);
    }
    if let Some(anchor) = a.anchor {
        report.anchored_entropy = Some(verifier::anchored_entropy(&set, &anchor, a.op)?);
        report.log2_size_minus_one = Some(((set.len() - 1) as f64).log2());
        report.anchor = Some(anchor);
    }
    match a.format {
        ReportFormat::Json => writeln!(streams.stdout, "{}", serde_json::to_string(&report)?)?,
        ReportFormat::Text => {
            let value = serde_json::to_value(&report)?;
            let mut t = Table::new(&["field", "value"]);
            if let serde_json::Value::Object(map) = value {
                for (k, v) in map {
                    let text = match v {
                        serde_json::Value::String(s) => s,
                        other => other.to_string(),
                    };
                    t.push(vec![Cell::Text(k), Cell::Text(text)]);
                }
            }
            streams.stdout.write_all(t.to_text().as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}

fn range(value: Option<String>, flag: &str) -> Result<ParamRange> {
    value
        .ok_or_else(|| Error::InvalidParameter(format!("--{flag} is required for this table")))?
        .parse()
}

fn table_cmd(a: TableArgs, streams: &mut Streams<'_>) -> Result<i32> {
    let family: TableFamily = a.family.parse()?;
    let table = match family {
        TableFamily::ScBn => tables::sc_bn(range(a.n, "n")?),
        TableFamily::RecBn => tables::rec_bn(range(a.n, "n")?),
        TableFamily::D2 => tables::d2(range(a.l1, "l1")?, range(a.l2, "l2")?),
        TableFamily::Dlk => tables::dlk(range(a.l, "l")?, range(a.k, "k")?),
    };
    let text = match a.format {
        TableFormat::Csv => table.to_csv(),
        TableFormat::Json => table.to_json(),
        TableFormat::Text => table.to_text(),
    };
    streams.stdout.write_all(text.as_bytes())?;
    Ok(EXIT_OK)
}
