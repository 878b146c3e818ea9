//! Batch front end: `numerology`, `build`, `enumerate`, `oracle-verify`.
//!
//! Exit codes: 0 success, 1 precondition or usage error, 2 verification
//! mismatch, 3 budget or scale refusal.

use crate::chain_sections::{ChainError, Instance};
use crate::exact_oracle::{verify_instance, OracleConfig, OracleError, VerificationReport};
use crate::fillings::{enumerate_admissible, EnumerationConfig, FillingError, Index, DEFAULT_CELL_BUDGET};
use crate::numerology::{NumerologyError, NumerologyRecord};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

pub const OUT_DIR_ENV: &str = "PETRI_OUT_DIR";

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_MISMATCH: u8 = 2;
pub const EXIT_REFUSED: u8 = 3;

/// Largest instance the oracle runs without `--allow-large`.
pub const ORACLE_MAX_G: i64 = 8;

#[derive(Debug, Parser)]
#[command(name = "petri-loci", version, about = "Petri-map kernels of limit linear series on elliptic chains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Also write the output into this directory (default from PETRI_OUT_DIR).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Accepted for reproducible invocations; every search is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Ascii,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Tsv => "tsv",
            Format::Ascii => "txt",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Brill-Noether numerology over parameter ranges.
    Numerology {
        #[arg(long)]
        g: IntRange,
        #[arg(long)]
        r: IntRange,
        #[arg(long)]
        d: IntRange,
        #[arg(long)]
        k: Option<IntRange>,
    },
    /// Canonical filling, chain, vanishing orders and kernel elements.
    Build(Params),
    /// All admissible fillings of a rectangle.
    Enumerate {
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        beta: usize,
        #[arg(long)]
        g: Index,
        /// Allowed torsion orders for repeated indices.
        #[arg(long, value_delimiter = ',')]
        torsion: Vec<u32>,
        #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
        budget: usize,
    },
    /// Exact check of a built instance on curves over a prime field.
    OracleVerify {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        p_min: Option<u64>,
        /// Lift the size cap of g <= 8 with a rectangle inside 3x4.
        #[arg(long)]
        allow_large: bool,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Params {
    #[arg(long)]
    pub g: i64,
    #[arg(long)]
    pub r: i64,
    #[arg(long)]
    pub d: i64,
    #[arg(long)]
    pub k: i64,
}

/// Inclusive range written `lo..hi`, or a single integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn values(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        Ok(IntRange { lo, hi })
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

/// Failure of a subcommand with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(e: impl fmt::Display) -> Self {
        CliError { code: EXIT_USAGE, message: e.to_string() }
    }

    fn refused(e: impl fmt::Display) -> Self {
        CliError { code: EXIT_REFUSED, message: e.to_string() }
    }
}

impl From<NumerologyError> for CliError {
    fn from(e: NumerologyError) -> Self {
        CliError::usage(e)
    }
}

impl From<FillingError> for CliError {
    fn from(e: FillingError) -> Self {
        match e {
            FillingError::BudgetExceeded { .. } => CliError::refused(e),
            other => CliError::usage(other),
        }
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        match e {
            ChainError::Filling(f) => f.into(),
            other => CliError::usage(other),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::SearchExhausted { .. } | OracleError::InsufficientPoints { .. } => CliError::refused(e),
            OracleError::Chain(c) => c.into(),
            other => CliError::usage(other),
        }
    }
}

/// Rendered output of one subcommand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    /// File stem used under the output directory.
    pub stem: String,
    /// Exit code when the command itself succeeded.
    pub code: u8,
}

pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let format = cli.output.format;
    match &cli.command {
        Command::Numerology { g, r, d, k } => cmd_numerology(*g, *r, *d, *k, format),
        Command::Build(p) => cmd_build(*p, format),
        Command::Enumerate { alpha, beta, g, torsion, budget } => {
            cmd_enumerate(*alpha, *beta, *g, torsion, *budget, format)
        }
        Command::OracleVerify { params, p_min, allow_large } => {
            cmd_oracle_verify(*params, *p_min, *allow_large, format)
        }
    }
}

pub fn numerology_records(
    g: IntRange,
    r: IntRange,
    d: IntRange,
    k: Option<IntRange>,
) -> Result<Vec<NumerologyRecord>, NumerologyError> {
    let ks: Vec<Option<i64>> = match k {
        Some(k) => k.values().map(Some).collect(),
        None => vec![None],
    };
    let mut out = Vec::new();
    for g in g.values() {
        for r in r.values() {
            for d in d.values() {
                for &k in &ks {
                    out.push(NumerologyRecord::compute(g, r, d, k)?);
                }
            }
        }
    }
    Ok(out)
}

pub fn cmd_numerology(
    g: IntRange,
    r: IntRange,
    d: IntRange,
    k: Option<IntRange>,
    format: Format,
) -> Result<Output, CliError> {
    let records = numerology_records(g, r, d, k)?;
    let text = match format {
        Format::Json => json_text(&json!(records)),
        Format::Tsv | Format::Ascii => {
            let mut t = format!("{}\n", NumerologyRecord::TSV_HEADER);
            for rec in &records {
                t.push_str(&rec.tsv_row());
                t.push('\n');
            }
            if format == Format::Ascii {
                t = align_columns(&t);
            }
            t
        }
    };
    let k = k.map(|k| format!("-k{k}")).unwrap_or_default();
    Ok(Output { text, stem: format!("numerology-g{g}-r{r}-d{d}{k}"), code: EXIT_OK })
}

pub fn cmd_build(p: Params, format: Format) -> Result<Output, CliError> {
    let inst = Instance::build(p.g, p.r, p.d, p.k)?;
    let text = match format {
        Format::Json => json_text(&inst.to_json()),
        Format::Tsv => inst.table.to_tsv(),
        Format::Ascii => inst.filling.render_ascii(),
    };
    Ok(Output { text, stem: format!("build-{}", stem(p)), code: EXIT_OK })
}

pub fn cmd_enumerate(
    alpha: usize,
    beta: usize,
    g: Index,
    torsion: &[u32],
    budget: usize,
    format: Format,
) -> Result<Output, CliError> {
    let found = enumerate_admissible(alpha, beta, g, torsion, EnumerationConfig { cell_budget: budget })?;
    let text = match format {
        Format::Json => json_text(&json!({
            "alpha": alpha,
            "beta": beta,
            "g": g,
            "torsion_universe": torsion,
            "count": found.len(),
            "fillings": found.iter().map(|(f, t)| f.to_json(t)).collect::<Vec<_>>(),
        })),
        Format::Tsv => {
            let mut t = String::from("n\tcells\ttorsion\n");
            for (n, (f, tors)) in found.iter().enumerate() {
                let cells: Vec<String> = f.cells().iter().map(|c| c.to_string()).collect();
                let orders: Vec<String> = tors.orders().iter().map(|(i, l)| format!("{i}:{l}")).collect();
                t.push_str(&format!("{}\t{}\t{}\n", n + 1, cells.join(" "), orders.join(",")));
            }
            t
        }
        Format::Ascii => {
            let mut t = String::new();
            for (f, _) in &found {
                t.push_str(&f.render_ascii());
                t.push('\n');
            }
            t.push_str(&format!("count: {}\n", found.len()));
            t
        }
    };
    Ok(Output { text, stem: format!("enumerate-a{alpha}-b{beta}-g{g}"), code: EXIT_OK })
}

/// Whether the oracle runs without `--allow-large`.
pub fn within_oracle_cap(g: i64, alpha: i64, beta: i64) -> bool {
    g <= ORACLE_MAX_G && ((alpha <= 3 && beta <= 4) || (alpha <= 4 && beta <= 3))
}

pub fn cmd_oracle_verify(p: Params, p_min: Option<u64>, allow_large: bool, format: Format) -> Result<Output, CliError> {
    let (alpha, beta) = (p.r + 1, p.g - p.d + p.r);
    if !allow_large && !within_oracle_cap(p.g, alpha, beta) {
        return Err(CliError::refused(format!(
            "instance g = {}, {alpha}x{beta} exceeds the oracle cap (g <= {ORACLE_MAX_G}, rectangle within 3x4); pass --allow-large",
            p.g
        )));
    }
    let inst = Instance::build(p.g, p.r, p.d, p.k)?;
    let config = OracleConfig { p_min, ..OracleConfig::default() };
    let report = verify_instance(&inst, &config)?;
    let text = match format {
        Format::Json => json_text(&report.to_json()),
        Format::Tsv => report_tsv(&report),
        Format::Ascii => report_ascii(&report),
    };
    let code = if report.pass { EXIT_OK } else { EXIT_MISMATCH };
    Ok(Output { text, stem: format!("oracle-{}", stem(p)), code })
}

fn stem(p: Params) -> String {
    format!("g{}-r{}-d{}-k{}", p.g, p.r, p.d, p.k)
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json renders");
    s.push('\n');
    s
}

fn report_tsv(report: &VerificationReport) -> String {
    let mut t = String::from("component\tcheck\tpredicted\tcomputed\tpass\n");
    let rows = report
        .components
        .iter()
        .flat_map(|c| c.checks.iter().map(move |k| (c.i.to_string(), k)))
        .chain(report.chain_checks.iter().map(|k| ("chain".to_string(), k)));
    for (where_, k) in rows {
        t.push_str(&format!("{where_}\t{}\t{}\t{}\t{}\n", k.name, k.predicted, k.computed, k.pass));
    }
    t
}

fn report_ascii(report: &VerificationReport) -> String {
    let failures = report.failures();
    let mut t = format!(
        "instance {}\nprime {}\nchecks {}\nfailures {}\n",
        report.instance,
        report.prime,
        report.check_count(),
        failures.len()
    );
    for (i, name) in failures {
        let place = if i == 0 { "chain".to_string() } else { format!("C_{i}") };
        t.push_str(&format!("  FAIL {place} {name}\n"));
    }
    t.push_str(if report.pass { "PASS\n" } else { "FAIL\n" });
    t
}

/// Pads tab-separated columns to a common width.
fn align_columns(tsv: &str) -> String {
    let rows: Vec<Vec<&str>> = tsv.lines().map(|l| l.split('\t').collect()).collect();
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..ncols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:>w$}", w = widths[c])).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// Parses `args`, runs the subcommand, writes the result, and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let _ = stdout.write_all(out.text.as_bytes());
            let dir = cli.output.out.clone().or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from));
            if let Some(dir) = dir {
                let path = dir.join(format!("{}.{}", out.stem, cli.output.format.extension()));
                if let Err(e) = std::fs::create_dir_all(&dir).and_then(|_| std::fs::write(&path, &out.text)) {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            }
            out.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("petri-loci").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ranges_parse() {
        assert_eq!("5..7".parse::<IntRange>().unwrap(), IntRange { lo: 5, hi: 7 });
        assert_eq!("5..=7".parse::<IntRange>().unwrap(), IntRange { lo: 5, hi: 7 });
        assert_eq!("4".parse::<IntRange>().unwrap(), IntRange { lo: 4, hi: 4 });
        assert!("7..5".parse::<IntRange>().is_err());
        assert!("x".parse::<IntRange>().is_err());
    }

    #[test]
    fn numerology_records_and_ranges() {
        let (code, out, _) = call(&["numerology", "--g", "31", "--r", "4", "--d", "28"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v[0]["rho"], -4);
        let (_, out, _) = call(&["numerology", "--g", "5..7", "--r", "1", "--d", "4", "--format", "tsv"]);
        assert_eq!(out.lines().count(), 4);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["build", "--g", "4", "--r", "1", "--d", "3", "--k", "2"]).0, EXIT_USAGE);
        assert_eq!(call(&["enumerate", "--alpha", "4", "--beta", "5", "--g", "20"]).0, EXIT_REFUSED);
        assert_eq!(call(&["oracle-verify", "--g", "31", "--r", "4", "--d", "28", "--k", "4"]).0, EXIT_REFUSED);
        assert_eq!(call(&["no-such-command"]).0, EXIT_USAGE);
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("oracle-verify"));
    }

    #[test]
    fn enumerate_counts() {
        let (code, out, _) = call(&["enumerate", "--alpha", "2", "--beta", "2", "--g", "4"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["count"], 2);
        let (_, out, _) = call(&["enumerate", "--alpha", "1", "--beta", "3", "--g", "3", "--format", "ascii"]);
        assert!(out.ends_with("count: 1\n"));
    }

    #[test]
    fn oracle_cap() {
        assert!(within_oracle_cap(7, 2, 4));
        assert!(within_oracle_cap(8, 4, 3));
        assert!(!within_oracle_cap(9, 2, 4));
        assert!(!within_oracle_cap(8, 2, 5));
    }
}
