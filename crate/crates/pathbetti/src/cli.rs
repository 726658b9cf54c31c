//! Command-line front end: Betti tables, pd/reg, and verification sweeps in
//! text, JSON, or CSV.
//!
//! Data goes to standard output, diagnostics to standard error. Exit codes:
//! `0` success, `2` verification mismatch, `64` usage error, `65` infeasible
//! (a cap was exceeded, or a sweep checked zero instances). JSON documents
//! carry a mandatory `schema_version` field and encode Betti values as
//! decimal strings, since they outgrow 64-bit integers already at modest
//! parameters.

use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::formulas::{betti_table, pd_line, pd_reg_from_table, reg_line, BettiTable};
use crate::homology::hochster_table;
use crate::path_complex::{eligible_table, GraphKind, PathFamilySpec};
use crate::verify::{run_sweep, InstanceStatus, SweepConfig, VerificationReport};
use crate::{Caps, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INFEASIBLE: i32 = 65;
const EXIT_INTERNAL: i32 = 70;

pub const SCHEMA_VERSION: &str = "1";

const ENV_MAX_FACETS: &str = "PATHBETTI_MAX_FACETS";
const ENV_MAX_FACES: &str = "PATHBETTI_MAX_FACES";

#[derive(Parser)]
#[command(
    name = "pathbetti",
    version,
    about = "Exact graded Betti numbers of path ideals of line graphs and cycles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Betti table of R/I_t(G) by the chosen method
    Table(TableArgs),
    /// Print projective dimension and regularity
    Pdreg(PdregArgs),
    /// Cross-check the closed formulas against the brute-force oracles
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
struct TableArgs {
    /// Graph family
    #[arg(value_enum)]
    kind: GraphKind,

    /// Vertex count of the graph
    #[arg(long)]
    n: usize,

    /// Path length parameter (2 <= t <= n; cycles need t < n)
    #[arg(long)]
    t: usize,

    /// formula = closed form; eligible = subcollection counting (degrees
    /// below n only); hochster = homology oracle
    #[arg(long, value_enum, default_value_t = Method::Formula)]
    method: Method,

    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Enumeration cap override (default 24, env PATHBETTI_MAX_FACETS)
    #[arg(long)]
    max_facets: Option<usize>,

    /// Face cap override (default 2^22, env PATHBETTI_MAX_FACES)
    #[arg(long)]
    max_faces: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Eligible,
    Hochster,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PdregSource {
    /// Closed forms (lines only)
    Closed,
    /// Maxima over the formula Betti table
    Table,
}

#[derive(clap::Args)]
struct PdregArgs {
    #[arg(value_enum)]
    kind: GraphKind,

    #[arg(long)]
    n: usize,

    #[arg(long)]
    t: usize,

    /// closed = closed forms (lines only); table = formula-table maxima
    #[arg(long, value_enum, default_value_t = PdregSource::Table)]
    source: PdregSource,

    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Comma-separated families, e.g. "line,cycle"
    #[arg(long)]
    kinds: Option<String>,

    /// Inclusive t range, e.g. "2..4" or a single value
    #[arg(long)]
    t: Option<String>,

    #[arg(long)]
    n_min: Option<usize>,

    #[arg(long)]
    n_max: Option<usize>,

    /// Comma-separated oracles, e.g. "eligible,hochster"
    #[arg(long)]
    oracles: Option<String>,

    #[arg(long, value_enum)]
    format: Option<OutputFormat>,

    #[arg(long)]
    max_facets: Option<usize>,

    #[arg(long)]
    max_faces: Option<usize>,

    /// Skip the GF(32003) rank recheck inside the homology oracle
    #[arg(long)]
    no_modular_check: bool,

    /// JSON file whose keys mirror these flag names
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Sweep options read from `--config`; every key mirrors a flag name and
/// explicit flags win over file values.
#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct ConfigFile {
    kinds: Option<String>,
    t: Option<String>,
    n_min: Option<usize>,
    n_max: Option<usize>,
    oracles: Option<String>,
    format: Option<OutputFormat>,
    max_facets: Option<usize>,
    max_faces: Option<usize>,
    no_modular_check: Option<bool>,
}

/// One table entry as serialized; values are decimal strings so arbitrary
/// precision survives the round trip.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub i: usize,
    pub j: usize,
    pub value: String,
}

/// The JSON document emitted by `table` and `pdreg`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub schema_version: String,
    pub kind: String,
    pub n: usize,
    pub t: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    pub entries: Vec<EntryDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pd: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reg: Option<usize>,
}

impl OutputDocument {
    fn from_table(table: &BettiTable) -> Self {
        OutputDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            kind: table.spec().kind().to_string(),
            n: table.spec().n(),
            t: table.spec().t(),
            provenance: Some(table.provenance().to_string()),
            entries: table
                .entries()
                .map(|(i, j, c)| EntryDoc {
                    i,
                    j,
                    value: c.to_string(),
                })
                .collect(),
            pd: None,
            reg: None,
        }
    }
}

/// Parses and validates an [`OutputDocument`], rejecting unknown schema
/// major versions.
pub fn parse_output_document(s: &str) -> Result<OutputDocument, String> {
    let doc: OutputDocument = serde_json::from_str(s).map_err(|e| e.to_string())?;
    let major = doc.schema_version.split('.').next().unwrap_or("");
    if major != SCHEMA_VERSION {
        return Err(format!(
            "unsupported schema_version {:?} (expected major {SCHEMA_VERSION})",
            doc.schema_version
        ));
    }
    Ok(doc)
}

/// Entry point used by `main`; parses real process arguments and writes to
/// standard output.
pub fn run() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    let mut stdout = std::io::stdout().lock();
    run_with(&args, &mut stdout)
}

/// Testable entry point: dispatches `args` (including the program name)
/// and writes data output to `out`.
pub fn run_with<W: Write>(args: &[String], out: &mut W) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    eprintln!("{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match cli.command {
        Command::Table(args) => cmd_table(args, out),
        Command::Pdreg(args) => cmd_pdreg(args, out),
        Command::Verify(args) => cmd_verify(args, out),
    }
}

fn exit_for(e: &Error) -> i32 {
    match e {
        Error::InvalidSpec(_) | Error::DegreeOutOfRange { .. } => EXIT_USAGE,
        Error::FacetCapExceeded { .. }
        | Error::FaceCapExceeded { .. }
        | Error::VertexLimitExceeded { .. } => EXIT_INFEASIBLE,
        Error::FacetNotInGround { .. }
        | Error::RankRecheckMismatch { .. }
        | Error::HomologyInvariantViolated { .. } => EXIT_INTERNAL,
    }
}

fn fail(e: &Error) -> i32 {
    eprintln!("error: {e}");
    exit_for(e)
}

fn env_cap(name: &str) -> Result<Option<usize>, String> {
    match std::env::var(name) {
        Ok(raw) => raw
            .parse::<usize>()
            .map(Some)
            .map_err(|_| format!("invalid {name}={raw:?}: expected a nonnegative integer")),
        Err(_) => Ok(None),
    }
}

/// Cap resolution: explicit flag, then environment variable, then default.
fn resolve_caps(max_facets: Option<usize>, max_faces: Option<usize>) -> Result<Caps, String> {
    let defaults = Caps::default();
    Ok(Caps {
        max_facets: match max_facets {
            Some(v) => v,
            None => env_cap(ENV_MAX_FACETS)?.unwrap_or(defaults.max_facets),
        },
        max_faces: match max_faces {
            Some(v) => v,
            None => env_cap(ENV_MAX_FACES)?.unwrap_or(defaults.max_faces),
        },
    })
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn cmd_table<W: Write>(args: TableArgs, out: &mut W) -> i32 {
    let caps = match resolve_caps(args.max_facets, args.max_faces) {
        Ok(c) => c,
        Err(msg) => return usage_error(&msg),
    };
    let spec = match PathFamilySpec::new(args.kind, args.n, args.t) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let table = match args.method {
        Method::Formula => betti_table(&spec),
        Method::Eligible => match eligible_table(&spec, &caps) {
            Ok(t) => t,
            Err(e) => return fail(&e),
        },
        Method::Hochster => match hochster_table(&spec, &caps, false) {
            Ok(t) => t,
            Err(e) => return fail(&e),
        },
    };
    let rendered = match args.format {
        OutputFormat::Text => render_text_table(&table),
        OutputFormat::Csv => render_csv_table(&table),
        OutputFormat::Json => {
            let doc = OutputDocument::from_table(&table);
            match serde_json::to_string_pretty(&doc) {
                Ok(s) => s + "\n",
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_INTERNAL;
                }
            }
        }
    };
    let _ = out.write_all(rendered.as_bytes());
    EXIT_OK
}

/// Triangular resolution diagram: rows indexed by j - i, columns by the
/// homological index i, dots for zeros.
fn render_text_table(table: &BettiTable) -> String {
    let (pd, reg) = pd_reg_from_table(table);
    let mut cells = vec![vec![String::from("."); pd + 1]; reg + 1];
    for (i, j, c) in table.entries() {
        cells[j - i][i] = c.to_string();
    }
    let label_width = reg.to_string().len();
    let col_widths: Vec<usize> = (0..=pd)
        .map(|i| {
            cells
                .iter()
                .map(|row| row[i].len())
                .chain(std::iter::once(i.to_string().len()))
                .max()
                .unwrap_or(1)
        })
        .collect();
    let mut s = String::new();
    s.push_str(&" ".repeat(label_width + 1));
    for (i, w) in col_widths.iter().enumerate() {
        s.push_str(&format!("  {i:>w$}"));
    }
    s.push('\n');
    for (r, row) in cells.iter().enumerate() {
        s.push_str(&format!("{r:>label_width$}:"));
        for (cell, w) in row.iter().zip(&col_widths) {
            s.push_str(&format!("  {cell:>w$}"));
        }
        s.push('\n');
    }
    s
}

fn render_csv_table(table: &BettiTable) -> String {
    let mut s = String::from("i,j,value\n");
    for (i, j, c) in table.entries() {
        s.push_str(&format!("{i},{j},{c}\n"));
    }
    s
}

fn cmd_pdreg<W: Write>(args: PdregArgs, out: &mut W) -> i32 {
    let spec = match PathFamilySpec::new(args.kind, args.n, args.t) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let (pd, reg) = match args.source {
        PdregSource::Closed => {
            if args.kind != GraphKind::Line {
                return usage_error(
                    "--source closed is only available for lines; use --source table",
                );
            }
            (pd_line(args.n, args.t), reg_line(args.n, args.t))
        }
        PdregSource::Table => pd_reg_from_table(&betti_table(&spec)),
    };
    match args.format {
        OutputFormat::Text => {
            let _ = writeln!(out, "pd={pd} reg={reg}");
            EXIT_OK
        }
        OutputFormat::Json => {
            let doc = OutputDocument {
                schema_version: SCHEMA_VERSION.to_string(),
                kind: spec.kind().to_string(),
                n: spec.n(),
                t: spec.t(),
                provenance: Some("formula".to_string()),
                entries: Vec::new(),
                pd: Some(pd),
                reg: Some(reg),
            };
            match serde_json::to_string_pretty(&doc) {
                Ok(s) => {
                    let _ = writeln!(out, "{s}");
                    EXIT_OK
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_INTERNAL
                }
            }
        }
        OutputFormat::Csv => usage_error("pdreg supports text or json output"),
    }
}

fn parse_kinds(raw: &str) -> Result<Vec<GraphKind>, String> {
    let mut kinds = Vec::new();
    for part in raw.split(',') {
        let kind: GraphKind = part
            .trim()
            .parse()
            .map_err(|e: Error| e.to_string())?;
        if !kinds.contains(&kind) {
            kinds.push(kind);
        }
    }
    if kinds.is_empty() {
        return Err("at least one graph kind is required".into());
    }
    Ok(kinds)
}

fn parse_t_range(raw: &str) -> Result<(usize, usize), String> {
    let parse_bound = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid t bound {s:?}"))
    };
    let (lo, hi) = match raw.split_once("..") {
        Some((lo, hi)) => (parse_bound(lo)?, parse_bound(hi)?),
        None => {
            let v = parse_bound(raw)?;
            (v, v)
        }
    };
    if lo < 2 || hi < lo {
        return Err(format!("invalid t range {raw:?}: need 2 <= lo <= hi"));
    }
    Ok((lo, hi))
}

fn parse_oracles(raw: &str) -> Result<crate::verify::OracleSelection, String> {
    let mut sel = crate::verify::OracleSelection {
        eligible: false,
        hochster: false,
    };
    for part in raw.split(',') {
        match part.trim() {
            "eligible" => sel.eligible = true,
            "hochster" => sel.hochster = true,
            other => return Err(format!("unknown oracle {other:?}")),
        }
    }
    if !sel.eligible && !sel.hochster {
        return Err("at least one oracle is required".into());
    }
    Ok(sel)
}

fn cmd_verify<W: Write>(args: VerifyArgs, out: &mut W) -> i32 {
    let file: ConfigFile = match &args.config {
        Some(path) => {
            let raw = match std::fs::read_to_string(path) {
                Ok(r) => r,
                Err(e) => return usage_error(&format!("cannot read {}: {e}", path.display())),
            };
            match serde_json::from_str(&raw) {
                Ok(cfg) => cfg,
                Err(e) => return usage_error(&format!("bad config {}: {e}", path.display())),
            }
        }
        None => ConfigFile::default(),
    };

    let kinds = match args.kinds.or(file.kinds) {
        Some(raw) => match parse_kinds(&raw) {
            Ok(k) => k,
            Err(msg) => return usage_error(&msg),
        },
        None => vec![GraphKind::Line, GraphKind::Cycle],
    };
    let (t_min, t_max) = match args.t.or(file.t) {
        Some(raw) => match parse_t_range(&raw) {
            Ok(r) => r,
            Err(msg) => return usage_error(&msg),
        },
        None => (2, 4),
    };
    let oracles = match args.oracles.or(file.oracles) {
        Some(raw) => match parse_oracles(&raw) {
            Ok(o) => o,
            Err(msg) => return usage_error(&msg),
        },
        None => crate::verify::OracleSelection::default(),
    };
    let caps = match resolve_caps(
        args.max_facets.or(file.max_facets),
        args.max_faces.or(file.max_faces),
    ) {
        Ok(c) => c,
        Err(msg) => return usage_error(&msg),
    };
    let config = SweepConfig {
        kinds,
        t_min,
        t_max,
        n_min: args.n_min.or(file.n_min).unwrap_or(2),
        n_max: args.n_max.or(file.n_max).unwrap_or(12),
        oracles,
        caps,
        modular_check: !(args.no_modular_check || file.no_modular_check.unwrap_or(false)),
    };
    let format = args.format.or(file.format).unwrap_or(OutputFormat::Text);

    let report = run_sweep(&config);

    match format {
        OutputFormat::Text => {
            let _ = out.write_all(render_text_report(&report).as_bytes());
        }
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct ReportDocument<'a> {
                schema_version: &'a str,
                #[serde(flatten)]
                report: &'a VerificationReport,
            }
            match serde_json::to_string_pretty(&ReportDocument {
                schema_version: SCHEMA_VERSION,
                report: &report,
            }) {
                Ok(s) => {
                    let _ = writeln!(out, "{s}");
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_INTERNAL;
                }
            }
        }
        OutputFormat::Csv => return usage_error("verify supports text or json output"),
    }

    verify_exit_code(&report)
}

/// Exit code for a sweep: `2` on any mismatch, `65` when nothing was
/// actually checked (empty instance list or every instance skipped), `0`
/// otherwise.
pub fn verify_exit_code(report: &VerificationReport) -> i32 {
    if report.failed > 0 {
        EXIT_MISMATCH
    } else if report.checked() == 0 {
        EXIT_INFEASIBLE
    } else {
        EXIT_OK
    }
}

fn render_text_report(report: &VerificationReport) -> String {
    let mut s = String::new();
    for inst in &report.instances {
        let head = format!("{} t={} n={}", inst.kind, inst.t, inst.n);
        match &inst.status {
            InstanceStatus::Pass => {
                s.push_str(&format!(
                    "ok    {head}  cells={} nonzero={} ({} ms)\n",
                    inst.cells_checked, inst.nonzero_cells, inst.millis
                ));
            }
            InstanceStatus::Fail { mismatch } => {
                s.push_str(&format!("FAIL  {head}  {mismatch}\n"));
            }
            InstanceStatus::Skipped { reason } => {
                s.push_str(&format!("skip  {head}  {reason}\n"));
            }
        }
    }
    s.push_str(&format!(
        "summary: {} instances, {} passed, {} failed, {} skipped ({} ms)\n",
        report.instances.len(),
        report.passed,
        report.failed,
        report.skipped,
        report.total_millis
    ));
    s
}
