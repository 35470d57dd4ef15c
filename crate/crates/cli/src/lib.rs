//! Command-line harness over the einkit catalog: listing, per-entry analysis,
//! whole-catalog verification and report rendering.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use einkit_core::catalog::{Catalog, Params, SubgroupSpec};
use einkit_core::error::Error as CoreError;
use einkit_core::orbits::{analyze_with, translation_label, translation_part, Backend, OrbitReport, SampleConfig};
use einkit_core::scalar::{parse_q, Q};
use serde::Serialize;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISCREPANCY: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_BAD_PARAM: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Unknown(String),
    #[error("{0}")]
    BadParameter(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Core(CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Unknown(_) => EXIT_UNKNOWN,
            CliError::BadParameter(_) => EXIT_BAD_PARAM,
            CliError::Io(_) => EXIT_IO,
            // anything else that escapes the engine is a malformed request
            CliError::Core(_) => EXIT_BAD_PARAM,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::UnknownEntry(n) => CliError::Unknown(format!("unknown catalog entry: {n}")),
            CoreError::BadParameter(m) => CliError::BadParameter(m),
            CoreError::EmptySample => CliError::BadParameter("sample size must be positive".into()),
            other => CliError::Core(other),
        }
    }
}

fn io_err(path: &Path, e: io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

#[derive(Debug, Parser)]
#[command(name = "einkit", version, about = "Verify orbit classifications of subgroups acting on Ein^{1,2}")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inspect the subgroup catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Analyze one catalog entry.
    Analyze(AnalyzeArgs),
    /// Analyze every entry at every sampled parameter; exit 1 on any discrepancy.
    VerifyAll(RunArgs),
    /// Render a report of the whole catalog.
    Report(RunArgs),
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// One line per entry.
    List {
        /// Glob over entry names, e.g. "Table5:*".
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Write the catalog as JSON.
    Export {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Exact,
    Float,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Float => Backend::Float,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    /// Number of random patch points on top of the grid.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, env = "EINKIT_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = BackendArg::Exact)]
    pub backend: BackendArg,
    /// Rank tolerance of the float backend.
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl SampleArgs {
    fn config(&self) -> SampleConfig {
        let mut cfg = SampleConfig { rng_seed: self.seed, ..SampleConfig::default() };
        if let Some(n) = self.samples {
            cfg.random_count = n;
        }
        if let Some(e) = self.eps {
            cfg.eps = e;
        }
        cfg
    }
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    pub name: String,
    /// Parameter override NAME=VALUE with a rational value; repeatable.
    #[arg(long = "param")]
    pub params: Vec<String>,
    #[arg(long)]
    pub catalog: Option<PathBuf>,
    #[command(flatten)]
    pub sample: SampleArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Catalog JSON to verify instead of the shipped one.
    #[arg(long)]
    pub catalog: Option<PathBuf>,
    #[arg(long)]
    pub filter: Option<String>,
    #[command(flatten)]
    pub sample: SampleArgs,
}

pub fn load_catalog(path: Option<&Path>) -> Result<Catalog, CliError> {
    match path {
        None => Ok(Catalog::shipped()?),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| io_err(p, e))?;
            Catalog::from_json(&text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
    }
}

fn parse_overrides(raw: &[String]) -> Result<Params, CliError> {
    let mut out = Params::new();
    for r in raw {
        let (k, v) = r.split_once('=').ok_or_else(|| CliError::BadParameter(format!("expected NAME=VALUE, got {r:?}")))?;
        let v: Q = parse_q(v.trim()).map_err(|e| CliError::BadParameter(e.to_string()))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

/// What a command produced: the text to emit and the process exit code.
pub struct Outcome {
    pub text: String,
    pub diagnostics: Vec<String>,
    pub code: i32,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Catalog { action: CatalogAction::List { filter, catalog } } => {
            let cat = load_catalog(catalog.as_deref())?;
            Ok(Outcome { text: catalog_list(&cat, filter.as_deref()), diagnostics: vec![], code: EXIT_OK })
        }
        Command::Catalog { action: CatalogAction::Export { out } } => {
            let text = Catalog::shipped()?.to_json();
            emit(out.as_deref(), &text)?;
            Ok(Outcome { text: if out.is_some() { String::new() } else { text }, diagnostics: vec![], code: EXIT_OK })
        }
        Command::Analyze(a) => {
            let cat = load_catalog(a.catalog.as_deref())?;
            let spec = cat.lookup(&a.name)?;
            let params = spec.resolve_params(&parse_overrides(&a.params)?)?;
            let report = analyze_with(a.sample.backend.into(), spec, &params, &a.sample.config())?;
            let reports = vec![report];
            finish(&reports, &a.sample, true)
        }
        Command::VerifyAll(r) => {
            let reports = run_all(r)?;
            finish(&reports, &r.sample, true)
        }
        Command::Report(r) => {
            let reports = run_all(r)?;
            finish(&reports, &r.sample, false)
        }
    }
}

fn run_all(r: &RunArgs) -> Result<Vec<OrbitReport>, CliError> {
    let cat = load_catalog(r.catalog.as_deref())?;
    let cfg = r.sample.config();
    let mut out = Vec::new();
    for spec in cat.filter(r.filter.as_deref()) {
        for params in spec.param_samples()? {
            out.push(analyze_with(r.sample.backend.into(), spec, &params, &cfg)?);
        }
    }
    Ok(out)
}

fn finish(reports: &[OrbitReport], s: &SampleArgs, strict: bool) -> Result<Outcome, CliError> {
    let text = render(reports, s.format);
    emit(s.out.as_deref(), &text)?;
    let diagnostics: Vec<String> = reports.iter().flat_map(|r| r.discrepancies.iter().map(|d| format!("DISCREPANCY {d}"))).collect();
    let code = if strict && !diagnostics.is_empty() { EXIT_DISCREPANCY } else { EXIT_OK };
    Ok(Outcome { text: if s.out.is_some() { String::new() } else { text }, diagnostics, code })
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    if let Some(p) = path {
        fs::write(p, text).map_err(|e| io_err(p, e))?;
    }
    Ok(())
}

pub fn render(reports: &[OrbitReport], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(reports).expect("reports serialize") + "\n",
        Format::Csv => render_csv(reports),
        Format::Md => render_md(reports),
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    entry: &'a str,
    table: &'a str,
    label: &'a str,
    params: String,
    backend: &'a str,
    sample_size: usize,
    max_dim: usize,
    cohomogeneity_one: bool,
    thm302: String,
    translation: String,
    invariant_lines: String,
    fixed_points: usize,
    claims_passed: usize,
    claims_total: usize,
    histogram: String,
    discrepancies: usize,
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

fn hist_str(h: &BTreeMap<String, usize>) -> String {
    h.iter().map(|(k, v)| format!("{k}×{v}")).collect::<Vec<_>>().join(" ")
}

fn render_csv(reports: &[OrbitReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports {
        w.serialize(CsvRow {
            entry: &r.entry,
            table: &r.table,
            label: &r.label,
            params: r.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";"),
            backend: &r.backend,
            sample_size: r.sample_size,
            max_dim: r.max_dim,
            cohomogeneity_one: r.cohomogeneity_one,
            thm302: opt(&r.thm302),
            translation: opt(&r.translation),
            invariant_lines: r.invariant_lines.join("|"),
            fixed_points: r.fixed_points,
            claims_passed: r.claims.iter().filter(|c| c.passed).count(),
            claims_total: r.claims.len(),
            histogram: hist_str(&r.histogram),
            discrepancies: r.discrepancies.len(),
        })
        .expect("csv row");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
}

fn render_md(reports: &[OrbitReport]) -> String {
    let mut out = String::from("# einkit verification report\n");
    let mut tables: Vec<&str> = Vec::new();
    for r in reports {
        if !tables.contains(&r.table.as_str()) {
            tables.push(&r.table);
        }
    }
    for t in tables {
        out.push_str(&format!("\n## {t}\n\n"));
        out.push_str("| entry | max dim | coh. one | predicate | translation | invariant lines | claims | status |\n");
        out.push_str("|---|---|---|---|---|---|---|---|\n");
        let rows: Vec<&OrbitReport> = reports.iter().filter(|r| r.table == t).collect();
        for r in &rows {
            let passed = r.claims.iter().filter(|c| c.passed).count();
            let lines = if r.invariant_lines.is_empty() { "none".to_string() } else { r.invariant_lines.join(", ") };
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {}/{} | {} |\n",
                r.label.replace('|', "\\|"),
                r.max_dim,
                if r.cohomogeneity_one { "yes" } else { "no" },
                r.thm302.map_or("-".to_string(), |b| if b { "yes".into() } else { "no".into() }),
                r.translation.as_deref().unwrap_or("-"),
                lines,
                passed,
                r.claims.len(),
                if r.passed() { "ok" } else { "DISCREPANCY" }
            ));
        }
        out.push('\n');
        for r in &rows {
            out.push_str(&format!("### {}\n\n", r.label));
            for (region, h) in &r.regions {
                out.push_str(&format!("- {region} sample: {}\n", region_verdict(h)));
            }
            for c in &r.claims {
                out.push_str(&format!(
                    "- claim {} has dim {} ({}): {} [{}]\n",
                    c.region,
                    c.dim,
                    c.character,
                    if c.passed { "pass" } else { "FAIL" },
                    hist_str(&c.found)
                ));
            }
            for d in &r.discrepancies {
                out.push_str(&format!("- discrepancy in {}: expected {}, found {}\n", d.check, d.expected, d.found));
            }
            out.push('\n');
        }
    }
    out
}

fn region_verdict(h: &BTreeMap<String, usize>) -> String {
    if h.len() == 1 && h.contains_key("3:open") {
        return format!("open orbit at all {} points", h["3:open"]);
    }
    hist_str(h)
}

fn catalog_list(cat: &Catalog, filter: Option<&str>) -> String {
    let mut out = String::new();
    for spec in cat.filter(filter) {
        out.push_str(&list_line(spec));
        out.push('\n');
    }
    out
}

fn list_line(spec: &SubgroupSpec) -> String {
    let params: Vec<String> = spec.params.iter().map(|p| format!("{}∈{:?}", p.name, p.range)).collect();
    let trans = spec
        .resolve_params(&Params::new())
        .ok()
        .and_then(|p| spec.conf_generators::<Q>(&p).ok().flatten())
        .and_then(|g| translation_part(&g).ok())
        .map(|t| translation_label(&t).to_string())
        .unwrap_or_else(|| "-".into());
    format!(
        "{}\t{}\tdim={}\ttranslation={}\tcohomogeneity_one={}\tfixed={}\t{}",
        spec.name,
        spec.table,
        spec.expected.dim,
        trans,
        spec.expected.cohomogeneity_one,
        spec.expected.fixed_point_rp4,
        params.join(",")
    )
}

/// Entry point shared by the binary and the tests: returns the exit code.
pub fn main_with(args: impl IntoIterator<Item = String>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_PARAM } else { EXIT_OK };
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
            } else {
                let _ = write!(stdout, "{e}");
            }
            return code;
        }
    };
    match run(&cli) {
        Ok(o) => {
            let _ = stdout.write_all(o.text.as_bytes());
            for d in &o.diagnostics {
                let _ = writeln!(stderr, "{d}");
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
