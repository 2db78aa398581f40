//! Command-line driver: linear quandle searches, table reproduction,
//! the order-`4n` conjecture harness and ingestion of group tables.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use symq_core::closed_forms::{check_conjecture_59, ConjectureVerdict};
use symq_core::constructors::{linear_context, twisted_conj_subquandle, TwistedConjContext};
use symq_core::group::{canonical_residue, FiniteGroup, GroupMap, TableCheck};
use symq_core::involution::{
    count_good, parametrization_bound, Collect, Dispatch, EnumOptions, GoodInvolutionSet,
    MethodChoice, Subject, DEFAULT_BRUTE_CEILING, DEFAULT_MAPPING_CAP,
};
use symq_core::tables::{linear_table, RowOutcome, TableConfig};
use symq_core::Error;

#[derive(Debug, Parser)]
#[command(name = "symq", version, about = "Good involutions of finite quandles")]
pub struct Cli {
    /// Worker threads for the sharded search.
    #[arg(long, global = true, env = "SYMQ_WORKERS", default_value_t = default_workers(),
          value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: u64,

    /// Largest quandle order the brute-force search will accept.
    #[arg(long, global = true, default_value_t = DEFAULT_BRUTE_CEILING as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub brute_ceiling: u64,

    /// Most mappings kept in memory before a search gives up.
    #[arg(long, global = true, default_value_t = DEFAULT_MAPPING_CAP as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub mapping_cap: u64,

    /// Seed for sampled associativity checks of large group tables.
    #[arg(long, global = true, default_value_t = TableCheck::default().seed)]
    pub seed: u64,

    /// Check associativity of group tables exhaustively at any size.
    #[arg(long, global = true)]
    pub strict: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Brute,
    Theorem,
    Both,
}

impl From<MethodArg> for MethodChoice {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => MethodChoice::Auto,
            MethodArg::Brute => MethodChoice::Brute,
            MethodArg::Theorem => MethodChoice::Theorem,
            MethodArg::Both => MethodChoice::Both,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count (and optionally list) the good involutions of Λ(n, k).
    Linear {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Write every mapping with its ψ* table as JSON.
        #[arg(long)]
        emit_mappings: bool,
        /// Destination for the mapping JSON; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate counts for every nontrivial linear quandle up to an order.
    Table {
        #[arg(long)]
        max_n: usize,
        /// Directory receiving table1.csv and table2.csv.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Per-row search budget in seconds; 0 means unlimited.
        #[arg(long, default_value_t = 600)]
        time_budget: u64,
    },
    /// Check that Λ(4n, 2n-1) has exactly 10 good involutions for odd n.
    Conjecture {
        #[arg(required = true)]
        n: Vec<usize>,
    },
    /// Count good involutions of a subquandle of a twisted conjugation
    /// quandle read from a multiplication table.
    Group {
        #[arg(long)]
        file: PathBuf,
        /// Images of 0..order under φ, or `id`.
        #[arg(long, default_value = "id")]
        phi: String,
        /// Elements of X, or `all`.
        #[arg(long, default_value = "all")]
        subset: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
}

fn default_workers() -> u64 {
    std::thread::available_parallelism().map_or(1, |n| n.get() as u64)
}

#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit 2.
    Input(String),
    /// Disagreement between methods or with reference data: exit 3.
    Inconsistency(String),
    /// Reading or writing files: exit 4.
    Io(String),
    /// A checked claim does not hold: exit 1.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Input(_) => 2,
            CliError::Inconsistency(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Inconsistency(m) | CliError::Io(m) | CliError::Failed(m) => m,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.message())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistency(_) => CliError::Inconsistency(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn io_err(path: &Path, e: io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn stdout_err(e: io::Error) -> CliError {
    CliError::Io(format!("write failed: {e}"))
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Linear {
            n,
            k,
            method,
            emit_mappings,
            out: path,
        } => cmd_linear(cli, *n, *k, *method, *emit_mappings, path.as_deref(), out, err),
        Command::Table {
            max_n,
            out: dir,
            time_budget,
        } => cmd_table(cli, *max_n, dir, *time_budget, out),
        Command::Conjecture { n } => cmd_conjecture(cli, n, out),
        Command::Group {
            file,
            phi,
            subset,
            method,
        } => cmd_group(cli, file, phi, subset, *method, out),
    }
}

fn options(cli: &Cli, keep_mappings: bool) -> EnumOptions {
    EnumOptions {
        workers: cli.workers as usize,
        collect: if keep_mappings {
            Collect::Mappings {
                cap: cli.mapping_cap as usize,
            }
        } else {
            Collect::Count
        },
        brute_ceiling: cli.brute_ceiling as usize,
        ..EnumOptions::default()
    }
}

/// `ψ*` keyed by component id in numeric order.
struct PsiStar<'a>(&'a [usize]);

impl Serialize for PsiStar<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (c, t) in self.0.iter().enumerate() {
            map.serialize_entry(&c.to_string(), t)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct MappingRecord<'a> {
    rho: &'a [usize],
    psi_star: PsiStar<'a>,
}

#[derive(Serialize)]
struct MappingFile<'a> {
    n: usize,
    k: usize,
    count: u64,
    mappings: Vec<MappingRecord<'a>>,
}

/// Pairs each mapping with its `ψ*`, recovering it from `ρ` for mappings
/// found without the parametrization.
fn psi_tables(ctx: &TwistedConjContext, set: &GoodInvolutionSet) -> Result<Vec<Vec<usize>>, CliError> {
    let mappings = set.mappings.as_deref().unwrap_or_default();
    mappings
        .iter()
        .map(|m| {
            let derived = ctx.inducing_psi(&m.mapping);
            match (&m.inducing_psi, derived) {
                (Some(given), Some(d)) if *given == d => Ok(d),
                (None, Some(d)) => Ok(d),
                _ => Err(CliError::Inconsistency(format!(
                    "mapping {:?} is not induced by any ψ*",
                    m.mapping
                ))),
            }
        })
        .collect()
}

fn mapping_json(n: usize, k: usize, ctx: &TwistedConjContext, set: &GoodInvolutionSet) -> Result<String, CliError> {
    let psi = psi_tables(ctx, set)?;
    let mappings = set.mappings.as_deref().unwrap_or_default();
    let file = MappingFile {
        n,
        k,
        count: set.count,
        mappings: mappings
            .iter()
            .zip(&psi)
            .map(|(m, p)| MappingRecord {
                rho: &m.mapping,
                psi_star: PsiStar(p),
            })
            .collect(),
    };
    serde_json::to_string(&file).map_err(|e| CliError::Io(e.to_string()))
}

#[derive(Serialize)]
struct LinearReport {
    n: usize,
    k: usize,
    count: u64,
    method: &'static str,
    consistent: Option<bool>,
    kei: bool,
    reason: Option<&'static str>,
    nodes: u64,
    rejected: u64,
}

fn method_label(d: &Dispatch) -> &'static str {
    match (&d.theorem, &d.brute) {
        (Some(_), Some(_)) => "both",
        (Some(_), None) => "theorem",
        _ => "brute",
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_linear(
    cli: &Cli,
    n: usize,
    k: i64,
    method: MethodArg,
    emit: bool,
    path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let ctx = linear_context(n, k)?;
    let kc = canonical_residue(k, n);
    let dispatch = count_good(Subject::Presented(&ctx), method.into(), &options(cli, emit))?;
    let set = dispatch.primary();
    let kei = ctx.quandle().is_kei();
    let report = LinearReport {
        n,
        k: kc,
        count: set.count,
        method: method_label(&dispatch),
        consistent: (dispatch.theorem.is_some() && dispatch.brute.is_some()).then_some(true),
        kei,
        reason: (set.count == 0 && !kei).then_some("not a kei"),
        nodes: dispatch.theorem.iter().chain(&dispatch.brute).map(|s| s.stats.nodes).sum(),
        rejected: dispatch.theorem.iter().chain(&dispatch.brute).map(|s| s.stats.rejected).sum(),
    };
    let rendered = render_linear(cli.format, &report);
    if emit {
        let mut json = mapping_json(n, kc, &ctx, set)?;
        json.push('\n');
        match path {
            Some(p) => std::fs::write(p, json).map_err(|e| io_err(p, e))?,
            None => out.write_all(json.as_bytes()).map_err(stdout_err)?,
        }
        let target: &mut dyn Write = if path.is_some() { out } else { err };
        target.write_all(rendered.as_bytes()).map_err(stdout_err)?;
    } else {
        out.write_all(rendered.as_bytes()).map_err(stdout_err)?;
    }
    Ok(())
}

fn render_linear(format: Format, r: &LinearReport) -> String {
    let mut s = String::new();
    match format {
        Format::Json => {
            s = serde_json::to_string(r).expect("report serializes");
            s.push('\n');
        }
        Format::Csv => {
            s.push_str("n,k,count,method,consistent,reason\n");
            let consistent = r.consistent.map(|c| c.to_string()).unwrap_or_default();
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                r.n,
                r.k,
                r.count,
                r.method,
                consistent,
                r.reason.unwrap_or("")
            );
        }
        Format::Text => {
            let _ = writeln!(s, "quandle: L({}, {})", r.n, r.k);
            let _ = writeln!(s, "count: {}", r.count);
            let _ = writeln!(s, "method: {}", r.method);
            if let Some(c) = r.consistent {
                let _ = writeln!(s, "consistent: {}", if c { "yes" } else { "no" });
            }
            if let Some(reason) = r.reason {
                let _ = writeln!(s, "reason: {reason}");
            }
            let _ = writeln!(s, "nodes: {}", r.nodes);
            let _ = writeln!(s, "rejected: {}", r.rejected);
        }
    }
    s
}

fn cmd_table(cli: &Cli, max_n: usize, dir: &Path, budget: u64, out: &mut dyn Write) -> Result<(), CliError> {
    if max_n < 3 {
        return Err(CliError::Input("--max-n must be at least 3".into()));
    }
    let config = TableConfig {
        max_n,
        workers: cli.workers as usize,
        time_budget: (budget > 0).then(|| Duration::from_secs(budget)),
    };
    let table = linear_table(&config)?;
    let rows_csv = table.rows_csv();
    let totals_csv = table.totals_csv();
    for (name, body) in [("table1.csv", &rows_csv), ("table2.csv", &totals_csv)] {
        let path = dir.join(name);
        std::fs::write(&path, body).map_err(|e| io_err(&path, e))?;
    }

    let mut s = String::new();
    match cli.format {
        Format::Csv => s.push_str(&rows_csv),
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                n: usize,
                k: usize,
                count: Option<String>,
                method: &'static str,
            }
            #[derive(Serialize)]
            struct Total {
                n: usize,
                total: Option<String>,
            }
            #[derive(Serialize)]
            struct Doc {
                rows: Vec<Row>,
                totals: Vec<Total>,
            }
            let doc = Doc {
                rows: table
                    .rows
                    .iter()
                    .map(|r| Row {
                        n: r.n,
                        k: r.k,
                        count: r.count().map(ToString::to_string),
                        method: r.method().map_or("unfinished", |m| m.as_str()),
                    })
                    .collect(),
                totals: table
                    .totals
                    .iter()
                    .map(|(n, t)| Total {
                        n: *n,
                        total: t.as_ref().map(ToString::to_string),
                    })
                    .collect(),
            };
            s = serde_json::to_string(&doc).expect("table serializes");
            s.push('\n');
        }
        Format::Text => {
            let _ = writeln!(s, "rows: {}", table.rows.len());
            for (n, total) in &table.totals {
                match total {
                    Some(t) => {
                        let _ = writeln!(s, "n={n} total={t}");
                    }
                    None => {
                        let _ = writeln!(s, "n={n} total=unfinished");
                    }
                }
            }
            let _ = writeln!(s, "wrote {}", dir.join("table1.csv").display());
            let _ = writeln!(s, "wrote {}", dir.join("table2.csv").display());
        }
    }
    out.write_all(s.as_bytes()).map_err(stdout_err)?;

    let unfinished: Vec<String> = table
        .rows
        .iter()
        .filter(|r| r.outcome == RowOutcome::Unfinished)
        .map(|r| format!("({},{})", r.n, r.k))
        .collect();
    if !unfinished.is_empty() {
        return Err(CliError::Inconsistency(format!(
            "rows exceeded the time budget: {}",
            unfinished.join(" ")
        )));
    }
    let mismatches = table.row_mismatches();
    if !mismatches.is_empty() {
        let list: Vec<String> = mismatches
            .iter()
            .map(|m| format!("({},{})", m.n, m.k))
            .collect();
        return Err(CliError::Inconsistency(format!(
            "rows differ from the reference counts: {}",
            list.join(" ")
        )));
    }
    let totals = table.totals_report();
    if !totals.is_ok() {
        return Err(CliError::Inconsistency(format!(
            "totals differ from the reference at n = {:?}",
            totals.mismatches
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct ConjectureLine {
    n: usize,
    modulus: usize,
    k: usize,
    count: u64,
    fixed_points: Vec<usize>,
    fixed_points_ok: bool,
    verdict: &'static str,
}

fn cmd_conjecture(cli: &Cli, ns: &[usize], out: &mut dyn Write) -> Result<(), CliError> {
    if let Some(bad) = ns.iter().find(|&&n| n < 3 || n % 2 == 0) {
        return Err(CliError::Input(format!("n = {bad}: the conjecture concerns odd n >= 3")));
    }
    let mut lines = Vec::with_capacity(ns.len());
    for &n in ns {
        let r = check_conjecture_59(n, &options(cli, false))?;
        lines.push(ConjectureLine {
            n: r.n,
            modulus: r.modulus,
            k: r.k,
            count: r.count,
            fixed_points: r.fixed_points,
            fixed_points_ok: r.fixed_points_ok,
            verdict: match r.verdict {
                ConjectureVerdict::Holds => "holds",
                ConjectureVerdict::Fails => "fails",
                ConjectureVerdict::OutOfConjecture { .. } => "out-of-range",
            },
        });
    }
    let mut s = String::new();
    match cli.format {
        Format::Json => {
            s = serde_json::to_string(&lines).expect("report serializes");
            s.push('\n');
        }
        Format::Csv => {
            s.push_str("n,modulus,k,count,fix_ok,verdict\n");
            for l in &lines {
                let _ = writeln!(s, "{},{},{},{},{},{}", l.n, l.modulus, l.k, l.count, l.fixed_points_ok, l.verdict);
            }
        }
        Format::Text => {
            for l in &lines {
                let _ = writeln!(
                    s,
                    "n={} L({}, {}) count={} fix={:?} verdict={}",
                    l.n, l.modulus, l.k, l.count, l.fixed_points, l.verdict
                );
            }
        }
    }
    out.write_all(s.as_bytes()).map_err(stdout_err)?;
    let failing: Vec<usize> = lines.iter().filter(|l| l.count != 10).map(|l| l.n).collect();
    if failing.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("count differs from 10 at n = {failing:?}")))
    }
}

/// Parses a list of element indices separated by commas and/or whitespace.
pub fn parse_index_list(spec: &str) -> Result<Vec<usize>, CliError> {
    spec.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| CliError::Input(format!("bad element index {t:?}")))
        })
        .collect()
}

/// Reads and validates a group table file.
pub fn load_group(path: &Path, strict: bool, seed: u64) -> Result<FiniteGroup, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let check = TableCheck {
        strict,
        seed,
        ..TableCheck::default()
    };
    Ok(FiniteGroup::parse_table(&text, check)?)
}

#[derive(Serialize)]
struct GroupReport {
    label: Option<String>,
    order: usize,
    carrier: usize,
    generated: usize,
    s: usize,
    /// Size of the widened parameter set when `φ` moves `⟨X⟩`.
    parameters: usize,
    components: usize,
    count: u64,
    bound: String,
    method: &'static str,
    consistent: Option<bool>,
}

fn cmd_group(
    cli: &Cli,
    file: &Path,
    phi: &str,
    subset: &str,
    method: MethodArg,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let group = Arc::new(load_group(file, cli.strict, cli.seed)?);
    let phi = if phi.trim() == "id" {
        GroupMap::identity(Arc::clone(&group))
    } else {
        GroupMap::automorphism(Arc::clone(&group), parse_index_list(phi)?)?
    };
    let subset: Vec<usize> = if subset.trim() == "all" {
        group.elements().collect()
    } else {
        parse_index_list(subset)?
    };
    let ctx = twisted_conj_subquandle(Arc::clone(&group), phi, &subset)?;
    let dispatch = count_good(Subject::Presented(&ctx), method.into(), &options(cli, false))?;
    let report = GroupReport {
        label: group.label().map(str::to_string),
        order: group.order(),
        carrier: ctx.carrier().len(),
        generated: ctx.generated().len(),
        s: ctx.s_set().len(),
        parameters: ctx.parameter_set().len(),
        components: ctx.quandle().components().len(),
        count: dispatch.primary().count,
        bound: parametrization_bound(&ctx).to_string(),
        method: method_label(&dispatch),
        consistent: (dispatch.theorem.is_some() && dispatch.brute.is_some()).then_some(true),
    };
    let mut s = String::new();
    match cli.format {
        Format::Json => {
            s = serde_json::to_string(&report).expect("report serializes");
            s.push('\n');
        }
        Format::Csv => {
            s.push_str("order,carrier,generated,s,parameters,components,count,bound,method\n");
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{}",
                report.order,
                report.carrier,
                report.generated,
                report.s,
                report.parameters,
                report.components,
                report.count,
                report.bound,
                report.method
            );
        }
        Format::Text => {
            if let Some(label) = &report.label {
                let _ = writeln!(s, "group: {label}");
            }
            let _ = writeln!(s, "|G|: {}", report.order);
            let _ = writeln!(s, "|X|: {}", report.carrier);
            let _ = writeln!(s, "|<X>|: {}", report.generated);
            let _ = writeln!(s, "|S|: {}", report.s);
            if report.parameters != report.s {
                let _ = writeln!(s, "parameters (phi does not preserve <X>): {}", report.parameters);
            }
            let _ = writeln!(s, "|O(X)|: {}", report.components);
            let _ = writeln!(s, "count: {}", report.count);
            let _ = writeln!(s, "bound |S|^|O(X)|: {}", report.bound);
            let _ = writeln!(s, "method: {}", report.method);
            if report.consistent.is_some() {
                let _ = writeln!(s, "consistent: yes");
            }
        }
    }
    out.write_all(s.as_bytes()).map_err(stdout_err)
}
