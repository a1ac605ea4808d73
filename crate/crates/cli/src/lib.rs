//! Command-line front end: construction, distances, verification sweeps,
//! distance tables and isometry checks.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 invalid input or a
//! refused brute-force budget.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use constacyclic::code::RawCodeSpec;
use constacyclic::distance::{self, Outcome, SweepReport, DEFAULT_SEED};
use constacyclic::limits::{DEFAULT_DUAL_CAP, DEFAULT_ENUM_CAP};
use constacyclic::{
    ChainRing, CheckMode, Code, CodeKind, CodeSpec, Error, FieldParams, IsometryContext, Limits, QuotientParams,
};
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "constacyclic", version, about = "Constacyclic codes of length p^s over F_{p^m} + uF_{p^m}")]
pub struct Cli {
    /// Characteristic p (prime)
    #[arg(long, global = true, env = "CONSTACYCLIC_P", default_value_t = 2)]
    pub p: u32,
    /// Extension degree m of the coefficient field GF(p^m)
    #[arg(long, global = true, env = "CONSTACYCLIC_M", default_value_t = 1)]
    pub m: usize,
    /// Length exponent s; codes have length p^s
    #[arg(long, global = true, env = "CONSTACYCLIC_S", default_value_t = 1)]
    pub s: u32,
    /// Unit α of GF(p^m) as coefficients, constant term first (e.g. 1,1 is y+1); a scalar is the constant
    #[arg(long, global = true, env = "CONSTACYCLIC_ALPHA", value_delimiter = ',', default_value = "1")]
    pub alpha: Vec<u32>,
    /// Output format
    #[arg(long, global = true, env = "CONSTACYCLIC_FORMAT", value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report to this file instead of stdout
    #[arg(long, global = true, env = "CONSTACYCLIC_OUT")]
    pub out: Option<PathBuf>,
    /// Seed for every randomized choice
    #[arg(long, global = true, env = "CONSTACYCLIC_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Maximum number of codewords a brute-force enumeration may visit
    #[arg(long, global = true, env = "CONSTACYCLIC_ENUM_CAP", default_value_t = DEFAULT_ENUM_CAP)]
    pub enum_cap: u64,
    /// Maximum number of ambient vectors the dual scan may visit
    #[arg(long, global = true, env = "CONSTACYCLIC_DUAL_CAP", default_value_t = DEFAULT_DUAL_CAP)]
    pub dual_cap: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Field modulus, order and unit count of F + uF
    Field,
    /// Build one ideal and inspect it
    Code {
        #[command(subcommand)]
        action: CodeAction,
    },
    /// Compare the published distance formula with brute force on every sweep spec.
    ///
    /// CSV columns: kind,i,t,omega,h,dim,formula,oracle,match. `oracle` is
    /// empty and `match` is "skipped" when the code is over the enumeration cap.
    Verify,
    /// Distance D(i) of <(x-1)^i> for i in [0, p^s], with the matched band.
    ///
    /// CSV columns: i,distance,case.
    Table,
    /// Check the isometry f(x) -> f(a0 x) from the cyclic ring onto the α-constacyclic ring
    Isometry {
        #[arg(long, value_enum, default_value_t = Mode::Randomized)]
        mode: Mode,
        /// Seeded product pairs (exhaustive) or sampled elements (randomized)
        #[arg(long)]
        budget: Option<u64>,
        /// Also map every in-cap cyclic ideal of the sweep and compare weight histograms
        #[arg(long)]
        map_codes: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exhaustive,
    Randomized,
}

#[derive(Debug, Clone, Subcommand)]
pub enum CodeAction {
    /// Dimension, cardinality and canonical basis
    Build(SpecArg),
    /// Published formula, brute-force oracle and torsion-exponent value.
    Distance(SpecArg),
    /// Every codeword (CSV columns: index,weight,word)
    Enumerate(SpecArg),
    /// Dual code by brute force, with the cardinality and shift checks
    Dual(SpecArg),
    /// Weight histogram (CSV columns: weight,count)
    Weights(SpecArg),
}

#[derive(Debug, Clone, clap::Args)]
pub struct SpecArg {
    /// Spec as JSON or a path to a JSON file, e.g. {"kind":"type3","i":3,"t":1,"h":[1]};
    /// p, m, s and alpha default to the global flags
    #[arg(long)]
    pub spec: String,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Invalid(format!("json: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Invalid(format!("csv: {e}"))
    }
}

type CmdResult = Result<(i32, String), Failure>;

pub fn run<I, T>(args: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Execution { code, stdout: String::new(), stderr: text }
            } else {
                Execution { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let result = dispatch(&cli);
    match result {
        Ok((code, body)) => match &cli.out {
            Some(path) => match std::fs::write(path, &body) {
                Ok(()) => Execution { code, stdout: String::new(), stderr: String::new() },
                Err(e) => Execution {
                    code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: format!("error: cannot write {}: {e}\n", path.display()),
                },
            },
            None => Execution { code, stdout: body, stderr: String::new() },
        },
        Err(Failure::Invalid(msg)) => Execution {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Core(e)) => Execution {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Field => cmd_field(cli),
        Command::Code { action } => cmd_code(cli, action),
        Command::Verify => cmd_verify(cli),
        Command::Table => cmd_table(cli),
        Command::Isometry { mode, budget, map_codes } => cmd_isometry(cli, *mode, *budget, *map_codes),
    }
}

fn limits(cli: &Cli) -> Result<Limits, Failure> {
    if cli.enum_cap == 0 || cli.dual_cap == 0 {
        return Err(Failure::Invalid("caps must be positive".into()));
    }
    Ok(Limits::default().with_enum_cap(cli.enum_cap).with_dual_cap(cli.dual_cap))
}

fn field(cli: &Cli) -> Result<FieldParams, Failure> {
    Ok(FieldParams::with_limits(cli.p, cli.m, &limits(cli)?)?)
}

fn params(cli: &Cli) -> Result<QuotientParams, Failure> {
    let field = field(cli)?;
    let alpha = field.element(&cli.alpha)?;
    Ok(QuotientParams::with_limits(field, cli.s, alpha, &limits(cli)?)?)
}

fn parse_spec(cli: &Cli, arg: &SpecArg) -> Result<CodeSpec, Failure> {
    let text = if arg.spec.trim_start().starts_with('{') {
        arg.spec.clone()
    } else {
        std::fs::read_to_string(&arg.spec)
            .map_err(|e| Failure::Invalid(format!("cannot read spec file {}: {e}", arg.spec)))?
    };
    let mut value: Value = serde_json::from_str(&text)?;
    let obj = value
        .as_object_mut()
        .ok_or_else(|| Failure::Invalid("spec must be a JSON object".into()))?;
    obj.entry("p").or_insert(json!(cli.p));
    obj.entry("m").or_insert(json!(cli.m));
    obj.entry("s").or_insert(json!(cli.s));
    obj.entry("alpha").or_insert(json!(cli.alpha));
    let raw: RawCodeSpec = serde_json::from_value(value)?;
    Ok(raw.into_spec(&limits(cli)?)?)
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn to_csv<R: Serialize>(rows: impl IntoIterator<Item = R>) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Invalid(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Invalid(e.to_string()))
}

/// A coefficient vector as a polynomial in y, highest degree first.
fn poly_label(coeffs: &[u32]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| match (j, c) {
            (0, c) => c.to_string(),
            (1, 1) => "y".into(),
            (1, c) => format!("{c}y"),
            (j, 1) => format!("y^{j}"),
            (j, c) => format!("{c}y^{j}"),
        })
        .collect();
    terms.join("+")
}

// field

#[derive(Serialize)]
struct FieldReport {
    p: u32,
    m: usize,
    modulus: Vec<u32>,
    order: u64,
    ring_order: u64,
    ring_units: u64,
    ring_units_expected: u64,
}

fn cmd_field(cli: &Cli) -> CmdResult {
    let field = field(cli)?;
    let ring = ChainRing::new(field.clone());
    let q = field.order();
    let units = ring.elements().filter(|&x| ring.is_unit(x)).count() as u64;
    let report = FieldReport {
        p: field.characteristic(),
        m: field.degree(),
        modulus: field.modulus().to_vec(),
        order: q,
        ring_order: ring.order(),
        ring_units: units,
        ring_units_expected: q * (q - 1),
    };
    let body = match cli.format {
        Format::Json => to_json(&report)?,
        Format::Csv => to_csv([json_row(&report)?])?,
        Format::Text => {
            let mut out = String::new();
            let modulus = poly_label(&report.modulus);
            writeln!(out, "field      GF({}^{}), order {}", report.p, report.m, report.order).unwrap();
            writeln!(out, "modulus    {modulus}").unwrap();
            writeln!(out, "ring       F + uF, u^2 = 0, order {}", report.ring_order).unwrap();
            writeln!(out, "units      {} (q(q-1) = {})", report.ring_units, report.ring_units_expected).unwrap();
            out
        }
    };
    let code = if report.ring_units == report.ring_units_expected { EXIT_OK } else { EXIT_MISMATCH };
    Ok((code, body))
}

/// Flattens a struct into string cells for CSV (arrays become JSON text).
fn json_row<T: Serialize>(value: &T) -> Result<BTreeMap<String, String>, Failure> {
    let Value::Object(map) = serde_json::to_value(value)? else {
        return Err(Failure::Invalid("expected an object".into()));
    };
    Ok(map
        .into_iter()
        .map(|(k, v)| {
            let cell = match v {
                Value::String(s) => s,
                other => other.to_string(),
            };
            (k, cell)
        })
        .collect())
}

// code

fn cmd_code(cli: &Cli, action: &CodeAction) -> CmdResult {
    let lim = limits(cli)?;
    match action {
        CodeAction::Build(arg) => code_build(cli, &parse_spec(cli, arg)?),
        CodeAction::Distance(arg) => code_distance(cli, &parse_spec(cli, arg)?, &lim),
        CodeAction::Enumerate(arg) => code_enumerate(cli, &parse_spec(cli, arg)?, &lim),
        CodeAction::Dual(arg) => code_dual(cli, &parse_spec(cli, arg)?, &lim),
        CodeAction::Weights(arg) => code_weights(cli, &parse_spec(cli, arg)?, &lim),
    }
}

#[derive(Serialize)]
struct BuildReport<'a> {
    spec: &'a CodeSpec,
    generators: Vec<String>,
    dim: usize,
    log_p_size: usize,
    basis: Vec<String>,
}

fn code_build(cli: &Cli, spec: &CodeSpec) -> CmdResult {
    let code = Code::span(spec)?;
    let report = BuildReport {
        spec,
        generators: spec.generators()?.iter().map(ToString::to_string).collect(),
        dim: code.dim(),
        log_p_size: code.log_p_size(),
        basis: code.basis_polys().iter().map(ToString::to_string).collect(),
    };
    let p = spec.params.field().characteristic();
    let body = match cli.format {
        Format::Json => to_json(&report)?,
        Format::Csv => to_csv(report.basis.iter().enumerate().map(|(row, poly)| BasisRow { row, poly }))?,
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "spec        {spec}").unwrap();
            for g in &report.generators {
                writeln!(out, "generator   {g}").unwrap();
            }
            writeln!(out, "dim         {} over GF({}^{})", report.dim, p, spec.params.field().degree()).unwrap();
            writeln!(out, "cardinality {}^{}", p, report.log_p_size).unwrap();
            for (k, b) in report.basis.iter().enumerate() {
                writeln!(out, "basis[{k}]    {b}").unwrap();
            }
            out
        }
    };
    Ok((EXIT_OK, body))
}

#[derive(Serialize)]
struct BasisRow<'a> {
    row: usize,
    poly: &'a str,
}

fn code_distance(cli: &Cli, spec: &CodeSpec, lim: &Limits) -> CmdResult {
    let entry = distance::evaluate_spec(spec, lim)?;
    let code = match entry.outcome {
        Outcome::Mismatch => EXIT_MISMATCH,
        _ => EXIT_OK,
    };
    let body = match cli.format {
        Format::Json => to_json(&entry)?,
        Format::Csv => to_csv([CsvEntry::from(&entry)])?,
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "spec              {spec}").unwrap();
            writeln!(out, "dim               {}", entry.dim).unwrap();
            writeln!(out, "formula           {}", entry.formula).unwrap();
            match entry.oracle {
                Some(d) => writeln!(out, "oracle            {d}").unwrap(),
                None => writeln!(out, "oracle            skipped (over the enumeration cap of {})", lim.enum_cap).unwrap(),
            }
            writeln!(
                out,
                "torsion exponent  {} (distance {})",
                entry.torsion_exponent, entry.torsion_exponent_distance
            )
            .unwrap();
            writeln!(out, "match             {}", entry.outcome.as_str()).unwrap();
            out
        }
    };
    Ok((code, body))
}

#[derive(Serialize)]
struct WordRow {
    index: u64,
    weight: usize,
    word: String,
}

fn code_enumerate(cli: &Cli, spec: &CodeSpec, lim: &Limits) -> CmdResult {
    let code = Code::span(spec)?;
    let words = code.enumerate(lim)?;
    let body = match cli.format {
        Format::Json => {
            let rows: Vec<_> = words.map(|w| json!({ "weight": w.weight(), "word": w })).collect();
            to_json(&rows)?
        }
        Format::Csv => to_csv(words.enumerate().map(|(k, w)| WordRow {
            index: k as u64,
            weight: w.weight(),
            word: w.to_string(),
        }))?,
        Format::Text => {
            let mut out = String::new();
            for w in words {
                writeln!(out, "{:>3}  {w}", w.weight()).unwrap();
            }
            out
        }
    };
    Ok((EXIT_OK, body))
}

#[derive(Serialize)]
struct WeightRow {
    weight: usize,
    count: u64,
}

fn code_weights(cli: &Cli, spec: &CodeSpec, lim: &Limits) -> CmdResult {
    let hist = Code::span(spec)?.weight_distribution(lim)?;
    let body = match cli.format {
        Format::Json => to_json(&hist)?,
        Format::Csv => to_csv(hist.iter().map(|(&weight, &count)| WeightRow { weight, count }))?,
        Format::Text => {
            let mut out = String::new();
            for (w, c) in &hist {
                writeln!(out, "{w:>3}  {c}").unwrap();
            }
            out
        }
    };
    Ok((EXIT_OK, body))
}

#[derive(Serialize)]
struct DualReport {
    dim: usize,
    dual_dim: usize,
    dual_alpha: Vec<u32>,
    log_p_product: usize,
    log_p_ambient: usize,
    cardinality_law: bool,
    dual_is_ideal: bool,
    dual_basis: Vec<String>,
}

fn code_dual(cli: &Cli, spec: &CodeSpec, lim: &Limits) -> CmdResult {
    let code = Code::span(spec)?;
    let dual = code.dual_bruteforce(lim)?;
    let n = spec.params.n();
    let m = spec.params.field().degree();
    let report = DualReport {
        dim: code.dim(),
        dual_dim: dual.dim(),
        dual_alpha: dual.params().alpha().to_vec(),
        log_p_product: code.log_p_size() + dual.log_p_size(),
        log_p_ambient: 2 * m * n,
        cardinality_law: code.log_p_size() + dual.log_p_size() == 2 * m * n,
        dual_is_ideal: dual.is_ideal(),
        dual_basis: dual.basis_polys().iter().map(ToString::to_string).collect(),
    };
    let exit = if report.cardinality_law && report.dual_is_ideal { EXIT_OK } else { EXIT_MISMATCH };
    let body = match cli.format {
        Format::Json => to_json(&report)?,
        Format::Csv => to_csv(report.dual_basis.iter().enumerate().map(|(row, poly)| BasisRow { row, poly }))?,
        Format::Text => {
            let p = spec.params.field().characteristic();
            let mut out = String::new();
            writeln!(out, "spec           {spec}").unwrap();
            writeln!(out, "|C|            {p}^{}", code.log_p_size()).unwrap();
            writeln!(out, "|C^perp|       {p}^{}", dual.log_p_size()).unwrap();
            writeln!(out, "|R|^n          {p}^{}", report.log_p_ambient).unwrap();
            writeln!(out, "product law    {}", report.cardinality_law).unwrap();
            writeln!(out, "dual alpha     {:?}", report.dual_alpha).unwrap();
            writeln!(out, "dual is ideal  {}", report.dual_is_ideal).unwrap();
            for (k, b) in report.dual_basis.iter().enumerate() {
                writeln!(out, "basis[{k}]       {b}").unwrap();
            }
            out
        }
    };
    Ok((exit, body))
}

// verify

#[derive(Serialize)]
struct CsvEntry {
    kind: CodeKind,
    i: usize,
    t: usize,
    omega: usize,
    h: String,
    dim: usize,
    formula: u64,
    oracle: Option<u64>,
    #[serde(rename = "match")]
    matched: &'static str,
}

impl From<&distance::SweepEntry> for CsvEntry {
    fn from(e: &distance::SweepEntry) -> Self {
        CsvEntry {
            kind: e.spec.kind,
            i: e.spec.i,
            t: e.spec.t,
            omega: e.spec.omega,
            h: e.spec.h_label(),
            dim: e.dim,
            formula: e.formula,
            oracle: e.oracle,
            matched: e.outcome.as_str(),
        }
    }
}

fn verify_text(report: &SweepReport) -> String {
    let mut out = String::new();
    let q = &report.params;
    let f = q.field();
    writeln!(
        out,
        "params p={} m={} s={} alpha={:?} n={} seed={} enum_cap={}",
        f.characteristic(),
        f.degree(),
        q.s(),
        q.alpha().to_vec(),
        q.n(),
        report.seed,
        report.enum_cap
    )
    .unwrap();
    for e in &report.entries {
        let oracle = e.oracle.map_or("-".to_string(), |d| d.to_string());
        writeln!(
            out,
            "{:<40} dim={:<3} formula={:<3} oracle={:<3} {}",
            e.spec.to_string(),
            e.dim,
            e.formula,
            oracle,
            match e.outcome {
                Outcome::Match => "ok",
                Outcome::Mismatch => "MISMATCH",
                Outcome::Skipped => "skipped",
            }
        )
        .unwrap();
    }
    writeln!(
        out,
        "total {}  checked {}  matches {}  mismatches {}  skipped {}  in-cap {:.1}%",
        report.total,
        report.checked,
        report.matches,
        report.mismatches,
        report.skipped,
        100.0 * report.in_cap_fraction()
    )
    .unwrap();
    writeln!(
        out,
        "type3 specs with i >= p: {} ({} mismatches)",
        report.type3_beyond_small_index, report.type3_beyond_small_index_mismatches
    )
    .unwrap();
    out
}

fn cmd_verify(cli: &Cli) -> CmdResult {
    let params = params(cli)?;
    let report = distance::verify_sweep(&params, &limits(cli)?, cli.seed)?;
    let body = match cli.format {
        Format::Json => to_json(&report)?,
        Format::Csv => to_csv(report.entries.iter().map(CsvEntry::from))?,
        Format::Text => verify_text(&report),
    };
    let code = if report.all_match() { EXIT_OK } else { EXIT_MISMATCH };
    Ok((code, body))
}

// table

#[derive(Serialize)]
struct TableCsvRow {
    i: u64,
    distance: u64,
    case: String,
}

fn cmd_table(cli: &Cli) -> CmdResult {
    let params = params(cli)?;
    let p = params.field().characteristic() as u64;
    let s = params.s();
    let rows = distance::distance_table(p, s)?;
    let n = params.n();
    let summary = [
        ("type1", "<0>".to_string(), "0".to_string()),
        ("type1", "<1>".to_string(), "1".to_string()),
        ("type2", format!("<u b^i>, 0 <= i <= {}", n - 1), "D(i)".to_string()),
        ("type3", format!("<b^i + u b^t h>, 1 <= i <= {}", n - 1), "D(i)".to_string()),
        ("type4", format!("<b^i + u b^t h, u b^w>, 1 <= w < i <= {}", n - 1), "D(w)".to_string()),
    ];
    let body = match cli.format {
        Format::Json => {
            let summary: Vec<_> = summary
                .iter()
                .map(|(kind, ideal, d)| json!({ "kind": kind, "ideal": ideal, "distance": d }))
                .collect();
            to_json(&json!({ "p": p, "s": s, "rows": rows, "summary": summary }))?
        }
        Format::Csv => to_csv(rows.iter().map(|r| TableCsvRow {
            i: r.i,
            distance: r.case.value,
            case: r.case.label(),
        }))?,
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "D(i) for <(x-1)^i> in F[x]/(x^{n} - 1), p={p} s={s}").unwrap();
            writeln!(out, "{:>5}  {:>5}  case", "i", "D(i)").unwrap();
            for r in &rows {
                writeln!(out, "{:>5}  {:>5}  {}", r.i, r.case.value, r.case.label()).unwrap();
            }
            writeln!(out, "published distances over F + uF, b = a0 x - 1:").unwrap();
            for (kind, ideal, d) in &summary {
                writeln!(out, "  {kind:<6} {ideal:<44} {d}").unwrap();
            }
            out
        }
    };
    Ok((EXIT_OK, body))
}

// isometry

#[derive(Serialize)]
struct HistogramCheck {
    codes: usize,
    compared: usize,
    skipped: usize,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct IsometryOutput {
    alpha_q: u32,
    alpha_r: u32,
    alpha0: Vec<u32>,
    report: constacyclic::IsometryReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    histograms: Option<HistogramCheck>,
}

fn map_all_codes(ctx: &IsometryContext, lim: &Limits, seed: u64) -> Result<HistogramCheck, Failure> {
    let specs = distance::sweep_specs(&ctx.source, seed);
    let mut check = HistogramCheck {
        codes: specs.len(),
        compared: 0,
        skipped: 0,
        failures: Vec::new(),
    };
    for spec in &specs {
        let code = Code::span(spec)?;
        if !code.fits_enumeration(lim) {
            check.skipped += 1;
            continue;
        }
        check.compared += 1;
        if !constacyclic::isometry::compare_histograms(ctx, &code, lim)? {
            check.failures.push(spec.to_string());
        }
    }
    Ok(check)
}

fn cmd_isometry(cli: &Cli, mode: Mode, budget: Option<u64>, map_codes: bool) -> CmdResult {
    let params = params(cli)?;
    let lim = limits(cli)?;
    let ctx = IsometryContext::new(&params)?;
    let mode = match mode {
        Mode::Exhaustive => CheckMode::Exhaustive {
            product_pairs: budget.unwrap_or(100_000),
        },
        Mode::Randomized => CheckMode::Randomized {
            samples: budget.unwrap_or(10_000),
        },
    };
    let report = ctx.check(mode, cli.seed)?;
    let histograms = if map_codes { Some(map_all_codes(&ctx, &lim, cli.seed)?) } else { None };
    let failed = report.failures() > 0 || histograms.as_ref().is_some_and(|h| !h.failures.is_empty());
    let out = IsometryOutput {
        alpha_q: ctx.alpha_q,
        alpha_r: ctx.alpha_r,
        alpha0: ctx.alpha0.to_vec(),
        report,
        histograms,
    };
    let body = match cli.format {
        Format::Json => to_json(&out)?,
        Format::Csv => {
            let mut row = json_row(&out.report)?;
            row.insert("alpha_q".into(), out.alpha_q.to_string());
            row.insert("alpha_r".into(), out.alpha_r.to_string());
            row.insert("alpha0".into(), format!("{:?}", out.alpha0).replace(' ', ""));
            row.remove("mode");
            to_csv([row])?
        }
        Format::Text => {
            let r = &out.report;
            let mut t = String::new();
            writeln!(t, "alpha_q {}  alpha_r {}  alpha0 {}", out.alpha_q, out.alpha_r, ctx.alpha0).unwrap();
            writeln!(t, "mode {:?}  seed {}", r.mode, r.seed).unwrap();
            for (name, checks, fails) in [
                ("additivity", r.additivity_checks, r.additivity_failures),
                ("multiplicativity", r.multiplicativity_checks, r.multiplicativity_failures),
                ("injectivity", r.injectivity_checks, r.injectivity_failures),
                ("weight", r.weight_checks, r.weight_failures),
                ("inverse", r.inverse_checks, r.inverse_failures),
            ] {
                writeln!(t, "{name:<17} {checks:>8} checks  {fails} failures").unwrap();
            }
            if let Some(h) = &out.histograms {
                writeln!(
                    t,
                    "histograms        {} codes, {} compared, {} skipped, {} failures",
                    h.codes,
                    h.compared,
                    h.skipped,
                    h.failures.len()
                )
                .unwrap();
                for f in &h.failures {
                    writeln!(t, "  differs: {f}").unwrap();
                }
            }
            t
        }
    };
    Ok((if failed { EXIT_MISMATCH } else { EXIT_OK }, body))
}
