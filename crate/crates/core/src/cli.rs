//! Command-line front end. `run` parses arguments, calls into the library
//! and renders either plain text or a single JSON object.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::bordism::{self, BordismVerdict, CheckStatus, SearchConfig, SearchMode};
use crate::charmatrix::{self, CharMatrix, Ring};
use crate::error::{Error, Result};
use crate::facering::poly::{Coefficient, Gf2, Poly};
use crate::facering::{eliminate, QuotientPresentation};
use crate::invariants::{self, GradedClass, InvariantTable, Partition};
use crate::polytope::SimplexProduct;
use crate::stong::{self, StongParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qtoric", version, about = "Quasitoric manifolds and small covers over products of simplices")]
struct Cli {
    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock timing in JSON output.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a characteristic matrix in text form.
    Build(Target),
    /// Check the vertex basis condition.
    Validate(Target),
    /// Check that every column sums to 1.
    Special(Target),
    /// Print the quotient presentation of the cohomology ring.
    Cohomology(Target),
    /// Chern numbers (one partition or the full table).
    Chern(NumberArgs),
    /// Stiefel-Whitney numbers of the small cover (INT input is reduced mod 2).
    Sw(NumberArgs),
    /// Stong manifold criteria and checks.
    Stong(StongArgs),
    /// Run the verification pipeline for both families and the sporadic examples.
    VerifyMain(VerifyArgs),
    /// Bounded search for special matrices with a nonzero Chern number.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
struct Target {
    /// Named example: n7, n8, n12, type-a, type-b.
    name: Option<String>,
    /// Family parameter for type-a and type-b.
    #[arg(long)]
    l: Option<usize>,
    /// Matrix file in text form (needs --dims).
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Simplex dimensions, e.g. 4,3.
    #[arg(long)]
    dims: Option<String>,
}

#[derive(Debug, Args)]
struct NumberArgs {
    #[command(flatten)]
    target: Target,
    /// Partition such as 4,3; omit for the full table.
    #[arg(long)]
    partition: Option<String>,
}

#[derive(Debug, Args)]
struct StongArgs {
    /// Parameters n_1,...,n_k.
    #[arg(long)]
    params: String,
    #[arg(long)]
    indecomposable: bool,
    #[arg(long)]
    orientable: bool,
    #[arg(long)]
    dimension: bool,
    /// Print the small-cover characteristic matrix.
    #[arg(long = "char-matrix")]
    char_matrix: bool,
    /// Compare SW numbers from the bundle formula and from the small cover.
    #[arg(long = "cross-check")]
    cross_check: bool,
    /// Dimension cap for the cross check.
    #[arg(long, default_value_t = 12)]
    cap: usize,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    lmax: i64,
    /// Largest small-cover dimension that gets a full SW table.
    #[arg(long, default_value_t = 12)]
    cap: usize,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    dims: String,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    bound: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    budget: u64,
    /// exhaustive or randomized.
    #[arg(long, default_value = "exhaustive")]
    mode: String,
    /// First candidate index (exhaustive mode).
    #[arg(long, default_value_t = 0)]
    start: u128,
    /// Resume file for exhaustive runs.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
}

/// Usage problems detected after parsing.
struct Usage(String);

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u.0)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Output of one invocation: text, or the parts of the JSON object.
struct Outcome {
    text: String,
    inputs: Value,
    results: Value,
    verdicts: Value,
}

/// Runs the CLI on `argv` (including the program name) and returns the exit
/// code and everything that would be printed.
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    let started = Instant::now();
    let verb = verb_name(&cli.command);
    match dispatch(&cli.command) {
        Ok(out) => {
            if cli.json {
                let timing = if cli.timing { json!({ "seconds": started.elapsed().as_secs_f64() }) } else { Value::Null };
                let obj = json!({
                    "command": verb,
                    "inputs": out.inputs,
                    "results": out.results,
                    "verdicts": out.verdicts,
                    "timing": timing,
                });
                (EXIT_OK, format!("{}\n", serde_json::to_string_pretty(&obj).expect("serializable report")))
            } else {
                (EXIT_OK, out.text)
            }
        }
        Err(Failure::Usage(msg)) => (EXIT_USAGE, format!("usage error: {msg}\n")),
        Err(Failure::Domain(e)) => (EXIT_DOMAIN, format!("error: {e}\n")),
    }
}

fn verb_name(c: &Command) -> &'static str {
    match c {
        Command::Build(_) => "build",
        Command::Validate(_) => "validate",
        Command::Special(_) => "special",
        Command::Cohomology(_) => "cohomology",
        Command::Chern(_) => "chern",
        Command::Sw(_) => "sw",
        Command::Stong(_) => "stong",
        Command::VerifyMain(_) => "verify-main",
        Command::Search(_) => "search",
    }
}

fn dispatch(c: &Command) -> CliResult<Outcome> {
    match c {
        Command::Build(t) => build(t),
        Command::Validate(t) => validate(t),
        Command::Special(t) => special(t),
        Command::Cohomology(t) => cohomology(t),
        Command::Chern(a) => chern(a),
        Command::Sw(a) => sw(a),
        Command::Stong(a) => stong_cmd(a),
        Command::VerifyMain(a) => verify_main(a),
        Command::Search(a) => search(a),
    }
}

fn parse_dims(s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Usage(format!("bad dimension {t:?} in --dims"))))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(Failure::from)
}

impl Target {
    fn describe(&self) -> Value {
        json!({
            "name": self.name,
            "l": self.l,
            "matrix": self.matrix.as_ref().map(|p| p.display().to_string()),
            "dims": self.dims,
        })
    }

    fn load(&self) -> CliResult<CharMatrix> {
        match (&self.name, &self.matrix) {
            (Some(_), Some(_)) => Err(Usage("give either a named example or --matrix, not both".into()).into()),
            (None, None) => Err(Usage("a named example or --matrix FILE is required".into()).into()),
            (Some(name), None) => {
                let needs_l = matches!(name.as_str(), "type-a" | "type-b");
                if !needs_l && self.l.is_some() {
                    return Err(Usage(format!("--l does not apply to {name}")).into());
                }
                match name.as_str() {
                    "n7" => Ok(charmatrix::lambda2_n7()),
                    "n8" => Ok(charmatrix::lambda2_n8()),
                    "n12" => Ok(charmatrix::lambda2_n12()),
                    "type-a" => Ok(charmatrix::lambda2_stong_type_a(self.l.unwrap_or(0))),
                    "type-b" => Ok(charmatrix::lambda2_stong_type_b(self.l.unwrap_or(0))),
                    other => {
                        Err(Usage(format!("unknown example {other:?}; expected n7, n8, n12, type-a or type-b")).into())
                    }
                }
            }
            (None, Some(path)) => {
                let dims = self.dims.as_deref().ok_or_else(|| Usage("--matrix needs --dims".into()))?;
                let polytope = SimplexProduct::new(&parse_dims(dims)?)?;
                Ok(read_matrix(path, polytope)?)
            }
        }
    }
}

fn read_matrix(path: &Path, polytope: SimplexProduct) -> Result<CharMatrix> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    CharMatrix::parse_text(&text, polytope)
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}

fn build(t: &Target) -> CliResult<Outcome> {
    let lambda = t.load()?;
    Ok(Outcome { text: lambda.to_text(), inputs: t.describe(), results: to_json(&lambda), verdicts: Value::Null })
}

fn validate(t: &Target) -> CliResult<Outcome> {
    let lambda = t.load()?;
    let report = lambda.validate();
    let text = match (&report.failing_vertex, &report.determinant) {
        (Some(v), Some(d)) => format!("invalid: vertex {:?} has determinant {d}\n", v.excluded),
        _ => "valid\n".to_string(),
    };
    Ok(Outcome { text, inputs: t.describe(), results: to_json(&report), verdicts: Value::Null })
}

fn special(t: &Target) -> CliResult<Outcome> {
    let lambda = t.load()?;
    let s = lambda.is_special()?;
    Ok(Outcome { text: format!("{s}\n"), inputs: t.describe(), results: json!({ "special": s }), verdicts: Value::Null })
}

fn presentation_json<C: Coefficient>(q: &QuotientPresentation<C>) -> Value {
    let names = q.var_names();
    json!({
        "variables": names,
        "substitutions": q.substitutions().iter().map(|(f, p)| json!([f.to_string(), p.display(&names).to_string()])).collect::<Vec<_>>(),
        "relations": q.relations().iter().map(|r| r.display(&names).to_string()).collect::<Vec<_>>(),
        "top_monomial": q.top_standard_monomial().0,
    })
}

fn presentation_text<C: Coefficient>(q: &QuotientPresentation<C>) -> String {
    let names = q.var_names();
    let mut out = format!("ring: {}\nvariables: {}\n", C::RING, names.join(", "));
    for (f, p) in q.substitutions() {
        out.push_str(&format!("{f} = {}\n", p.display(&names)));
    }
    for (i, r) in q.relations().iter().enumerate() {
        out.push_str(&format!("r{} = {}\n", i + 1, r.display(&names)));
    }
    let top = q.top_standard_monomial();
    let top_poly = Poly::<C>::monomial(top.clone(), C::one());
    out.push_str(&format!("top: {}\n", top_poly.display(&names)));
    out
}

fn cohomology(t: &Target) -> CliResult<Outcome> {
    let lambda = t.load()?;
    let (text, results) = match lambda.ring() {
        Ring::Int => {
            let q = eliminate::<BigRational>(&lambda)?;
            (presentation_text(&q), presentation_json(&q))
        }
        Ring::Mod2 => {
            let q = eliminate::<Gf2>(&lambda)?;
            (presentation_text(&q), presentation_json(&q))
        }
    };
    Ok(Outcome { text, inputs: t.describe(), results, verdicts: Value::Null })
}

fn class_json<C: Coefficient>(c: &GradedClass<C>, names: &[String]) -> Value {
    Value::Array(c.components().iter().map(|p| Value::String(p.display(names).to_string())).collect())
}

fn table_text(table: &InvariantTable) -> String {
    table.entries.iter().map(|e| format!("{} {}\n", e.partition, e.value)).collect()
}

fn verdict_json(v: &BordismVerdict) -> Value {
    to_json(v)
}

fn parse_partition(s: &str, n: usize) -> CliResult<Partition> {
    let pi: Partition = s.parse()?;
    Ok(Partition::new(pi.parts().to_vec(), n)?)
}

fn chern(a: &NumberArgs) -> CliResult<Outcome> {
    let lambda = a.target.load()?;
    if lambda.ring() != Ring::Int {
        return Err(Error::RingMismatch { expected: Ring::Int, found: lambda.ring() }.into());
    }
    let data = invariants::ChernData::new(&lambda)?;
    let names = data.model().presentation().var_names();
    let inputs = json!({ "target": a.target.describe(), "partition": a.partition });
    match &a.partition {
        Some(p) => {
            let pi = parse_partition(p, data.dim())?;
            let value = data.number(&pi)?;
            Ok(Outcome {
                text: format!("{value}\n"),
                inputs,
                results: json!({ "partition": pi, "value": value_json(&value) }),
                verdicts: Value::Null,
            })
        }
        None => {
            let table = data.table()?;
            let v = bordism::verdict(&table)?;
            let mut text = table_text(&table);
            text.push_str(&verdict_text(&v));
            Ok(Outcome {
                text,
                inputs,
                results: json!({ "total_class": class_json(data.classes(), &names), "table": to_json(&table) }),
                verdicts: verdict_json(&v),
            })
        }
    }
}

fn sw(a: &NumberArgs) -> CliResult<Outcome> {
    let lambda = a.target.load()?;
    let lambda = match lambda.ring() {
        Ring::Int => lambda.mod2_reduce()?,
        Ring::Mod2 => lambda,
    };
    let data = invariants::SwData::new(&lambda)?;
    let names = data.model().presentation().var_names();
    let inputs = json!({ "target": a.target.describe(), "partition": a.partition });
    match &a.partition {
        Some(p) => {
            let pi = parse_partition(p, data.dim())?;
            let bit = !data.number(&pi)?.is_zero();
            Ok(Outcome {
                text: format!("{}\n", u8::from(bit)),
                inputs,
                results: json!({ "partition": pi, "value": u8::from(bit) }),
                verdicts: Value::Null,
            })
        }
        None => {
            let table = data.table()?;
            let v = bordism::verdict(&table)?;
            let mut text = table_text(&table);
            text.push_str(&verdict_text(&v));
            Ok(Outcome {
                text,
                inputs,
                results: json!({ "total_class": class_json(data.classes(), &names), "table": to_json(&table) }),
                verdicts: verdict_json(&v),
            })
        }
    }
}

fn value_json(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(i) => Value::from(i),
        Err(_) => Value::String(v.to_string()),
    }
}

fn verdict_text(v: &BordismVerdict) -> String {
    let show = |p: &Option<Partition>| p.as_ref().map_or("none".to_string(), |p| p.to_string());
    format!("nonzero_unitary: {}\nnonbounding_unoriented: {}\n", show(&v.nonzero_unitary), show(&v.nonbounding_unoriented))
}

fn stong_cmd(a: &StongArgs) -> CliResult<Outcome> {
    let params: StongParams = a.params.parse()?;
    let any = a.indecomposable || a.orientable || a.dimension || a.char_matrix || a.cross_check;
    let mut text = String::new();
    let mut results = serde_json::Map::new();
    if a.dimension || !any {
        let d = params.dimension();
        text.push_str(&format!("{}{d}\n", if any { "" } else { "dimension: " }));
        results.insert("dimension".into(), json!(d));
    }
    if a.indecomposable {
        let v = params.is_indecomposable()?;
        text.push_str(&format!("{v}\n"));
        results.insert("indecomposable".into(), json!(v));
    }
    if a.orientable {
        let v = params.is_orientable();
        text.push_str(&format!("{v}\n"));
        results.insert("orientable".into(), json!(v));
    }
    if a.char_matrix {
        let m = stong::char_matrix(&params)?;
        text.push_str(&m.to_text());
        results.insert("char_matrix".into(), to_json(&m));
    }
    if a.cross_check {
        let v = stong::sw_numbers_cross_check(&params, a.cap)?;
        text.push_str(&format!("{v}\n"));
        results.insert("cross_check".into(), json!(v));
    }
    Ok(Outcome {
        text,
        inputs: json!({ "params": params.params(), "cap": a.cap }),
        results: Value::Object(results),
        verdicts: Value::Null,
    })
}

fn verify_main(a: &VerifyArgs) -> CliResult<Outcome> {
    let cfg = bordism::VerifyConfig { l_max: a.lmax, sw_cap: a.cap, ..bordism::VerifyConfig::new(a.lmax) };
    let report = bordism::verify_main_theorem_with(&cfg)?;
    let mut text = String::new();
    for f in &report.families {
        for c in &f.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "skip",
            };
            let detail = if c.detail.is_empty() { String::new() } else { format!(" ({})", c.detail) };
            text.push_str(&format!("type {} l={} n={} {}: {status}{detail}\n", f.family, f.l, f.n, c.name));
        }
    }
    for s in &report.sporadic {
        let status = if s.passed { "pass" } else { "FAIL" };
        text.push_str(&format!("{} {} = {} (expected {}): {status}\n", s.name, s.partition, s.value, s.expected));
    }
    text.push_str(&format!("overall: {}\n", if report.passed { "pass" } else { "FAIL" }));
    Ok(Outcome {
        text,
        inputs: json!({ "lmax": a.lmax, "cap": a.cap }),
        results: to_json(&report),
        verdicts: json!({ "passed": report.passed }),
    })
}

fn search(a: &SearchArgs) -> CliResult<Outcome> {
    let mode: SearchMode = a.mode.parse().map_err(|_| Usage(format!("unknown --mode {:?}", a.mode)))?;
    let cfg = SearchConfig {
        dims: parse_dims(&a.dims)?,
        bound: a.bound,
        seed: a.seed,
        budget: a.budget,
        mode,
        start_index: a.start,
    };
    let report = match &a.checkpoint {
        Some(path) => bordism::search_special_resumable(&cfg, path)?,
        None => bordism::search_special(&cfg)?,
    };
    let mut text = format!(
        "space {} examined {} valid {} special {} complete {}\n",
        report.space_size, report.examined, report.valid, report.special, report.complete
    );
    if let Some(next) = report.next_index {
        text.push_str(&format!("next {next}\n"));
    }
    for hit in &report.hits {
        let w = hit.verdict.nonzero_unitary.as_ref().map(ToString::to_string).unwrap_or_default();
        text.push_str(&format!("hit {} witness {w}\n{}", hit.index, hit.matrix.to_text()));
    }
    let verdicts = Value::Array(report.hits.iter().map(|h| verdict_json(&h.verdict)).collect());
    Ok(Outcome { text, inputs: to_json(&cfg), results: to_json(&report), verdicts })
}
