//! Command-line front end.
//!
//! [`run`] takes the full argv (program name first) and returns the exit code
//! together with everything that would be written to stdout and stderr, so the
//! binary is a thin wrapper and the whole surface can be tested in-process.
//!
//! Exit codes: 0 for a definitive result, 2 for an expression parse error, 3
//! for bad arguments or a failed precondition, 4 for an inconclusive verdict.
//! An inconclusive verdict is reported like any other result, only the exit
//! code differs.
//!
//! With `--json` stdout carries one [`OutputDocument`]. Non-finite numbers,
//! which JSON cannot represent, are written as the strings `"inf"`, `"-inf"`
//! and `"nan"`.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Serialize, Serializer};
use serde_json::{json, Map, Value};

use crate::descent::{self, DescentConfig, DescentError, StepMode};
use crate::diff::{self, DiffError, DiffOptions, DiffRequest};
use crate::expr::{format_number, parse, Bindings, Expr, ExprError};
use crate::limits::{self, Approach, LimitError, LimitQuery, SampleTrace, Target, VerdictKind};
use crate::quad::{self, Partition, QuadError, QuadratureSpec, Rule};
use crate::series::{self, SeriesError, SeriesQuery};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(
    name = "numcalc",
    version,
    about = "Numerical calculus by sampling: limits, derivatives, descent, quadrature, series"
)]
struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include the iteration trace.
    #[arg(long, global = true)]
    trace: bool,
    /// Text mode: print only the result.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression at a point.
    Eval(EvalArgs),
    /// Estimate a limit by sampling toward the target.
    Limit(LimitArgs),
    /// Forward-difference derivative along one variable.
    Derivative(DerivativeArgs),
    /// Forward-difference gradient.
    Gradient(GradientArgs),
    /// Gradient descent, optionally with momentum.
    Minimize(MinimizeArgs),
    /// Riemann sums, trapezoid or Simpson's rule.
    Integrate(IntegrateArgs),
    /// Classify a series from its partial sums.
    Series(SeriesArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Eval(_) => "eval",
            Command::Limit(_) => "limit",
            Command::Derivative(_) => "derivative",
            Command::Gradient(_) => "gradient",
            Command::Minimize(_) => "minimize",
            Command::Integrate(_) => "integrate",
            Command::Series(_) => "series",
        }
    }
}

const SUBCOMMANDS: [&str; 7] = [
    "eval",
    "limit",
    "derivative",
    "gradient",
    "minimize",
    "integrate",
    "series",
];

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    /// Binding NAME=VALUE; repeat for several variables.
    #[arg(long = "var", value_name = "NAME=VALUE", allow_hyphen_values = true)]
    vars: Vec<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InfinityArg {
    Plus,
    Minus,
}

#[derive(Debug, Args)]
struct LimitArgs {
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    #[arg(long)]
    var: String,
    #[arg(
        long,
        allow_hyphen_values = true,
        conflicts_with = "to_infinity",
        required_unless_present = "to_infinity"
    )]
    at: Option<f64>,
    #[arg(
        long,
        value_enum,
        default_value = "both",
        conflicts_with = "to_infinity"
    )]
    side: SideArg,
    #[arg(long, value_enum)]
    to_infinity: Option<InfinityArg>,
    #[arg(long, default_value_t = LimitQuery::DEFAULT_N)]
    n: usize,
    #[arg(long, default_value_t = LimitQuery::DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = LimitQuery::DEFAULT_WINDOW)]
    window: usize,
    /// Offset the probes toward infinity by a seeded fraction.
    #[arg(long)]
    perturb: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct DerivativeArgs {
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    #[arg(long)]
    var: String,
    /// Point as "x=A,y=B"; a bare number binds the differentiation variable.
    #[arg(long, allow_hyphen_values = true)]
    at: String,
    #[arg(long, default_value_t = DiffOptions::default().n)]
    n: usize,
    #[arg(long, default_value_t = DiffOptions::default().tol)]
    tol: f64,
}

#[derive(Debug, Args)]
struct GradientArgs {
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    /// Comma-separated variable order, e.g. "x,y".
    #[arg(long)]
    vars: String,
    /// Point as "x=A,y=B", or bare values in the order of --vars.
    #[arg(long, allow_hyphen_values = true)]
    at: String,
    #[arg(long, default_value_t = DiffOptions::default().n)]
    n: usize,
    #[arg(long, default_value_t = DiffOptions::default().tol)]
    tol: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StepArg {
    Fixed,
    Backtracking,
}

#[derive(Debug, Args)]
struct MinimizeArgs {
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    #[arg(long)]
    vars: String,
    /// Starting point, comma-separated in the order of --vars.
    #[arg(long, allow_hyphen_values = true)]
    x0: String,
    #[arg(long, default_value_t = 0.1)]
    alpha: f64,
    #[arg(long, value_enum, default_value = "fixed")]
    step: StepArg,
    /// Heavy-ball coefficient; plain descent when absent.
    #[arg(long, value_name = "BETA")]
    momentum: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    max_iters: usize,
    #[arg(long, default_value_t = 1e-6)]
    grad_tol: f64,
    #[arg(long)]
    maximize: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RuleArg {
    Left,
    Right,
    Midpoint,
    Trapezoid,
    Simpson,
}

impl From<RuleArg> for Rule {
    fn from(rule: RuleArg) -> Rule {
        match rule {
            RuleArg::Left => Rule::RiemannLeft,
            RuleArg::Right => Rule::RiemannRight,
            RuleArg::Midpoint => Rule::RiemannMidpoint,
            RuleArg::Trapezoid => Rule::Trapezoid,
            RuleArg::Simpson => Rule::Simpson,
        }
    }
}

#[derive(Debug, Args)]
struct IntegrateArgs {
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    #[arg(long)]
    var: String,
    #[arg(long, allow_hyphen_values = true)]
    from: f64,
    #[arg(long, allow_hyphen_values = true)]
    to: f64,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    rule: RuleArg,
    /// Evaluate Riemann sums column-wise.
    #[arg(long)]
    vectorized: bool,
}

#[derive(Debug, Args)]
struct SeriesArgs {
    #[arg(long, allow_hyphen_values = true)]
    term: String,
    #[arg(long)]
    index: String,
    #[arg(long, default_value_t = SeriesQuery::DEFAULT_START)]
    start: u64,
    #[arg(long, default_value_t = SeriesQuery::DEFAULT_MAX_TERMS)]
    max_terms: u64,
    #[arg(long, default_value_t = LimitQuery::DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = LimitQuery::DEFAULT_WINDOW)]
    window: usize,
    #[arg(long, default_value_t = SeriesQuery::DEFAULT_CHECKPOINTS)]
    checkpoints: usize,
}

/// A binary64 that serializes non-finite values as strings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v = self.0;
        if v.is_finite() {
            s.serialize_f64(v)
        } else if v.is_nan() {
            s.serialize_str("nan")
        } else if v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }
}

fn num(v: f64) -> Value {
    serde_json::to_value(Num(v)).expect("numbers always serialize")
}

fn nums(vs: &[f64]) -> Value {
    Value::Array(vs.iter().map(|&v| num(v)).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Point {
    Scalar(Num),
    Vector(Vec<Num>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceEntry {
    pub k: usize,
    /// Which half of a two-sided limit the sample belongs to.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side: Option<&'static str>,
    pub x: Point,
    pub fx: Num,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grad_norm: Option<Num>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorBody {
    pub code: &'static str,
    pub message: String,
    /// Byte offset into the expression text, for parse errors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputDocument {
    pub command: String,
    pub inputs: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Num>,
    /// Gradient, or the final point of a descent run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<Num>>,
    pub iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorBody>,
}

#[derive(Debug)]
struct Report {
    verdict: String,
    value: Option<f64>,
    vector: Option<Vec<f64>>,
    iterations: usize,
    trace: Vec<TraceEntry>,
    code: i32,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
    offset: Option<usize>,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_INVALID,
            kind: "invalid_argument",
            message: message.into(),
            offset: None,
        }
    }

    fn from_expr(err: &ExprError, message: String) -> Failure {
        let offset = match err {
            ExprError::Syntax { offset, .. } | ExprError::UnknownFunction { offset, .. } => {
                Some(*offset)
            }
            _ => None,
        };
        if err.is_parse_error() {
            Failure {
                code: EXIT_PARSE,
                kind: "parse_error",
                message,
                offset,
            }
        } else {
            Failure::precondition(message)
        }
    }

    fn precondition(message: String) -> Failure {
        Failure {
            code: EXIT_INVALID,
            kind: "precondition_failed",
            message,
            offset: None,
        }
    }
}

impl From<ExprError> for Failure {
    fn from(err: ExprError) -> Failure {
        let message = err.to_string();
        Failure::from_expr(&err, message)
    }
}

macro_rules! failure_from {
    ($($ty:ty),*) => {$(
        impl From<$ty> for Failure {
            fn from(err: $ty) -> Failure {
                match std::error::Error::source(&err)
                    .and_then(|s| s.downcast_ref::<ExprError>())
                {
                    Some(inner) => Failure::from_expr(inner, err.to_string()),
                    None => Failure::precondition(err.to_string()),
                }
            }
        }
    )*};
}

failure_from!(LimitError, DiffError, DescentError, QuadError, SeriesError);

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(err) => return usage_error(&argv, err),
    };
    let command = cli.command.name();
    let mut inputs = Map::new();
    let result = match &cli.command {
        Command::Eval(args) => eval(args, &mut inputs),
        Command::Limit(args) => limit(args, &mut inputs),
        Command::Derivative(args) => derivative(args, &mut inputs),
        Command::Gradient(args) => gradient(args, &mut inputs),
        Command::Minimize(args) => minimize(args, &mut inputs),
        Command::Integrate(args) => integrate(args, &mut inputs),
        Command::Series(args) => series(args, &mut inputs),
    };
    let mut doc = OutputDocument {
        command: command.to_string(),
        inputs,
        verdict: None,
        value: None,
        vector: None,
        iterations: 0,
        trace: None,
        error: None,
    };
    let code = match result {
        Ok(report) => {
            doc.verdict = Some(report.verdict);
            doc.value = report.value.map(Num);
            doc.vector = report.vector.map(|v| v.into_iter().map(Num).collect());
            doc.iterations = report.iterations;
            doc.trace = cli.trace.then_some(report.trace);
            report.code
        }
        Err(failure) => {
            doc.error = Some(ErrorBody {
                code: failure.kind,
                message: failure.message,
                offset: failure.offset,
            });
            failure.code
        }
    };
    render(&doc, code, cli.json, cli.quiet)
}

fn usage_error(argv: &[OsString], err: clap::Error) -> Outcome {
    use clap::error::ErrorKind;
    if matches!(
        err.kind(),
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
    ) {
        return Outcome {
            code: EXIT_OK,
            stdout: err.to_string(),
            stderr: String::new(),
        };
    }
    let args: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let json = args.iter().any(|a| a == "--json");
    let command = args
        .iter()
        .find(|a| SUBCOMMANDS.contains(&a.as_str()))
        .cloned()
        .unwrap_or_default();
    let message = err.to_string();
    let doc = OutputDocument {
        command,
        inputs: Map::new(),
        verdict: None,
        value: None,
        vector: None,
        iterations: 0,
        trace: None,
        error: Some(ErrorBody {
            code: "invalid_argument",
            message: message.trim_end().to_string(),
            offset: None,
        }),
    };
    render(&doc, EXIT_INVALID, json, false)
}

fn render(doc: &OutputDocument, code: i32, json: bool, quiet: bool) -> Outcome {
    if json {
        let mut stdout = serde_json::to_string_pretty(doc).expect("document serializes");
        stdout.push('\n');
        return Outcome {
            code,
            stdout,
            stderr: String::new(),
        };
    }
    if let Some(err) = &doc.error {
        let text = format!("error[{}]: {}\n", err.code, err.message);
        return Outcome {
            code,
            stdout: text.clone(),
            stderr: text,
        };
    }
    Outcome {
        code,
        stdout: if quiet { quiet_text(doc) } else { text(doc) },
        stderr: String::new(),
    }
}

fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format_number(v)
    }
}

fn fmt_vec(vs: &[Num]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| fmt_num(v.0)).collect();
    format!("[{}]", parts.join(", "))
}

fn fmt_value(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_f64() => fmt_num(n.as_f64().unwrap_or(f64::NAN)),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(fmt_value).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn quiet_text(doc: &OutputDocument) -> String {
    let line = match (&doc.vector, doc.value) {
        (Some(vector), _) => fmt_vec(vector),
        (None, Some(value)) => fmt_num(value.0),
        (None, None) => doc.verdict.clone().unwrap_or_default(),
    };
    line + "\n"
}

fn text(doc: &OutputDocument) -> String {
    let mut rows: Vec<(String, String)> = vec![("command".into(), doc.command.clone())];
    rows.extend(doc.inputs.iter().map(|(k, v)| (k.clone(), fmt_value(v))));
    if let Some(verdict) = &doc.verdict {
        rows.push(("verdict".into(), verdict.clone()));
    }
    if let Some(value) = doc.value {
        rows.push(("value".into(), fmt_num(value.0)));
    }
    if let Some(vector) = &doc.vector {
        rows.push(("vector".into(), fmt_vec(vector)));
    }
    rows.push(("iterations".into(), doc.iterations.to_string()));
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (key, value) in &rows {
        out.push_str(&format!("{key:<width$}  {value}\n"));
    }
    if let Some(trace) = &doc.trace {
        out.push('\n');
        out.push_str(&trace_table(trace));
    }
    out
}

fn trace_table(trace: &[TraceEntry]) -> String {
    let has_side = trace.iter().any(|e| e.side.is_some());
    let has_grad = trace.iter().any(|e| e.grad_norm.is_some());
    let mut header = vec!["k".to_string()];
    if has_side {
        header.push("side".into());
    }
    header.extend(["x".to_string(), "fx".to_string()]);
    if has_grad {
        header.push("grad_norm".into());
    }
    let mut table = vec![header];
    for e in trace {
        let mut row = vec![e.k.to_string()];
        if has_side {
            row.push(e.side.unwrap_or("").to_string());
        }
        row.push(match &e.x {
            Point::Scalar(x) => fmt_num(x.0),
            Point::Vector(xs) => fmt_vec(xs),
        });
        row.push(fmt_num(e.fx.0));
        if has_grad {
            row.push(e.grad_norm.map(|g| fmt_num(g.0)).unwrap_or_default());
        }
        table.push(row);
    }
    let mut widths = vec![0; table[0].len()];
    for row in &table {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    for row in &table {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:>w$}"))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn verdict_code(kind: &VerdictKind) -> i32 {
    match kind {
        VerdictKind::Inconclusive => EXIT_INCONCLUSIVE,
        _ => EXIT_OK,
    }
}

fn sample_entries(trace: &SampleTrace, side: Option<&'static str>) -> Vec<TraceEntry> {
    trace
        .samples()
        .iter()
        .map(|s| TraceEntry {
            k: s.k,
            side,
            x: Point::Scalar(Num(s.x)),
            fx: Num(s.fx),
            grad_norm: None,
        })
        .collect()
}

fn parse_f64(text: &str, what: &str) -> Result<f64, Failure> {
    text.trim()
        .parse()
        .map_err(|_| Failure::invalid(format!("{what}: `{}` is not a number", text.trim())))
}

fn parse_list(text: &str, what: &str) -> Result<Vec<f64>, Failure> {
    text.split(',').map(|item| parse_f64(item, what)).collect()
}

fn parse_names(text: &str) -> Result<Vec<String>, Failure> {
    let names: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    if names.iter().any(|n| n.is_empty()) {
        return Err(Failure::invalid(format!(
            "empty name in variable list `{text}`"
        )));
    }
    Ok(names)
}

/// Parses "x=1,y=2". Bare values bind `positional` names in order.
fn parse_point(text: &str, positional: &[String]) -> Result<Bindings, Failure> {
    let mut point = Bindings::new();
    for (i, item) in text.split(',').enumerate() {
        match item.split_once('=') {
            Some((name, value)) => {
                let name = name.trim();
                point.set(name, parse_f64(value, name)?);
            }
            None => {
                let name = positional.get(i).ok_or_else(|| {
                    Failure::invalid(format!("value `{}` has no variable name", item.trim()))
                })?;
                point.set(name.clone(), parse_f64(item, name)?);
            }
        }
    }
    Ok(point)
}

fn point_value(point: &Bindings) -> Value {
    Value::Object(point.iter().map(|(k, v)| (k.to_string(), num(v))).collect())
}

fn parse_expr(text: &str) -> Result<Expr, Failure> {
    Ok(parse(text)?)
}

fn eval(args: &EvalArgs, inputs: &mut Map<String, Value>) -> Result<Report, Failure> {
    inputs.insert("expr".into(), json!(args.expr));
    let mut point = Bindings::new();
    for binding in &args.vars {
        let (name, value) = binding.split_once('=').ok_or_else(|| {
            Failure::invalid(format!("--var expects NAME=VALUE, got `{binding}`"))
        })?;
        point.set(name.trim(), parse_f64(value, name.trim())?);
    }
    inputs.insert("vars".into(), point_value(&point));
    let expr = parse_expr(&args.expr)?;
    for name in expr.free_vars() {
        crate::expr::check_variable_name(&name)?;
    }
    let value = expr.eval(&point)?;
    Ok(Report {
        verdict: "Value".into(),
        value: Some(value),
        vector: None,
        iterations: 0,
        trace: Vec::new(),
        code: EXIT_OK,
    })
}

fn limit(args: &LimitArgs, inputs: &mut Map<String, Value>) -> Result<Report, Failure> {
    let target = match (args.to_infinity, args.at) {
        (Some(InfinityArg::Plus), _) => Target::PlusInfinity,
        (Some(InfinityArg::Minus), _) => Target::MinusInfinity,
        (None, Some(point)) => Target::Finite {
            point,
            approach: match args.side {
                SideArg::Left => Approach::Left,
                SideArg::Right => Approach::Right,
                SideArg::Both => Approach::Both,
            },
        },
        (None, None) => return Err(Failure::invalid("one of --at or --to-infinity is required")),
    };
    inputs.insert("expr".into(), json!(args.expr));
    inputs.insert("var".into(), json!(args.var));
    match target {
        Target::Finite { point, .. } => {
            inputs.insert("at".into(), num(point));
            inputs.insert("side".into(), json!(side_name(args.side)));
        }
        Target::PlusInfinity => {
            inputs.insert("to_infinity".into(), json!("plus"));
        }
        Target::MinusInfinity => {
            inputs.insert("to_infinity".into(), json!("minus"));
        }
    }
    inputs.insert("n".into(), json!(args.n));
    inputs.insert("tol".into(), num(args.tol));
    inputs.insert("window".into(), json!(args.window));
    inputs.insert("perturb".into(), json!(args.perturb));
    inputs.insert("seed".into(), json!(args.seed));

    let expr = parse_expr(&args.expr)?;
    let mut q = LimitQuery::new(expr, &args.var, target)
        .with_n(args.n)
        .with_tol(args.tol)
        .with_window(args.window);
    q.seed = args.seed;
    q.perturb = args.perturb;
    let verdict = limits::limit(&q)?;
    let trace = match verdict.traces.as_slice() {
        [left, right] => {
            let mut entries = sample_entries(left, Some("left"));
            entries.extend(sample_entries(right, Some("right")));
            entries
        }
        traces => traces
            .iter()
            .flat_map(|t| sample_entries(t, None))
            .collect(),
    };
    Ok(Report {
        verdict: verdict.kind.name().into(),
        value: verdict.value(),
        vector: None,
        iterations: verdict.iterations_used,
        trace,
        code: verdict_code(&verdict.kind),
    })
}

fn side_name(side: SideArg) -> &'static str {
    match side {
        SideArg::Left => "left",
        SideArg::Right => "right",
        SideArg::Both => "both",
    }
}

fn derivative(args: &DerivativeArgs, inputs: &mut Map<String, Value>) -> Result<Report, Failure> {
    inputs.insert("expr".into(), json!(args.expr));
    inputs.insert("var".into(), json!(args.var));
    let point = parse_point(&args.at, std::slice::from_ref(&args.var))?;
    inputs.insert("at".into(), point_value(&point));
    inputs.insert("n".into(), json!(args.n));
    inputs.insert("tol".into(), num(args.tol));

    let expr = parse_expr(&args.expr)?;
    let req = DiffRequest::new(expr, &args.var, point)
        .with_n(args.n)
        .with_tol(args.tol);
    let result = diff::partial(&req)?;
    Ok(Report {
        verdict: result.verdict.kind.name().into(),
        value: result.estimate,
        vector: None,
        iterations: result.verdict.iterations_used,
        trace: sample_entries(&result.trace, None),
        code: verdict_code(&result.verdict.kind),
    })
}

fn gradient(args: &GradientArgs, inputs: &mut Map<String, Value>) -> Result<Report, Failure> {
    inputs.insert("expr".into(), json!(args.expr));
    let vars = parse_names(&args.vars)?;
    inputs.insert("vars".into(), json!(vars));
    let point = parse_point(&args.at, &vars)?;
    inputs.insert("at".into(), point_value(&point));
    inputs.insert("n".into(), json!(args.n));
    inputs.insert("tol".into(), num(args.tol));

    let expr = parse_expr(&args.expr)?;
    let options = DiffOptions {
        n: args.n,
        tol: args.tol,
    };
    match diff::gradient(&expr, &vars, &point, &options) {
        Ok(grad) => Ok(Report {
            verdict: "Converged".into(),
            value: None,
            iterations: vars.len(),
            vector: Some(grad),
            trace: Vec::new(),
            code: EXIT_OK,
        }),
        Err(DiffError::NotConverged { var, kind }) => Ok(Report {
            verdict: kind.name().into(),
            value: None,
            vector: None,
            iterations: vars.iter().position(|v| *v == var).map_or(0, |i| i + 1),
            trace: Vec::new(),
            code: verdict_code(&kind),
        }),
        Err(err) => Err(err.into()),
    }
}

fn minimize(args: &MinimizeArgs, inputs: &mut Map<String, Value>) -> Result<Report, Failure> {
    inputs.insert("expr".into(), json!(args.expr));
    let vars = parse_names(&args.vars)?;
    inputs.insert("vars".into(), json!(vars));
    let x0 = parse_list(&args.x0, "--x0")?;
    inputs.insert("x0".into(), nums(&x0));
    let mut cfg = DescentConfig::new(x0)
        .with_alpha(args.alpha)
        .with_step_mode(match args.step {
            StepArg::Fixed => StepMode::Fixed,
            StepArg::Backtracking => StepMode::Backtracking,
        })
        .with_max_iters(args.max_iters)
        .with_grad_tol(args.grad_tol);
    if let Some(beta) = args.momentum {
        cfg = cfg.with_beta(beta);
    }
    if args.maximize {
        cfg = cfg.maximizing();
    }
    inputs.insert("alpha".into(), num(cfg.alpha));
    inputs.insert(
        "step".into(),
        json!(match cfg.step_mode {
            StepMode::Fixed => "fixed",
            StepMode::Backtracking => "backtracking",
        }),
    );
    inputs.insert("momentum".into(), args.momentum.map_or(Value::Null, num));
    inputs.insert("max_iters".into(), json!(cfg.max_iters));
    inputs.insert("grad_tol".into(), num(cfg.grad_tol));
    inputs.insert("maximize".into(), json!(cfg.maximize));
    inputs.insert("gradient_n".into(), json!(cfg.gradient.n));
    inputs.insert("gradient_tol".into(), num(cfg.gradient.tol));

    let expr = parse_expr(&args.expr)?;
    let run = if args.momentum.is_some() {
        descent::gradient_descent_momentum(&expr, &vars, &cfg)?
    } else {
        descent::gradient_descent(&expr, &vars, &cfg)?
    };
    let last = run.last();
    let trace = run
        .iterates
        .iter()
        .enumerate()
        .map(|(k, it)| TraceEntry {
            k,
            side: None,
            x: Point::Vector(it.x.iter().copied().map(Num).collect()),
            fx: Num(it.fx),
            grad_norm: Some(Num(it.grad_norm)),
        })
        .collect();
    let verdict = run.termination.name().to_string();
    Ok(Report {
        verdict,
        value: Some(last.fx),
        vector: Some(last.x.clone()),
        iterations: run.steps(),
        trace,
        code: EXIT_OK,
    })
}

fn integrate(args: &IntegrateArgs, inputs: &mut Map<String, Value>) -> Result<Report, Failure> {
    let rule = Rule::from(args.rule);
    inputs.insert("expr".into(), json!(args.expr));
    inputs.insert("var".into(), json!(args.var));
    inputs.insert("from".into(), num(args.from));
    inputs.insert("to".into(), num(args.to));
    inputs.insert("n".into(), json!(args.n));
    inputs.insert("rule".into(), json!(rule.name()));
    inputs.insert("vectorized".into(), json!(args.vectorized));

    let expr = parse_expr(&args.expr)?;
    if args.vectorized && !rule.is_riemann() {
        return Err(Failure::invalid(format!(
            "--vectorized applies to Riemann rules only, not {}",
            rule.name()
        )));
    }
    let partition = Partition::new(args.from, args.to, args.n)?;
    let spec = QuadratureSpec::new(expr, &args.var, partition, rule)?;
    let value = if args.vectorized {
        quad::riemann_vectorized(&spec)?
    } else {
        quad::integrate(&spec)?
    };
    Ok(Report {
        verdict: "Value".into(),
        value: Some(value),
        vector: None,
        iterations: args.n,
        trace: Vec::new(),
        code: EXIT_OK,
    })
}

fn series(args: &SeriesArgs, inputs: &mut Map<String, Value>) -> Result<Report, Failure> {
    inputs.insert("term".into(), json!(args.term));
    inputs.insert("index".into(), json!(args.index));
    inputs.insert("start".into(), json!(args.start));
    inputs.insert("max_terms".into(), json!(args.max_terms));
    inputs.insert("tol".into(), num(args.tol));
    inputs.insert("window".into(), json!(args.window));
    inputs.insert("checkpoints".into(), json!(args.checkpoints));

    let term = parse_expr(&args.term)?;
    let q = SeriesQuery::new(term, &args.index)
        .with_start(args.start)
        .with_max_terms(args.max_terms)
        .with_tol(args.tol)
        .with_window(args.window)
        .with_checkpoints(args.checkpoints);
    let verdict = series::classify_series(&q)?;
    Ok(Report {
        verdict: verdict.kind.name().into(),
        value: verdict.value(),
        vector: None,
        iterations: verdict.iterations_used,
        trace: verdict
            .traces
            .iter()
            .flat_map(|t| sample_entries(t, None))
            .collect(),
        code: verdict_code(&verdict.kind),
    })
}
