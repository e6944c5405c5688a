use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qbk_core::qbernoulli::{beta_limit_q1, BetaKind, BetaResult, Method};
use qbk_core::qsums::{
    campaign_cases, parse_side, run_campaign, s_mn_brute, s_theorem3_brute, s_theorem3_closed, IdentityCase,
    IdentityId, Status, VerificationReport,
};
use qbk_core::qzeta::{approx, zeta_series, zeta_special, ZetaQuery, ZetaRecord, ZetaVariant};
use qbk_core::{QRatio, QbkError, Rational};

use crate::numparse::RationalArg;

const EXIT_OK: i32 = 0;
const EXIT_MISMATCH: i32 = 1;
const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qbk", version, about = "Exact q-Bernoulli numbers, q-power sums and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to this file instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// q-Bernoulli number beta*_{n,k,q}
    Beta(BetaArgs),
    /// q-Bernoulli polynomial beta*_{n,k,q}(k)
    BetaPoly(BetaArgs),
    /// Finite q-power sums
    Sum(SumArgs),
    /// Check identities; prints one report per case
    Verify(VerifyArgs),
    /// Table of values over a grid of (n, k)
    Table(TableArgs),
    /// q-zeta series or special values
    Zeta(ZetaArgs),
    /// Exact value at q = 1
    Limit(LimitArgs),
}

#[derive(Args, Debug)]
struct BetaArgs {
    #[arg(long)]
    n: i64,
    #[arg(long)]
    k: i64,
    /// Use regularized summation of the generating function instead of the closed form
    #[arg(long)]
    oracle: bool,
    /// Evaluate at this value of q
    #[arg(long)]
    q: Option<RationalArg>,
}

#[derive(Args, Debug)]
struct SumArgs {
    /// sum_{j<k} [j]_{q^2} [j]_q^(n-1) q^((n+1)(k-j)/2) for even n
    #[arg(long)]
    theorem3: bool,
    /// With --theorem3: the closed form through beta* differences
    #[arg(long, requires = "theorem3")]
    closed: bool,
    /// Power for S_{m,n}
    #[arg(long)]
    m: Option<i64>,
    #[arg(long)]
    n: i64,
    #[arg(long)]
    k: Option<i64>,
    #[arg(long)]
    q: Option<RationalArg>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Identity name, `schlosser` (with --m), or `all`
    #[arg(long, default_value = "all")]
    identity: String,
    #[arg(long)]
    m: Option<i64>,
    #[arg(long, default_value_t = 10)]
    n_max: i64,
    #[arg(long, default_value_t = 5)]
    k_max: i64,
    /// Replay recorded reports (JSON lines) and compare against fresh computation
    #[arg(long, conflicts_with = "identity")]
    fixture: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Beta,
    BetaPoly,
    Theorem3,
    ZetaSpecial,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, value_enum, default_value_t = TableKind::Beta)]
    kind: TableKind,
    /// Comma-separated orders; defaults to the even orders up to --n-max
    #[arg(long, value_delimiter = ',')]
    n: Vec<i64>,
    /// Comma-separated k values; defaults to 1..=--k-max
    #[arg(long, value_delimiter = ',')]
    k: Vec<i64>,
    #[arg(long, default_value_t = 4)]
    n_max: i64,
    #[arg(long, default_value_t = 3)]
    k_max: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ZetaKind {
    Shifted,
    Plain,
}

#[derive(Args, Debug)]
struct ZetaArgs {
    #[arg(long, value_enum, default_value_t = ZetaKind::Shifted)]
    variant: ZetaKind,
    /// Print the special value at s = 1 - n instead of summing the series
    #[arg(long)]
    special: bool,
    #[arg(long, required_unless_present = "special")]
    s: Option<RationalArg>,
    #[arg(long, required_unless_present = "special")]
    q: Option<RationalArg>,
    #[arg(long, default_value_t = 1)]
    k: i64,
    #[arg(long, required_if_eq("special", "true"))]
    n: Option<i64>,
    #[arg(long, default_value = "1e-12")]
    tolerance: RationalArg,
}

#[derive(Args, Debug)]
struct LimitArgs {
    #[arg(long, value_enum, default_value_t = TableKind::Beta)]
    kind: TableKind,
    #[arg(long)]
    n: i64,
    #[arg(long)]
    k: i64,
}

/// Failure of one invocation, mapped onto the exit-code contract.
enum Failure {
    Usage(String),
    Io(String),
}

impl From<QbkError> for Failure {
    fn from(e: QbkError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Buffered output and the exit code it should end with.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: EXIT_OK }
    }
}

/// Parses `argv` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli).and_then(|outcome| emit(&outcome.text, cli.out.as_deref()).map(|_| outcome.code)) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("qbk: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(msg)) => {
            eprintln!("qbk: {msg}");
            EXIT_USAGE
        }
    }
}

/// Output is written only after the whole computation succeeded.
fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Io(format!("cannot write to standard output: {e}")))
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let fmt = cli.format;
    match &cli.command {
        Command::Beta(a) => beta(a, BetaKind::Number, fmt),
        Command::BetaPoly(a) => beta(a, BetaKind::Polynomial, fmt),
        Command::Sum(a) => sum(a, fmt),
        Command::Verify(a) => verify(a, fmt),
        Command::Table(a) => table(a, fmt),
        Command::Zeta(a) => zeta(a, fmt),
        Command::Limit(a) => limit(a, fmt),
    }
}

fn no_csv(fmt: Format, what: &str) -> Result<(), Failure> {
    if fmt == Format::Csv {
        return Err(Failure::Usage(format!("--format csv is not available for {what}")));
    }
    Ok(())
}

fn line(mut s: String) -> String {
    s.push('\n');
    s
}

fn value_text(value: &QRatio, q: Option<&RationalArg>) -> Result<String, Failure> {
    Ok(match q {
        Some(RationalArg(q)) => value.eval_q(q)?.to_string(),
        None => value.to_string(),
    })
}

fn beta(a: &BetaArgs, kind: BetaKind, fmt: Format) -> Result<Outcome, Failure> {
    no_csv(fmt, "beta")?;
    let method = if a.oracle { Method::Oracle } else { Method::ClosedForm };
    let result = BetaResult::compute(kind, method, a.n, a.k)?;
    let value = value_text(&result.value, a.q.as_ref())?;
    Ok(Outcome::ok(match fmt {
        Format::Json => {
            let mut obj = json!({"n": a.n, "k": a.k, "kind": kind, "method": method, "value": value});
            if let Some(RationalArg(q)) = &a.q {
                obj["q"] = json!(q.to_string());
            }
            line(obj.to_string())
        }
        _ => line(value),
    }))
}

fn sum(a: &SumArgs, fmt: Format) -> Result<Outcome, Failure> {
    no_csv(fmt, "sum")?;
    let (name, value) = if a.theorem3 {
        if a.m.is_some() {
            return Err(Failure::Usage("--m cannot be combined with --theorem3".into()));
        }
        let k = a.k.ok_or_else(|| Failure::Usage("--theorem3 needs --k".into()))?;
        if a.closed {
            ("theorem3_closed", s_theorem3_closed(a.n, k)?)
        } else {
            ("theorem3", QRatio::from_poly(s_theorem3_brute(a.n, k)?))
        }
    } else {
        if a.k.is_some() {
            return Err(Failure::Usage("--k is only used with --theorem3".into()));
        }
        let m = a.m.ok_or_else(|| Failure::Usage("sum needs --m or --theorem3".into()))?;
        ("s_mn", QRatio::from_poly(s_mn_brute(m, a.n)?))
    };
    let text = value_text(&value, a.q.as_ref())?;
    Ok(Outcome::ok(match fmt {
        Format::Json => {
            let mut obj = json!({"sum": name, "n": a.n, "value": text});
            if let Some(m) = a.m {
                obj["m"] = json!(m);
            }
            if let Some(k) = a.k {
                obj["k"] = json!(k);
            }
            if let Some(RationalArg(q)) = &a.q {
                obj["q"] = json!(q.to_string());
            }
            line(obj.to_string())
        }
        _ => line(text),
    }))
}

fn threads_from_env() -> usize {
    std::env::var("QBK_THREADS").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(0)
}

fn selected_identities(a: &VerifyArgs) -> Result<Vec<IdentityId>, Failure> {
    match a.identity.as_str() {
        "all" => Ok(IdentityId::ALL.to_vec()),
        "schlosser" => match a.m {
            Some(m) => Ok(vec![IdentityId::schlosser(m)?]),
            None => Ok(vec![IdentityId::SchlosserM2, IdentityId::SchlosserM3, IdentityId::SchlosserM4, IdentityId::SchlosserM5]),
        },
        "kim" => Ok(vec![IdentityId::KimLinear, IdentityId::KimQuadratic]),
        other => {
            let id: IdentityId = other.parse()?;
            if let (Some(m), Some(fixed)) = (a.m, id.schlosser_m()) {
                if m != fixed {
                    return Err(Failure::Usage(format!("--m {m} contradicts identity {id}")));
                }
            }
            Ok(vec![id])
        }
    }
}

fn replay_fixture(path: &Path) -> Result<Vec<VerificationReport>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    let mut recorded = Vec::new();
    for (i, raw) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let report: VerificationReport = serde_json::from_str(raw)
            .map_err(|e| Failure::Usage(format!("{}:{}: {e}", path.display(), i + 1)))?;
        recorded.push(report);
    }
    let cases: Vec<IdentityCase> = recorded.iter().map(|r| r.case()).collect::<Result<_, _>>()?;
    let fresh = run_campaign(&cases, threads_from_env());
    // run_campaign sorts; pair each recorded report with its fresh counterpart
    let mut order: Vec<usize> = (0..cases.len()).collect();
    order.sort_by(|&a, &b| cases[a].cmp(&cases[b]));
    Ok(order
        .into_iter()
        .zip(fresh)
        .map(|(i, computed)| compare_recorded(&recorded[i], computed))
        .collect())
}

/// A recorded report matches when its status agrees and both sides parse to
/// the freshly computed values.
fn compare_recorded(recorded: &VerificationReport, computed: VerificationReport) -> VerificationReport {
    if computed.status == Status::Error {
        return computed;
    }
    let same_side = |text: &str, fresh: &str| match (parse_side(text), parse_side(fresh)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    };
    let agrees = recorded.status == computed.status
        && same_side(&recorded.lhs, &computed.lhs)
        && same_side(&recorded.rhs, &computed.rhs);
    if agrees {
        computed
    } else {
        VerificationReport {
            status: Status::Mismatch,
            lhs: recorded.lhs.clone(),
            rhs: recorded.rhs.clone(),
            ..computed
        }
    }
}

fn verify(a: &VerifyArgs, fmt: Format) -> Result<Outcome, Failure> {
    let reports = match &a.fixture {
        Some(path) => replay_fixture(path)?,
        None => {
            if a.n_max < 1 || a.k_max < 1 {
                return Err(Failure::Usage("--n-max and --k-max must be positive".into()));
            }
            let mut cases = Vec::new();
            for id in selected_identities(a)? {
                cases.extend(campaign_cases(id, a.n_max, a.k_max));
            }
            if cases.is_empty() {
                return Err(Failure::Usage("no cases in the requested range".into()));
            }
            run_campaign(&cases, threads_from_env())
        }
    };
    let failed = reports.iter().any(|r| r.status != Status::Equal);
    let mut out = String::new();
    match fmt {
        Format::Json => {
            for r in &reports {
                out.push_str(&line(serde_json::to_string(r).expect("report serializes")));
            }
        }
        Format::Csv => {
            out.push_str("identity,params,status,lhs,rhs\n");
            for r in &reports {
                let _ = writeln!(out, "{},{},{},{},{}", r.identity, join(&r.params, ";"), status_str(r.status), csv_field(&r.lhs), csv_field(&r.rhs));
            }
        }
        Format::Text => {
            for r in &reports {
                let _ = writeln!(out, "{} [{}] {}", r.identity, join(&r.params, ", "), status_str(r.status));
            }
            let equal = reports.iter().filter(|r| r.status == Status::Equal).count();
            let _ = writeln!(out, "{equal}/{} equal", reports.len());
        }
    }
    Ok(Outcome { text: out, code: if failed { EXIT_MISMATCH } else { EXIT_OK } })
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Equal => "equal",
        Status::Mismatch => "mismatch",
        Status::Error => "error",
    }
}

fn join(xs: &[i64], sep: &str) -> String {
    xs.iter().map(i64::to_string).collect::<Vec<_>>().join(sep)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn table_value(kind: TableKind, n: i64, k: i64) -> Result<QRatio, QbkError> {
    match kind {
        TableKind::Beta => qbk_core::qbernoulli::beta_star(n, k),
        TableKind::BetaPoly => qbk_core::qbernoulli::beta_star_poly(n, k),
        TableKind::Theorem3 => s_theorem3_closed(n, k),
        TableKind::ZetaSpecial => zeta_special(n, k),
    }
}

fn table(a: &TableArgs, fmt: Format) -> Result<Outcome, Failure> {
    let mut ns = if a.n.is_empty() { (2..=a.n_max).step_by(2).collect() } else { a.n.clone() };
    let mut ks = if a.k.is_empty() { (1..=a.k_max).collect() } else { a.k.clone() };
    ns.sort_unstable();
    ns.dedup();
    ks.sort_unstable();
    ks.dedup();
    if ns.is_empty() || ks.is_empty() {
        return Err(Failure::Usage("empty n or k range".into()));
    }
    if let Some(odd) = ns.iter().find(|n| *n % 2 != 0) {
        return Err(Failure::Usage(format!("order n = {odd} must be even")));
    }
    let mut rows = Vec::with_capacity(ns.len() * ks.len());
    for &n in &ns {
        for &k in &ks {
            rows.push((n, k, table_value(a.kind, n, k)?.to_string()));
        }
    }
    let mut out = String::new();
    match fmt {
        Format::Csv => {
            out.push_str("n,k,value\n");
            for (n, k, v) in &rows {
                let _ = writeln!(out, "{n},{k},{}", csv_field(v));
            }
        }
        Format::Json => {
            let arr: Vec<_> = rows.iter().map(|(n, k, v)| json!({"n": n, "k": k, "value": v})).collect();
            out = line(serde_json::to_string(&arr).expect("table serializes"));
        }
        Format::Text => {
            for (n, k, v) in &rows {
                let _ = writeln!(out, "n={n} k={k} {v}");
            }
        }
    }
    Ok(Outcome::ok(out))
}

fn zeta(a: &ZetaArgs, fmt: Format) -> Result<Outcome, Failure> {
    no_csv(fmt, "zeta")?;
    if a.special {
        let n = a.n.ok_or_else(|| Failure::Usage("--special needs --n".into()))?;
        let value = zeta_special(n, a.k)?.to_string();
        return Ok(Outcome::ok(match fmt {
            Format::Json => line(json!({"special": true, "n": n, "k": a.k, "value": value}).to_string()),
            _ => line(value),
        }));
    }
    let (Some(RationalArg(s)), Some(RationalArg(q))) = (&a.s, &a.q) else {
        return Err(Failure::Usage("zeta needs --s and --q".into()));
    };
    let variant = match a.variant {
        ZetaKind::Shifted => ZetaVariant::Shifted,
        ZetaKind::Plain => ZetaVariant::Plain,
    };
    let query = ZetaQuery { s: s.clone(), q_value: q.clone(), k: a.k, tolerance: a.tolerance.0.clone() };
    let result = zeta_series(&query, variant)?;
    Ok(Outcome::ok(match fmt {
        Format::Json => line(serde_json::to_string(&ZetaRecord::new(&query, variant, &result)).expect("record serializes")),
        _ => {
            let mut t = String::new();
            let _ = writeln!(t, "{:.15e}", approx(&result.value));
            let _ = writeln!(t, "exact partial sum: {}", result.value);
            let _ = writeln!(t, "terms used: {}", result.terms_used);
            t
        }
    }))
}

fn limit(a: &LimitArgs, fmt: Format) -> Result<Outcome, Failure> {
    no_csv(fmt, "limit")?;
    let value: Rational = match a.kind {
        TableKind::Beta => beta_limit_q1(a.n, a.k, BetaKind::Number)?,
        TableKind::BetaPoly => beta_limit_q1(a.n, a.k, BetaKind::Polynomial)?,
        kind => table_value(kind, a.n, a.k)?.limit_at_one()?,
    };
    let kind = a.kind.to_possible_value().expect("visible value").get_name().to_string();
    Ok(Outcome::ok(match fmt {
        Format::Json => line(json!({"kind": kind, "n": a.n, "k": a.k, "limit": value.to_string()}).to_string()),
        _ => line(value.to_string()),
    }))
}
