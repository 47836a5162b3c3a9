//! The `rlah` command line: triangles, identity sweeps, oracle comparisons,
//! construction checks and sequence fixtures.
//!
//! Exit codes: 0 all checks passed, 1 a check failed, 2 usage error,
//! 3 enumeration size cap exceeded.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rlah_core::bijections::{self, ConstructionId};
use rlah_core::distributions::{self, DEFAULT_CAP};
use rlah_core::exec::{self, Execution};
use rlah_core::identities::{sweep_with, CheckReport, IdentityId, SweepSpec, Verifier};
use rlah_core::lah::{g_eval, LahTriangle};
use rlah_core::{Error, Weights};
use serde_json::{json, Map, Value};

mod fixtures;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAP: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "rlah",
    version,
    about = "Generalized r-Lah polynomials: tables and verification"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Raise the bound on n + r for exhaustive enumeration.
    #[arg(long, global = true, value_name = "N")]
    pub cap_override: Option<u32>,
    /// Worker threads for sweeps.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Sequence {
    /// Bell numbers, row sums at (a,b) = (0,1), r = 0.
    Bell,
    /// Row sums at (a,b) = (1,1), r = 0.
    A000262,
    /// r-Bell numbers, row sums at (a,b) = (0,1).
    #[value(name = "r_bell")]
    RBell,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print rows 0..=n of G(n,k;r), symbolic unless both --a and --b are given.
    Table {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        r: u32,
        #[arg(long, allow_hyphen_values = true, requires = "b")]
        a: Option<i64>,
        #[arg(long, allow_hyphen_values = true, requires = "a")]
        b: Option<i64>,
    },
    /// Run identity checks over parameter ranges.
    Check {
        /// Identity names, comma separated or repeated (default: all).
        #[arg(long = "id", value_delimiter = ',')]
        ids: Vec<String>,
        #[arg(long, value_parser = parse_range, default_value = "0..6")]
        n: RangeInclusive<u32>,
        #[arg(long, value_parser = parse_range)]
        k: Option<RangeInclusive<u32>>,
        #[arg(long, value_parser = parse_range, default_value = "0..2")]
        m: RangeInclusive<u32>,
        #[arg(long, value_parser = parse_range, default_value = "0..2")]
        r: RangeInclusive<u32>,
        #[arg(long, value_parser = parse_range, default_value = "0..2")]
        s: RangeInclusive<u32>,
        /// Seeds for the inversion round trip.
        #[arg(long = "seed", value_delimiter = ',', default_value = "42")]
        seeds: Vec<u64>,
    },
    /// Compare the recurrence against brute-force enumeration for n <= N, r <= R.
    Oracle {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        r: u32,
    },
    /// Verify the involutions and the bijection exhaustively.
    Constructions {
        #[arg(long = "id", value_delimiter = ',')]
        ids: Vec<String>,
        #[arg(long, value_parser = parse_range, default_value = "0..4")]
        n: RangeInclusive<u32>,
        #[arg(long, value_parser = parse_range)]
        k: Option<RangeInclusive<u32>>,
        #[arg(long, value_parser = parse_range, default_value = "0..2")]
        r: RangeInclusive<u32>,
        #[arg(long, value_parser = parse_range, default_value = "0..2")]
        s: RangeInclusive<u32>,
        /// Also print every configuration and its partner.
        #[arg(long)]
        trace: bool,
    },
    /// Row-sum specializations, checked against embedded OEIS prefixes.
    Sequences {
        #[arg(value_enum)]
        which: Sequence,
        #[arg(long, default_value_t = 12)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        r: u32,
    },
}

/// `LO..HI` (inclusive; `LO..=HI` also accepted) or a single value.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| format!("expected a nonnegative integer, got {t:?}"))
    };
    match s.split_once("..") {
        Some((lo, hi)) => Ok(num(lo)?..=num(hi.strip_prefix('=').unwrap_or(hi))?),
        None => {
            let v = num(s)?;
            Ok(v..=v)
        }
    }
}

/// What a command produced: rendered output plus the exit code.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeLimit { .. } => Failure::Cap(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// Rows of a command's output, kept in three synchronized renderings.
struct Output {
    columns: &'static [&'static str],
    records: Vec<Map<String, Value>>,
    text: Vec<String>,
    passed: bool,
}

impl Output {
    fn new(columns: &'static [&'static str]) -> Self {
        Output {
            columns,
            records: Vec::new(),
            text: Vec::new(),
            passed: true,
        }
    }

    fn push(&mut self, record: Value, text: String) {
        if let Value::Object(m) = record {
            self.records.push(m);
        }
        self.text.push(text);
    }

    fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                for line in &self.text {
                    out.push_str(line);
                    out.push('\n');
                }
            }
            Format::Csv => {
                out.push_str(&self.columns.join(","));
                out.push('\n');
                for rec in &self.records {
                    let cells: Vec<String> = self
                        .columns
                        .iter()
                        .map(|c| csv_cell(rec.get(*c).unwrap_or(&Value::Null)))
                        .collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
            }
            Format::Json => {
                let arr = Value::Array(self.records.iter().cloned().map(Value::Object).collect());
                out.push_str(&serde_json::to_string_pretty(&arr).expect("serializable"));
                out.push('\n');
            }
        }
        out
    }
}

fn csv_cell(v: &Value) -> String {
    let raw = match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

/// A JSON number when it fits in `i64`, otherwise its decimal string.
fn big(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => json!(i),
        None => json!(v.to_string()),
    }
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let cap = cli.cap_override.unwrap_or(DEFAULT_CAP);
    let result = exec::with_threads(cli.jobs, || match &cli.command {
        Command::Table { n, r, a, b } => Ok(table(*n, *r, a.zip(*b))),
        Command::Check {
            ids,
            n,
            k,
            m,
            r,
            s,
            seeds,
        } => check(ids, n, k, m, r, s, seeds),
        Command::Oracle { n, r } => oracle(*n, *r, cap),
        Command::Constructions {
            ids,
            n,
            k,
            r,
            s,
            trace,
        } => constructions(ids, n, k, r, s, *trace, cap),
        Command::Sequences { which, n, r } => sequences(*which, *n, *r),
    });
    match result {
        Ok(out) => Outcome {
            code: if out.passed { EXIT_PASS } else { EXIT_FAIL },
            stdout: out.render(cli.format),
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: EXIT_USAGE,
            stderr: format!("error: {msg}\n"),
            ..Default::default()
        },
        Err(Failure::Cap(msg)) => Outcome {
            code: EXIT_CAP,
            stderr: format!("error: {msg} (raise it with --cap-override)\n"),
            ..Default::default()
        },
    }
}

fn table(n_max: u32, r: u32, ints: Option<(i64, i64)>) -> Output {
    let weights = match ints {
        Some((a, b)) => Weights::ints(a, b),
        None => Weights::ab(),
    };
    let t = LahTriangle::build(weights, r, n_max);
    let mut out = Output::new(&["n", "k", "r", "value"]);
    for n in 0..=n_max {
        let mut cells = Vec::new();
        for (k, cell) in t.row(n).iter().enumerate() {
            let value = match cell.as_constant() {
                Some(c) if ints.is_some() => big(&c),
                _ => json!(cell.to_string()),
            };
            out.records.push(
                json!({ "n": n, "k": k, "r": r, "value": value })
                    .as_object()
                    .unwrap()
                    .clone(),
            );
            cells.push(cell.to_string());
        }
        let sep = if ints.is_some() { " " } else { " | " };
        out.text.push(cells.join(sep));
    }
    out
}

fn parse_ids<T: Copy>(
    names: &[String],
    all: &[T],
    parse: fn(&str) -> Option<T>,
    what: &str,
) -> Result<Vec<T>, Failure> {
    if names.is_empty() {
        return Ok(all.to_vec());
    }
    names
        .iter()
        .map(|s| parse(s).ok_or_else(|| Failure::Usage(format!("unknown {what} {s:?}"))))
        .collect()
}

fn report_record(rep: &CheckReport, status: &str) -> Value {
    let p = rep.params;
    let mut v = json!({
        "identity": rep.identity.name(),
        "n": p.n, "k": p.k, "m": p.m, "r": p.r, "s": p.s,
        "status": status,
    });
    let obj = v.as_object_mut().unwrap();
    if let Some(seed) = p.seed {
        obj.insert("seed".into(), json!(seed));
    }
    if let Some((a, b)) = p.weights {
        obj.insert("a".into(), json!(a));
        obj.insert("b".into(), json!(b));
    }
    if let (Some(l), Some(r)) = (&rep.lhs, &rep.rhs) {
        obj.insert("lhs".into(), json!(l.to_string()));
        obj.insert("rhs".into(), json!(r.to_string()));
    }
    v
}

#[allow(clippy::too_many_arguments)]
fn check(
    ids: &[String],
    n: &RangeInclusive<u32>,
    k: &Option<RangeInclusive<u32>>,
    m: &RangeInclusive<u32>,
    r: &RangeInclusive<u32>,
    s: &RangeInclusive<u32>,
    seeds: &[u64],
) -> Result<Output, Failure> {
    let ids = parse_ids(ids, &IdentityId::ALL, IdentityId::parse, "identity")?;
    let spec = SweepSpec {
        ids,
        n: n.clone(),
        k: k.clone(),
        m: m.clone(),
        r: r.clone(),
        s: s.clone(),
        seeds: seeds.to_vec(),
        ..Default::default()
    };
    let verifier = Verifier::new(spec.depth());
    let result = sweep_with(&verifier, &spec, Execution::default());
    let mut rows: Vec<(IdentityId, _, Value, String)> = Vec::new();
    for rep in &result.reports {
        let mut text = format!("{} {} {}", rep.identity, rep.params, status(rep.passed));
        if let (Some(l), Some(r)) = (&rep.lhs, &rep.rhs) {
            let _ = write!(text, "\n  lhs: {l}\n  rhs: {r}");
        }
        rows.push((
            rep.identity,
            rep.params,
            report_record(rep, status(rep.passed)),
            text,
        ));
    }
    for (id, p) in &result.skipped {
        let rep = CheckReport {
            identity: *id,
            params: *p,
            passed: true,
            lhs: None,
            rhs: None,
        };
        rows.push((
            *id,
            *p,
            report_record(&rep, "SKIP"),
            format!("{id} {p} SKIP"),
        ));
    }
    rows.sort_by_key(|row| (row.0, row.1));
    let mut out = Output::new(&["identity", "n", "k", "m", "r", "s", "status"]);
    out.passed = result.all_passed();
    for (_, _, rec, text) in rows {
        out.push(rec, text);
    }
    Ok(out)
}

fn oracle(n_max: u32, r_max: u32, cap: u32) -> Result<Output, Failure> {
    if n_max + r_max > cap {
        return Err(Error::SizeLimit {
            size: n_max + r_max,
            cap,
        }
        .into());
    }
    let cells: Vec<(u32, u32, u32)> = (0..=r_max)
        .flat_map(|r| (0..=n_max).flat_map(move |n| (0..=n).map(move |k| (n, k, r))))
        .collect();
    let triangles: Vec<LahTriangle> = (0..=r_max)
        .map(|r| LahTriangle::build(Weights::ab(), r, n_max))
        .collect();
    let verdicts = exec::map(Execution::default(), cells.clone(), |(n, k, r)| {
        distributions::oracle_g_capped(n, k, r, cap)
            .map(|g| &g == triangles[r as usize].get(n as i64, k as i64))
    });
    let mut out = Output::new(&["identity", "n", "k", "m", "r", "s", "status"]);
    for ((n, k, r), verdict) in cells.iter().zip(verdicts) {
        let ok = verdict?;
        out.passed &= ok;
        out.push(
            json!({ "identity": "ORACLE", "n": n, "k": k, "m": null, "r": r, "s": null, "status": status(ok) }),
            format!("ORACLE n={n} k={k} r={r} {}", status(ok)),
        );
    }
    out.text.push(format!("compared {} cells", cells.len()));
    Ok(out)
}

fn constructions(
    ids: &[String],
    n: &RangeInclusive<u32>,
    k: &Option<RangeInclusive<u32>>,
    r: &RangeInclusive<u32>,
    s: &RangeInclusive<u32>,
    trace: bool,
    cap: u32,
) -> Result<Output, Failure> {
    let ids = parse_ids(
        ids,
        &ConstructionId::ALL,
        ConstructionId::parse,
        "construction",
    )?;
    let mut tuples = Vec::new();
    for &id in &ids {
        for nn in n.clone() {
            let ks = match k {
                Some(k) => *k.start()..=(*k.end()).min(nn),
                None => 0..=nn,
            };
            for kk in ks {
                for rr in r.clone() {
                    for ss in s.clone() {
                        if id.applies(rr, ss) {
                            tuples.push((id, nn, kk, rr, ss));
                        }
                    }
                }
            }
        }
    }
    tuples.sort();
    let reports = exec::map(Execution::default(), tuples, |(id, n, k, r, s)| {
        let rep = bijections::verify_construction_capped(id, n, k, r, s, cap)?;
        let lines = if trace {
            bijections::trace(id, n, k, r, s)?
        } else {
            Vec::new()
        };
        Ok::<_, Error>((rep, lines))
    });
    let mut out = Output::new(&[
        "construction",
        "n",
        "k",
        "r",
        "s",
        "total_pairs",
        "fixed_points",
        "signed_sum",
        "closed_form",
        "involutive",
        "sign_reversing",
        "status",
    ]);
    for outcome in reports {
        let (rep, lines) = outcome?;
        out.passed &= rep.passed;
        let mut rec = json!({
            "construction": rep.construction.name(),
            "n": rep.n, "k": rep.k, "r": rep.r, "s": rep.s,
            "total_pairs": rep.total_pairs,
            "fixed_points": rep.fixed_points,
            "signed_sum": big(&rep.signed_sum),
            "closed_form": big(&rep.closed_form),
            "involutive": rep.involutive,
            "sign_reversing": rep.sign_reversing,
            "status": status(rep.passed),
        });
        let obj = rec.as_object_mut().unwrap();
        if let Some(m) = rep.survivors_match {
            obj.insert("survivors_match".into(), json!(m));
        }
        if let Some(b) = &rep.bijection {
            obj.insert(
                "bijection".into(),
                json!({
                    "injective": b.injective,
                    "round_trip": b.round_trip,
                    "image_count": b.image_count,
                    "target_count": b.target_count,
                }),
            );
        }
        if trace {
            obj.insert("trace".into(), json!(lines));
        }
        let mut text = format!(
            "{} n={} k={} r={} s={} {} pairs={} fixed={} signed_sum={} closed_form={}",
            rep.construction,
            rep.n,
            rep.k,
            rep.r,
            rep.s,
            status(rep.passed),
            rep.total_pairs,
            rep.fixed_points,
            rep.signed_sum,
            rep.closed_form
        );
        if let Some(b) = &rep.bijection {
            let _ = write!(
                text,
                " injective={} round_trip={} images={}",
                b.injective, b.round_trip, b.image_count
            );
        }
        for line in &lines {
            let _ = write!(text, "\n  {line}");
        }
        out.push(rec, text);
    }
    Ok(out)
}

fn sequences(which: Sequence, n_max: u32, r: u32) -> Result<Output, Failure> {
    if n_max > fixtures::MAX_N {
        return Err(Failure::Usage(format!(
            "--n must be at most {}",
            fixtures::MAX_N
        )));
    }
    let (name, r, (a, b), fixture): (&str, u32, (i64, i64), Option<&[u64]>) = match which {
        Sequence::Bell => ("A000110", 0, (0, 1), Some(&fixtures::A000110)),
        Sequence::A000262 => ("A000262", 0, (1, 1), Some(&fixtures::A000262)),
        Sequence::RBell => ("R_BELL", r, (0, 1), None),
    };
    let mut out = Output::new(&["sequence", "n", "r", "value", "status"]);
    for n in 0..=n_max {
        let value: BigInt = (0..=n).map(|k| g_eval(n, k, r, a, b)).sum();
        let verdict = fixture.map(|f| BigInt::from(f[n as usize]) == value);
        out.passed &= verdict != Some(false);
        let st = verdict.map_or("-", status);
        out.push(
            json!({ "sequence": name, "n": n, "r": r, "value": big(&value), "status": st }),
            format!("{name} n={n} r={r} {value} {st}"),
        );
    }
    Ok(out)
}
