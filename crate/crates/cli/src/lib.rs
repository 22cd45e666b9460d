//! Command implementations behind the `riordan` binary.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use riordan::exponential::{beta_sequence, verify_reduced_recurrence, ExpRiordanArray};
use riordan::expr::{eval_expr, parse_expr, to_laurent, Expr};
use riordan::families::{list_families, make_family, ArrayKind, Params};
use riordan::fps::{Rat, Series};
use riordan::matrix::TriMatrix;
use riordan::oeis::{builtin_fixtures, check_family_tags, load_fixtures, oeis_check, FixtureSet};
use riordan::riordan::{
    b_function_from_f, verify_a_recurrence, verify_b_recurrence, verify_z_recurrence, RiordanArray,
};
use riordan::theorems::{
    b_function_via_egf_theorem, b_function_via_ogf_theorem, companion_from_gamma, pseudo_conjugate_array,
    q_aerate, GeneratingKind,
};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const PARSE_ERROR: i32 = 2;
    pub const PRECONDITION: i32 = 3;
}

/// Environment variable that overrides the fixture file.
pub const FIXTURES_ENV: &str = "RIORDAN_FIXTURES";

#[derive(Debug, Parser)]
#[command(name = "riordan", version, about = "Riordan array pseudo-involutions and their B-functions")]
pub struct Cli {
    /// Truncation order of every series.
    #[arg(short = 'n', long, default_value_t = 24, global = true)]
    pub order: usize,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    #[default]
    Ogf,
    Egf,
}

/// Selects a pair `(g, f)` by family name or by expressions.
#[derive(Clone, Debug, Default, Args)]
pub struct PairArgs {
    /// Catalog family name.
    #[arg(long)]
    pub family: Option<String>,
    /// Family parameter `key=value`; repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub params: Vec<String>,
    /// First column generating function.
    #[arg(long)]
    pub g: Option<String>,
    /// Multiplier function.
    #[arg(long)]
    pub f: Option<String>,
    /// Ordinary or exponential array, for expression pairs.
    #[arg(long, value_enum, default_value_t = Kind::Ogf)]
    pub kind: Kind,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the leading block of an array.
    Show {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 6)]
        size: usize,
        /// Print the reduced array of an exponential pair.
        #[arg(long)]
        reduced: bool,
    },
    /// Check the pseudo-involution property and the A, Z and B recurrences.
    Verify {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 10)]
        size: usize,
    },
    /// Compute the B-function of a pseudo-involutory `f`.
    Bfun {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Pseudo-conjugate a pair by `h`.
    Conjugate {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        h: String,
        #[arg(long, default_value_t = 6)]
        size: usize,
    },
    /// Aerate a pseudo-involution `(g, z g^k)` by `z^q`.
    Aerate {
        #[arg(long)]
        g: String,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 6)]
        size: usize,
    },
    /// Analyze `gamma`: darga, companion and B-function.
    Gamma {
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value_t = Kind::Ogf)]
        kind: Kind,
    },
    /// List catalog families.
    Families,
    /// Compare series with integer sequence fixtures.
    Oeis {
        #[arg(long)]
        family: Option<String>,
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        /// Series to compare with `--id`.
        #[arg(long)]
        expr: Option<String>,
        #[arg(long)]
        id: Option<String>,
        /// Term `a(n)` is compared with coefficient `n + shift`.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
        /// Compare `n!` times the coefficients.
        #[arg(long)]
        egf: bool,
        /// Fixture file; defaults to the bundled set.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

/// A failed command with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn parse_fail(msg: impl ToString) -> Failure {
    Failure {
        code: exit::PARSE_ERROR,
        message: msg.to_string(),
    }
}

fn precondition(msg: impl ToString) -> Failure {
    Failure {
        code: exit::PRECONDITION,
        message: msg.to_string(),
    }
}

/// Output of a successful or verification-failing command.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let n = cli.order;
    let fmt = cli.format;
    match &cli.command {
        Command::Show { pair, size, reduced } => show(pair, *size, *reduced, n, fmt),
        Command::Verify { pair, size } => verify(pair, *size, n, fmt),
        Command::Bfun { pair } => bfun(pair, n, fmt),
        Command::Conjugate { pair, h, size } => conjugate(pair, h, *size, n, fmt),
        Command::Aerate { g, k, q, size } => aerate(g, *k, *q, *size, n, fmt),
        Command::Gamma { expr, kind } => gamma(expr, *kind, n, fmt),
        Command::Families => Ok(families(fmt)),
        Command::Oeis {
            family,
            params,
            expr,
            id,
            shift,
            egf,
            fixtures,
        } => oeis(family.as_deref(), params, expr.as_deref(), id.as_deref(), *shift, *egf, fixtures.as_ref(), n, fmt),
    }
}

fn parse(text: &str) -> Result<Expr, Failure> {
    parse_expr(text).map_err(|e| parse_fail(format!("{e}\n  {text}\n  {}^", " ".repeat(e.offset))))
}

fn eval(text: &str, order: usize) -> Result<Series, Failure> {
    let ast = parse(text)?;
    eval_expr(&ast, order).map_err(precondition)
}

fn parse_params(raw: &[String]) -> Result<Params, Failure> {
    let mut out = Params::new();
    for item in raw {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| parse_fail(format!("parameter `{item}` is not of the form key=value")))?;
        let value: Rat = v
            .trim()
            .parse()
            .map_err(|_| parse_fail(format!("parameter `{k}` has a non-rational value `{v}`")))?;
        out.insert(k.trim().to_string(), value);
    }
    Ok(out)
}

/// A resolved pair with a display name.
struct Pair {
    name: String,
    kind: ArrayKind,
    g: Series,
    f: Series,
}

fn resolve_pair(args: &PairArgs, order: usize) -> Result<Pair, Failure> {
    match (&args.family, &args.g, &args.f) {
        (Some(name), None, None) => {
            let inst = make_family(name, &parse_params(&args.params)?, order).map_err(precondition)?;
            Ok(Pair {
                name: name.clone(),
                kind: inst.kind,
                g: inst.g,
                f: inst.f,
            })
        }
        (None, g, Some(f)) => {
            let gs = match g {
                Some(g) => eval(g, order)?,
                None => Series::one(order),
            };
            let fs = eval(f, order)?;
            let kind = match args.kind {
                Kind::Ogf => ArrayKind::Ordinary,
                Kind::Egf => ArrayKind::Exponential,
            };
            Ok(Pair {
                name: format!("({}, {})", g.as_deref().unwrap_or("1"), f),
                kind,
                g: gs,
                f: fs,
            })
        }
        _ => Err(precondition("give either --family or --f (with an optional --g)")),
    }
}

fn series_strings(s: &Series) -> Vec<String> {
    s.coeffs().iter().map(ToString::to_string).collect()
}

fn rats_strings(s: &[Rat]) -> Vec<String> {
    s.iter().map(ToString::to_string).collect()
}

fn render_matrix(name: &str, m: &TriMatrix, fmt: Format) -> String {
    match fmt {
        Format::Text => format!("{name}\n{m}"),
        Format::Csv => {
            let mut out = String::new();
            for row in m.rows() {
                let _ = writeln!(out, "{}", rats_strings(row).join(","));
            }
            out
        }
        Format::Json => {
            let rows: Vec<Vec<String>> = m.rows().iter().map(|r| rats_strings(r)).collect();
            json!({"name": name, "size": m.size(), "rows": rows}).to_string() + "\n"
        }
    }
}

/// Renders `key: value` records; values are strings or lists of strings.
fn render_record(fields: &[(&str, Value)], fmt: Format) -> String {
    let flat = |v: &Value| match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items
            .iter()
            .map(|i| i.as_str().map(str::to_string).unwrap_or_else(|| i.to_string()))
            .collect::<Vec<_>>()
            .join(", "),
        other => other.to_string(),
    };
    match fmt {
        Format::Text => fields.iter().map(|(k, v)| format!("{k}: {}\n", flat(v))).collect(),
        Format::Csv => fields
            .iter()
            .map(|(k, v)| format!("{k},\"{}\"\n", flat(v).replace('"', "\"\"")))
            .collect(),
        Format::Json => {
            let obj: serde_json::Map<String, Value> = fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
            Value::Object(obj).to_string() + "\n"
        }
    }
}

fn show(pair: &PairArgs, size: usize, reduced: bool, n: usize, fmt: Format) -> Result<Outcome, Failure> {
    let p = resolve_pair(pair, n.max(size))?;
    let m = match p.kind {
        ArrayKind::Ordinary => {
            if reduced {
                return Err(precondition("--reduced needs an exponential pair"));
            }
            RiordanArray::new(p.g, p.f)
                .and_then(|a| a.build_matrix(size))
                .map_err(precondition)?
        }
        ArrayKind::Exponential => {
            let a = ExpRiordanArray::new(p.g, p.f).map_err(precondition)?;
            if reduced {
                a.reduce(size).map_err(precondition)?.matrix().clone()
            } else {
                a.build_exp_matrix(size).map_err(precondition)?
            }
        }
    };
    let name = if reduced { format!("red {}", p.name) } else { p.name };
    Ok(Outcome {
        code: exit::OK,
        stdout: render_matrix(&name, &m, fmt),
    })
}

fn cells(report_failures: &[(usize, usize)]) -> Value {
    match report_failures.first() {
        Some((r, c)) => json!(format!("fail at ({r}, {c})")),
        None => json!("pass"),
    }
}

fn verify(pair: &PairArgs, size: usize, n: usize, fmt: Format) -> Result<Outcome, Failure> {
    let p = resolve_pair(pair, n.max(2 * size + 2))?;
    let mut fields: Vec<(&str, Value)> = vec![("array", json!(p.name))];
    let mut ok = true;
    match p.kind {
        ArrayKind::Ordinary => {
            let a = RiordanArray::new(p.g.clone(), p.f.clone()).map_err(precondition)?;
            let pi = a.is_pseudo_involution(n);
            ok &= pi.holds;
            fields.push((
                "pseudo_involution",
                match pi.first_failure {
                    None => json!(format!("pass (order {})", pi.checked_order)),
                    Some((id, k)) => json!(format!("fail: {id:?} at order {k}")),
                },
            ));
            let m = a.build_matrix(size).map_err(precondition)?;
            match a.a_sequence() {
                Ok(aseq) => {
                    let r = verify_a_recurrence(&m, &aseq);
                    ok &= r.passed();
                    fields.push(("a_recurrence", cells(&r.failures)));
                }
                Err(e) => fields.push(("a_recurrence", json!(format!("unavailable: {e}")))),
            }
            match a.z_sequence() {
                Ok(zseq) => {
                    let r = verify_z_recurrence(&m, &zseq);
                    ok &= r.passed();
                    fields.push(("z_recurrence", cells(&r.failures)));
                }
                Err(e) => fields.push(("z_recurrence", json!(format!("unavailable: {e}")))),
            }
            if pi.holds {
                let b = b_function_from_f(&p.f).map_err(precondition)?;
                let r = verify_b_recurrence(&m, b.b.coeffs());
                ok &= r.passed() && b.is_consistent();
                fields.push(("b_recurrence", cells(&r.failures)));
                fields.push(("b", json!(series_strings(&b.b.truncate(size)))));
            }
        }
        ArrayKind::Exponential => {
            let a = ExpRiordanArray::new(p.g.clone(), p.f.clone()).map_err(precondition)?;
            let pi = a.is_pseudo_involution(n);
            ok &= pi.holds;
            fields.push((
                "pseudo_involution",
                match pi.first_failure {
                    None => json!(format!("pass (order {})", pi.checked_order)),
                    Some((id, k)) => json!(format!("fail: {id:?} at order {k}")),
                },
            ));
            let twist = a.sign_twist_mismatch(size).map_err(precondition)?;
            ok &= twist.is_none();
            fields.push(("sign_twisted_inverse", cells(&twist.into_iter().collect::<Vec<_>>())));
            if pi.holds {
                let beta = beta_sequence(&p.f).map_err(precondition)?;
                let red = a.reduce(size).map_err(precondition)?;
                let r = verify_reduced_recurrence(&red, &beta.beta);
                ok &= r.passed() && beta.residual_orders.is_empty();
                fields.push(("reduced_recurrence", cells(&r.failures)));
                fields.push(("beta", json!(rats_strings(&beta.beta[..beta.beta.len().min(size)]))));
            }
        }
    }
    fields.push(("result", json!(if ok { "pass" } else { "fail" })));
    Ok(Outcome {
        code: if ok { exit::OK } else { exit::VERIFY_FAILED },
        stdout: render_record(&fields, fmt),
    })
}

fn bfun(pair: &PairArgs, n: usize, fmt: Format) -> Result<Outcome, Failure> {
    let p = resolve_pair(pair, n)?;
    let report = b_function_from_f(&p.f).map_err(precondition)?;
    let mut fields: Vec<(&str, Value)> = vec![
        ("f", json!(pair.f.clone().unwrap_or(p.name))),
        ("b", json!(series_strings(&report.b))),
        ("verified_order", json!(report.verified_order.to_string())),
        (
            "residual_orders",
            json!(report.residual_orders.iter().map(ToString::to_string).collect::<Vec<_>>()),
        ),
    ];
    if p.kind == ArrayKind::Exponential {
        let beta = beta_sequence(&p.f).map_err(precondition)?;
        fields.push(("beta", json!(rats_strings(&beta.beta))));
    }
    let ok = report.is_consistent();
    fields.push(("result", json!(if ok { "pass" } else { "fail" })));
    Ok(Outcome {
        code: if ok { exit::OK } else { exit::VERIFY_FAILED },
        stdout: render_record(&fields, fmt),
    })
}

fn conjugate(pair: &PairArgs, h: &str, size: usize, n: usize, fmt: Format) -> Result<Outcome, Failure> {
    let p = resolve_pair(pair, n.max(size))?;
    let hs = eval(h, n.max(size))?;
    let a = RiordanArray::new(p.g, p.f).map_err(precondition)?;
    let c = pseudo_conjugate_array(&a, &hs).map_err(precondition)?;
    let m = c.build_matrix(size).map_err(precondition)?;
    let name = format!("{} conjugated by {h}", p.name);
    let holds = c.is_pseudo_involution(n).holds;
    let mut out = render_matrix(&name, &m, fmt);
    if fmt == Format::Text {
        let _ = writeln!(out, "g: {}", c.g().truncate(size));
        let _ = writeln!(out, "f: {}", c.f().truncate(size));
        let _ = writeln!(out, "pseudo_involution: {}", if holds { "pass" } else { "fail" });
    }
    Ok(Outcome {
        code: if holds { exit::OK } else { exit::VERIFY_FAILED },
        stdout: out,
    })
}

fn aerate(g: &str, k: i64, q: usize, size: usize, n: usize, fmt: Format) -> Result<Outcome, Failure> {
    let gs = eval(g, n)?;
    let arr = q_aerate(&gs, k, q).map_err(precondition)?;
    let m = arr.build_matrix(size).map_err(precondition)?;
    Ok(Outcome {
        code: exit::OK,
        stdout: render_matrix(&format!("({g}, z {g}^{k}) aerated by z^{q}"), &m, fmt),
    })
}

fn gamma(expr: &str, kind: Kind, n: usize, fmt: Format) -> Result<Outcome, Failure> {
    let ast = parse(expr)?;
    let gamma = to_laurent(&ast).map_err(precondition)?;
    let gk = match kind {
        Kind::Ogf => GeneratingKind::Ordinary,
        Kind::Egf => GeneratingKind::Exponential,
    };
    let work = 2 * n + 2;
    let comp = companion_from_gamma(&gamma, gk, work).map_err(precondition)?;
    let shortcut_name = match (comp.darga, kind) {
        (Some(d), Kind::Ogf) => format!("z g^{}", d - 1),
        (Some(d), Kind::Egf) => format!("z g^{d}"),
        (None, _) => "none (gamma is not a generalized palindrome)".into(),
    };
    let shortcut_ok = comp.f_shortcut.as_ref().map(|s| s.agrees_with(&comp.f));
    let mut fields: Vec<(&str, Value)> = vec![
        ("gamma", json!(ast.to_string())),
        ("darga", json!(comp.darga.map_or("none".to_string(), |d| d.to_string()))),
        ("g", json!(series_strings(&comp.g.truncate(n)))),
        ("companion", json!(shortcut_name)),
        ("f", json!(series_strings(&comp.f.truncate(n)))),
    ];
    let mut ok = shortcut_ok.unwrap_or(true);
    if let Some(agree) = shortcut_ok {
        fields.push(("shortcut_agrees", json!(agree.to_string())));
    }
    let triangular = if comp.f.coeff(1) == &Rat::from_integer(1.into()) {
        b_function_from_f(&comp.f).ok()
    } else {
        None
    };
    let theorem = match kind {
        Kind::Ogf => b_function_via_ogf_theorem(&gamma, n),
        Kind::Egf => b_function_via_egf_theorem(&gamma, n),
    };
    let (path, b) = match (&theorem, &triangular) {
        (Ok(b), _) => (
            match kind {
                Kind::Ogf => "ordinary palindrome theorem",
                Kind::Egf => "exponential palindrome theorem",
            },
            Some(b.truncate(n)),
        ),
        (Err(_), Some(t)) => ("triangular solve of f - z = z f B(z f)", Some(t.b.truncate(n))),
        (Err(_), None) => ("none", None),
    };
    fields.push(("path", json!(path)));
    match &b {
        Some(b) => fields.push(("b", json!(series_strings(b)))),
        None => fields.push(("b", json!("unavailable"))),
    }
    if let (Ok(bt), Some(tri)) = (&theorem, &triangular) {
        let m = bt.order().min(tri.b.order()).min(n);
        let agree = bt.truncate(m).agrees_with(&tri.b.truncate(m));
        ok &= agree && tri.is_consistent();
        fields.push(("routes_agree", json!(agree.to_string())));
    }
    fields.push(("result", json!(if ok { "pass" } else { "fail" })));
    Ok(Outcome {
        code: if ok { exit::OK } else { exit::VERIFY_FAILED },
        stdout: render_record(&fields, fmt),
    })
}

fn families(fmt: Format) -> Outcome {
    let list = list_families();
    let stdout = match fmt {
        Format::Json => {
            let items: Vec<Value> = list
                .iter()
                .map(|d| {
                    let params: serde_json::Map<String, Value> =
                        d.params.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
                    json!({"name": d.name, "kind": d.kind.to_string(), "params": params, "summary": d.summary})
                })
                .collect();
            Value::Array(items).to_string() + "\n"
        }
        Format::Csv | Format::Text => {
            let sep = if fmt == Format::Csv { "," } else { "  " };
            list.iter()
                .map(|d| {
                    let params: Vec<String> = d.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    let summary = if fmt == Format::Csv {
                        format!("\"{}\"", d.summary.replace('"', "\"\""))
                    } else {
                        d.summary.to_string()
                    };
                    format!("{}{sep}{}{sep}{}{sep}{}\n", d.name, d.kind, params.join(" "), summary)
                })
                .collect()
        }
    };
    Outcome { code: exit::OK, stdout }
}

fn fixture_set(path: Option<&PathBuf>) -> Result<FixtureSet, Failure> {
    let from_env = std::env::var_os(FIXTURES_ENV).map(PathBuf::from);
    match path.cloned().or(from_env) {
        Some(p) => {
            let set = load_fixtures(&p).map_err(|e| parse_fail(e.to_string()))?;
            for w in &set.warnings {
                eprintln!("warning: {w}");
            }
            Ok(set)
        }
        None => Ok(builtin_fixtures()),
    }
}

#[allow(clippy::too_many_arguments)]
fn oeis(
    family: Option<&str>,
    params: &[String],
    expr: Option<&str>,
    id: Option<&str>,
    shift: i64,
    egf: bool,
    fixtures: Option<&PathBuf>,
    n: usize,
    fmt: Format,
) -> Result<Outcome, Failure> {
    let set = fixture_set(fixtures)?;
    let mut rows: Vec<(String, String, String)> = Vec::new();
    let mut ok = true;
    match (family, expr) {
        (_, Some(e)) => {
            let id = id.ok_or_else(|| precondition("--expr needs --id"))?;
            let fx = set.get(id).ok_or_else(|| precondition(format!("no fixture {id}")))?;
            let s = eval(e, n)?;
            let r = oeis_check(&s, fx, shift, egf);
            ok &= r.passed();
            rows.push((e.to_string(), id.to_string(), r.to_string()));
        }
        (Some(name), None) => {
            let inst = make_family(name, &parse_params(params)?, n).map_err(precondition)?;
            for c in check_family_tags(&inst, &set) {
                ok &= c.passed();
                let msg = c.report.map_or("fixture or series missing".into(), |r| r.to_string());
                rows.push((format!("{name}.{}", c.tag.target), c.tag.id, msg));
            }
        }
        (None, None) => {
            for d in list_families() {
                let inst = make_family(d.name, &Params::new(), n).map_err(precondition)?;
                for c in check_family_tags(&inst, &set) {
                    ok &= c.passed();
                    let msg = c.report.map_or("fixture or series missing".into(), |r| r.to_string());
                    rows.push((format!("{}.{}", d.name, c.tag.target), c.tag.id, msg));
                }
            }
        }
    }
    let stdout = match fmt {
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(s, i, r)| json!({"series": s, "id": i, "report": r}))
                .collect();
            json!({"checks": items, "result": if ok { "pass" } else { "fail" }}).to_string() + "\n"
        }
        Format::Csv => rows.iter().map(|(s, i, r)| format!("{s},{i},\"{r}\"\n")).collect(),
        Format::Text => {
            let mut out: String = rows.iter().map(|(s, _, r)| format!("{s}: {r}\n")).collect();
            let _ = writeln!(out, "result: {}", if ok { "pass" } else { "fail" });
            out
        }
    };
    Ok(Outcome {
        code: if ok { exit::OK } else { exit::VERIFY_FAILED },
        stdout,
    })
}
