use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde_json::json;

use superck_core::algebra::{BlockId, Sig, Signature, SuperElement as E};
use superck_core::cauchy::{cauchy_kernel, cauchy_kernel_series, verify_pwdck, KernelRepr};
use superck_core::ck::{ck_extend, CkCase, Param};
use superck_core::integration::{berezin, normalized_integral, sphere_integral, Weight};
use superck_core::ops::{dirac, euler, laplacian, partial, Var};
use superck_core::planewave::pw_decomposition;
use superck_core::report::{CommandEcho, Report};
use superck_core::suites::{run_suite, Grid};
use superck_core::text::{parse, render};
use superck_core::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Verb {
    Eval,
    Diff,
    Integrate,
    CkExtend,
    Planewave,
    Cauchy,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Op {
    Dirac,
    Laplacian,
    Euler,
    Partial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Pizzetti,
    Berezin,
    Normalized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KernelOut {
    Fraction,
    Series,
    Pwdck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GridSize {
    Small,
    Default,
}

/// Exact Clifford analysis in superspace.
///
/// The signature has a block x of dimension (m|2n) and, when p + q > 0, a parameter
/// block y of dimension (p|2q). Set SUPERCK_THREADS to cap the worker threads.
#[derive(Parser, Debug)]
#[command(name = "superck", version)]
struct Cli {
    verb: Verb,
    /// Bosonic dimension of x (default 3 outside verify).
    #[arg(long)]
    m: Option<usize>,
    /// Half the fermionic dimension of x.
    #[arg(long)]
    n: Option<usize>,
    /// Bosonic dimension of y.
    #[arg(long)]
    p: Option<usize>,
    /// Half the fermionic dimension of y.
    #[arg(long)]
    q: Option<usize>,
    /// Expression in the block variables, e.g. "x1^2 - xg1*xg2".
    #[arg(long)]
    expr: Option<String>,
    /// Suite for verify: algebra, operators, sl2, pizzetti, funkhecke, ck, planewave, cauchy or all.
    #[arg(long)]
    suite: Option<String>,
    /// Truncation degree or maximal random degree.
    #[arg(long, default_value_t = 4)]
    degree: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Random inputs per signature in verify.
    #[arg(long)]
    cases: Option<usize>,
    #[arg(long, value_enum, default_value_t = GridSize::Default)]
    grid: GridSize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Operator for diff.
    #[arg(long, value_enum, default_value_t = Op::Dirac)]
    op: Op,
    /// Variable for `diff --op partial`: x0, x<i> or xg<i> (any block name in place of x).
    #[arg(long)]
    var: Option<String>,
    /// Block the operator or integral acts on.
    #[arg(long, default_value = "x")]
    block: String,
    #[arg(long, value_enum, default_value_t = Method::Pizzetti)]
    method: Method,
    /// Use x0 instead of the block y as the CK parameter.
    #[arg(long)]
    x0: bool,
    /// Free datum F_{2k+1} for CK-extensions with M = -2k.
    #[arg(long)]
    odd: Option<String>,
    /// Output of the cauchy verb.
    #[arg(long, value_enum, default_value_t = KernelOut::Fraction)]
    kernel: KernelOut,
    /// Include wall time in reports. Off by default so reports are byte-stable.
    #[arg(long)]
    timing: bool,
}

/// What a verb produced: a JSON value, its text form and whether it counts as passing.
struct Output {
    json: serde_json::Value,
    text: String,
    passed: bool,
}

impl Output {
    fn element(verb: &str, e: &E) -> Output {
        let text = render(e);
        Output { json: json!({ "verb": verb, "result": text }), text, passed: true }
    }
}

fn dims(cli: &Cli) -> (usize, usize, usize, usize) {
    (cli.m.unwrap_or(3), cli.n.unwrap_or(0), cli.p.unwrap_or(0), cli.q.unwrap_or(0))
}

fn signature(cli: &Cli, with_w: bool) -> Result<Sig> {
    let (m, n, p, q) = dims(cli);
    let mut b = Signature::builder().block("x", m, n);
    if with_w {
        b = b.block_sharing("w", "x");
    }
    if p + q > 0 {
        b = b.block("y", p, q);
    }
    Ok(b.build()?)
}

fn expr(cli: &Cli, sig: &Sig) -> Result<E> {
    let s = cli.expr.as_deref().ok_or_else(|| Error::Domain("--expr is required for this verb".into()))?;
    parse(sig, s)
}

fn parse_var(sig: &Sig, s: &str) -> Result<Var> {
    if s == "x0" {
        return Ok(Var::X0);
    }
    let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(|| Error::Domain(format!("bad variable {s:?}")))?;
    let (head, idx) = s.split_at(split);
    let i: usize = idx.parse().map_err(|_| Error::Domain(format!("bad variable {s:?}")))?;
    if let Ok(b) = sig.block_id(head) {
        return Ok(Var::Bos(b, i));
    }
    match head.strip_suffix('g').map(|h| sig.block_id(h)) {
        Some(Ok(b)) => Ok(Var::Ferm(b, i)),
        _ => Err(Error::Domain(format!("unknown variable {s:?}"))),
    }
}

fn ck_param(cli: &Cli, sig: &Sig) -> Result<Param> {
    if cli.x0 {
        return Ok(Param::X0);
    }
    sig.block_id("y")
        .map(Param::Block)
        .map_err(|_| Error::Domain("a parameter block needs p + q > 0, or pass --x0".into()))
}

fn odd_datum(cli: &Cli, sig: &Sig) -> Result<Option<E>> {
    cli.odd.as_deref().map(|s| parse(sig, s)).transpose()
}

fn run_verb(cli: &Cli) -> Result<Output> {
    match cli.verb {
        Verb::Eval => {
            let sig = signature(cli, false)?;
            Ok(Output::element("eval", &expr(cli, &sig)?))
        }
        Verb::Diff => {
            let sig = signature(cli, false)?;
            let f = expr(cli, &sig)?;
            let b: BlockId = sig.block_id(&cli.block)?;
            let r = match cli.op {
                Op::Dirac => dirac(&f, b),
                Op::Laplacian => laplacian(&f, b),
                Op::Euler => euler(&f, b),
                Op::Partial => {
                    let v = cli.var.as_deref().ok_or_else(|| Error::Domain("--op partial needs --var".into()))?;
                    partial(&f, parse_var(&sig, v)?)
                }
            };
            Ok(Output::element("diff", &r))
        }
        Verb::Integrate => {
            let sig = signature(cli, false)?;
            let f = expr(cli, &sig)?;
            let b = sig.block_id(&cli.block)?;
            let r = match cli.method {
                Method::Pizzetti => sphere_integral(&f, b)?,
                Method::Berezin => berezin(&f, b),
                Method::Normalized => normalized_integral(&f, b, &Weight::Unit)?,
            };
            Ok(Output::element("integrate", &r))
        }
        Verb::CkExtend => {
            let sig = signature(cli, false)?;
            let f0 = expr(cli, &sig)?;
            let param = ck_param(cli, &sig)?;
            let s = ck_extend(&f0, 0, param, odd_datum(cli, &sig)?.as_ref())?;
            let j = s.to_json(&sig);
            let mut text = format!("case {} in block {}\n", s.case.label(), j.block);
            for t in &j.terms {
                text.push_str(&format!("F_{} = {}\n", t.j, t.element));
            }
            Ok(Output { json: serde_json::to_value(&j).expect("series serializes"), text, passed: true })
        }
        Verb::Planewave => {
            let sig = signature(cli, true)?;
            let f0 = expr(cli, &sig)?;
            let param = ck_param(cli, &sig)?;
            let r = pw_decomposition(&f0, 0, 1, param, odd_datum(cli, &sig)?.as_ref())?;
            let case = CkCase::of(&sig, 0);
            let text = render(&r);
            Ok(Output { json: json!({ "verb": "planewave", "case": case, "result": text }), text, passed: true })
        }
        Verb::Cauchy => {
            let (m, n, _, _) = dims(cli);
            match cli.kernel {
                KernelOut::Fraction => {
                    let k = cauchy_kernel(m, n)?;
                    let text = render(&k.element());
                    Ok(Output {
                        json: json!({ "verb": "cauchy", "m": m, "n": n, "super_dim": k.super_dim, "fraction": text }),
                        text,
                        passed: true,
                    })
                }
                KernelOut::Series => {
                    let k = cauchy_kernel_series(m, n, cli.degree)?;
                    let KernelRepr::Series(s) = &k.repr else { unreachable!("series requested") };
                    let j = s.to_json(&k.sig);
                    let text = j.terms.iter().map(|t| format!("F_{} = {}\n", t.j, t.element)).collect();
                    Ok(Output { json: serde_json::to_value(&j).expect("series serializes"), text, passed: true })
                }
                KernelOut::Pwdck => {
                    let r = verify_pwdck(m, n, cli.degree)?;
                    let passed = r.passed();
                    let (k, d) = (render(&r.kernel), render(&r.decomposition));
                    let text = format!(
                        "{:?} through degree {}: {}\nkernel        {k}\ndecomposition {d}\n",
                        r.case,
                        r.degree,
                        if passed { "equal" } else { "DIFFERENT" }
                    );
                    Ok(Output {
                        json: json!({ "verb": "cauchy", "m": m, "n": n, "case": r.case, "degree": r.degree,
                                      "passed": passed, "kernel": k, "decomposition": d }),
                        text,
                        passed,
                    })
                }
            }
        }
        Verb::Verify => {
            let suite = cli.suite.clone().unwrap_or_else(|| "all".into());
            let base = match cli.grid {
                GridSize::Small => Grid::small(),
                GridSize::Default => Grid::default(),
            };
            let mut grid = Grid::pinned(cli.m, cli.n, cli.p, cli.q);
            if cli.m.is_none() {
                grid.ms = base.ms;
            }
            if cli.n.is_none() {
                grid.ns = base.ns;
            }
            if cli.p.is_none() {
                grid.ps = base.ps;
            }
            if cli.q.is_none() {
                grid.qs = base.qs;
            }
            grid.degree = cli.degree;
            grid.seed = cli.seed;
            grid.cases = cli.cases.unwrap_or(base.cases);
            let start = Instant::now();
            let checks = run_suite(&suite, &grid)?;
            let echo = CommandEcho {
                verb: "verify".into(),
                suite: Some(suite),
                grid: Some(match cli.grid {
                    GridSize::Small => "small".into(),
                    GridSize::Default => "default".into(),
                }),
                m: cli.m,
                n: cli.n,
                p: cli.p,
                q: cli.q,
                degree: grid.degree,
                seed: grid.seed,
                cases: grid.cases,
            };
            let mut report = Report::new(echo, checks);
            if cli.timing {
                report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
            }
            Ok(Output {
                json: serde_json::to_value(&report).expect("report serializes"),
                text: report.to_text(),
                passed: report.all_passed(),
            })
        }
    }
}

fn init_threads() {
    let Ok(v) = std::env::var("SUPERCK_THREADS") else { return };
    match v.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            // fails only if a pool already exists, which cannot happen this early
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => eprintln!("superck: ignoring SUPERCK_THREADS={v:?}, expected a positive integer"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    match run_verb(&cli) {
        Ok(out) => {
            let mut body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("json"),
                Format::Text => out.text,
            };
            if !body.ends_with('\n') {
                body.push('\n');
            }
            // a closed pipe (e.g. `| head`) is not an error of the computation
            if let Err(e) = std::io::stdout().lock().write_all(body.as_bytes()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("superck: {e}");
                    return ExitCode::from(2);
                }
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("superck: {e}");
            ExitCode::from(2)
        }
    }
}
