//! The `klr` command line: argument types and a `run` that returns output instead of printing.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::abacus::{
    antigravity_bound, antigravity_survivors, conf, is_r_stable, render, simulate_antigravity, stable_support,
    SmallestFirst, StableSupport, TopDown,
};
use crate::cyclotomic::{CyclotomicError, QuotientContext, Report, Scope, DEFAULT_LEN_CAP, DEFAULT_LEVEL_CAP};
use crate::expr::{parse_expression_with, ParseOptions};
use crate::klr::{multiply, Element};
use crate::linalg::Field;
use crate::quiver::{weight_graph_components, CartanDatum, RootSpec, Seq, WeightSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MoveOrder {
    /// Square moves, then L moves, then stack moves, smallest bead first.
    Smallest,
    /// Square, then stack, then L from the top of the abacus down.
    TopDown,
}

#[derive(Debug, Parser)]
#[command(name = "klr", version, about = "KLR algebras, antigravity bounds and cyclotomic nilpotency")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: OutputFormat,
    /// `exact` or `prime:P`.
    #[arg(long, global = true, default_value = "exact")]
    pub field: String,
    /// Directory for reduced ideal pieces; falls back to `KLR_CACHE_DIR`.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Include wall time in verification reports.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stable support and antigravity bound b_r.
    Bound {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[arg(long)]
        anchor: usize,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Whether the anchored configuration is already stable.
    Stable {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[arg(long)]
        anchor: usize,
    },
    /// The sequence of antigravity moves.
    Trace {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[arg(long)]
        anchor: usize,
        #[arg(long, value_enum, default_value = "smallest")]
        order: MoveOrder,
    },
    /// Normal form of an expression.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Mismatched idempotents give zero instead of an error.
        #[arg(long)]
        allow_mismatch: bool,
    },
    /// Product of two expressions, the first on top.
    Mult {
        #[arg(allow_hyphen_values = true)]
        upper: String,
        #[arg(allow_hyphen_values = true)]
        lower: String,
        #[arg(long)]
        allow_mismatch: bool,
    },
    /// Connected components of the weight graph of ν.
    Components {
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
    },
    /// Check x_r^{b_r} = 0 and x_r^{level} = 0 in the cyclotomic quotient.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        /// Restrict to one sequence (needs --r).
        #[arg(long, allow_hyphen_values = true, requires = "r")]
        seq: Option<String>,
        #[arg(long, requires = "seq")]
        r: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_LEN_CAP)]
        max_len: usize,
        #[arg(long, default_value_t = DEFAULT_LEVEL_CAP)]
        max_level: u32,
    },
    /// Nilpotency degree of x_r on 1_i.
    Nilpotency {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[arg(long)]
        r: usize,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Graded dimensions of the cyclotomic quotient.
    Dims {
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
    },
    /// Pairs (i, r) with 1_i nonzero and nilpotency strictly below b_r.
    Tightness {
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Draw the bead configuration, or the antigravity trace when --anchor is given.
    Render {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[arg(long)]
        anchor: Option<usize>,
    },
}

/// Exit status and captured output of one command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn usage(msg: impl std::fmt::Display) -> Outcome {
        Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

struct Failed(i32, String);

impl<E: std::fmt::Display> From<E> for Failed {
    fn from(e: E) -> Self {
        Failed(2, e.to_string())
    }
}

fn parse_seq(s: &str) -> Result<Seq, Failed> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.trim().is_empty() {
        return Ok(Seq::default());
    }
    let labels = s
        .split(',')
        .map(|t| t.trim().parse::<i32>().map_err(|_| Failed(2, format!("bad sequence entry {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Seq::from_labels(&labels))
}

fn support_json(s: StableSupport) -> Value {
    match s.bounds() {
        Some((a, b)) => json!([a, b]),
        None => Value::Null,
    }
}

fn support_text(s: StableSupport) -> String {
    match s.bounds() {
        Some((a, b)) => format!("[{a},{b}]"),
        None => "empty".into(),
    }
}

fn line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("json serializes");
    s.push('\n');
    s
}

fn context(cli: &Cli, nu: RootSpec, weight: WeightSpec, caps: Option<(usize, u32)>) -> Result<QuotientContext, Failed> {
    let field = Field::parse(&cli.field).map_err(|e| Failed(2, e))?;
    let (len_cap, level_cap) = caps.unwrap_or((DEFAULT_LEN_CAP, DEFAULT_LEVEL_CAP));
    let mut ctx = QuotientContext::with_caps(nu, weight, len_cap, level_cap)?.with_field(field);
    let dir = cli.cache_dir.clone().or_else(|| std::env::var_os("KLR_CACHE_DIR").map(PathBuf::from));
    if let Some(d) = dir {
        ctx = ctx.with_cache_dir(d);
    }
    Ok(ctx)
}

fn cyclotomic_err(e: CyclotomicError) -> Failed {
    match e {
        CyclotomicError::NotNilpotent { .. } => Failed(1, e.to_string()),
        other => Failed(2, other.to_string()),
    }
}

fn element_out(cli: &Cli, e: &Element) -> String {
    match cli.format {
        OutputFormat::Json => format!("{}\n", e.to_json()),
        _ => format!("{e}\n"),
    }
}

fn report_text(r: &Report) -> String {
    let mut out = String::new();
    for c in &r.checks {
        let n = c.nilpotency.map_or("none".to_string(), |n| n.to_string());
        let verdict = if c.pass { "pass" } else { "FAIL" };
        let _ = writeln!(out, "{} r={} bound={} nilpotency={} {}", c.seq, c.r, c.bound, n, verdict);
    }
    let failed = r.failures().count();
    let _ = writeln!(out, "{} checks, {} failed", r.checks.len(), failed);
    if let Some(t) = r.timing_ms {
        let _ = writeln!(out, "{t} ms");
    }
    out
}

fn execute(cli: &Cli) -> Result<Outcome, Failed> {
    let svg_ok = matches!(cli.command, Command::Trace { .. } | Command::Render { .. });
    if cli.format == OutputFormat::Svg && !svg_ok {
        return Err(Failed(2, "--format svg only applies to trace and render".into()));
    }
    let json = cli.format == OutputFormat::Json;
    let out = match &cli.command {
        Command::Bound { seq, anchor, weight } => {
            let i = parse_seq(seq)?;
            let w = WeightSpec::from_json(weight)?;
            let support = stable_support(&i, *anchor)?;
            let b = antigravity_bound(&i, *anchor, &w)?;
            if json {
                line(&json!({"seq": i.labels(), "anchor": anchor, "support": support_json(support), "bound": b}))
            } else {
                format!("support {}\nbound {}\n", support_text(support), b)
            }
        }
        Command::Stable { seq, anchor } => {
            let i = parse_seq(seq)?;
            let stable = is_r_stable(&i, *anchor)?;
            let survivors: Vec<usize> = antigravity_survivors(&i, *anchor)?.into_iter().collect();
            let support = stable_support(&i, *anchor)?;
            if json {
                line(&json!({"seq": i.labels(), "anchor": anchor, "stable": stable, "survivors": survivors,
                    "support": support_json(support)}))
            } else {
                let s: Vec<String> = survivors.iter().map(|k| k.to_string()).collect();
                format!("stable {}\nsurvivors {}\nsupport {}\n", stable, s.join(","), support_text(support))
            }
        }
        Command::Trace { seq, anchor, order } => {
            let i = parse_seq(seq)?;
            let t = match order {
                MoveOrder::Smallest => simulate_antigravity(&i, *anchor, &mut SmallestFirst)?,
                MoveOrder::TopDown => simulate_antigravity(&i, *anchor, &mut TopDown)?,
            };
            match cli.format {
                OutputFormat::Json => format!("{}\n", t.to_json()),
                OutputFormat::Svg => render::render_trace(&t, render::RenderFormat::Svg),
                OutputFormat::Text => {
                    let mut s = String::new();
                    for m in &t.moves {
                        let _ = writeln!(s, "{m}");
                    }
                    let _ = writeln!(s, "support {}", support_text(t.support));
                    s
                }
            }
        }
        Command::Reduce { expr, allow_mismatch } => {
            let e = parse_expression_with(expr, ParseOptions { allow_mismatch: *allow_mismatch })?;
            element_out(cli, &e)
        }
        Command::Mult { upper, lower, allow_mismatch } => {
            let opts = ParseOptions { allow_mismatch: *allow_mismatch };
            let a = parse_expression_with(upper, opts)?;
            let b = parse_expression_with(lower, opts)?;
            element_out(cli, &multiply(&a, &b)?)
        }
        Command::Components { nu } => {
            let nu = RootSpec::from_json(nu)?;
            let comps = weight_graph_components(&CartanDatum::AInfinity, &nu)?;
            if json {
                let v: Vec<Vec<Vec<i32>>> = comps.iter().map(|c| c.iter().map(|s| s.labels()).collect()).collect();
                line(&json!({"nu": nu, "components": v}))
            } else {
                let mut s = String::new();
                for c in &comps {
                    let names: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(s, "{}", names.join(" "));
                }
                s
            }
        }
        Command::Verify { nu, weight, seq, r, max_len, max_level } => {
            let ctx = context(cli, RootSpec::from_json(nu)?, WeightSpec::from_json(weight)?, Some((*max_len, *max_level)))?;
            let scope = match (seq, r) {
                (Some(s), Some(r)) => Scope::One(parse_seq(s)?, *r),
                _ => Scope::All,
            };
            let mut report = ctx.verify_theorem(&scope).map_err(cyclotomic_err)?;
            if !cli.timing {
                report.timing_ms = None;
            }
            let body = if json { format!("{}\n", report.to_json()) } else { report_text(&report) };
            if !report.all_pass() {
                return Ok(Outcome { code: 1, stdout: body, stderr: "error: theorem check failed\n".into() });
            }
            body
        }
        Command::Nilpotency { seq, r, weight } => {
            let i = parse_seq(seq)?;
            let w = WeightSpec::from_json(weight)?;
            let ctx = context(cli, i.root(), w.clone(), None)?;
            let n = ctx.nilpotency_degree(&i, *r).map_err(cyclotomic_err)?;
            let b = antigravity_bound(&i, *r, &w)?;
            if json {
                line(&json!({"seq": i.labels(), "r": r, "nilpotency": n, "bound": b}))
            } else {
                format!("nilpotency {n}\nbound {b}\n")
            }
        }
        Command::Dims { nu, weight, degree } => {
            let ctx = context(cli, RootSpec::from_json(nu)?, WeightSpec::from_json(weight)?, None)?;
            match degree {
                Some(d) => {
                    let n = ctx.graded_dimension(*d);
                    if json {
                        line(&json!({"nu": ctx.root(), "lambda": ctx.weight(), "degree": d, "dimension": n}))
                    } else {
                        format!("{n}\n")
                    }
                }
                None => {
                    let graded = ctx.graded_dimensions();
                    let total: usize = graded.iter().map(|g| g.1).sum();
                    if json {
                        line(&json!({"nu": ctx.root(), "lambda": ctx.weight(), "graded": graded, "total": total}))
                    } else {
                        let mut s = String::new();
                        for (d, n) in &graded {
                            let _ = writeln!(s, "degree {d}: {n}");
                        }
                        let _ = writeln!(s, "total {total}");
                        s
                    }
                }
            }
        }
        Command::Tightness { nu, weight } => {
            let ctx = context(cli, RootSpec::from_json(nu)?, WeightSpec::from_json(weight)?, None)?;
            let entries = ctx.tightness_report().map_err(cyclotomic_err)?;
            if json {
                line(&json!({"nu": ctx.root(), "lambda": ctx.weight(), "entries": entries}))
            } else {
                let mut s = String::new();
                for e in &entries {
                    let _ = writeln!(s, "{} r={} bound={} actual={}", e.seq, e.r, e.bound, e.actual);
                }
                let _ = writeln!(s, "{} entries", entries.len());
                s
            }
        }
        Command::Render { seq, anchor } => {
            let i = parse_seq(seq)?;
            let fmt = if cli.format == OutputFormat::Svg { render::RenderFormat::Svg } else { render::RenderFormat::Ascii };
            if cli.format == OutputFormat::Json {
                return Err(Failed(2, "render writes text or svg".into()));
            }
            match anchor {
                Some(r) => render::render_trace(&simulate_antigravity(&i, *r, &mut SmallestFirst)?, fmt),
                None => render::render_config(&conf(&i), fmt),
            }
        }
    };
    Ok(Outcome::ok(out))
}

/// Runs an already parsed command on a pool of `cli.workers` threads.
pub fn run(cli: &Cli) -> Outcome {
    let go = || execute(cli).unwrap_or_else(|Failed(code, msg)| Outcome { code, stdout: String::new(), stderr: format!("error: {msg}\n") });
    match cli.workers {
        Some(0) => Outcome::usage("--workers must be positive"),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(go),
            Err(e) => Outcome::usage(e),
        },
        None => go(),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            }
        }
    }
}
