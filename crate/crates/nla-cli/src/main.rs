//! `nla` — command-line front end for the exact Nichols-algebra engine.
//!
//! Input braidings are JSON files holding either an explicit matrix of
//! scalar literals or a named preset; see the repository README for the
//! schema.  Exit codes: 0 success / all checks pass, 1 computation or
//! check failure, 2 usage or input error, 3 verification skipped checks
//! but had no failures.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use nla_core::braiding::{cartan_preset, BraidedSpace, CartanType};
use nla_core::cyclo::{CycloField, Order, ScalarLit};
use nla_core::free::{BracketKind, FreeElement};
use nla_core::lie::{
    bound, check_f_plus_l, derived_series, lie_tower, structure_constants, Bound, BoundParams,
};
use nla_core::pbw::{hard_superletters, m_infinity_scan};
use nla_core::tower::{NicholsTower, Nilpotency, TotalDim};
use nla_core::verify::{assemble_report, run_all, run_suite, Report};

#[derive(Parser)]
#[command(
    name = "nla",
    version,
    about = "Exact computations in Nichols algebras of diagonal type and their braided Lie subalgebras"
)]
struct Cli {
    /// Output format for structured results.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum BracketArg {
    Std,
    Minus,
    C,
}

impl From<BracketArg> for BracketKind {
    fn from(b: BracketArg) -> BracketKind {
        match b {
            BracketArg::Std => BracketKind::Std,
            BracketArg::Minus => BracketKind::Minus,
            BracketArg::C => BracketKind::C,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DiagramFlavor {
    Gdd,
    Directed,
    Mixed,
}

#[derive(Subcommand)]
enum Cmd {
    /// Graded basis, Hilbert series, and normal forms of the quotient.
    Nichols {
        #[command(subcommand)]
        cmd: NicholsCmd,
    },
    /// Braided Lie spans, their comparison against the full algebra, and
    /// derived series.
    Lie {
        #[command(subcommand)]
        cmd: LieCmd,
    },
    /// Lyndon super-letters: hard letters, power indices, undecided scans.
    Pbw {
        #[command(subcommand)]
        cmd: PbwCmd,
    },
    /// Emit the labeled diagram of a braiding as DOT text.
    Diagram {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = DiagramFlavor::Gdd)]
        flavor: DiagramFlavor,
    },
    /// Run one named verification suite, or all of them.
    Verify {
        /// Suite name; omit to run every suite.
        suite: Option<String>,
        /// Worker threads for running suites in parallel.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Closed-form lower bounds for minus-bracket spans.
    Bound(BoundArgs),
}

#[derive(Subcommand)]
enum NicholsCmd {
    /// Basis words, relations, and dims per degree (versioned JSON).
    Basis {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
    },
    /// Graded dimensions up to the cap.
    Hilbert {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
    },
    /// Normal form of an element of the free algebra.
    Nf {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
        /// Element text, e.g. '(1) * "12" + (-1/2) * "21"' or a bare word "121".
        #[arg(long)]
        element: String,
    },
}

#[derive(Subcommand)]
enum LieCmd {
    /// Graded dimensions of the span of iterated brackets of generators.
    Dims {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = BracketArg::Std)]
        bracket: BracketArg,
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
    },
    /// Compare scalars-plus-span against the whole algebra degree by degree.
    CheckFPlusL {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = BracketArg::Std)]
        bracket: BracketArg,
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
    },
    /// Dimensions along the derived series of the span.
    DerivedSeries {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = BracketArg::Minus)]
        bracket: BracketArg,
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
        #[arg(long, default_value_t = 8)]
        mmax: u32,
    },
    /// Same as the top-level `bound` command.
    Bound(BoundArgs),
}

#[derive(Subcommand)]
enum PbwCmd {
    /// Hard Lyndon super-letters with their vertex scalars and power indices.
    Superletters {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
    },
    /// Letters whose power index stays undecided within the cap.
    Scan {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
        #[arg(long, default_value_t = 12)]
        kmax: u32,
    },
}

#[derive(Args)]
struct BoundArgs {
    /// Bound family: A, B, C, D, E6, E7, E8, F4, G2, path-one, path-two.
    #[arg(long = "type")]
    family: String,
    /// Rank (number of vertices).
    #[arg(long)]
    n: u32,
    /// Case selector for the finite families (1 or 2).
    #[arg(long, default_value_t = 2)]
    case: u8,
    /// Scalar order N for the finite families ("inf" allowed).
    #[arg(long = "N")]
    big_n: Option<String>,
    /// Second scalar order for the B/C/F families.
    #[arg(long = "N-last")]
    big_n_last: Option<String>,
    /// Comma-separated vertex orders for the path families, e.g. "3,3,3".
    #[arg(long)]
    orders: Option<String>,
    /// Extra nested brackets counted by the path bounds.
    #[arg(long, default_value_t = 0)]
    extra_brackets: u32,
}

/// Input-file schema: an explicit matrix of scalar literals, or a preset.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InputFile {
    #[serde(default)]
    matrix: Option<Vec<Vec<ScalarLit>>>,
    #[serde(default)]
    preset: Option<PresetInput>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PresetInput {
    #[serde(rename = "type")]
    family: String,
    n: usize,
    q: ScalarLit,
}

enum Failure {
    /// Bad flags, files, or input text: exit 2.
    Usage(String),
    /// The computation itself refused or failed: exit 1.
    Run(String),
}

type CliResult<T> = Result<T, Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn run_err<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Run(e.to_string())
}

fn load_space(path: &PathBuf) -> CliResult<BraidedSpace> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let parsed: InputFile = serde_json::from_str(&text).map_err(|e| {
        Failure::Usage(format!(
            "malformed JSON in {} at line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })?;
    match (parsed.matrix, parsed.preset) {
        (Some(rows), None) => BraidedSpace::from_literals(&rows).map_err(usage),
        (None, Some(p)) => {
            let family = CartanType::parse(&p.family).map_err(usage)?;
            let conductor = p.q.conductor();
            let field = CycloField::new(conductor).map_err(usage)?;
            let q = field.from_literal(&p.q).map_err(usage)?;
            cartan_preset(family, p.n, &field, &q).map_err(usage)
        }
        (Some(_), Some(_)) => Err(Failure::Usage(
            "input file must hold either \"matrix\" or \"preset\", not both".into(),
        )),
        (None, None) => Err(Failure::Usage(
            "input file must hold a \"matrix\" or a \"preset\"".into(),
        )),
    }
}

fn build_tower(path: &PathBuf, cap: u32) -> CliResult<NicholsTower> {
    let space = load_space(path)?;
    NicholsTower::build(space, cap).map_err(run_err)
}

fn parse_order(text: &str) -> CliResult<Order> {
    match text {
        "inf" | "infinity" | "oo" => Ok(Order::Infinite),
        _ => text
            .parse::<u64>()
            .map(Order::Finite)
            .map_err(|_| Failure::Usage(format!("bad order {text:?}: expected integer or inf"))),
    }
}

fn total_dim_json(t: &TotalDim) -> serde_json::Value {
    match t {
        TotalDim::Finite(n) => serde_json::json!({ "finite": n }),
        TotalDim::InfiniteBeyondCap(cap) => serde_json::json!({ "open_beyond_cap": cap }),
    }
}

fn total_dim_text(t: &TotalDim) -> String {
    match t {
        TotalDim::Finite(n) => format!("finite, total dimension {n}"),
        TotalDim::InfiniteBeyondCap(cap) => format!("no top degree found within cap {cap}"),
    }
}

fn emit(fmt: OutputFormat, json: serde_json::Value, text: String) {
    use std::io::Write as _;
    let body = match fmt {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&json).expect("serializable value")
        }
        OutputFormat::Text => text,
    };
    let mut out = std::io::stdout().lock();
    // exit quietly if the reading end of a pipe has gone away
    if writeln!(out, "{body}").is_err() {
        std::process::exit(0);
    }
}

fn report_text(rep: &Report) -> String {
    let mut out = String::new();
    for s in &rep.suites {
        let _ = writeln!(
            out,
            "suite {}: {} passed, {} failed, {} skipped",
            s.suite, s.passed, s.failed, s.skipped
        );
        for c in &s.checks {
            let status = match c.status {
                nla_core::verify::Status::Pass => "pass",
                nla_core::verify::Status::Fail => "FAIL",
                nla_core::verify::Status::Skip => "skip",
            };
            let _ = writeln!(out, "  {status} {} — {}", c.name, c.details);
        }
    }
    let _ = write!(
        out,
        "total: {} passed, {} failed, {} skipped",
        rep.passed, rep.failed, rep.skipped
    );
    out
}

fn cmd_nichols(fmt: OutputFormat, cmd: NicholsCmd) -> CliResult<i32> {
    match cmd {
        NicholsCmd::Basis { input, max_degree } => {
            let t = build_tower(&input, max_degree)?;
            let json = t.to_json();
            let mut text = String::new();
            for d in 0..=max_degree {
                let words: Vec<String> = t
                    .basis_at_degree(d)
                    .into_iter()
                    .flat_map(|(_, ws)| ws.into_iter())
                    .map(|w| {
                        let s = w.to_string();
                        if s.is_empty() {
                            "\"\"".to_string()
                        } else {
                            s
                        }
                    })
                    .collect();
                let _ = writeln!(text, "degree {d} (dim {}): {}", t.dim(d), words.join(" "));
            }
            let _ = write!(text, "{}", total_dim_text(&t.total_dim()));
            emit(fmt, json, text);
            Ok(0)
        }
        NicholsCmd::Hilbert { input, max_degree } => {
            let t = build_tower(&input, max_degree)?;
            let json = serde_json::json!({
                "cap": max_degree,
                "dims": t.hilbert(),
                "total": total_dim_json(&t.total_dim()),
            });
            let text = format!(
                "dims {:?}\n{}",
                t.hilbert(),
                total_dim_text(&t.total_dim())
            );
            emit(fmt, json, text);
            Ok(0)
        }
        NicholsCmd::Nf {
            input,
            max_degree,
            element,
        } => {
            let t = build_tower(&input, max_degree)?;
            let s = t.space();
            // convenience: a bare digit string is a single word
            let elem_text = if element.chars().all(|c| c.is_ascii_digit()) && !element.is_empty() {
                format!("\"{element}\"")
            } else {
                element
            };
            let e = FreeElement::parse(s, &elem_text).map_err(usage)?;
            let nf = t.nf(&e).map_err(run_err)?;
            let back = t.to_free(&nf);
            let rendered = back.format(s);
            let json = serde_json::json!({ "normal_form": rendered, "is_zero": nf.is_zero() });
            emit(fmt, json, format!("normal form: {rendered}"));
            Ok(0)
        }
    }
}

fn cmd_lie(fmt: OutputFormat, cmd: LieCmd) -> CliResult<i32> {
    match cmd {
        LieCmd::Dims {
            input,
            bracket,
            max_degree,
        } => {
            let t = build_tower(&input, max_degree)?;
            let l = lie_tower(&t, bracket.into(), max_degree).map_err(run_err)?;
            let json = serde_json::json!({ "dims": l.dims(), "total": l.total_dim() });
            let text = format!("span dims {:?}\ntotal {}", l.dims(), l.total_dim());
            emit(fmt, json, text);
            Ok(0)
        }
        LieCmd::CheckFPlusL {
            input,
            bracket,
            max_degree,
        } => {
            let t = build_tower(&input, max_degree)?;
            let l = lie_tower(&t, bracket.into(), max_degree).map_err(run_err)?;
            let v = check_f_plus_l(&t, &l);
            let json = serde_json::json!({
                "equal_through_cap": v.equal_through_cap,
                "first_failure": v.first_failure,
                "conclusive": v.conclusive,
            });
            let text = format!(
                "equal through cap: {}\nfirst failing degree: {:?}\nconclusive: {}",
                v.equal_through_cap, v.first_failure, v.conclusive
            );
            emit(fmt, json, text);
            Ok(0)
        }
        LieCmd::DerivedSeries {
            input,
            bracket,
            max_degree,
            mmax,
        } => {
            let t = build_tower(&input, max_degree)?;
            let l = lie_tower(&t, bracket.into(), max_degree).map_err(run_err)?;
            let sc = structure_constants(&l, &t).map_err(run_err)?;
            let ds = derived_series(&sc, mmax);
            let json = serde_json::json!({ "dims": ds.dims, "solvable": ds.solvable });
            let text = format!("derived dims {:?}\nsolvable: {}", ds.dims, ds.solvable);
            emit(fmt, json, text);
            Ok(0)
        }
        LieCmd::Bound(args) => cmd_bound(fmt, args),
    }
}

fn cmd_pbw(fmt: OutputFormat, cmd: PbwCmd) -> CliResult<i32> {
    match cmd {
        PbwCmd::Superletters { input, max_degree } => {
            let t = build_tower(&input, max_degree)?;
            let f = t.space().field();
            let letters = hard_superletters(&t, max_degree).map_err(run_err)?;
            let rows: Vec<serde_json::Value> = letters
                .iter()
                .map(|l| {
                    let height = match l.height {
                        Nilpotency::Vanishes(h) => serde_json::json!({ "vanishes_at": h }),
                        Nilpotency::NotWithinCap(k) => {
                            serde_json::json!({ "nonzero_through": k })
                        }
                    };
                    serde_json::json!({
                        "word": l.word.to_string(),
                        "bracketing": l.tree,
                        "vertex_scalar": f.format(&l.p_uu),
                        "scalar_order": match l.ord_puu {
                            Order::Finite(n) => serde_json::json!(n),
                            Order::Infinite => serde_json::json!("inf"),
                        },
                        "power_index": height,
                    })
                })
                .collect();
            let mut text = String::new();
            for l in &letters {
                let ord = match l.ord_puu {
                    Order::Finite(n) => n.to_string(),
                    Order::Infinite => "inf".to_string(),
                };
                let height = match l.height {
                    Nilpotency::Vanishes(h) => format!("power index {h}"),
                    Nilpotency::NotWithinCap(k) => format!("powers nonzero through {k}"),
                };
                let _ = writeln!(
                    text,
                    "{}  {}  p_uu = {} (order {ord}, {height})",
                    l.word,
                    l.tree,
                    f.format(&l.p_uu),
                );
            }
            let _ = write!(text, "{} hard letters through degree {max_degree}", letters.len());
            emit(fmt, serde_json::json!({ "letters": rows }), text);
            Ok(0)
        }
        PbwCmd::Scan {
            input,
            max_degree,
            kmax,
        } => {
            let t = build_tower(&input, max_degree)?;
            let cands = m_infinity_scan(&t, max_degree.min(t.cap()), kmax).map_err(run_err)?;
            let rows: Vec<serde_json::Value> = cands
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "word": c.word.to_string(),
                        "scalar_order": c.ord_puu,
                        "nonzero_through": c.verified_through,
                    })
                })
                .collect();
            let text = if cands.is_empty() {
                "every hard letter has a decided power index within the cap".to_string()
            } else {
                let mut t2 = String::new();
                for c in &cands {
                    let _ = writeln!(
                        t2,
                        "undecided: {} (scalar order {}, nonzero powers through {})",
                        c.word, c.ord_puu, c.verified_through
                    );
                }
                t2.trim_end().to_string()
            };
            emit(fmt, serde_json::json!({ "undecided": rows }), text);
            Ok(0)
        }
    }
}

fn cmd_bound(fmt: OutputFormat, args: BoundArgs) -> CliResult<i32> {
    let params = match args.family.as_str() {
        "path-one" | "path-two" => {
            let orders_text = args.orders.ok_or_else(|| {
                Failure::Usage("path bounds need --orders, e.g. --orders 3,3,3".into())
            })?;
            let orders = orders_text
                .split(',')
                .map(|t| parse_order(t.trim()))
                .collect::<CliResult<Vec<Order>>>()?;
            if args.family == "path-one" {
                BoundParams::PathOneSided {
                    n: args.n,
                    orders,
                    extra_brackets: args.extra_brackets,
                }
            } else {
                BoundParams::PathTwoSided {
                    n: args.n,
                    orders,
                    extra_brackets: args.extra_brackets,
                }
            }
        }
        fam => {
            let family = CartanType::parse(fam).map_err(usage)?;
            let big_n = parse_order(
                args.big_n
                    .as_deref()
                    .ok_or_else(|| Failure::Usage("finite-family bounds need --N".into()))?,
            )?;
            let big_n_last = match args.big_n_last.as_deref() {
                Some(t) => Some(parse_order(t)?),
                None => None,
            };
            BoundParams::Cartan {
                family,
                n: args.n,
                case: args.case,
                big_n,
                big_n_last,
            }
        }
    };
    let b = bound(&params).map_err(usage)?;
    let json = match b {
        Bound::Finite(v) => serde_json::json!({ "bound": v }),
        Bound::Infinite => serde_json::json!({ "bound": "inf" }),
    };
    let text = match b {
        Bound::Finite(v) => format!("lower bound: {v}"),
        Bound::Infinite => "lower bound: infinite".to_string(),
    };
    emit(fmt, json, text);
    Ok(0)
}

fn cmd_verify(fmt: OutputFormat, suite: Option<String>, jobs: usize) -> CliResult<i32> {
    let report = match suite {
        Some(name) => {
            let rep = run_suite(&name).map_err(usage)?;
            assemble_report(vec![rep])
        }
        None => run_all(jobs).map_err(run_err)?,
    };
    let json = serde_json::to_value(&report).expect("report serializes");
    emit(fmt, json, report_text(&report));
    Ok(report.exit_code())
}

fn dispatch(cli: Cli) -> CliResult<i32> {
    let fmt = cli.output;
    match cli.cmd {
        Cmd::Nichols { cmd } => cmd_nichols(fmt, cmd),
        Cmd::Lie { cmd } => cmd_lie(fmt, cmd),
        Cmd::Pbw { cmd } => cmd_pbw(fmt, cmd),
        Cmd::Diagram { input, flavor } => {
            let s = load_space(&input)?;
            let dot = match flavor {
                DiagramFlavor::Gdd => s.dot_gdd(),
                DiagramFlavor::Directed => s.dot_directed(),
                DiagramFlavor::Mixed => s.dot_mixed(),
            };
            emit(fmt, serde_json::json!({ "dot": dot }), dot.trim_end().to_string());
            Ok(0)
        }
        Cmd::Verify { suite, jobs } => cmd_verify(fmt, suite, jobs),
        Cmd::Bound(args) => cmd_bound(fmt, args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
