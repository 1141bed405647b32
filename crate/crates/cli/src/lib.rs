//! Command-line front end: parse files or builtins, run analyses, emit
//! text / JSON / DOT, and a small ordinal calculator.
//!
//! Exit codes: 0 success, 1 analysis error (invalid presentation,
//! construction failure, undefined arithmetic), 2 usage or parse error.

use std::fmt::Write as _;
use std::path::Path as FsPath;

use clap::{Parser, Subcommand};
use serde::Serialize;

use ordgraph::ordinal::parse_ordinal;
use ordgraph::path::Path;
use ordgraph::presentation::{builtin, parse_presentation, Presentation};
use ordgraph::report;
use ordgraph::starword::{self, StarWord};
use ordgraph::verdict;
use ordgraph::{path, quotient};

#[derive(Parser)]
#[command(
    name = "ordgraph",
    version,
    about = "Analyses of finitely presented ordinal graphs",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a presentation (file path or builtin name)
    Check { src: String },
    /// Per-vertex regularity tables, quotient summaries and the verdict
    Analyze {
        src: String,
        /// Restrict the tables to one level
        #[arg(long)]
        level: Option<u32>,
        /// Fibre enumeration class bound
        #[arg(long, default_value_t = 64)]
        bound: usize,
        #[arg(long)]
        json: bool,
    },
    /// The quotient digraph at one level
    Falpha {
        src: String,
        #[arg(long)]
        level: u32,
        /// Emit DOT instead of a text summary
        #[arg(long)]
        dot: bool,
    },
    /// Conditions (V)/(S), uniqueness and simplicity
    Verdict {
        src: String,
        #[arg(long, default_value_t = 64)]
        bound: usize,
        #[arg(long)]
        json: bool,
    },
    /// Build a non-returning path of at least the requested block count
    Nonreturning {
        src: String,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        level: u32,
        #[arg(long = "min-blocks")]
        min_blocks: usize,
    },
    /// Reduce T_w1* T_w2 in the generator word calculus:
    /// `eval <src> <word...> '*' <word...>`
    Eval {
        src: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        tokens: Vec<String>,
    },
    /// Ordinal calculator: `ord <expr> [+|x|^|cmp|sub <expr>]`
    Ord {
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        tokens: Vec<String>,
    },
}

/// Runs the CLI on the given arguments (excluding the program name) and
/// returns (exit code, output).
pub fn run<I, S>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut argv: Vec<String> = vec!["ordgraph".into()];
    argv.extend(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => return (2, e.to_string()),
    };
    match cli.cmd {
        Cmd::Check { src } => with_presentation(&src, |pres| {
            let report = pres.validate();
            if report.is_valid() {
                (0, format!("{}: valid ordinal graph presentation\n", pres.name()))
            } else {
                (1, format!("{}\n", report.render(pres)))
            }
        }),
        Cmd::Analyze {
            src,
            level,
            bound,
            json,
        } => with_valid_presentation(&src, |pres| {
            if let Some(k) = level {
                if k > pres.max_level() {
                    return (2, format!("level {} exceeds the maximal level {}\n", k, pres.max_level()));
                }
            }
            let report = report::analyze(pres, bound, level);
            if json {
                (0, format!("{}\n", serde_json::to_string_pretty(&report).unwrap()))
            } else {
                (0, report::render_text(pres, &report))
            }
        }),
        Cmd::Falpha { src, level, dot } => with_valid_presentation(&src, |pres| {
            let d = quotient::falpha(pres, level);
            if dot {
                (0, report::falpha_dot(pres, &d))
            } else {
                let mut out = String::new();
                let _ = writeln!(
                    out,
                    "F_{}: {} vertex component(s), {} edge class(es)",
                    level,
                    d.vertices.len(),
                    d.edges.len()
                );
                for (i, comp) in d.vertices.iter().enumerate() {
                    let names: Vec<&str> =
                        comp.iter().map(|&v| pres.vertex_name(v)).collect();
                    let _ = writeln!(out, "  c{} = {{{}}}", i, names.join(","));
                }
                for e in &d.edges {
                    let members: Vec<&str> =
                        e.members.iter().map(|&g| pres.gen_name(g)).collect();
                    let _ = writeln!(
                        out,
                        "  [{}]: c{} -> c{} (members {})",
                        pres.gen_name(e.rep),
                        e.source,
                        e.range,
                        members.join(",")
                    );
                }
                let cwe = quotient::cycles_without_entry(&d);
                let _ = writeln!(out, "  cycles without entry: {}", cwe.len());
                (0, out)
            }
        }),
        Cmd::Verdict { src, bound, json } => with_valid_presentation(&src, |pres| {
            let v = verdict::ck_verdict(pres, bound);
            if json {
                (0, format!("{}\n", serde_json::to_string_pretty(&verdict_json(pres, &v)).unwrap()))
            } else {
                let mut out = String::new();
                let _ = writeln!(
                    out,
                    "condition (V): {}",
                    if v.condition_v.holds { "holds" } else { "fails" }
                );
                let s = report::condition_s_json(&v.condition_s);
                let _ = writeln!(
                    out,
                    "condition (S): {}{}",
                    s.status,
                    s.detail.map(|d| format!(" ({})", d)).unwrap_or_default()
                );
                for (k, st) in &v.ck_levels {
                    let (status, reason) = report::ck_json(st);
                    let _ = writeln!(
                        out,
                        "uniqueness at level {}: {}{}",
                        k,
                        status,
                        reason.map(|r| format!(" ({})", r)).unwrap_or_default()
                    );
                }
                let (status, reason) = report::ck_json(&v.overall);
                let _ = writeln!(
                    out,
                    "overall: {}{}",
                    status,
                    reason.map(|r| format!(" ({})", r)).unwrap_or_default()
                );
                let _ = writeln!(
                    out,
                    "simplicity: {}",
                    match v.simplicity {
                        verdict::Simplicity::Simple => "Simple",
                        verdict::Simplicity::Unknown => "Unknown",
                    }
                );
                for w in &v.warnings {
                    let _ = writeln!(out, "warning: {}", w);
                }
                (0, out)
            }
        }),
        Cmd::Nonreturning {
            src,
            vertex,
            level,
            min_blocks,
        } => with_valid_presentation(&src, |pres| {
            let Some(v) = pres.vertex_id(&vertex) else {
                return (2, format!("unknown vertex {}\n", vertex));
            };
            match quotient::build_nonreturning(pres, v, min_blocks, level) {
                Ok(u) => {
                    let len = path::length(pres, &u);
                    (
                        0,
                        format!("{}\nlength {}\n", u.display(pres), len),
                    )
                }
                Err(e) => (1, format!("not constructible: {}\n", e)),
            }
        }),
        Cmd::Eval { src, tokens } => with_valid_presentation(&src, |pres| {
            match eval_tokens(pres, &tokens) {
                Ok(w) => (0, format!("{}\n", w.display(pres))),
                Err(msg) => (2, format!("{}\n", msg)),
            }
        }),
        Cmd::Ord { tokens } => match ord_tokens(&tokens) {
            Ok(out) => (0, out),
            Err((code, msg)) => (code, msg),
        },
    }
}

fn load(src: &str) -> Result<Presentation, String> {
    if FsPath::new(src).exists() {
        let text = std::fs::read_to_string(src).map_err(|e| format!("{}: {}", src, e))?;
        let name = FsPath::new(src)
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or(src);
        parse_presentation(name, &text).map_err(|e| format!("{}: {}", src, e))
    } else {
        builtin(src).map_err(|e| {
            format!(
                "{} is neither an existing file nor a builtin ({})",
                src, e
            )
        })
    }
}

fn with_presentation<F>(src: &str, f: F) -> (i32, String)
where
    F: FnOnce(&Presentation) -> (i32, String),
{
    match load(src) {
        Ok(pres) => f(&pres),
        Err(msg) => (2, format!("{}\n", msg)),
    }
}

fn with_valid_presentation<F>(src: &str, f: F) -> (i32, String)
where
    F: FnOnce(&Presentation) -> (i32, String),
{
    with_presentation(src, |pres| {
        let report = pres.validate();
        if !report.is_valid() {
            return (1, format!("invalid presentation:\n{}\n", report.render(pres)));
        }
        f(pres)
    })
}

fn word_to_path(pres: &Presentation, word: &[String]) -> Result<Path, String> {
    if word.is_empty() {
        return Err("empty generator word".into());
    }
    if word.len() == 1 {
        if let Some(v) = pres.vertex_id(&word[0]) {
            return Ok(Path::identity(v));
        }
    }
    let mut acc: Option<Path> = None;
    for name in word {
        let g = pres
            .gen_id(name)
            .ok_or_else(|| format!("unknown generator {}", name))?;
        let gp = Path::generator(pres, g);
        acc = Some(match acc {
            None => gp,
            Some(a) => path::compose(pres, &a, &gp)
                .map_err(|e| format!("word is not composable: {}", e))?,
        });
    }
    Ok(acc.expect("word is nonempty"))
}

/// `w1... '*' w2...` evaluates T_{w1}* · T_{w2}; a lone word evaluates
/// to T_w.
fn eval_tokens(pres: &Presentation, tokens: &[String]) -> Result<StarWord, String> {
    let parts: Vec<&[String]> = tokens.split(|t| t == "*").collect();
    match parts.as_slice() {
        [word] => Ok(StarWord::of_path(pres, word_to_path(pres, word)?)),
        [w1, w2] => {
            let left = word_to_path(pres, w1)?;
            let right = word_to_path(pres, w2)?;
            Ok(starword::multiply(
                pres,
                &StarWord::adjoint_of_path(pres, left),
                &StarWord::of_path(pres, right),
            ))
        }
        _ => Err("expected `<word> '*' <word>` or a single word".into()),
    }
}

fn ord_tokens(tokens: &[String]) -> Result<String, (i32, String)> {
    let parse = |s: &str| {
        parse_ordinal(s).map_err(|e| (2, format!("{}\n", e)))
    };
    match tokens {
        [a] => Ok(format!("{}\n", parse(a)?)),
        [a, op, b] => {
            let x = parse(a)?;
            let y = parse(b)?;
            let out = match op.as_str() {
                "+" => x.add(&y).to_string(),
                "x" => x.mul(&y).to_string(),
                "^" => x.pow(&y).to_string(),
                "cmp" => match x.cmp(&y) {
                    std::cmp::Ordering::Less => "Less".into(),
                    std::cmp::Ordering::Equal => "Equal".into(),
                    std::cmp::Ordering::Greater => "Greater".into(),
                },
                "sub" => match x.left_sub(&y) {
                    Some(z) => z.to_string(),
                    None => {
                        return Err((1, format!("undefined: {} > {}\n", x, y)));
                    }
                },
                other => return Err((2, format!("unknown operator {}\n", other))),
            };
            Ok(format!("{}\n", out))
        }
        _ => Err((2, "expected `<expr>` or `<expr> <op> <expr>`\n".into())),
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct VerdictJson {
    graph: String,
    condition_v: report::ConditionVJson,
    condition_s: report::ConditionSJson,
    ck_uniqueness: Vec<report::CkJson>,
    overall: report::CkJson,
    simplicity: report::SimplicityJson,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    warnings: Vec<String>,
    version: String,
}

fn verdict_json(pres: &Presentation, v: &verdict::Verdict) -> VerdictJson {
    let ck = |s: &verdict::CkStatus, level: u32| {
        let (status, reason) = report::ck_json(s);
        report::CkJson {
            level,
            status,
            reason,
        }
    };
    VerdictJson {
        graph: pres.name().to_string(),
        condition_v: report::ConditionVJson {
            holds: v.condition_v.holds,
            witness: v.condition_v.witness.as_ref().map(|w| report::VWitnessJson {
                level: w.level,
                generator: pres.gen_name(w.gen).to_string(),
                vertex: pres.vertex_name(w.vertex).to_string(),
            }),
        },
        condition_s: report::condition_s_json(&v.condition_s),
        ck_uniqueness: v
            .ck_levels
            .iter()
            .map(|(k, s)| ck(s, *k))
            .collect(),
        overall: ck(&v.overall, pres.max_level()),
        simplicity: report::SimplicityJson {
            status: match v.simplicity {
                verdict::Simplicity::Simple => "Simple".into(),
                verdict::Simplicity::Unknown => "Unknown".into(),
            },
        },
        warnings: v.warnings.clone(),
        version: ordgraph::VERSION.to_string(),
    }
}
