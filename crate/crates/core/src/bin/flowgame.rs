//! Command-line front end.
//!
//! Exit status: 0 when the instance is convex or the check succeeds, 1 when
//! it is not convex or a violation was found, 2 on input or usage errors.

use std::fs;
use std::io::{self, Read as _, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use flowgame::game::{
    core_membership, dividends, gamma, is_convex_bruteforce, shapley_bruteforce, verify_pmas,
    Allocation, CoreCheck,
};
use flowgame::io::report::{
    allocation_json, allocation_text, core_check_json, pmas_failure_json, pmas_json, render_json,
    verdict_json, verdict_text, violation_json,
};
use flowgame::io::{
    gen_broken_with, gen_convex, gen_random, parse, serialize, BrokenKind, GenParams, RandomParams,
};
use flowgame::rational::{format_rational, parse_rational, Rational};
use flowgame::recognition::{
    gamma_fast, pmas_construct, shapley_fast, structural_diagnostics, Certificate,
};
use flowgame::structure::reduce;
use flowgame::{recognize, Coalition, FlowNetwork, Verdict};
use num_traits::Zero;

#[derive(Parser)]
#[command(
    name = "flowgame",
    version,
    about = "Convexity and solution concepts for flow games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Input {
    /// Instance file, or `-` for standard input.
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Decide convexity and print the certificate or witness.
    Check {
        #[command(flatten)]
        input: Input,
        /// Also run the independent structural checks.
        #[arg(long)]
        diagnostics: bool,
    },
    /// Drop arcs that cannot carry s-t flow.
    Reduce {
        #[command(flatten)]
        input: Input,
    },
    /// Value of a coalition.
    Value {
        #[command(flatten)]
        input: Input,
        /// Comma-separated arc labels, or `@all`.
        #[arg(long, allow_hyphen_values = true)]
        coalition: String,
    },
    /// Shapley value.
    Shapley {
        #[command(flatten)]
        input: Input,
        /// Average over all orders instead of using the certificate.
        #[arg(long)]
        exact_bruteforce: bool,
    },
    /// Nonzero Harsanyi dividends.
    Dividends {
        #[command(flatten)]
        input: Input,
    },
    /// Exhaustive convexity check.
    Oracle {
        #[command(flatten)]
        input: Input,
    },
    /// Test an allocation for core membership. Unlisted arcs get 0.
    CoreCheck {
        #[command(flatten)]
        input: Input,
        /// `label=value` pairs separated by commas.
        #[arg(long)]
        allocation: String,
    },
    /// Population monotonic allocation scheme of a convex instance.
    Pmas {
        #[command(flatten)]
        input: Input,
        /// Check the scheme against the exhaustive game table.
        #[arg(long)]
        verify: bool,
    },
    /// Unanimity decomposition of a convex instance.
    Decompose {
        #[command(flatten)]
        input: Input,
    },
    /// Print a generated instance.
    Gen(GenArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    paths: usize,
    #[arg(long, default_value_t = 2)]
    depth: usize,
    #[arg(long, default_value_t = 1)]
    cap_min: u64,
    #[arg(long, default_value_t = 5)]
    cap_max: u64,
    /// Perturb into a non-convex instance.
    #[arg(long, value_parser = parse_broken, conflicts_with = "random")]
    broken: Option<BrokenKind>,
    /// Unstructured random network, possibly cyclic.
    #[arg(long)]
    random: bool,
}

fn parse_broken(s: &str) -> Result<BrokenKind, String> {
    BrokenKind::parse(s)
        .ok_or_else(|| format!("expected cycle, shared_bottleneck or capacity_deficit, got `{s}`"))
}

/// Input errors; everything else is reported through the exit status.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli.command, &mut out);
    let _ = io::stdout().write_all(out.as_bytes());
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(input: &Input) -> Result<FlowNetwork, Failure> {
    let text = if input.file.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(&input.file)
            .map_err(|e| Failure(format!("{}: {e}", input.file.display())))?
    };
    parse(&text).map_err(|e| Failure(format!("{}: {e}", input.file.display())))
}

fn emit(
    out: &mut String,
    format: Format,
    text: impl FnOnce() -> String,
    doc: impl FnOnce() -> Value,
) {
    match format {
        Format::Text => out.push_str(&text()),
        Format::Json => out.push_str(&render_json(&doc())),
    }
}

fn not_convex(out: &mut String, format: Format, network: &FlowNetwork, verdict: &Verdict) {
    emit(
        out,
        format,
        || verdict_text(network, verdict, None),
        || verdict_json(network, verdict, None),
    );
}

fn coalition(network: &FlowNetwork, list: &str) -> Result<Coalition, Failure> {
    if list.trim() == "@all" {
        return Ok(network.grand_coalition());
    }
    let labels: Vec<&str> = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    Ok(network.coalition(labels)?)
}

fn allocation(network: &FlowNetwork, list: &str) -> Result<Allocation, Failure> {
    let mut allocation = Allocation::from_vec(vec![Rational::zero(); network.arc_count()]);
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (label, value) = item
            .split_once('=')
            .ok_or_else(|| Failure(format!("expected label=value, got `{item}`")))?;
        let arc = network
            .arc_index(label.trim())
            .ok_or_else(|| Failure(format!("unknown arc `{}`", label.trim())))?;
        let value = parse_rational(value.trim())
            .ok_or_else(|| Failure(format!("invalid payoff `{}`", value.trim())))?;
        allocation.set(arc, value);
    }
    Ok(allocation)
}

fn certificate_or_report(
    out: &mut String,
    format: Format,
    network: &FlowNetwork,
) -> Option<Certificate> {
    let verdict = recognize(network);
    match verdict.certificate() {
        Some(c) => Some(c.clone()),
        None => {
            not_convex(out, format, network, &verdict);
            None
        }
    }
}

fn run(command: Command, out: &mut String) -> Outcome {
    match command {
        Command::Check { input, diagnostics } => {
            let n = load(&input)?;
            let verdict = recognize(&n);
            let report = diagnostics.then(|| structural_diagnostics(&n));
            emit(
                out,
                input.format,
                || verdict_text(&n, &verdict, report.as_ref()),
                || verdict_json(&n, &verdict, report.as_ref()),
            );
            Ok(verdict.is_convex())
        }
        Command::Reduce { input } => {
            let n = load(&input)?;
            let r = reduce(&n);
            let removed = n.labels_of(&r.removed);
            emit(
                out,
                input.format,
                || {
                    let text = serialize(&r.network);
                    if removed.is_empty() {
                        text
                    } else {
                        let (header, rest) = text.split_once('\n').expect("header line");
                        format!("{header}\n# removed: {}\n{rest}", removed.join(" "))
                    }
                },
                || json!({ "removed": removed, "network": serialize(&r.network) }),
            );
            Ok(true)
        }
        Command::Value {
            input,
            coalition: list,
        } => {
            let n = load(&input)?;
            let s = coalition(&n, &list)?;
            let v = match recognize(&n).certificate() {
                Some(c) => gamma_fast(c, &s)?,
                None => gamma(&n, &s)?,
            };
            emit(
                out,
                input.format,
                || format!("{v}\n"),
                || json!({ "value": v.to_string() }),
            );
            Ok(true)
        }
        Command::Shapley {
            input,
            exact_bruteforce,
        } => {
            let n = load(&input)?;
            let phi = if exact_bruteforce {
                shapley_bruteforce(&n)?
            } else {
                match certificate_or_report(out, input.format, &n) {
                    Some(c) => shapley_fast(&c),
                    None => {
                        eprintln!("not convex; use --exact-bruteforce on small instances");
                        return Ok(false);
                    }
                }
            };
            emit(
                out,
                input.format,
                || allocation_text(&n, &phi),
                || json!({ "allocation": allocation_json(&n, &phi) }),
            );
            Ok(true)
        }
        Command::Dividends { input } => {
            let n = load(&input)?;
            let terms: Vec<(Coalition, String)> = match recognize(&n).certificate() {
                Some(c) => c.decomposition().map(|(s, w)| (s, w.to_string())).collect(),
                None => dividends(&n)?
                    .nonzero()
                    .map(|(s, d)| (s, format_rational(d)))
                    .collect(),
            };
            let mut terms = terms;
            terms.sort_by(|a, b| a.0.iter().cmp(b.0.iter()));
            emit(
                out,
                input.format,
                || {
                    terms
                        .iter()
                        .map(|(s, d)| {
                            format!(
                                "{} {d}\n",
                                n.labels_of(&s.iter().collect::<Vec<_>>()).join(",")
                            )
                        })
                        .collect()
                },
                || {
                    let rows: Vec<Value> = terms
                        .iter()
                        .map(|(s, d)| {
                            json!({
                                "coalition": n.labels_of(&s.iter().collect::<Vec<_>>()),
                                "dividend": d,
                            })
                        })
                        .collect();
                    json!({ "dividends": rows })
                },
            );
            Ok(true)
        }
        Command::Oracle { input } => {
            let n = load(&input)?;
            let violation = is_convex_bruteforce(&n)?;
            emit(
                out,
                input.format,
                || match &violation {
                    None => "convex\n".to_owned(),
                    Some(v) => format!(
                        "not convex\nplayer {} adds {} to {{{}}} but {} to {{{}}}\n",
                        n.label(v.player),
                        format_rational(&v.smaller_marginal()),
                        n.labels_of(&v.smaller.iter().collect::<Vec<_>>()).join(","),
                        format_rational(&v.larger_marginal()),
                        n.labels_of(&v.larger.iter().collect::<Vec<_>>()).join(","),
                    ),
                },
                || match &violation {
                    None => json!({ "verdict": "convex" }),
                    Some(v) => {
                        json!({ "verdict": "not_convex", "violation": violation_json(&n, v) })
                    }
                },
            );
            Ok(violation.is_none())
        }
        Command::CoreCheck {
            input,
            allocation: list,
        } => {
            let n = load(&input)?;
            let x = allocation(&n, &list)?;
            let check = match core_membership(&n, &x) {
                Err(flowgame::Error::NotEfficient { allocated, value }) => {
                    emit(
                        out,
                        input.format,
                        || {
                            format!("not efficient: pays out {allocated}, grand coalition is worth {value}\n")
                        },
                        || json!({ "in_core": false, "efficient": false, "allocated": allocated, "value": value }),
                    );
                    return Ok(false);
                }
                other => other?,
            };
            emit(
                out,
                input.format,
                || match &check {
                    CoreCheck::InCore => "in core\n".to_owned(),
                    CoreCheck::Blocked {
                        coalition,
                        payoff,
                        value,
                    } => format!(
                        "blocked by {{{}}}: receives {} but is worth {value}\n",
                        n.labels_of(&coalition.iter().collect::<Vec<_>>()).join(","),
                        format_rational(payoff),
                    ),
                },
                || core_check_json(&n, &check),
            );
            Ok(check == CoreCheck::InCore)
        }
        Command::Pmas { input, verify } => {
            let n = load(&input)?;
            let Some(cert) = certificate_or_report(out, input.format, &n) else {
                return Ok(false);
            };
            let scheme = pmas_construct(&cert)?;
            let failure = if verify {
                verify_pmas(&n, &scheme)?
            } else {
                None
            };
            emit(
                out,
                input.format,
                || {
                    let mut text = String::new();
                    for (s, y) in scheme.iter() {
                        let members: Vec<usize> = s.iter().collect();
                        text.push_str(&format!("{{{}}}", n.labels_of(&members).join(",")));
                        for (a, v) in y.iter() {
                            text.push_str(&format!(" {}={}", n.label(a), format_rational(v)));
                        }
                        text.push('\n');
                    }
                    if let Some(f) = &failure {
                        text.push_str(&format!(
                            "verification failed: {}\n",
                            pmas_failure_json(&n, f)
                        ));
                    }
                    text
                },
                || {
                    let mut doc = json!({ "pmas": pmas_json(&n, &scheme) });
                    if verify {
                        doc["verified"] = Value::Bool(failure.is_none());
                    }
                    if let Some(f) = &failure {
                        doc["failure"] = pmas_failure_json(&n, f);
                    }
                    doc
                },
            );
            Ok(failure.is_none())
        }
        Command::Decompose { input } => {
            let n = load(&input)?;
            let Some(cert) = certificate_or_report(out, input.format, &n) else {
                return Ok(false);
            };
            emit(
                out,
                input.format,
                || {
                    cert.decomposition()
                        .map(|(s, w)| {
                            let members: Vec<usize> = s.iter().collect();
                            format!("{w} * u[{}]\n", n.labels_of(&members).join(","))
                        })
                        .collect()
                },
                || {
                    let terms: Vec<Value> = cert
                        .decomposition()
                        .map(|(s, w)| {
                            let members: Vec<usize> = s.iter().collect();
                            json!({ "coalition": n.labels_of(&members), "weight": w.to_string() })
                        })
                        .collect();
                    json!({ "decomposition": terms })
                },
            );
            Ok(true)
        }
        Command::Gen(args) => {
            if args.cap_min == 0 || args.cap_min > args.cap_max || args.paths == 0 {
                return Err(Failure(
                    "need 0 < cap-min <= cap-max and at least one path".into(),
                ));
            }
            let params = GenParams {
                paths: args.paths,
                depth: args.depth,
                cap_min: args.cap_min,
                cap_max: args.cap_max,
            };
            let n = if args.random {
                gen_random(args.seed, &RandomParams::default())
            } else if let Some(kind) = args.broken {
                gen_broken_with(args.seed, kind, &params)
            } else {
                gen_convex(args.seed, &params)
            };
            out.push_str(&serialize(&n));
            Ok(true)
        }
    }
}
