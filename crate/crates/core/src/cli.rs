//! `lhca` command-line front end.
//!
//! Every subcommand computes a plain-text rendering and a JSON payload.
//! Text is printed by default, the bare payload with `--json`, and a
//! [`ReportDocument`] envelope with `--report`. Exit codes: 0 success, 1
//! domain error, 2 usage error.

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{berlekamp_massey, minimal_period};
use crate::bits::BitSequence;
use crate::ca::{cycle_census_parallel, synthesize, CAState, RuleVector};
use crate::diffeq::{count_solution_classes, profile, solution_sequence, DifferenceEquation};
use crate::generators::{linearize, shrink_keystream, LfsrConfig, ShrinkingConfig};
use crate::gf2::BinaryPolynomial;
use crate::{selfcheck, Error};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(
    name = "lhca",
    version,
    about = "Linear hybrid 90/150 cellular automata toolkit"
)]
pub struct Cli {
    /// Print the JSON payload instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print the full JSON report envelope (command, inputs, outputs, version).
    #[arg(long, global = true)]
    pub report: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// Characteristic polynomial of a rule vector.
    Charpoly(RuleArg),
    /// A pair of mutually reversed automata for a primitive polynomial.
    Synth(PolyArg),
    /// Double a rule vector `--times` times.
    Concat(ConcatArgs),
    /// Time sequence of one cell.
    Run(RunArgs),
    /// Cycle structure of the transition map.
    Cycles(CyclesArgs),
    /// Closed-form solution bits.
    Solve(SolveArgs),
    /// Period, linear complexity and class of a solution.
    Profile(ProfileArgs),
    /// Berlekamp-Massey linear complexity and minimal polynomial.
    Bm(BitsArg),
    /// Minimal period of a bit string.
    Period(BitsArg),
    /// Shrinking-generator keystream.
    Shrink(ShrinkArgs),
    /// Build a CA model reproducing a keystream.
    Linearize(BitsArg),
    /// Run the built-in reproduction checks.
    VerifyPaper(NoArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Self::Charpoly(_) => "charpoly",
            Self::Synth(_) => "synth",
            Self::Concat(_) => "concat",
            Self::Run(_) => "run",
            Self::Cycles(_) => "cycles",
            Self::Solve(_) => "solve",
            Self::Profile(_) => "profile",
            Self::Bm(_) => "bm",
            Self::Period(_) => "period",
            Self::Shrink(_) => "shrink",
            Self::Linearize(_) => "linearize",
            Self::VerifyPaper(_) => "verify-paper",
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct RuleArg {
    /// Rule vector, leftmost = cell 1, 1 = rule 150.
    pub rule: String,
}

#[derive(Debug, Args, Serialize)]
pub struct PolyArg {
    /// Polynomial, sparse (x^3+x^2+1) or hex mask (0xd).
    pub poly: String,
}

#[derive(Debug, Args, Serialize)]
pub struct ConcatArgs {
    pub rule: String,
    #[arg(long, default_value_t = 1)]
    pub times: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct RunArgs {
    pub rule: String,
    /// Initial state, same convention as the rule.
    pub state: String,
    #[arg(long, default_value_t = 1)]
    pub cell: usize,
    #[arg(long)]
    pub len: usize,
    /// Also print every state.
    #[arg(long)]
    pub states: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct CyclesArgs {
    pub rule: String,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct SolveArgs {
    #[arg(long)]
    pub poly: String,
    #[arg(long = "mult")]
    pub mult: u32,
    /// Comma-separated hex coordinates of A_0..A_{p-1}.
    #[arg(long)]
    pub coeffs: String,
    #[arg(long)]
    pub len: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct ProfileArgs {
    #[arg(long)]
    pub poly: String,
    #[arg(long = "mult")]
    pub mult: u32,
    #[arg(long)]
    pub coeffs: String,
}

#[derive(Debug, Args, Serialize)]
pub struct BitsArg {
    #[arg(long)]
    pub bits: String,
}

#[derive(Debug, Args, Serialize)]
pub struct ShrinkArgs {
    #[arg(long)]
    pub control_poly: String,
    #[arg(long)]
    pub control_seed: String,
    #[arg(long)]
    pub data_poly: String,
    #[arg(long)]
    pub data_seed: String,
    #[arg(long)]
    pub len: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct NoArgs {}

/// Machine-readable result envelope. Identical inputs give byte-identical
/// output.
#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub artifact_version: String,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Rendered {
    text: String,
    json: Value,
    ok: bool,
}

impl Rendered {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Self {
            text: text.into(),
            json,
            ok: true,
        }
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: msg,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: msg,
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(r) => {
            let stdout = if cli.report {
                let doc = ReportDocument {
                    command: cli.command.name().to_string(),
                    inputs: serde_json::to_value(&cli.command).expect("plain args"),
                    outputs: r.json,
                    artifact_version: ARTIFACT_VERSION.to_string(),
                };
                serde_json::to_string(&doc).expect("plain struct") + "\n"
            } else if cli.json {
                r.json.to_string() + "\n"
            } else {
                r.text + "\n"
            };
            Outcome {
                code: if r.ok { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn parse_poly(s: &str) -> Result<BinaryPolynomial, Error> {
    Ok(s.parse()?)
}

fn parse_rule(s: &str) -> Result<RuleVector, Error> {
    Ok(s.parse()?)
}

fn parse_bits(s: &str) -> Result<BitSequence, Error> {
    Ok(s.parse()?)
}

/// `"1,0x1f,3"` -> `[1, 31, 3]`; values are hex with optional `0x`.
pub fn parse_coeffs(s: &str) -> Result<Vec<u64>, Error> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            let digits = t
                .strip_prefix("0x")
                .or_else(|| t.strip_prefix("0X"))
                .unwrap_or(t);
            u64::from_str_radix(digits, 16)
                .map_err(|_| Error::Invalid(format!("bad coefficient {t:?} in {s:?}")))
        })
        .collect()
}

fn execute(cmd: &Command) -> Result<Rendered, Error> {
    match cmd {
        Command::Charpoly(a) => {
            let p = parse_rule(&a.rule)?.char_poly();
            Ok(Rendered::new(
                p.to_string(),
                json!({ "poly": p.to_string(), "hex": p.to_hex() }),
            ))
        }
        Command::Synth(a) => {
            let (first, second) = synthesize(&parse_poly(&a.poly)?)?;
            Ok(Rendered::new(
                format!("{first}\n{second}"),
                json!({ "pair": [first.to_string(), second.to_string()] }),
            ))
        }
        Command::Concat(a) => {
            let mut rule = parse_rule(&a.rule)?;
            for _ in 0..a.times {
                rule = rule.concat_double();
            }
            Ok(Rendered::new(
                rule.to_string(),
                json!({ "rule": rule.to_string(), "poly": rule.char_poly().to_string() }),
            ))
        }
        Command::Run(a) => {
            let rule = parse_rule(&a.rule)?;
            let s0: CAState = a.state.parse()?;
            let column = rule.run_column(&s0, a.cell, a.len)?;
            let states: Vec<String> = rule
                .evolve(&s0, a.len)?
                .iter()
                .map(|s| s.to_string())
                .collect();
            let text = if a.states {
                states
                    .iter()
                    .zip(column.as_slice())
                    .map(|(s, &b)| format!("{s} {}", b as u8))
                    .collect::<Vec<_>>()
                    .join("\n")
            } else {
                column.to_string()
            };
            Ok(Rendered::new(
                text,
                json!({ "column": column.to_string(), "states": states }),
            ))
        }
        Command::Cycles(a) => {
            let census = cycle_census_parallel(&parse_rule(&a.rule)?, a.threads)?;
            let mut lines = Vec::new();
            for c in &census.cycles {
                let hist: Vec<String> = c
                    .symmetry
                    .iter()
                    .map(|(k, v)| format!("{}={v}", k.as_str()))
                    .collect();
                lines.push(format!(
                    "length {} count {} {}",
                    c.length,
                    c.count,
                    hist.join(" ")
                ));
            }
            lines.push(format!(
                "total {} states in {} cycles",
                census.total_states(),
                census.total_cycles()
            ));
            Ok(Rendered::new(
                lines.join("\n"),
                serde_json::to_value(&census).expect("plain struct"),
            ))
        }
        Command::Solve(a) => {
            let eq = DifferenceEquation::new(parse_poly(&a.poly)?, a.mult)?;
            let coeffs = eq.coeffs(&parse_coeffs(&a.coeffs)?)?;
            let s = solution_sequence(&eq, &coeffs, a.len)?;
            Ok(Rendered::new(
                s.to_string(),
                json!({ "bits": s.to_string() }),
            ))
        }
        Command::Profile(a) => {
            let eq = DifferenceEquation::new(parse_poly(&a.poly)?, a.mult)?;
            let coeffs = eq.coeffs(&parse_coeffs(&a.coeffs)?)?;
            let prof = profile(&eq, &coeffs)?;
            let count = count_solution_classes(&eq, prof.class_index)?;
            let payload = json!({
                "period": prof.period,
                "lc": prof.linear_complexity,
                "class_index": prof.class_index,
                "count_in_class": count,
            });
            Ok(Rendered::new(payload.to_string(), payload))
        }
        Command::Bm(a) => {
            let prof = berlekamp_massey(&parse_bits(&a.bits)?);
            let payload = prof.to_json();
            Ok(Rendered::new(payload.to_string(), payload))
        }
        Command::Period(a) => {
            let d = minimal_period(&parse_bits(&a.bits)?);
            Ok(Rendered::new(d.to_string(), json!({ "period": d })))
        }
        Command::Shrink(a) => {
            let cfg = ShrinkingConfig {
                control: LfsrConfig::new(
                    parse_poly(&a.control_poly)?,
                    parse_bits(&a.control_seed)?,
                )?,
                data: LfsrConfig::new(parse_poly(&a.data_poly)?, parse_bits(&a.data_seed)?)?,
            };
            let ks = shrink_keystream(&cfg, a.len)?;
            Ok(Rendered::new(
                ks.to_string(),
                json!({ "bits": ks.to_string() }),
            ))
        }
        Command::Linearize(a) => {
            let lin = linearize(&parse_bits(&a.bits)?)?;
            let text = format!(
                "minimal polynomial ({})^{}\nrule {}\ninitial state {}\nread cell {}\nperiod {}{}",
                lin.base,
                lin.multiplicity,
                lin.model.rule,
                lin.model.initial_state,
                lin.model.read_cell,
                lin.period,
                if lin.full_period_verified {
                    " (verified)"
                } else {
                    " (window shorter than period)"
                }
            );
            Ok(Rendered::new(text, lin.to_json()))
        }
        Command::VerifyPaper(_) => {
            let results = selfcheck::run_all();
            let ok = results.iter().all(|r| r.passed);
            let text = results
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join("\n");
            let json = json!({
                "passed": ok,
                "checks": results
                    .iter()
                    .map(|r| json!({ "name": r.name, "passed": r.passed, "detail": r.detail }))
                    .collect::<Vec<_>>(),
            });
            Ok(Rendered { text, json, ok })
        }
    }
}
