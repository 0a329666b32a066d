//! The `contmach` command line.
//!
//! Exit status: 0 on success, 1 on usage or input errors, 2 when the answer
//! is undecided within the effort cap, 3 when `check` finds failures.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::alphabets::{rationals, Name, NameOracle};
use crate::associates::{dialogue_trace, machine_to_associate};
use crate::machines::{compose_monotone, evaluate_traced, use_first, Schedule, Trace};
use crate::realizers::{check_realizer, inversion_machine, load_corpus, sign_kleenean, sign_machine, RealizerReport};
use crate::spaces::{exact_name, kleenean_of_prefix, kleeneans, rational_reals};
use crate::wire::Wire;
use crate::{ContinuousMachine, ExactScalar, Machine, Modulus, MonotoneRealMachine, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

const DEFAULT_MAX_EFFORT: usize = 1024;
const DEFAULT_SIGN_PREFIX: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "contmach", version, about = "Evaluate continuous machines on exact rational names")]
pub struct Invocation {
    #[command(subcommand)]
    pub command: Command,

    /// Largest effort tried (default 1024; 64 for `sign`).
    #[arg(long, global = true, value_name = "N")]
    pub max_effort: Option<usize>,

    #[arg(long, global = true, default_value = "powers_of_two", value_parser = parse_schedule)]
    pub schedule: Schedule,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the document here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Approximate 1/value to within eps.
    Invert {
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        value: Rational,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        eps: Rational,
    },
    /// Print the Kleenean name of sign(value) for indices 0..=max-effort.
    Sign {
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        value: Rational,
    },
    /// Evaluate a pipeline of real-to-real machines such as "invert|invert".
    Compose {
        #[arg(long, value_parser = parse_pipeline)]
        pipeline: Pipeline,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        value: Rational,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        eps: Rational,
    },
    /// Print the dialogue of the associate built from a machine.
    AssociateTrace {
        /// A pipeline of real machines, or `sign`.
        #[arg(long)]
        machine: String,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        value: Rational,
        /// eps for real machines, the Kleenean index for `sign`.
        #[arg(long)]
        question: String,
        #[arg(long, default_value_t = 64)]
        max_rounds: usize,
    },
    /// Check a machine against its point map on a corpus file.
    Check {
        /// A pipeline of real machines, or `sign`.
        #[arg(long)]
        machine: String,
        #[arg(long, value_name = "PATH")]
        corpus: PathBuf,
    },
}

/// A built-in real-to-real machine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Invert,
    Id,
}

impl Stage {
    fn machine(self) -> MonotoneRealMachine {
        match self {
            Stage::Invert => use_first(&inversion_machine()),
            Stage::Id => crate::MonotoneMachine::assume_monotone(ContinuousMachine::new(
                Machine::new(|phi: &dyn Name<Rational, Rational>, _, eps: &Rational| Some(phi.answer(eps))),
                Modulus::new(|_: &dyn Name<Rational, Rational>, _, eps: &Rational| vec![eps.clone()]),
            )),
        }
    }

    fn apply(self, x: &Rational) -> Option<Rational> {
        match self {
            Stage::Invert => (!x.is_zero()).then(|| Rational::from_int(1) / x.clone()),
            Stage::Id => Some(x.clone()),
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::parse_exact(s).map_err(|e| e.to_string())
}

fn parse_schedule(s: &str) -> Result<Schedule, String> {
    s.parse()
}

/// Stages separated by `|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pipeline(pub Vec<Stage>);

fn parse_pipeline(s: &str) -> Result<Pipeline, String> {
    s.split('|')
        .map(|stage| match stage.trim() {
            "invert" => Ok(Stage::Invert),
            "id" => Ok(Stage::Id),
            other => Err(format!("unknown machine `{other}` (expected invert or id)")),
        })
        .collect::<Result<_, _>>()
        .map(Pipeline)
}

/// Left to right: `a|b` feeds the output of `a` into `b`.
fn pipeline_machine(stages: &[Stage]) -> MonotoneRealMachine {
    let default = rationals::<Rational>().default_element();
    let mut stages = stages.iter();
    let first = stages.next().map_or(Stage::Id, |s| *s).machine();
    stages.fold(first, |inner, s| compose_monotone(&s.machine(), &inner, default.clone()))
}

fn pipeline_map(stages: &[Stage], x: &Rational) -> Option<Rational> {
    stages.iter().try_fold(x.clone(), |y, s| s.apply(&y))
}

fn pipeline_label(stages: &[Stage]) -> String {
    stages
        .iter()
        .map(|s| match s {
            Stage::Invert => "invert",
            Stage::Id => "id",
        })
        .collect::<Vec<_>>()
        .join("|")
}

struct Outcome {
    status: i32,
    json: Value,
    text: String,
}

struct UsageError(String);

fn trace_text(trace: &Trace) -> String {
    let mut out = format!("schedule: {}\nfuel cap: {}\n", trace.effort_schedule, trace.fuel_cap);
    for a in &trace.attempts {
        let modulus: Vec<String> = a.modulus.iter().map(value_text).collect();
        out += &format!("  n={} result={} modulus=[{}]\n", a.n, value_text(&a.result), modulus.join(", "));
    }
    out
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "undecided".to_string(),
        other => other.to_string(),
    }
}

fn evaluate_real(
    command: &str,
    machine: &MonotoneRealMachine,
    value: &Rational,
    eps: &Rational,
    cap: usize,
    schedule: Schedule,
    extra: &[(&str, Value)],
) -> Result<Outcome, UsageError> {
    if !eps.is_positive() {
        return Err(UsageError(format!("--eps must be positive, got {}", eps.canonical())));
    }
    let phi = exact_name(value.clone());
    let (outcome, trace) = evaluate_traced(machine.continuous(), &phi, eps, cap, schedule);
    let mut doc = json!({
        "command": command,
        "value": value.to_wire(),
        "eps": eps.to_wire(),
        "answer": outcome.as_ref().map_or(Value::Null, |(a, _)| a.to_wire()),
        "effort": outcome.as_ref().map(|(_, n)| *n),
        "trace": serde_json::to_value(&trace).expect("trace serializes"),
    });
    for (k, v) in extra {
        doc[*k] = v.clone();
    }
    let text = format!(
        "{command} {} at eps {}: {}\n{}",
        value.canonical(),
        eps.canonical(),
        outcome
            .as_ref()
            .map_or_else(|| "undecided".to_string(), |(a, n)| format!("{} (effort {n})", a.canonical())),
        trace_text(&trace)
    );
    Ok(Outcome {
        status: if outcome.is_some() { EXIT_OK } else { EXIT_UNDECIDED },
        json: doc,
        text,
    })
}

enum Target {
    Real(Vec<Stage>),
    Sign,
}

fn parse_target(s: &str) -> Result<Target, UsageError> {
    if s.trim() == "sign" {
        Ok(Target::Sign)
    } else {
        parse_pipeline(s).map(|p| Target::Real(p.0)).map_err(UsageError)
    }
}

fn associate_trace(machine: &str, value: &Rational, question: &str, max_rounds: usize) -> Result<Outcome, UsageError> {
    let default = rationals::<Rational>().default_element();
    let phi: NameOracle<Rational, Rational> = exact_name(value.clone());
    let (label, transcript, answered) = match parse_target(machine)? {
        Target::Real(stages) => {
            let q = parse_rational(question).map_err(UsageError)?;
            let psi = machine_to_associate(pipeline_machine(&stages).continuous(), default.clone(), default);
            let t = dialogue_trace(&psi, &phi, &q, max_rounds);
            (pipeline_label(&stages), t.to_json(), t.answered)
        }
        Target::Sign => {
            let k: usize = question
                .parse()
                .map_err(|_| UsageError(format!("--question for sign must be a natural number, got `{question}`")))?;
            let psi = machine_to_associate(sign_machine().continuous(), default.clone(), default);
            let t = dialogue_trace(&psi, &phi, &k, max_rounds);
            ("sign".to_string(), t.to_json(), t.answered)
        }
    };
    let rounds = transcript["rounds"].as_array().map_or(0, Vec::len);
    let mut text = format!("associate of {label} on {}: {rounds} rounds\n", value.canonical());
    for r in transcript["rounds"].as_array().into_iter().flatten() {
        text += &format!(
            "  |phi_hat|={} {} {}\n",
            r["size"],
            value_text(&r["tag"]),
            value_text(&r["payload"])
        );
    }
    Ok(Outcome {
        status: if answered { EXIT_OK } else { EXIT_UNDECIDED },
        json: json!({
            "command": "associate-trace",
            "machine": label,
            "value": value.to_wire(),
            "question": question,
            "transcript": transcript,
        }),
        text,
    })
}

fn check(machine: &str, corpus: &PathBuf, cap: usize, schedule: Schedule) -> Result<Outcome, UsageError> {
    let raw = fs::read_to_string(corpus).map_err(|e| UsageError(format!("cannot read {}: {e}", corpus.display())))?;
    let samples = load_corpus::<Rational>(&raw).map_err(|e| UsageError(format!("{}: {e}", corpus.display())))?;
    let reals = rational_reals::<Rational>();
    let (label, report): (String, RealizerReport) = match parse_target(machine)? {
        Target::Real(stages) => {
            let m = pipeline_machine(&stages);
            // outside the map's domain every answer is undecided, so the
            // placeholder image is never consulted
            let f = |x: &Rational| pipeline_map(&stages, x).unwrap_or_else(|| x.clone());
            let report = check_realizer(m.machine(), f, &reals, &reals, &samples, cap, schedule);
            (pipeline_label(&stages), report)
        }
        Target::Sign => {
            let m = sign_machine::<Rational>();
            let report = check_realizer(
                m.machine(),
                sign_kleenean,
                &reals,
                &kleeneans(DEFAULT_SIGN_PREFIX),
                &samples,
                cap,
                schedule,
            );
            ("sign".to_string(), report)
        }
    };
    let status = if !report.passed() {
        EXIT_CHECK_FAILED
    } else if !report.undecided.is_empty() {
        EXIT_UNDECIDED
    } else {
        EXIT_OK
    };
    let text = format!(
        "check {label}: {} samples, {} failures, {} undecided\n",
        report.samples,
        report.failures.len(),
        report.undecided.len()
    );
    let mut doc = report.to_json();
    doc["command"] = json!("check");
    doc["machine"] = json!(label);
    Ok(Outcome {
        status,
        json: doc,
        text,
    })
}

fn sign(value: &Rational, max_effort: usize) -> Outcome {
    let m = sign_machine::<Rational>();
    let phi = exact_name(value.clone());
    let prefix: Vec<Option<bool>> = (0..=max_effort).map(|k| m.run(&phi, max_effort, &k).flatten()).collect();
    let decided = prefix.iter().any(Option::is_some);
    let named = kleenean_of_prefix(&|k: &usize| prefix.get(*k).copied().flatten(), prefix.len());
    let shown: Vec<String> = prefix
        .iter()
        .map(|b| b.map_or_else(|| "none".to_string(), |b| b.to_string()))
        .collect();
    Outcome {
        status: if decided { EXIT_OK } else { EXIT_UNDECIDED },
        json: json!({
            "command": "sign",
            "value": value.to_wire(),
            "max_effort": max_effort,
            "prefix": prefix.to_wire(),
            "kleenean": named.to_wire(),
        }),
        text: format!("sign {} = {named}\nprefix: [{}]\n", value.canonical(), shown.join(", ")),
    }
}

fn execute(inv: &Invocation) -> Result<Outcome, UsageError> {
    let cap = inv.max_effort.unwrap_or(DEFAULT_MAX_EFFORT);
    match &inv.command {
        Command::Invert { value, eps } => {
            evaluate_real("invert", &Stage::Invert.machine(), value, eps, cap, inv.schedule, &[])
        }
        Command::Sign { value } => Ok(sign(value, inv.max_effort.unwrap_or(DEFAULT_SIGN_PREFIX))),
        Command::Compose { pipeline, value, eps } => evaluate_real(
            "compose",
            &pipeline_machine(&pipeline.0),
            value,
            eps,
            cap,
            inv.schedule,
            &[("pipeline", json!(pipeline_label(&pipeline.0)))],
        ),
        Command::AssociateTrace {
            machine,
            value,
            question,
            max_rounds,
        } => associate_trace(machine, value, question, *max_rounds),
        Command::Check { machine, corpus } => check(machine, corpus, cap, inv.schedule),
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// document to `--output` or `stdout`. Diagnostics go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let inv = match Invocation::try_parse_from(args) {
        Ok(inv) => inv,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return status;
        }
    };
    let outcome = match execute(&inv) {
        Ok(o) => o,
        Err(UsageError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let body = match inv.format {
        Format::Json => format!("{}\n", outcome.json),
        Format::Text => outcome.text,
    };
    let written = match &inv.output {
        Some(path) => fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout.write_all(body.as_bytes()).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => outcome.status,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let status = run(std::iter::once("contmach").chain(args.iter().copied()), &mut out, &mut err);
        (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn invert_two() {
        let (status, out, _) = run_args(&["invert", "--value", "2", "--eps", "1", "--max-effort", "64"]);
        assert_eq!(status, EXIT_OK);
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["answer"], "1/2");
        assert_eq!(doc["effort"], 0);
    }

    #[test]
    fn negative_and_decimal_values_parse() {
        let (status, out, _) = run_args(&["invert", "--value", "-2.5", "--eps", "1e-3", "--max-effort", "64"]);
        assert_eq!(status, EXIT_OK);
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["value"], "-5/2");
        assert_eq!(doc["eps"], "1/1000");
    }

    #[test]
    fn usage_errors_exit_one() {
        for args in [
            &["invert", "--value", "2/0", "--eps", "1"][..],
            &["invert", "--value", "two", "--eps", "1"],
            &["invert", "--value", "2", "--eps", "0"],
            &["invert", "--value", "2"],
            &["frobnicate"],
            &["compose", "--pipeline", "invert|sqrt", "--value", "2", "--eps", "1"],
            &["sign", "--value", "1", "--schedule", "fibonacci"],
            &["associate-trace", "--machine", "sign", "--value", "1", "--question", "1/2"],
            &["check", "--machine", "invert", "--corpus", "/nonexistent/corpus.json"],
        ] {
            let (status, out, err) = run_args(args);
            assert_eq!(status, EXIT_USAGE, "{args:?}");
            assert!(out.is_empty());
            assert!(!err.is_empty());
        }
    }

    #[test]
    fn help_exits_zero() {
        let (status, out, _) = run_args(&["--help"]);
        assert_eq!(status, EXIT_OK);
        assert!(out.contains("invert"));
    }

    #[test]
    fn compose_identity_pipeline() {
        let (status, out, _) =
            run_args(&["compose", "--pipeline", "invert|invert", "--value", "7/5", "--eps", "1/100", "--max-effort", "64"]);
        assert_eq!(status, EXIT_OK);
        let doc: Value = serde_json::from_str(&out).unwrap();
        let answer = Rational::parse_exact(doc["answer"].as_str().unwrap()).unwrap();
        assert!((answer - Rational::ratio(7, 5)).abs() <= Rational::ratio(1, 100));
        assert_eq!(doc["pipeline"], "invert|invert");
    }

    #[test]
    fn associate_trace_answers_for_invert() {
        let (status, out, _) =
            run_args(&["associate-trace", "--machine", "invert", "--value", "2", "--question", "1"]);
        assert_eq!(status, EXIT_OK);
        let doc: Value = serde_json::from_str(&out).unwrap();
        let rounds = doc["transcript"]["rounds"].as_array().unwrap();
        assert_eq!(rounds.last().unwrap()["payload"], "1/2");
    }

    #[test]
    fn text_format_mirrors_json() {
        let (status, out, _) = run_args(&["sign", "--value", "-1", "--max-effort", "3", "--format", "text"]);
        assert_eq!(status, EXIT_OK);
        assert_eq!(out, "sign -1/1 = false_K\nprefix: [none, none, false, false]\n");
    }

}
