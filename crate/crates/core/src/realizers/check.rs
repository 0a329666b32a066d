//! Checking that a machine realizes a point map on a finite corpus.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::alphabets::{Name, NameOracle};
use crate::error::{FixtureError, WireError};
use crate::machines::{evaluate, Machine, Schedule};
use crate::scalar::ExactScalar;
use crate::spaces::{exact_name, grid_name, RepresentedSpace};
use crate::wire::Wire;

/// How a corpus point is turned into a rational-real name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NameKind {
    /// `φ(ε) = x`.
    Exact,
    /// `φ(ε)` = nearest multiple of `ε/2`.
    Grid,
}

impl NameKind {
    pub fn name<S: ExactScalar>(self, x: S) -> NameOracle<S, S> {
        match self {
            NameKind::Exact => exact_name(x),
            NameKind::Grid => grid_name(x),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NameKind::Exact => "exact",
            NameKind::Grid => "grid",
        }
    }
}

impl fmt::Display for NameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NameKind {
    type Err = FixtureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(NameKind::Exact),
            "grid" => Ok(NameKind::Grid),
            other => Err(FixtureError::NameKind(other.to_string())),
        }
    }
}

/// One line of a corpus file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub point: String,
    pub name_kind: String,
}

/// A point together with a name of it.
#[derive(Clone, Debug)]
pub struct Sample<P, Q, A> {
    pub point: P,
    pub name: NameOracle<Q, A>,
}

impl<S: ExactScalar> Sample<S, S, S> {
    pub fn real(point: S, kind: NameKind) -> Self {
        Sample {
            name: kind.name(point.clone()),
            point,
        }
    }
}

/// Parses `[{"point": "p/q", "name_kind": "exact" | "grid"}, …]`.
pub fn load_corpus<S: ExactScalar>(json: &str) -> Result<Vec<Sample<S, S, S>>, FixtureError> {
    let entries: Vec<CorpusEntry> = serde_json::from_str(json)?;
    entries
        .into_iter()
        .map(|e| {
            let x = S::parse_exact(&e.point).map_err(WireError::from)?;
            Ok(Sample::real(x, e.name_kind.parse()?))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub sample: usize,
    pub point: Value,
    /// `null` when the failure concerns a whole name rather than one answer.
    pub question: Value,
    pub answer: Value,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Undecided {
    pub sample: usize,
    pub point: Value,
    pub question: Value,
}

/// `{"samples", "failures", "undecided"}`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RealizerReport {
    pub samples: usize,
    pub failures: Vec<Failure>,
    pub undecided: Vec<Undecided>,
}

impl RealizerReport {
    /// No failures. Undecided entries are not failures.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Checks that `machine` maps the sampled names of each `x` to names of
/// `f(x)`.
///
/// Every sampled output question is evaluated along `schedule` up to
/// `fuel_cap`. With an answer check on `space_out` each answer is checked
/// on its own; otherwise, once every sampled question has an answer, the
/// answers are checked together as a name of `f(x)`. Questions without an
/// answer within the cap are reported as undecided and never as failures.
/// A sample whose name does not name its point is reported as a failure
/// and not evaluated.
#[allow(clippy::too_many_arguments)]
pub fn check_realizer<P, Q, A, P2, Q2, A2>(
    machine: &Machine<Q, A, Q2, A2>,
    f: impl Fn(&P) -> P2,
    space_in: &RepresentedSpace<P, Q, A>,
    space_out: &RepresentedSpace<P2, Q2, A2>,
    samples: &[Sample<P, Q, A>],
    fuel_cap: usize,
    schedule: Schedule,
) -> RealizerReport
where
    P: Wire,
    P2: Wire,
    Q2: Wire + PartialEq + Clone,
    A2: Wire + Clone,
{
    let mut report = RealizerReport {
        samples: samples.len(),
        ..Default::default()
    };
    for (i, sample) in samples.iter().enumerate() {
        if !space_in.is_name(&sample.name, &sample.point) {
            report.failures.push(Failure {
                sample: i,
                point: sample.point.to_wire(),
                question: Value::Null,
                answer: Value::Null,
                reason: format!("input is not a {} name of its point", space_in.name()),
            });
            continue;
        }
        let y = f(&sample.point);
        let mut answers: Vec<(Q2, A2)> = Vec::new();
        let mut complete = true;
        for q in space_out.sample_questions() {
            match evaluate(machine, &sample.name, q, fuel_cap, schedule) {
                Some((a, _)) => {
                    if space_out.answer_ok(&y, q, &a) == Some(false) {
                        report.failures.push(Failure {
                            sample: i,
                            point: sample.point.to_wire(),
                            question: q.to_wire(),
                            answer: a.to_wire(),
                            reason: format!("answer is not a valid {} answer for {}", space_out.name(), y.to_wire()),
                        });
                    }
                    answers.push((q.clone(), a));
                }
                None => {
                    complete = false;
                    report.undecided.push(Undecided {
                        sample: i,
                        point: sample.point.to_wire(),
                        question: q.to_wire(),
                    });
                }
            }
        }
        if space_out.has_answer_check() || !complete {
            continue;
        }
        let lookup = |q: &Q2| {
            answers
                .iter()
                .find(|(p, _)| p == q)
                .map(|(_, a)| a.clone())
                .expect("sampled question was answered")
        };
        if !space_out.is_name(&lookup as &dyn Name<Q2, A2>, &y) {
            report.failures.push(Failure {
                sample: i,
                point: sample.point.to_wire(),
                question: Value::Null,
                answer: Value::Array(answers.iter().map(|(_, a)| a.to_wire()).collect()),
                reason: format!("answers do not form a {} name of {}", space_out.name(), y.to_wire()),
            });
        }
    }
    report
}
