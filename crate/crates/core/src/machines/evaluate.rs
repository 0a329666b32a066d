use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use super::{ContinuousMachine, Machine};
use crate::alphabets::Name;
use crate::wire::Wire;

/// Order in which efforts are tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Schedule {
    /// `0, 1, 2, 3, …`
    Linear,
    /// `0, 1, 2, 4, 8, …`
    #[default]
    PowersOfTwo,
}

impl Schedule {
    pub fn as_str(self) -> &'static str {
        match self {
            Schedule::Linear => "linear",
            Schedule::PowersOfTwo => "powers_of_two",
        }
    }

    /// Efforts visited up to and including `cap`.
    pub fn efforts(self, cap: usize) -> impl Iterator<Item = usize> {
        let mut next = Some(0usize);
        std::iter::from_fn(move || {
            let n = next.filter(|&n| n <= cap)?;
            next = match self {
                Schedule::Linear => n.checked_add(1),
                Schedule::PowersOfTwo if n == 0 => Some(1),
                Schedule::PowersOfTwo => n.checked_mul(2),
            };
            Some(n)
        })
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Schedule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear" => Ok(Schedule::Linear),
            "powers_of_two" => Ok(Schedule::PowersOfTwo),
            other => Err(format!("unknown schedule `{other}` (expected linear or powers_of_two)")),
        }
    }
}

/// First answer along the schedule with its effort. `None` means no effort
/// up to `fuel_cap` produced an answer; it is divergence up to the cap, not
/// an error.
pub fn evaluate<Q, A, Q2, A2>(
    machine: &Machine<Q, A, Q2, A2>,
    phi: &dyn Name<Q, A>,
    q: &Q2,
    fuel_cap: usize,
    schedule: Schedule,
) -> Option<(A2, usize)> {
    schedule
        .efforts(fuel_cap)
        .find_map(|n| machine.run(phi, n, q).map(|a| (a, n)))
}

/// One effort tried by [`evaluate_traced`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Attempt {
    pub n: usize,
    pub result: Value,
    pub modulus: Vec<Value>,
}

/// Record of one evaluation, in the CLI's JSON layout.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trace {
    pub effort_schedule: String,
    pub attempts: Vec<Attempt>,
    #[serde(rename = "final")]
    pub final_value: Value,
    pub fuel_cap: usize,
}

/// [`evaluate`] on a continuous machine, recording the answer and modulus
/// list at every visited effort.
pub fn evaluate_traced<Q: Wire, A, Q2, A2: Wire>(
    cm: &ContinuousMachine<Q, A, Q2, A2>,
    phi: &dyn Name<Q, A>,
    q: &Q2,
    fuel_cap: usize,
    schedule: Schedule,
) -> (Option<(A2, usize)>, Trace) {
    let mut attempts = Vec::new();
    let mut outcome = None;
    for n in schedule.efforts(fuel_cap) {
        let result = cm.run(phi, n, q);
        attempts.push(Attempt {
            n,
            result: result.as_ref().map_or_else(|| Value::from("none"), Wire::to_wire),
            modulus: cm.query_list(phi, n, q).iter().map(Wire::to_wire).collect(),
        });
        if let Some(a) = result {
            outcome = Some((a, n));
            break;
        }
    }
    let trace = Trace {
        effort_schedule: schedule.as_str().to_string(),
        attempts,
        final_value: outcome.as_ref().map_or(Value::Null, |(a, _)| a.to_wire()),
        fuel_cap,
    };
    (outcome, trace)
}

/// Outcome of a test-scale membership check `ψ ∈ F_M(φ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Every question received `ψ(q')` at some effort within the cap.
    Member,
    /// Every question got some answer within the cap, but at least one
    /// never got `ψ(q')`.
    Excluded,
    /// Not a member within the cap, and at least one question got no answer
    /// at all: more fuel might change the verdict.
    Undecided,
}

pub fn in_f_m<Q, A, Q2, A2: PartialEq>(
    machine: &Machine<Q, A, Q2, A2>,
    phi: &dyn Name<Q, A>,
    psi: &dyn Name<Q2, A2>,
    questions: &[Q2],
    fuel_cap: usize,
) -> Membership {
    let mut all_matched = true;
    let mut silent = false;
    for q in questions {
        let expected = psi.answer(q);
        let mut answered = false;
        let mut matched = false;
        for n in 0..=fuel_cap {
            if let Some(a) = machine.run(phi, n, q) {
                answered = true;
                if a == expected {
                    matched = true;
                    break;
                }
            }
        }
        all_matched &= matched;
        silent |= !answered;
    }
    match (all_matched, silent) {
        (true, _) => Membership::Member,
        (false, true) => Membership::Undecided,
        (false, false) => Membership::Excluded,
    }
}
