//! Finite-sample checks of the machine invariants.
//!
//! Each check quantifies over an explicit list of names, the efforts
//! `0..=max_effort` and a list of output questions, and reports the first
//! counterexample found. On finite alphabets with every name listed the
//! checks are exhaustive.

use std::fmt;

use super::{ContinuousMachine, MonotoneMachine};
use crate::alphabets::{restriction_eq, NameOracle};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// Agreement on `μ(φ)(n, q')` did not force equal machine outputs.
    Modulus,
    /// Agreement on `μ(φ)(n, q')` did not force equal modulus lists.
    SelfModulation,
    /// An answer at effort `n` changed or vanished at a larger effort.
    Monotone,
    /// The modulus list changed after the machine had answered.
    TerminatesWith,
}

/// A counterexample. Names and questions are given by their index in the
/// lists passed to the check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub phi: usize,
    /// The second name for modulus checks, the same name otherwise.
    pub psi: usize,
    pub effort: usize,
    /// The larger effort for monotonicity checks, `effort` otherwise.
    pub other_effort: usize,
    pub question: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} violated: names #{} / #{}, efforts {} / {}, question #{}",
            self.kind, self.phi, self.psi, self.effort, self.other_effort, self.question
        )
    }
}

pub fn check_modulus<Q, A: PartialEq, Q2, A2: PartialEq>(
    cm: &ContinuousMachine<Q, A, Q2, A2>,
    names: &[NameOracle<Q, A>],
    max_effort: usize,
    questions: &[Q2],
) -> Result<(), Violation> {
    agreement_check(cm, names, max_effort, questions, ViolationKind::Modulus, |phi, psi, n, q| {
        cm.run(phi, n, q) == cm.run(psi, n, q)
    })
}

pub fn check_self_modulating<Q: PartialEq, A: PartialEq, Q2, A2>(
    cm: &ContinuousMachine<Q, A, Q2, A2>,
    names: &[NameOracle<Q, A>],
    max_effort: usize,
    questions: &[Q2],
) -> Result<(), Violation> {
    agreement_check(cm, names, max_effort, questions, ViolationKind::SelfModulation, |phi, psi, n, q| {
        cm.query_list(phi, n, q) == cm.query_list(psi, n, q)
    })
}

fn agreement_check<Q, A: PartialEq, Q2, A2>(
    cm: &ContinuousMachine<Q, A, Q2, A2>,
    names: &[NameOracle<Q, A>],
    max_effort: usize,
    questions: &[Q2],
    kind: ViolationKind,
    same: impl Fn(&NameOracle<Q, A>, &NameOracle<Q, A>, usize, &Q2) -> bool,
) -> Result<(), Violation> {
    for (i, phi) in names.iter().enumerate() {
        for n in 0..=max_effort {
            for (k, q) in questions.iter().enumerate() {
                let list = cm.query_list(phi, n, q);
                for (j, psi) in names.iter().enumerate() {
                    if restriction_eq(phi, psi, &list) && !same(phi, psi, n, q) {
                        return Err(Violation {
                            kind,
                            phi: i,
                            psi: j,
                            effort: n,
                            other_effort: n,
                            question: k,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Monotonicity of answers and stability of the modulus after the first
/// answer, for all `n ≤ m ≤ max_effort`.
pub fn check_monotone<Q: PartialEq, A, Q2, A2: PartialEq>(
    mm: &MonotoneMachine<Q, A, Q2, A2>,
    names: &[NameOracle<Q, A>],
    max_effort: usize,
    questions: &[Q2],
) -> Result<(), Violation> {
    for (i, phi) in names.iter().enumerate() {
        for (k, q) in questions.iter().enumerate() {
            let answers: Vec<Option<A2>> = (0..=max_effort).map(|n| mm.run(phi, n, q)).collect();
            let lists: Vec<Vec<Q>> = (0..=max_effort).map(|n| mm.query_list(phi, n, q)).collect();
            for n in 0..=max_effort {
                if answers[n].is_none() {
                    continue;
                }
                for m in n + 1..=max_effort {
                    let violation = |kind| Violation {
                        kind,
                        phi: i,
                        psi: i,
                        effort: n,
                        other_effort: m,
                        question: k,
                    };
                    if answers[m] != answers[n] {
                        return Err(violation(ViolationKind::Monotone));
                    }
                    if lists[m] != lists[n] {
                        return Err(violation(ViolationKind::TerminatesWith));
                    }
                }
            }
        }
    }
    Ok(())
}
