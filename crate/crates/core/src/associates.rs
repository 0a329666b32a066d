//! Associates: the function-space encoding of continuous operators.
//!
//! An associate answers a pair `(φ̂, q')` of a finite function and an output
//! question either with a list of input questions it needs answered
//! ([`Reply::Query`]) or with a final answer ([`Reply::Answer`]). Running the
//! dialogue against a name (`φ_0 = ε`, `φ_{n+1} = φ_n ⧺ φ|_K` on `?K`) turns
//! an associate into a continuous machine, [`dialogue_machine`]. Conversely
//! [`machine_to_associate`] builds an associate of `F_M` from a continuous
//! machine `(M, μ)`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use serde_json::Value;

use crate::alphabets::{extend_with_default, list_diff, sublist, FiniteFunction, Name, TableOracle};
use crate::machines::{ContinuousMachine, Machine, Modulus};
use crate::wire::Wire;

#[derive(Clone, Debug, PartialEq)]
pub enum Reply<Q, A2> {
    /// `?K`
    Query(Vec<Q>),
    /// `!a'`
    Answer(A2),
}

type AssociateFn<Q, A, Q2, A2> = dyn Fn(&FiniteFunction<Q, A>, &Q2) -> Reply<Q, A2> + Send + Sync;

pub struct Associate<Q, A, Q2, A2> {
    reply: Arc<AssociateFn<Q, A, Q2, A2>>,
}

impl<Q, A, Q2, A2> Associate<Q, A, Q2, A2> {
    pub fn new<F>(reply: F) -> Self
    where
        F: Fn(&FiniteFunction<Q, A>, &Q2) -> Reply<Q, A2> + Send + Sync + 'static,
    {
        Associate { reply: Arc::new(reply) }
    }

    pub fn reply(&self, phi_hat: &FiniteFunction<Q, A>, q: &Q2) -> Reply<Q, A2> {
        (self.reply)(phi_hat, q)
    }
}

impl<Q, A, Q2, A2> Clone for Associate<Q, A, Q2, A2> {
    fn clone(&self) -> Self {
        Associate {
            reply: Arc::clone(&self.reply),
        }
    }
}

impl<Q, A, Q2, A2> fmt::Debug for Associate<Q, A, Q2, A2> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Associate(..)")
    }
}

/// The finite function after `step` dialogue rounds.
#[derive(Clone, Debug, PartialEq)]
pub struct DialogueState<Q, A> {
    pub phi_n: FiniteFunction<Q, A>,
    pub step: usize,
}

impl<Q: PartialEq + Clone, A: Clone> DialogueState<Q, A> {
    pub fn start() -> Self {
        DialogueState {
            phi_n: FiniteFunction::new(),
            step: 0,
        }
    }

    /// One round: on `?K` append `φ|_K`, otherwise keep `φ_n`. Returns the
    /// reply that was consulted.
    pub fn advance<Q2, A2>(&mut self, psi: &Associate<Q, A, Q2, A2>, phi: &dyn Name<Q, A>, q: &Q2) -> Reply<Q, A2> {
        let reply = psi.reply(&self.phi_n, q);
        if let Reply::Query(k) = &reply {
            self.phi_n.append_restriction(phi, k);
        }
        self.step += 1;
        reply
    }
}

/// `φ_n` for the given name and output question.
pub fn dialogue_state<Q: PartialEq + Clone, A: Clone, Q2, A2>(
    psi: &Associate<Q, A, Q2, A2>,
    phi: &dyn Name<Q, A>,
    q: &Q2,
    n: usize,
) -> DialogueState<Q, A> {
    let mut state = DialogueState::start();
    for _ in 0..n {
        state.advance(psi, phi, q);
    }
    state
}

/// `(M_ψ, μ_ψ)`: `M_ψ(φ)(n, q')` is `Some(a')` iff `ψ(φ_n, q') = !a'`, and
/// `μ_ψ(φ)(n, q') = dom(φ_n)` (entry order, duplicates kept).
///
/// Monotonicity is not claimed for dialogue machines; route them through
/// [`use_first`](crate::machines::use_first) where it is needed.
pub fn dialogue_machine<Q, A, Q2, A2>(psi: &Associate<Q, A, Q2, A2>) -> ContinuousMachine<Q, A, Q2, A2>
where
    Q: PartialEq + Clone + 'static,
    A: Clone + 'static,
    Q2: 'static,
    A2: 'static,
{
    let assoc = psi.clone();
    let machine = Machine::new(move |phi: &dyn Name<Q, A>, n, q: &Q2| {
        let state = dialogue_state(&assoc, phi, q, n);
        match assoc.reply(&state.phi_n, q) {
            Reply::Answer(a) => Some(a),
            Reply::Query(_) => None,
        }
    });
    let assoc = psi.clone();
    let modulus = Modulus::new(move |phi: &dyn Name<Q, A>, n, q: &Q2| dialogue_state(&assoc, phi, q, n).phi_n.domain());
    ContinuousMachine::new(machine, modulus)
}

/// Construction variants for [`machine_to_associate_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AssociateOptions {
    /// Extend `φ̂` by its first listed answer instead of the default answer,
    /// asking the default question while `φ̂` is empty.
    pub first_answer_default: bool,
    /// Require `M(φ_φ̂)(n, q') = None` for all `n ≤ m` (rather than `n < m`)
    /// before asking for the missing part of `μ(φ_φ̂)(m, q')`. With this
    /// reading, a machine that answers on the default-extended name before
    /// its modulus is covered stalls forever on the default question.
    pub literal_query_guard: bool,
}

/// `ψ_{M,μ}` with the default options.
pub fn machine_to_associate<Q, A, Q2, A2>(
    cm: &ContinuousMachine<Q, A, Q2, A2>,
    q_default: Q,
    a_default: A,
) -> Associate<Q, A, Q2, A2>
where
    Q: PartialEq + Clone + Send + Sync + 'static,
    A: Clone + Send + Sync + 'static,
    Q2: 'static,
    A2: 'static,
{
    machine_to_associate_with(cm, q_default, a_default, AssociateOptions::default())
}

/// An associate of `F_M` built from a continuous machine.
///
/// With `φ_φ̂` the default extension of `φ̂` and `dom = dom(φ̂)`:
///
/// 1. if some `m ≤ |φ̂|` has `M(φ_φ̂)(m, q') = Some(b')` and
///    `μ(φ_φ̂)(n, q') ⊆ dom` for all `n ≤ m`, answer `!b'` for the least such `m`;
/// 2. else if some `m ≤ |φ̂|` has `μ(φ_φ̂)(m, q') ⊄ dom` and
///    `M(φ_φ̂)(n, q') = None` for all `n < m`, ask for
///    `μ(φ_φ̂)(m, q') \ dom` at the least such `m`, in list order;
/// 3. otherwise ask for the default question, even if already bound.
///
/// The size `|φ̂|` counts entries, so every round of a dialogue raises the
/// effort bound by at least one.
pub fn machine_to_associate_with<Q, A, Q2, A2>(
    cm: &ContinuousMachine<Q, A, Q2, A2>,
    q_default: Q,
    a_default: A,
    options: AssociateOptions,
) -> Associate<Q, A, Q2, A2>
where
    Q: PartialEq + Clone + Send + Sync + 'static,
    A: Clone + Send + Sync + 'static,
    Q2: 'static,
    A2: 'static,
{
    let cm = cm.clone();
    Associate::new(move |phi_hat: &FiniteFunction<Q, A>, q: &Q2| {
        let fallback = if options.first_answer_default {
            match phi_hat.entries().first() {
                Some((_, a)) => a.clone(),
                None => return Reply::Query(vec![q_default.clone()]),
            }
        } else {
            a_default.clone()
        };
        let extended: TableOracle<Q, A> = extend_with_default(phi_hat, fallback);
        let dom = phi_hat.domain();
        let size = phi_hat.size();

        // Both scans stop at the first uncovered modulus list or the first
        // answer, so one pass decides cases 1 and 2.
        for m in 0..=size {
            let answer = cm.run(&extended, m, q);
            let list = cm.query_list(&extended, m, q);
            let covered = sublist(&list, &dom);
            if options.literal_query_guard && answer.is_some() && !covered {
                break;
            }
            if !covered {
                return Reply::Query(list_diff(&list, &dom));
            }
            if let Some(b) = answer {
                return Reply::Answer(b);
            }
        }
        Reply::Query(vec![q_default.clone()])
    })
}

/// One consulted reply of a dialogue.
#[derive(Clone, Debug, PartialEq)]
pub struct Round<Q, A2> {
    pub size: usize,
    pub reply: Reply<Q, A2>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Transcript<Q, A2> {
    pub rounds: Vec<Round<Q, A2>>,
    pub answered: bool,
}

impl<Q, A2> Transcript<Q, A2> {
    pub fn answer(&self) -> Option<&A2> {
        match self.rounds.last().map(|r| &r.reply) {
            Some(Reply::Answer(a)) => Some(a),
            _ => None,
        }
    }
}

/// Runs the dialogue for at most `max_rounds` replies, stopping at the first
/// answer.
pub fn dialogue_trace<Q: PartialEq + Clone, A: Clone, Q2, A2>(
    psi: &Associate<Q, A, Q2, A2>,
    phi: &dyn Name<Q, A>,
    q: &Q2,
    max_rounds: usize,
) -> Transcript<Q, A2> {
    let mut state = DialogueState::start();
    let mut rounds = Vec::new();
    for _ in 0..max_rounds {
        let size = state.phi_n.size();
        let reply = state.advance(psi, phi, q);
        let done = matches!(reply, Reply::Answer(_));
        rounds.push(Round { size, reply });
        if done {
            return Transcript { rounds, answered: true };
        }
    }
    Transcript {
        rounds,
        answered: false,
    }
}

#[derive(Serialize)]
struct RoundDoc {
    size: usize,
    tag: &'static str,
    payload: Value,
}

#[derive(Serialize)]
struct TranscriptDoc {
    rounds: Vec<RoundDoc>,
    answered: bool,
}

impl<Q: Wire, A2: Wire> Transcript<Q, A2> {
    /// `{"answered","rounds":[{"payload","size","tag"}…]}`, keys sorted.
    pub fn to_json(&self) -> Value {
        let doc = TranscriptDoc {
            rounds: self
                .rounds
                .iter()
                .map(|r| match &r.reply {
                    Reply::Query(k) => RoundDoc {
                        size: r.size,
                        tag: "query",
                        payload: k.to_wire(),
                    },
                    Reply::Answer(a) => RoundDoc {
                        size: r.size,
                        tag: "answer",
                        payload: a.to_wire(),
                    },
                })
                .collect(),
            answered: self.answered,
        };
        serde_json::to_value(doc).expect("transcript serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabets::{lookup, NameOracle};
    use crate::machines::{check_modulus, check_self_modulating, evaluate, in_f_m, Membership, Schedule};

    type Small = Associate<u8, u8, u8, u8>;

    fn constant_answer() -> Small {
        Associate::new(|_, _| Reply::Answer(5))
    }

    /// Asks for question 0, then answers its value.
    fn head() -> Small {
        Associate::new(|phi_hat: &FiniteFunction<u8, u8>, _: &u8| match lookup(phi_hat, &0) {
            Some(a) => Reply::Answer(a),
            None => Reply::Query(vec![0]),
        })
    }

    fn divergent() -> Small {
        Associate::new(|_, _| Reply::Query(vec![0]))
    }

    fn all_names() -> Vec<NameOracle<u8, u8>> {
        (0..9u8)
            .map(|code| NameOracle::new(move |q: &u8| if *q < 2 { (code / 3u8.pow(*q as u32)) % 3 } else { 0 }))
            .collect()
    }

    #[test]
    fn zero_query_associate() {
        let cm = dialogue_machine(&constant_answer());
        let phi = |q: &u8| *q;
        assert_eq!(cm.run(&phi, 0, &1), Some(5));
        assert!(cm.query_list(&phi, 0, &1).is_empty());
        let t = dialogue_trace(&constant_answer(), &phi, &1, 10);
        assert_eq!(t.rounds.len(), 1);
        assert!(t.answered);
    }

    #[test]
    fn head_associate_two_step_dialogue() {
        let cm = dialogue_machine(&head());
        let phi = |q: &u8| q + 7;
        assert_eq!(cm.run(&phi, 0, &3), None);
        assert_eq!(cm.query_list(&phi, 0, &3), Vec::<u8>::new());
        assert_eq!(cm.run(&phi, 1, &3), Some(7));
        assert_eq!(cm.query_list(&phi, 1, &3), vec![0]);
        let t = dialogue_trace(&head(), &phi, &3, 10);
        assert_eq!(
            t.rounds,
            vec![
                Round { size: 0, reply: Reply::Query(vec![0]) },
                Round { size: 1, reply: Reply::Answer(7) },
            ]
        );
        assert_eq!(t.answer(), Some(&7));
    }

    #[test]
    fn divergent_associate() {
        let cm = dialogue_machine(&divergent());
        let phi = |q: &u8| *q;
        for n in 0..6 {
            assert_eq!(cm.run(&phi, n, &0), None);
            assert_eq!(cm.query_list(&phi, n, &0), vec![0; n]);
        }
        let t = dialogue_trace(&divergent(), &phi, &0, 5);
        assert_eq!(t.rounds.len(), 5);
        assert!(!t.answered);
        assert!(t.rounds.iter().all(|r| matches!(r.reply, Reply::Query(_))));
    }

    #[test]
    fn dialogue_moduli_are_self_modulating() {
        // adaptive: ask 0; if φ(0) = 0 answer, else ask 1 and answer the sum
        let adaptive: Small = Associate::new(|phi_hat: &FiniteFunction<u8, u8>, _: &u8| match lookup(phi_hat, &0) {
            None => Reply::Query(vec![0]),
            Some(0) => Reply::Answer(0),
            Some(a) => match lookup(phi_hat, &1) {
                None => Reply::Query(vec![1]),
                Some(b) => Reply::Answer(a + b),
            },
        });
        let cm = dialogue_machine(&adaptive);
        let names = all_names();
        assert!(check_modulus(&cm, &names, 4, &[0]).is_ok());
        assert!(check_self_modulating(&cm, &names, 4, &[0]).is_ok());
    }

    #[test]
    fn transcript_json_layout() {
        let phi = |q: &u8| q + 7;
        let t = dialogue_trace(&head(), &phi, &3, 10);
        assert_eq!(
            serde_json::to_string(&t.to_json()).unwrap(),
            r#"{"answered":true,"rounds":[{"payload":[0],"size":0,"tag":"query"},{"payload":7,"size":1,"tag":"answer"}]}"#
        );
    }

    fn cm(answer_on_default: bool) -> ContinuousMachine<u8, u8, u8, u8> {
        // echoes φ(0) with modulus [0]; the second variant stays silent when
        // φ(0) equals the default answer 0
        ContinuousMachine::new(
            Machine::new(move |phi: &dyn Name<u8, u8>, _, _: &u8| {
                let a = phi.answer(&0);
                (answer_on_default || a != 0).then_some(a)
            }),
            Modulus::new(|_: &dyn Name<u8, u8>, _, _: &u8| vec![0]),
        )
    }

    #[test]
    fn associate_case_selection_on_a_two_point_alphabet() {
        for answering in [true, false] {
            let psi = machine_to_associate(&cm(answering), 1, 0);
            // empty φ̂: modulus [0] uncovered at m = 0, no earlier answer → ask
            assert_eq!(psi.reply(&FiniteFunction::new(), &0), Reply::Query(vec![0]));
            for a in 0..2u8 {
                let bound = FiniteFunction::from_entries(vec![(0, a)]);
                let expected = if answering || a != 0 { Reply::Answer(a) } else { Reply::Query(vec![1]) };
                assert_eq!(psi.reply(&bound, &0), expected, "answering={answering} a={a}");
            }
        }
        // the literal guard stalls when M answers on the default extension
        let literal = machine_to_associate_with(
            &cm(true),
            1,
            0,
            AssociateOptions {
                literal_query_guard: true,
                ..Default::default()
            },
        );
        assert_eq!(literal.reply(&FiniteFunction::new(), &0), Reply::Query(vec![1]));
        let literal_silent = machine_to_associate_with(
            &cm(false),
            1,
            0,
            AssociateOptions {
                literal_query_guard: true,
                ..Default::default()
            },
        );
        assert_eq!(literal_silent.reply(&FiniteFunction::new(), &0), Reply::Query(vec![0]));
    }

    #[test]
    fn first_answer_default_variant() {
        let psi = machine_to_associate_with(
            &cm(true),
            1,
            0,
            AssociateOptions {
                first_answer_default: true,
                ..Default::default()
            },
        );
        assert_eq!(psi.reply(&FiniteFunction::new(), &0), Reply::Query(vec![1]));
        let phi = |q: &u8| if *q == 0 { 2 } else { 1 };
        let t = dialogue_trace(&psi, &phi, &0, 10);
        assert_eq!(t.answer(), Some(&2));
    }

    #[test]
    fn round_trip_on_all_small_names() {
        // answers φ(0) + φ(1) once n ≥ φ(0); modulus asks 0, then 1 when answering
        let m = ContinuousMachine::new(
            Machine::new(|phi: &dyn Name<u8, u8>, n, _: &u8| {
                let a = phi.answer(&0);
                (n >= a as usize).then(|| a + phi.answer(&1))
            }),
            Modulus::new(|phi: &dyn Name<u8, u8>, n, _: &u8| {
                if n >= phi.answer(&0) as usize {
                    vec![0, 1]
                } else {
                    vec![0]
                }
            }),
        );
        let names = all_names();
        assert!(check_modulus(&m, &names, 4, &[0]).is_ok());
        assert!(check_self_modulating(&m, &names, 4, &[0]).is_ok());
        let psi = machine_to_associate(&m, 0, 0);
        let back = dialogue_machine(&psi);
        for phi in &names {
            let (a, _) = evaluate(&back.machine, phi, &0, 20, Schedule::Linear).expect("dialogue answers");
            let want = move |_: &u8| a;
            assert_eq!(in_f_m(&m.machine, phi, &want, &[0], 20), Membership::Member);
        }
    }
}
