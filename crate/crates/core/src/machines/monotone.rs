use std::cell::RefCell;

use super::{ContinuousMachine, Machine, Modulus, MonotoneMachine};
use crate::alphabets::Name;

/// Monotonization by committing to the first effort that answers.
///
/// `⌊M⌋(φ)(n, q')` is `M(φ)(m, q')` for the least `m ≤ n` that answers.
/// The modulus concatenates `μ(φ)(i, q')` for `i = 0, …, min(n, m)`, left to
/// right with duplicates kept. Keeping only the last term is not a modulus in
/// general (see [`last_success_modulus`]).
pub fn use_first<Q, A, Q2, A2>(cm: &ContinuousMachine<Q, A, Q2, A2>) -> MonotoneMachine<Q, A, Q2, A2>
where
    Q: 'static,
    A: 'static,
    Q2: 'static,
    A2: 'static,
{
    let inner = cm.machine.clone();
    let machine = Machine::new(move |phi: &dyn Name<Q, A>, n, q: &Q2| {
        (0..=n).find_map(|m| inner.run(phi, m, q))
    });
    let inner = cm.clone();
    let modulus = Modulus::new(move |phi: &dyn Name<Q, A>, n, q: &Q2| {
        let mut list = Vec::new();
        for i in 0..=n {
            list.extend(inner.query_list(phi, i, q));
            if inner.run(phi, i, q).is_some() {
                break;
            }
        }
        list
    });
    MonotoneMachine::assume_monotone(ContinuousMachine::new(machine, modulus))
}

/// The tempting but wrong modulus for [`use_first`]: only `μ(φ)(i, q')` for
/// the last index `i = min(n, first success)`, dropping the union.
///
/// Kept for regression tests; it is neither a modulus of `⌊M⌋` nor
/// self-modulating in general.
pub fn last_success_modulus<Q, A, Q2, A2>(cm: &ContinuousMachine<Q, A, Q2, A2>) -> Modulus<Q, A, Q2>
where
    Q: 'static,
    A: 'static,
    Q2: 'static,
    A2: 'static,
{
    let inner = cm.clone();
    Modulus::new(move |phi: &dyn Name<Q, A>, n, q: &Q2| {
        let last = (0..=n)
            .find(|&i| inner.run(phi, i, q).is_some())
            .unwrap_or(n);
        inner.query_list(phi, last, q)
    })
}

/// A machine that answers with its own modulus list whenever the monotone
/// machine answers. On finite instances each such list is a continuity
/// certificate for `F_M`; the modulus is reused unchanged.
pub fn derive_modulus_machine<Q, A, Q2, A2>(
    mm: &MonotoneMachine<Q, A, Q2, A2>,
) -> ContinuousMachine<Q, A, Q2, Vec<Q>>
where
    Q: 'static,
    A: 'static,
    Q2: 'static,
    A2: 'static,
{
    let inner = mm.continuous().clone();
    let machine = Machine::new(move |phi: &dyn Name<Q, A>, n, q: &Q2| {
        inner
            .run(phi, n, q)
            .map(|_| inner.query_list(phi, n, q))
    });
    ContinuousMachine::new(machine, mm.modulus().clone())
}

/// Inner answers for one fixed `(φ, n)`, computed on demand and cached for
/// the duration of one composite call.
struct InnerAnswers<'a, Q, A, Q2, A2> {
    inner: &'a Machine<Q, A, Q2, A2>,
    phi: &'a dyn Name<Q, A>,
    effort: usize,
    seen: RefCell<Vec<(Q2, Option<A2>)>>,
}

impl<'a, Q, A, Q2: PartialEq + Clone, A2: Clone> InnerAnswers<'a, Q, A, Q2, A2> {
    fn new(inner: &'a Machine<Q, A, Q2, A2>, phi: &'a dyn Name<Q, A>, effort: usize) -> Self {
        InnerAnswers {
            inner,
            phi,
            effort,
            seen: RefCell::new(Vec::new()),
        }
    }

    fn get(&self, q: &Q2) -> Option<A2> {
        if let Some((_, a)) = self.seen.borrow().iter().find(|(k, _)| k == q) {
            return a.clone();
        }
        let a = self.inner.run(self.phi, self.effort, q);
        self.seen.borrow_mut().push((q.clone(), a.clone()));
        a
    }
}

/// Composition of monotone machines, `outer ∘ inner`.
///
/// With `φ'_n(q') = M(φ)(n, q')` where that answers and `a'_d` otherwise, the
/// composite answers `M'(φ'_n)(n, q'')` provided every question in
/// `μ'(φ'_n)(n, q'')` is answered by `M(φ)(n, ·)`, and `None` otherwise. The
/// set of answered inner questions is never materialized: membership is
/// decided per question, only for the questions the outer modulus lists.
/// When that list is empty the guard holds vacuously.
///
/// The composite modulus concatenates `μ(φ)(n, q')` over `q'` in
/// `μ'(φ'_n)(n, q'')`.
pub fn compose_monotone<Q, A, Q2, A2, Q3, A3>(
    outer: &MonotoneMachine<Q2, A2, Q3, A3>,
    inner: &MonotoneMachine<Q, A, Q2, A2>,
    a_prime_default: A2,
) -> MonotoneMachine<Q, A, Q3, A3>
where
    Q: 'static,
    A: 'static,
    Q2: PartialEq + Clone + 'static,
    A2: Clone + Send + Sync + 'static,
    Q3: 'static,
    A3: 'static,
{
    let (outer_m, inner_m) = (outer.continuous().clone(), inner.continuous().clone());
    let default = a_prime_default.clone();
    let machine = Machine::new(move |phi: &dyn Name<Q, A>, n, q: &Q3| {
        let answers = InnerAnswers::new(&inner_m.machine, phi, n);
        let phi_n = |q2: &Q2| answers.get(q2).unwrap_or_else(|| default.clone());
        let asked = outer_m.query_list(&phi_n, n, q);
        if asked.iter().all(|q2| answers.get(q2).is_some()) {
            outer_m.run(&phi_n, n, q)
        } else {
            None
        }
    });
    let (outer_m, inner_m) = (outer.continuous().clone(), inner.continuous().clone());
    let default = a_prime_default;
    let modulus = Modulus::new(move |phi: &dyn Name<Q, A>, n, q: &Q3| {
        let answers = InnerAnswers::new(&inner_m.machine, phi, n);
        let phi_n = |q2: &Q2| answers.get(q2).unwrap_or_else(|| default.clone());
        outer_m
            .query_list(&phi_n, n, q)
            .iter()
            .flat_map(|q2| inner_m.query_list(phi, n, q2))
            .collect()
    });
    MonotoneMachine::assume_monotone(ContinuousMachine::new(machine, modulus))
}
