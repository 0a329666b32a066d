//! The precompletion of a representation: questions `N × Q`, answers
//! `opt(A)`, and `φ'` names `x` iff searching each column for its first
//! `Some` yields a name of `x`.

use super::RepresentedSpace;
use crate::alphabets::{Alphabet, Name, NameOracle};
use crate::machines::{ContinuousMachine, Machine, Modulus, MonotoneMachine};

fn first_some<Q, A>(phi: &dyn Name<(usize, Q), Option<A>>, q: &Q, effort: usize) -> Option<(usize, A)>
where
    Q: Clone,
{
    (0..=effort).find_map(|n| phi.answer(&(n, q.clone())).map(|a| (n, a)))
}

/// The precompleted space. Each sampled question of `space` must find its
/// `Some` at a row `≤ search_cap`; the searched name is then checked by
/// `space`. Rows `0..4` of each sampled question are listed as samples.
pub fn precompletion<P, Q, A>(
    space: &RepresentedSpace<P, Q, A>,
    search_cap: usize,
) -> RepresentedSpace<P, (usize, Q), Option<A>>
where
    P: 'static,
    Q: Clone + PartialEq + Send + Sync + 'static,
    A: Clone + PartialEq + Send + Sync + 'static,
{
    let name = format!("precompletion({})", space.name());
    let samples = (0..4)
        .flat_map(|n| space.sample_questions().iter().map(move |q| (n, q.clone())))
        .collect();
    let inner = space.clone();
    RepresentedSpace::new(
        name,
        Alphabet::indexed(space.questions().clone()),
        Alphabet::optional(space.answers().clone()),
        samples,
        move |phi: &dyn Name<(usize, Q), Option<A>>, x: &P| {
            let mut found = Vec::new();
            for q in inner.sample_questions() {
                match first_some(phi, q, search_cap) {
                    Some((_, a)) => found.push((q.clone(), a)),
                    None => return false,
                }
            }
            let fallback = inner.answers().default_element();
            let searched = move |q: &Q| {
                found
                    .iter()
                    .find(|(p, _)| p == q)
                    .map_or_else(|| fallback.clone(), |(_, a)| a.clone())
            };
            inner.is_name(&searched, x)
        },
    )
}

/// `φ'(n, q) = Some(φ(q))`.
pub fn embed_name<Q, A>(phi: NameOracle<Q, A>) -> NameOracle<(usize, Q), Option<A>>
where
    Q: 'static,
    A: 'static,
{
    NameOracle::new(move |(_, q): &(usize, Q)| Some(phi.answer(q)))
}

/// Back from precompleted names: at effort `m` on `q`, the first `Some` in
/// rows `0..=m` of column `q`. The modulus lists the rows scanned.
pub fn search_translate<Q, A>() -> MonotoneMachine<(usize, Q), Option<A>, Q, A>
where
    Q: Clone + Send + Sync + 'static,
    A: 'static,
{
    MonotoneMachine::assume_monotone(ContinuousMachine::new(
        Machine::new(|phi: &dyn Name<(usize, Q), Option<A>>, m, q: &Q| first_some(phi, q, m).map(|(_, a)| a)),
        Modulus::new(|phi: &dyn Name<(usize, Q), Option<A>>, m, q: &Q| {
            let last = first_some(phi, q, m).map_or(m, |(n, _)| n);
            (0..=last).map(|n| (n, q.clone())).collect()
        }),
    ))
}
