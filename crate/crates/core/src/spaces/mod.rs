//! Represented spaces at test scale.
//!
//! A [`RepresentedSpace`] bundles the question and answer alphabets of a
//! representation with a name predicate. Name predicates for spaces with
//! infinitely many questions inspect only a documented finite sample of
//! questions, so they can confirm violations but only approximate
//! membership.

use std::fmt;
use std::sync::Arc;

use crate::alphabets::{rationals, Alphabet, Name, NameOracle};
use crate::scalar::ExactScalar;

mod kleenean;
mod precompletion;

pub use kleenean::{
    bool_to_kleenean_realizer, kleenean_of_prefix, kleenean_to_bool_machine, kleeneans, monotonize_kleenean_name,
    KleeneanValue,
};
pub use precompletion::{embed_name, precompletion, search_translate};

type IsNameFn<P, Q, A> = dyn Fn(&dyn Name<Q, A>, &P) -> bool + Send + Sync;
type AnswerOkFn<P, Q, A> = dyn Fn(&P, &Q, &A) -> bool + Send + Sync;

/// A representation of points `P` by names `Q → A`.
pub struct RepresentedSpace<P, Q, A> {
    name: String,
    questions: Alphabet<Q>,
    answers: Alphabet<A>,
    is_name: Arc<IsNameFn<P, Q, A>>,
    answer_ok: Option<Arc<AnswerOkFn<P, Q, A>>>,
    samples: Vec<Q>,
}

impl<P, Q: Clone, A: Clone> Clone for RepresentedSpace<P, Q, A> {
    fn clone(&self) -> Self {
        RepresentedSpace {
            name: self.name.clone(),
            questions: self.questions.clone(),
            answers: self.answers.clone(),
            is_name: Arc::clone(&self.is_name),
            answer_ok: self.answer_ok.clone(),
            samples: self.samples.clone(),
        }
    }
}

impl<P, Q, A> fmt::Debug for RepresentedSpace<P, Q, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RepresentedSpace")
            .field("name", &self.name)
            .field("samples", &self.samples.len())
            .field("answer_ok", &self.answer_ok.is_some())
            .finish_non_exhaustive()
    }
}

impl<P, Q, A> RepresentedSpace<P, Q, A> {
    /// A space whose name predicate is given directly.
    pub fn new<F>(
        name: impl Into<String>,
        questions: Alphabet<Q>,
        answers: Alphabet<A>,
        samples: Vec<Q>,
        is_name: F,
    ) -> Self
    where
        F: Fn(&dyn Name<Q, A>, &P) -> bool + Send + Sync + 'static,
    {
        RepresentedSpace {
            name: name.into(),
            questions,
            answers,
            is_name: Arc::new(is_name),
            answer_ok: None,
            samples,
        }
    }

    /// A space with separated answers: a name is exactly an oracle whose
    /// answers all pass `answer_ok`, checked on the samples.
    pub fn with_answer_check<F>(
        name: impl Into<String>,
        questions: Alphabet<Q>,
        answers: Alphabet<A>,
        samples: Vec<Q>,
        answer_ok: F,
    ) -> Self
    where
        P: 'static,
        Q: Clone + Send + Sync + 'static,
        A: 'static,
        F: Fn(&P, &Q, &A) -> bool + Send + Sync + 'static,
    {
        let answer_ok: Arc<AnswerOkFn<P, Q, A>> = Arc::new(answer_ok);
        let check = Arc::clone(&answer_ok);
        let sampled = samples.clone();
        RepresentedSpace {
            name: name.into(),
            questions,
            answers,
            is_name: Arc::new(move |phi: &dyn Name<Q, A>, x: &P| {
                sampled.iter().all(|q| check(x, q, &phi.answer(q)))
            }),
            answer_ok: Some(answer_ok),
            samples,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn questions(&self) -> &Alphabet<Q> {
        &self.questions
    }

    pub fn answers(&self) -> &Alphabet<A> {
        &self.answers
    }

    /// The questions inspected by [`is_name`](Self::is_name).
    pub fn sample_questions(&self) -> &[Q] {
        &self.samples
    }

    pub fn is_name(&self, phi: &dyn Name<Q, A>, x: &P) -> bool {
        (self.is_name)(phi, x)
    }

    /// `None` for spaces without answer separation.
    pub fn answer_ok(&self, x: &P, q: &Q, a: &A) -> Option<bool> {
        self.answer_ok.as_ref().map(|ok| ok(x, q, a))
    }

    pub fn has_answer_check(&self) -> bool {
        self.answer_ok.is_some()
    }
}

/// A discrete space: one question `⋆`, and `φ` names `x` iff `φ(⋆) = x`.
pub fn discrete_space<T>(points: Alphabet<T>) -> RepresentedSpace<T, (), T>
where
    T: Clone + PartialEq + Send + Sync + 'static,
{
    let name = format!("discrete({})", points.name());
    RepresentedSpace::with_answer_check(name, Alphabet::unit(), points, vec![()], |x: &T, _: &(), a: &T| a == x)
}

/// The sampled precisions of [`rational_reals`]: `2^-k` for `k ≤ 48`, then
/// `10^-k` for `1 ≤ k ≤ 6`.
pub fn real_sample_precisions<S: ExactScalar>() -> Vec<S> {
    let mut eps: Vec<S> = (0..=48).map(|k| S::pow2(-k)).collect();
    let mut ten = S::from_int(1);
    for _ in 1..=6 {
        ten = ten * S::from_int(10);
        eps.push(S::from_int(1) / ten.clone());
    }
    eps
}

/// `|x - a| ≤ ε`, and anything for `ε ≤ 0`.
pub fn real_answer_ok<S: ExactScalar>(x: &S, eps: &S, a: &S) -> bool {
    !eps.is_positive() || (x.clone() - a.clone()).abs() <= *eps
}

/// Reals via rational approximations: `φ` names `x` iff `|x − φ(ε)| ≤ ε`
/// for all `ε > 0`, checked on [`real_sample_precisions`].
pub fn rational_reals<S: ExactScalar>() -> RepresentedSpace<S, S, S> {
    RepresentedSpace::with_answer_check(
        "rational_reals",
        rationals(),
        rationals(),
        real_sample_precisions(),
        real_answer_ok::<S>,
    )
}

/// `φ(ε) = x`.
pub fn exact_name<S: ExactScalar>(x: S) -> NameOracle<S, S> {
    NameOracle::constant(x)
}

/// `φ(ε)` = the multiple of `ε/2` nearest to `x`, and `x` for `ε ≤ 0`.
/// The error is at most `ε/4`.
pub fn grid_name<S: ExactScalar>(x: S) -> NameOracle<S, S> {
    NameOracle::new(move |eps: &S| {
        if eps.is_positive() {
            x.round_to_multiple(&(eps.clone() / S::from_int(2)))
        } else {
            x.clone()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::ratio(p, d)
    }

    #[test]
    fn discrete_space_examples() {
        let space = discrete_space(Alphabet::booleans());
        assert!(space.is_name(&NameOracle::constant(true), &true));
        assert!(!space.is_name(&NameOracle::constant(false), &true));
        assert_eq!(space.answer_ok(&true, &(), &true), Some(true));
        assert_eq!(space.answer_ok(&true, &(), &false), Some(false));
        assert_eq!(space.sample_questions(), &[()]);
    }

    #[test]
    fn rational_reals_examples() {
        let r = rational_reals::<Rational>();
        let third = q(1, 3);
        assert!(r.is_name(&exact_name(third.clone()), &third));
        assert!(r.is_name(&grid_name(third.clone()), &third));
        let off = {
            let x = third.clone();
            NameOracle::new(move |eps: &Rational| x.clone() + eps.clone() * Rational::from_int(2))
        };
        assert!(!r.is_name(&off, &third));
        for eps in r.sample_questions() {
            assert_eq!(r.answer_ok(&third, eps, &off.answer(eps)), Some(false));
        }
        assert_eq!(r.answer_ok(&third, &q(1, 10), &q(3, 10)), Some(true));
        assert_eq!(r.answer_ok(&third, &q(0, 1), &q(100, 1)), Some(true));
        assert_eq!(r.answer_ok(&third, &q(-1, 2), &q(100, 1)), Some(true));
    }

    #[test]
    fn sample_precisions_are_positive_and_located() {
        let eps = real_sample_precisions::<Rational>();
        assert_eq!(eps.len(), 55);
        let alphabet = rationals::<Rational>();
        for e in &eps {
            assert!(e.is_positive());
            let i = alphabet.index_of(e, 0).expect("sampled precision has an index");
            assert_eq!(alphabet.element(i).as_ref(), Some(e));
        }
    }

    proptest! {
        #[test]
        fn grid_names_stay_within_a_quarter_step(p in -10_000i64..10_000, d in 1i64..5_000, k in 0i64..60) {
            let x = q(p, d);
            let eps = Rational::pow2(-k);
            let a = grid_name(x.clone()).answer(&eps);
            prop_assert!((x - a).abs() * Rational::from_int(4) <= eps);
        }

        #[test]
        fn splicing_a_correct_answer_preserves_names(p in -1000i64..1000, d in 1i64..1000, k in 0usize..55, t in -1000i64..=1000) {
            // answer separation: a correct answer at one question keeps a name a name
            let r = rational_reals::<Rational>();
            let x = q(p, d);
            let eps = r.sample_questions()[k].clone();
            let a = x.clone() + eps.clone() * q(t, 1000);
            prop_assert_eq!(r.answer_ok(&x, &eps, &a), Some(true));
            let base = grid_name(x.clone());
            let spliced = {
                let (eps, a) = (eps.clone(), a.clone());
                NameOracle::new(move |e: &Rational| if *e == eps { a.clone() } else { base.answer(e) })
            };
            prop_assert!(r.is_name(&spliced, &x));
        }
    }
}
