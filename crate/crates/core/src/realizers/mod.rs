//! Concrete realizers, finite multifunctions and a realizer-checking
//! harness.

mod check;
mod inversion;
mod multifunction;
mod sign;

pub use check::{
    check_realizer, load_corpus, CorpusEntry, Failure, NameKind, RealizerReport, Sample, Undecided,
};
pub use inversion::inversion_machine;
pub use multifunction::{chooses_through, mf_compose, tightens, FiniteMultifunction};
pub use sign::{sign_kleenean, sign_machine};
