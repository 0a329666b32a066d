//! Fuel-indexed machines and their moduli.
//!
//! A machine maps a name `φ`, an effort `n` and an output question `q'` to an
//! optional answer. The effort is a functional input, not a step count: the
//! operator `F_M` described by a machine sends `φ` to every `ψ` such that each
//! `q'` receives `ψ(q')` from `M(φ)(n, q')` for some `n`.
//!
//! A modulus assigns to the same inputs a finite list of input questions.
//! A [`ContinuousMachine`] pairs a machine with a self-modulating modulus;
//! a [`MonotoneMachine`] additionally never changes its answer, nor its
//! modulus list, once it has answered.

use std::fmt;
use std::sync::Arc;

use crate::alphabets::Name;

mod brute_force;
mod evaluate;
mod monotone;
mod properties;

pub use brute_force::{brute_force_min_modulus, certifies, min_certificate};
pub use evaluate::{evaluate, evaluate_traced, in_f_m, Attempt, Membership, Schedule, Trace};
pub use monotone::{compose_monotone, derive_modulus_machine, last_success_modulus, use_first};
pub use properties::{check_modulus, check_monotone, check_self_modulating, Violation, ViolationKind};

type RunFn<Q, A, Q2, A2> = dyn Fn(&dyn Name<Q, A>, usize, &Q2) -> Option<A2> + Send + Sync;
type ModulusFn<Q, A, Q2> = dyn Fn(&dyn Name<Q, A>, usize, &Q2) -> Vec<Q> + Send + Sync;

/// `M: B → opt(A')^{N × Q'}`.
pub struct Machine<Q, A, Q2, A2> {
    run: Arc<RunFn<Q, A, Q2, A2>>,
}

impl<Q, A, Q2, A2> Machine<Q, A, Q2, A2> {
    pub fn new<F>(run: F) -> Self
    where
        F: Fn(&dyn Name<Q, A>, usize, &Q2) -> Option<A2> + Send + Sync + 'static,
    {
        Machine { run: Arc::new(run) }
    }

    pub fn run(&self, phi: &dyn Name<Q, A>, effort: usize, q: &Q2) -> Option<A2> {
        (self.run)(phi, effort, q)
    }
}

impl<Q, A, Q2, A2> Clone for Machine<Q, A, Q2, A2> {
    fn clone(&self) -> Self {
        Machine {
            run: Arc::clone(&self.run),
        }
    }
}

impl<Q, A, Q2, A2> fmt::Debug for Machine<Q, A, Q2, A2> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Machine(..)")
    }
}

/// `μ: B → (Q*)^{N × Q'}`, lifted with the machine's effort slot.
pub struct Modulus<Q, A, Q2> {
    run: Arc<ModulusFn<Q, A, Q2>>,
}

impl<Q, A, Q2> Modulus<Q, A, Q2> {
    pub fn new<F>(run: F) -> Self
    where
        F: Fn(&dyn Name<Q, A>, usize, &Q2) -> Vec<Q> + Send + Sync + 'static,
    {
        Modulus { run: Arc::new(run) }
    }

    pub fn run(&self, phi: &dyn Name<Q, A>, effort: usize, q: &Q2) -> Vec<Q> {
        (self.run)(phi, effort, q)
    }
}

impl<Q, A, Q2> Clone for Modulus<Q, A, Q2> {
    fn clone(&self) -> Self {
        Modulus {
            run: Arc::clone(&self.run),
        }
    }
}

impl<Q, A, Q2> fmt::Debug for Modulus<Q, A, Q2> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Modulus(..)")
    }
}

/// A machine together with a self-modulating modulus of it.
///
/// Neither property can be checked at construction; see
/// [`check_modulus`] and [`check_self_modulating`] for finite-sample checks.
pub struct ContinuousMachine<Q, A, Q2, A2> {
    pub machine: Machine<Q, A, Q2, A2>,
    pub modulus: Modulus<Q, A, Q2>,
}

impl<Q, A, Q2, A2> ContinuousMachine<Q, A, Q2, A2> {
    pub fn new(machine: Machine<Q, A, Q2, A2>, modulus: Modulus<Q, A, Q2>) -> Self {
        ContinuousMachine { machine, modulus }
    }

    pub fn run(&self, phi: &dyn Name<Q, A>, effort: usize, q: &Q2) -> Option<A2> {
        self.machine.run(phi, effort, q)
    }

    pub fn query_list(&self, phi: &dyn Name<Q, A>, effort: usize, q: &Q2) -> Vec<Q> {
        self.modulus.run(phi, effort, q)
    }
}

impl<Q, A, Q2, A2> Clone for ContinuousMachine<Q, A, Q2, A2> {
    fn clone(&self) -> Self {
        ContinuousMachine {
            machine: self.machine.clone(),
            modulus: self.modulus.clone(),
        }
    }
}

impl<Q, A, Q2, A2> fmt::Debug for ContinuousMachine<Q, A, Q2, A2> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ContinuousMachine(..)")
    }
}

/// A continuous machine whose answers are stable in the effort and whose
/// modulus list stops changing once the machine answers.
pub struct MonotoneMachine<Q, A, Q2, A2>(ContinuousMachine<Q, A, Q2, A2>);

impl<Q, A, Q2, A2> MonotoneMachine<Q, A, Q2, A2> {
    /// Wraps a continuous machine the caller knows to be monotone. Use
    /// [`use_first`] to obtain one from an arbitrary continuous machine.
    pub fn assume_monotone(cm: ContinuousMachine<Q, A, Q2, A2>) -> Self {
        MonotoneMachine(cm)
    }

    pub fn continuous(&self) -> &ContinuousMachine<Q, A, Q2, A2> {
        &self.0
    }

    pub fn into_continuous(self) -> ContinuousMachine<Q, A, Q2, A2> {
        self.0
    }

    pub fn machine(&self) -> &Machine<Q, A, Q2, A2> {
        &self.0.machine
    }

    pub fn modulus(&self) -> &Modulus<Q, A, Q2> {
        &self.0.modulus
    }

    pub fn run(&self, phi: &dyn Name<Q, A>, effort: usize, q: &Q2) -> Option<A2> {
        self.0.run(phi, effort, q)
    }

    pub fn query_list(&self, phi: &dyn Name<Q, A>, effort: usize, q: &Q2) -> Vec<Q> {
        self.0.query_list(phi, effort, q)
    }
}

impl<Q, A, Q2, A2> Clone for MonotoneMachine<Q, A, Q2, A2> {
    fn clone(&self) -> Self {
        MonotoneMachine(self.0.clone())
    }
}

impl<Q, A, Q2, A2> fmt::Debug for MonotoneMachine<Q, A, Q2, A2> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("MonotoneMachine(..)")
    }
}
