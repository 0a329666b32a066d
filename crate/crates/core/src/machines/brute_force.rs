//! Minimal moduli by exhaustive search over a finite domain of names.
//!
//! This is a test oracle for finite alphabets: given an explicit list of
//! names and an enumeration of the questions, the minimal modulus at
//! `(φ, n, q')` is the shortest initial segment of the enumeration on which
//! agreement with `φ` forces the same machine output.

use super::{Machine, Modulus};
use crate::alphabets::{restriction_eq, Name, NameOracle};
use crate::error::NoCertificate;

/// Every name of `domain` that agrees with `phi` on `list` gets the same
/// output as `phi` at `(n, q')`.
pub fn certifies<Q, A: PartialEq, Q2, A2: PartialEq>(
    machine: &Machine<Q, A, Q2, A2>,
    domain: &[NameOracle<Q, A>],
    phi: &dyn Name<Q, A>,
    effort: usize,
    q: &Q2,
    list: &[Q],
) -> bool {
    let target = machine.run(phi, effort, q);
    domain
        .iter()
        .filter(|psi| restriction_eq(phi, *psi, list))
        .all(|psi| machine.run(psi, effort, q) == target)
}

/// The shortest certifying initial segment of `enumeration`.
pub fn min_certificate<Q: Clone, A: PartialEq, Q2, A2: PartialEq>(
    machine: &Machine<Q, A, Q2, A2>,
    domain: &[NameOracle<Q, A>],
    phi: &dyn Name<Q, A>,
    effort: usize,
    q: &Q2,
    enumeration: &[Q],
) -> Result<Vec<Q>, NoCertificate> {
    (0..=enumeration.len())
        .find(|&k| certifies(machine, domain, phi, effort, q, &enumeration[..k]))
        .map(|k| enumeration[..k].to_vec())
        .ok_or(NoCertificate {
            effort,
            bound: enumeration.len(),
        })
}

/// Builds the minimal modulus of `machine` relative to `domain`.
///
/// Every `(φ, n, q')` with `φ ∈ domain`, `n ≤ max_effort` and `q'` in
/// `questions` is searched up front; the first one without a certificate
/// within `enumeration` is returned as an error. Outside that validated
/// range the returned modulus searches lazily and falls back to the whole
/// enumeration.
pub fn brute_force_min_modulus<Q, A, Q2, A2>(
    machine: &Machine<Q, A, Q2, A2>,
    domain: Vec<NameOracle<Q, A>>,
    enumeration: Vec<Q>,
    max_effort: usize,
    questions: &[Q2],
) -> Result<Modulus<Q, A, Q2>, NoCertificate>
where
    Q: Clone + Send + Sync + 'static,
    A: PartialEq + 'static,
    Q2: 'static,
    A2: PartialEq + 'static,
{
    for phi in &domain {
        for n in 0..=max_effort {
            for q in questions {
                min_certificate(machine, &domain, phi, n, q, &enumeration)?;
            }
        }
    }
    let machine = machine.clone();
    Ok(Modulus::new(move |phi: &dyn Name<Q, A>, n, q: &Q2| {
        min_certificate(&machine, &domain, phi, n, q, &enumeration).unwrap_or_else(|_| enumeration.clone())
    }))
}
