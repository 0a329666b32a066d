use crate::alphabets::Name;
use crate::machines::{ContinuousMachine, Machine, Modulus};
use crate::scalar::{min, ExactScalar};

/// `δ = |φ(2^-n)| − 2^-n`, and the second query point `min{δ, εδ²}/2` when
/// `δ > 0`.
fn probe<S: ExactScalar>(phi: &dyn Name<S, S>, n: usize, eps: &S) -> (S, Option<S>) {
    let t = S::pow2(-(n as i64));
    let delta = phi.answer(&t).abs() - t.clone();
    if !delta.is_positive() {
        return (t, None);
    }
    let d = min(delta.clone(), eps.clone() * delta.clone() * delta) / S::from_int(2);
    (t, Some(d))
}

/// Reciprocal on rational-real names: at effort `n` and precision `ε`,
/// `Some(1/φ(min{δ, εδ²}/2))` if `δ = |φ(2^-n)| − 2^-n > 0`, else `None`.
/// For a name of `x` the answer is within `ε` of `1/x`.
///
/// The modulus lists the consulted questions in order: `[2^-n]` when
/// `δ ≤ 0`, else `[2^-n, min{δ, εδ²}/2]`.
///
/// On names `φ(d)` cannot vanish, since `|φ(d)| ≥ |x| − d ≥ δ/2`. Oracles
/// that are not names can return 0 there; the machine then answers `None`,
/// which keeps it total on the default-extended oracles that associates
/// probe.
pub fn inversion_machine<S: ExactScalar>() -> ContinuousMachine<S, S, S, S> {
    let machine = Machine::new(|phi: &dyn Name<S, S>, n, eps: &S| {
        let (_, d) = probe(phi, n, eps);
        let y = phi.answer(&d?);
        (!y.is_zero()).then(|| S::from_int(1) / y)
    });
    let modulus = Modulus::new(|phi: &dyn Name<S, S>, n, eps: &S| {
        let (t, d) = probe(phi, n, eps);
        std::iter::once(t).chain(d).collect()
    });
    ContinuousMachine::new(machine, modulus)
}
