//! Kleeneans `{true_K, false_K, ⊥_K}` named by sequences `N → opt(bool)`:
//! the first `Some(b)` decides, and the all-`None` sequence names `⊥_K`.

use std::fmt;

use serde_json::Value;

use super::RepresentedSpace;
use crate::alphabets::{Alphabet, Name, NameOracle};
use crate::error::WireError;
use crate::machines::{ContinuousMachine, Machine, Modulus, MonotoneMachine};
use crate::wire::Wire;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KleeneanValue {
    True,
    False,
    Bottom,
}

impl From<bool> for KleeneanValue {
    fn from(b: bool) -> Self {
        if b {
            KleeneanValue::True
        } else {
            KleeneanValue::False
        }
    }
}

impl fmt::Display for KleeneanValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KleeneanValue::True => "true_K",
            KleeneanValue::False => "false_K",
            KleeneanValue::Bottom => "bottom_K",
        })
    }
}

impl Wire for KleeneanValue {
    fn to_wire(&self) -> Value {
        Value::from(self.to_string())
    }

    fn from_wire(v: &Value) -> Result<Self, WireError> {
        match v.as_str() {
            Some("true_K") => Ok(KleeneanValue::True),
            Some("false_K") => Ok(KleeneanValue::False),
            Some("bottom_K") => Ok(KleeneanValue::Bottom),
            _ => Err(WireError::unexpected("true_K, false_K or bottom_K", v)),
        }
    }
}

/// The value named by `φ` as far as the first `len` entries can tell;
/// `Bottom` means no entry below `len` was `Some`.
pub fn kleenean_of_prefix(phi: &dyn Name<usize, Option<bool>>, len: usize) -> KleeneanValue {
    (0..len)
        .find_map(|k| phi.answer(&k))
        .map_or(KleeneanValue::Bottom, KleeneanValue::from)
}

/// The Kleeneans, with names checked on the prefix `0..prefix_len`. A name
/// of `⊥_K` is only confirmed up to that prefix.
pub fn kleeneans(prefix_len: usize) -> RepresentedSpace<KleeneanValue, usize, Option<bool>> {
    RepresentedSpace::new(
        "kleeneans",
        Alphabet::naturals(),
        Alphabet::optional(Alphabet::booleans()),
        (0..prefix_len).collect(),
        move |phi: &dyn Name<usize, Option<bool>>, x: &KleeneanValue| kleenean_of_prefix(phi, prefix_len) == *x,
    )
}

/// `ψ(n)` = the first `Some(b)` at an index `≤ n`, else `None`.
pub fn monotonize_kleenean_name(phi: NameOracle<usize, Option<bool>>) -> NameOracle<usize, Option<bool>> {
    NameOracle::new(move |n: &usize| (0..=*n).find_map(|k| phi.answer(&k)))
}

/// Booleans to Kleeneans: `F(φ)(n) = Some(φ(⋆))` at every effort.
pub fn bool_to_kleenean_realizer() -> MonotoneMachine<(), bool, usize, Option<bool>> {
    MonotoneMachine::assume_monotone(ContinuousMachine::new(
        Machine::new(|phi: &dyn Name<(), bool>, _, _: &usize| Some(Some(phi.answer(&())))),
        Modulus::new(|_: &dyn Name<(), bool>, _, _: &usize| vec![()]),
    ))
}

fn first_hit(phi: &dyn Name<usize, Option<bool>>, effort: usize) -> Option<(usize, bool)> {
    (0..=effort).find_map(|k| phi.answer(&k).map(|b| (k, b)))
}

/// Kleeneans back to Booleans by search: at effort `n`, the first
/// `Some(b)` at an index `k ≤ n`. The modulus lists `0..=min(n, k)`.
/// Diverges on names of `⊥_K`.
pub fn kleenean_to_bool_machine() -> MonotoneMachine<usize, Option<bool>, (), bool> {
    MonotoneMachine::assume_monotone(ContinuousMachine::new(
        Machine::new(|phi: &dyn Name<usize, Option<bool>>, n, _: &()| first_hit(phi, n).map(|(_, b)| b)),
        Modulus::new(|phi: &dyn Name<usize, Option<bool>>, n, _: &()| {
            let last = first_hit(phi, n).map_or(n, |(k, _)| k);
            (0..=last).collect()
        }),
    ))
}
