//! Question and answer alphabets, name oracles and finite functions.
//!
//! A name is a total function from questions to answers. Machines receive
//! names as `&dyn Name<Q, A>` so that call-local closures (default-extended
//! finite functions, memoizing intermediate names) can be passed without
//! allocation or `Sync` requirements. Stored names use [`NameOracle`].
//!
//! Equality on questions and answers is `PartialEq`; the only structure an
//! alphabet adds is an enumeration and a distinguished default element.
//! Default answers can always be simulated by asking the default question
//! first and using its answer; both defaults are kept explicitly here.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{FixtureError, WireError};
use crate::scalar::ExactScalar;
use crate::wire::Wire;

/// A point of the name space `A^Q`.
pub trait Name<Q, A> {
    fn answer(&self, q: &Q) -> A;
}

impl<Q, A, F> Name<Q, A> for F
where
    F: Fn(&Q) -> A,
{
    fn answer(&self, q: &Q) -> A {
        self(q)
    }
}

/// An owned, shareable name.
pub struct NameOracle<Q, A>(Arc<dyn Fn(&Q) -> A + Send + Sync>);

impl<Q, A> NameOracle<Q, A> {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(&Q) -> A + Send + Sync + 'static,
    {
        NameOracle(Arc::new(f))
    }

    pub fn constant(a: A) -> Self
    where
        A: Clone + Send + Sync + 'static,
    {
        NameOracle::new(move |_| a.clone())
    }
}

impl<Q, A> Clone for NameOracle<Q, A> {
    fn clone(&self) -> Self {
        NameOracle(Arc::clone(&self.0))
    }
}

impl<Q, A> Name<Q, A> for NameOracle<Q, A> {
    fn answer(&self, q: &Q) -> A {
        (self.0)(q)
    }
}

impl<Q, A> fmt::Debug for NameOracle<Q, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("NameOracle(..)")
    }
}

type Enumeration<T> = Arc<dyn Fn(usize) -> T + Send + Sync>;
type Locator<T> = Arc<dyn Fn(&T) -> Option<usize> + Send + Sync>;

/// A countable alphabet with an enumeration and a default element.
pub struct Alphabet<T> {
    name: String,
    enumerate: Enumeration<T>,
    locate: Option<Locator<T>>,
    size: Option<usize>,
    default: T,
}

impl<T: Clone> Clone for Alphabet<T> {
    fn clone(&self) -> Self {
        Alphabet {
            name: self.name.clone(),
            enumerate: Arc::clone(&self.enumerate),
            locate: self.locate.clone(),
            size: self.size,
            default: self.default.clone(),
        }
    }
}

impl<T> fmt::Debug for Alphabet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Alphabet")
            .field("name", &self.name)
            .field("size", &self.size)
            .finish_non_exhaustive()
    }
}

impl<T> Alphabet<T>
where
    T: Clone + PartialEq + Send + Sync + 'static,
{
    /// A finite alphabet listing its elements. `default_index` must be in range.
    pub fn finite(name: impl Into<String>, elements: Vec<T>, default_index: usize) -> Self {
        assert!(
            default_index < elements.len(),
            "default index {default_index} outside alphabet of size {}",
            elements.len()
        );
        let default = elements[default_index].clone();
        let size = elements.len();
        let elements = Arc::new(elements);
        let lookup = Arc::clone(&elements);
        Alphabet {
            name: name.into(),
            enumerate: Arc::new(move |i| elements[i].clone()),
            locate: Some(Arc::new(move |t| lookup.iter().position(|e| e == t))),
            size: Some(size),
            default,
        }
    }

    /// An infinite alphabet given by a surjective enumeration.
    pub fn infinite<F>(name: impl Into<String>, enumerate: F, default: T) -> Self
    where
        F: Fn(usize) -> T + Send + Sync + 'static,
    {
        Alphabet {
            name: name.into(),
            enumerate: Arc::new(enumerate),
            locate: None,
            size: None,
            default,
        }
    }

    /// Attaches an inverse of the enumeration.
    pub fn with_locator<F>(mut self, locate: F) -> Self
    where
        F: Fn(&T) -> Option<usize> + Send + Sync + 'static,
    {
        self.locate = Some(Arc::new(locate));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> Option<usize> {
        self.size
    }

    pub fn default_element(&self) -> T {
        self.default.clone()
    }

    /// The `index`-th element, or `None` past the end of a finite alphabet.
    pub fn element(&self, index: usize) -> Option<T> {
        match self.size {
            Some(n) if index >= n => None,
            _ => Some((self.enumerate)(index)),
        }
    }

    /// The first `k` elements of the enumeration (fewer for small alphabets).
    pub fn prefix(&self, k: usize) -> Vec<T> {
        let k = self.size.map_or(k, |n| n.min(k));
        (0..k).map(|i| (self.enumerate)(i)).collect()
    }

    /// An index of `t`. Without a locator, scans the first `search_bound`
    /// elements.
    pub fn index_of(&self, t: &T, search_bound: usize) -> Option<usize> {
        if let Some(locate) = &self.locate {
            return locate(t);
        }
        (0..search_bound).find(|&i| (self.enumerate)(i) == *t)
    }

    pub fn eq(&self, a: &T, b: &T) -> bool {
        a == b
    }
}

impl<T> Alphabet<Option<T>>
where
    T: Clone + PartialEq + Send + Sync + 'static,
{
    /// `opt(A)`: `None` first, then `Some` of each element. Default `None`.
    pub fn optional(inner: Alphabet<T>) -> Self {
        let name = format!("opt({})", inner.name);
        let size = inner.size.map(|n| n + 1);
        let enumerate_inner = inner.clone();
        let mut alphabet = Alphabet::infinite(
            name,
            move |i| (i > 0).then(|| (enumerate_inner.enumerate)(i - 1)),
            None,
        );
        alphabet.size = size;
        if inner.locate.is_some() {
            alphabet = alphabet.with_locator(move |t: &Option<T>| match t {
                None => Some(0),
                Some(a) => inner.index_of(a, 0).map(|i| i + 1),
            });
        }
        alphabet
    }
}

impl<T> Alphabet<(usize, T)>
where
    T: Clone + PartialEq + Send + Sync + 'static,
{
    /// `N × Q`, row by row for finite `Q` and along Cantor diagonals
    /// otherwise. Default `(0, q_d)`.
    pub fn indexed(inner: Alphabet<T>) -> Self {
        let name = format!("N×{}", inner.name);
        let default = (0, inner.default_element());
        let enumerate_inner = inner.clone();
        Alphabet::infinite(
            name,
            move |i| {
                let (n, j) = match enumerate_inner.size {
                    Some(s) => (i / s, i % s),
                    None => {
                        let (u, v) = cantor_unpair(i as u64);
                        (u as usize, v as usize)
                    }
                };
                (n, (enumerate_inner.enumerate)(j))
            },
            default,
        )
        .with_locator(move |(n, q): &(usize, T)| {
            let j = inner.index_of(q, 0)?;
            match inner.size {
                Some(s) => n.checked_mul(s)?.checked_add(j),
                None => usize::try_from(cantor_pair(*n as u64, j as u64)?).ok(),
            }
        })
    }
}

impl Alphabet<()> {
    /// The one-point alphabet `{⋆}`.
    pub fn unit() -> Self {
        Alphabet::finite("unit", vec![()], 0)
    }
}

impl Alphabet<bool> {
    pub fn booleans() -> Self {
        Alphabet::finite("booleans", vec![false, true], 0)
    }
}

impl Alphabet<usize> {
    pub fn naturals() -> Self {
        Alphabet::infinite("naturals", |i| i, 0).with_locator(|n| Some(*n))
    }

    /// `{0, …, n-1}`.
    pub fn range(n: usize) -> Self {
        Alphabet::finite(format!("range{n}"), (0..n).collect(), 0)
    }
}

/// Inverse of the Cantor pairing `(u, v) ↦ (u + v)(u + v + 1)/2 + v`.
fn cantor_unpair(z: u64) -> (u64, u64) {
    let mut w = ((8.0 * z as f64 + 1.0).sqrt() as u64).saturating_sub(1) / 2;
    while (w + 1) * (w + 2) / 2 <= z {
        w += 1;
    }
    while w * (w + 1) / 2 > z {
        w -= 1;
    }
    let v = z - w * (w + 1) / 2;
    (w - v, v)
}

fn cantor_pair(u: u64, v: u64) -> Option<u64> {
    let w = u.checked_add(v)?;
    w.checked_mul(w.checked_add(1)?)?.checked_div(2)?.checked_add(v)
}

/// Decodes index `i ≥ 1` to `(negative, p, o, e)` meaning `±p / (o·2^e)`
/// with `p ≥ 1` and `o` odd. Indices past the sign bit split as
/// `2^e (2c + 1) − 1`, and `c` is the Cantor code of `(p − 1, (o − 1)/2)`.
fn decode_rational_index(i: u64) -> (bool, u64, u64, u32) {
    let j = i - 1;
    let negative = j & 1 == 1;
    let j = (j >> 1) + 1;
    let e = j.trailing_zeros();
    let c = ((j >> e) - 1) / 2;
    let (u, v) = cantor_unpair(c);
    (negative, u + 1, 2 * v + 1, e)
}

fn encode_rational_index(negative: bool, p: u64, o: u64, e: u32) -> Option<u64> {
    let c = cantor_pair(p - 1, (o - 1) / 2)?;
    let j = c.checked_mul(2)?.checked_add(1)?.checked_mul(1u64.checked_shl(e)?)?;
    if j.leading_zeros() == 0 {
        return None;
    }
    let j = j - 1;
    Some(((j << 1) | negative as u64) + 1)
}

/// The rationals. Index 0 is 0; every other index names `±p / (o·2^e)`
/// with `o` odd, so a dyadic `2^-k` sits near index `2^(k+1)` and small
/// denominators come early. The enumeration repeats values (e.g. `2/2`);
/// the locator returns the index of the reduced form. Default element 1.
pub fn rationals<S: ExactScalar>() -> Alphabet<S> {
    Alphabet::infinite(
        "rationals",
        |i| {
            if i == 0 {
                return S::from_int(0);
            }
            let (negative, p, o, e) = decode_rational_index(i as u64);
            let x = S::ratio(p as i64, o as i64) * S::pow2(-(e as i64));
            if negative {
                -x
            } else {
                x
            }
        },
        S::from_int(1),
    )
    .with_locator(|x: &S| {
        let (p, q) = x.parts_i64()?;
        if p == 0 {
            return Some(0);
        }
        let q = q as u64;
        let e = q.trailing_zeros();
        let i = encode_rational_index(p < 0, p.unsigned_abs(), q >> e, e)?;
        usize::try_from(i).ok()
    })
}

/// An ordered list of question/answer pairs. Questions may repeat; the size
/// counts entries, not distinct questions.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteFunction<Q, A> {
    entries: Vec<(Q, A)>,
}

impl<Q, A> Default for FiniteFunction<Q, A> {
    fn default() -> Self {
        FiniteFunction { entries: Vec::new() }
    }
}

impl<Q: PartialEq + Clone, A: Clone> FiniteFunction<Q, A> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: Vec<(Q, A)>) -> Self {
        FiniteFunction { entries }
    }

    pub fn entries(&self) -> &[(Q, A)] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Answer of the first entry whose question equals `q`.
    pub fn lookup(&self, q: &Q) -> Option<&A> {
        self.entries.iter().find(|(k, _)| k == q).map(|(_, a)| a)
    }

    /// Questions in entry order, duplicates kept.
    pub fn domain(&self) -> Vec<Q> {
        self.entries.iter().map(|(q, _)| q.clone()).collect()
    }

    pub fn push(&mut self, q: Q, a: A) {
        self.entries.push((q, a));
    }

    /// Appends `φ|_K`, asking `phi` for each question of `questions` in order.
    pub fn append_restriction(&mut self, phi: &dyn Name<Q, A>, questions: &[Q]) {
        self.entries
            .extend(questions.iter().map(|q| (q.clone(), phi.answer(q))));
    }
}

pub fn lookup<Q: PartialEq + Clone, A: Clone>(phi_hat: &FiniteFunction<Q, A>, q: &Q) -> Option<A> {
    phi_hat.lookup(q).cloned()
}

/// A finite function extended to a total name by a fallback answer.
#[derive(Clone, Debug, PartialEq)]
pub struct TableOracle<Q, A> {
    pub table: FiniteFunction<Q, A>,
    pub fallback: A,
}

impl<Q: PartialEq + Clone, A: Clone> Name<Q, A> for TableOracle<Q, A> {
    fn answer(&self, q: &Q) -> A {
        self.table.lookup(q).unwrap_or(&self.fallback).clone()
    }
}

impl<Q, A> TableOracle<Q, A>
where
    Q: PartialEq + Clone + Send + Sync + 'static,
    A: Clone + Send + Sync + 'static,
{
    pub fn into_oracle(self) -> NameOracle<Q, A> {
        NameOracle::new(move |q| self.answer(q))
    }
}

/// `φ_φ̂`: the lookup answer where present, `a_d` elsewhere.
pub fn extend_with_default<Q: PartialEq + Clone, A: Clone>(
    phi_hat: &FiniteFunction<Q, A>,
    a_d: A,
) -> TableOracle<Q, A> {
    TableOracle {
        table: phi_hat.clone(),
        fallback: a_d,
    }
}

/// `φ|_L = ψ|_L`.
pub fn restriction_eq<Q, A: PartialEq>(phi: &dyn Name<Q, A>, psi: &dyn Name<Q, A>, list: &[Q]) -> bool {
    list.iter().all(|q| phi.answer(q) == psi.answer(q))
}

/// Every element of `l1` occurs in `l2` (membership only; order and
/// multiplicity ignored).
pub fn sublist<Q: PartialEq>(l1: &[Q], l2: &[Q]) -> bool {
    l1.iter().all(|q| l2.contains(q))
}

/// Elements of `l1` with no match in `l2`, in order, duplicates kept.
pub fn list_diff<Q: PartialEq + Clone>(l1: &[Q], l2: &[Q]) -> Vec<Q> {
    l1.iter().filter(|q| !l2.contains(q)).cloned().collect()
}

/// JSON fixture form of a table-backed oracle:
/// `{"alphabet": name, "table": [[q, a], …], "fallback": a}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleFixture {
    pub alphabet: String,
    pub table: Vec<(Value, Value)>,
    pub fallback: Value,
}

impl OracleFixture {
    pub fn from_table<Q: Wire + PartialEq + Clone, A: Wire + Clone>(
        alphabet: &str,
        oracle: &TableOracle<Q, A>,
    ) -> Self {
        OracleFixture {
            alphabet: alphabet.to_string(),
            table: oracle
                .table
                .entries()
                .iter()
                .map(|(q, a)| (q.to_wire(), a.to_wire()))
                .collect(),
            fallback: oracle.fallback.to_wire(),
        }
    }

    pub fn to_table<Q: Wire + PartialEq + Clone, A: Wire + Clone>(&self) -> Result<TableOracle<Q, A>, WireError> {
        let entries = self
            .table
            .iter()
            .map(|(q, a)| Ok((Q::from_wire(q)?, A::from_wire(a)?)))
            .collect::<Result<Vec<_>, WireError>>()?;
        Ok(TableOracle {
            table: FiniteFunction::from_entries(entries),
            fallback: A::from_wire(&self.fallback)?,
        })
    }

    pub fn parse(json: &str) -> Result<Self, FixtureError> {
        Ok(serde_json::from_str(json)?)
    }
}
