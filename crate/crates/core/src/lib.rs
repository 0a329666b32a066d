//! Continuous machines: fuel-indexed realizers of partial operators between
//! spaces of names.
//!
//! The crate is organised bottom-up:
//!
//! * [`alphabets`]: question/answer alphabets, names and finite functions.
//! * [`machines`]: machines, moduli, evaluation, monotonization and
//!   composition.
//! * [`associates`]: the function-space encoding and the translation from
//!   continuous machines to associates.
//! * [`spaces`]: represented spaces (discrete, rational reals, Kleeneans,
//!   precompletion).
//! * [`realizers`]: inversion and sign machines, finite multifunctions and
//!   the realizer-checking harness.
//! * [`cli`]: the batch command-line front end.
//!
//! Arithmetic is generic over [`ExactScalar`]; the aliases below fix the
//! arbitrary-precision rationals used by the CLI.

pub mod alphabets;
pub mod associates;
pub mod cli;
pub mod error;
pub mod machines;
pub mod realizers;
pub mod scalar;
pub mod spaces;
pub mod wire;

pub use num_rational::BigRational;

pub use alphabets::{FiniteFunction, Name, NameOracle, TableOracle};
pub use machines::{ContinuousMachine, Machine, Modulus, MonotoneMachine, Schedule};
pub use scalar::ExactScalar;
pub use spaces::KleeneanValue;

/// Arbitrary-precision exact rationals.
pub type Rational = BigRational;

/// Fixed-width rationals; overflow panics, so only for small magnitudes.
pub type Rational64 = num_rational::Ratio<i64>;

/// A name of a real number in the rational representation.
pub type RealName = NameOracle<Rational, Rational>;

/// Machines on rational-real names.
pub type RealMachine = ContinuousMachine<Rational, Rational, Rational, Rational>;
pub type MonotoneRealMachine = MonotoneMachine<Rational, Rational, Rational, Rational>;

/// Machines from rational-real names to Kleenean names.
pub type SignMachine = MonotoneMachine<Rational, Rational, usize, Option<bool>>;
