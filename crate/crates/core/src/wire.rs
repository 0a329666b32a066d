//! JSON wire forms for questions and answers.
//!
//! Traces, transcripts, reports and fixtures are documents over arbitrary
//! question/answer types. Those types map to JSON through [`Wire`] rather
//! than serde so that rationals always appear as canonical `"p/q"` strings
//! and optional answers as `"none"`.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};
use serde_json::Value;

use crate::error::WireError;
use crate::scalar::ExactScalar;

pub trait Wire: Sized {
    fn to_wire(&self) -> Value;
    fn from_wire(v: &Value) -> Result<Self, WireError>;
}

impl Wire for bool {
    fn to_wire(&self) -> Value {
        Value::Bool(*self)
    }

    fn from_wire(v: &Value) -> Result<Self, WireError> {
        v.as_bool().ok_or_else(|| WireError::unexpected("boolean", v))
    }
}

macro_rules! wire_unsigned {
    ($($t:ty),*) => {$(
        impl Wire for $t {
            fn to_wire(&self) -> Value {
                Value::from(*self)
            }

            fn from_wire(v: &Value) -> Result<Self, WireError> {
                v.as_u64()
                    .and_then(|n| <$t>::try_from(n).ok())
                    .ok_or_else(|| WireError::unexpected(stringify!($t), v))
            }
        }
    )*};
}

wire_unsigned!(u8, u32, u64, usize);

/// The one-point question `⋆` is written as `"*"`.
impl Wire for () {
    fn to_wire(&self) -> Value {
        Value::from("*")
    }

    fn from_wire(v: &Value) -> Result<Self, WireError> {
        match v.as_str() {
            Some("*") => Ok(()),
            _ => Err(WireError::unexpected("\"*\"", v)),
        }
    }
}

impl<T: Wire> Wire for Option<T> {
    fn to_wire(&self) -> Value {
        match self {
            Some(t) => t.to_wire(),
            None => Value::from("none"),
        }
    }

    fn from_wire(v: &Value) -> Result<Self, WireError> {
        match v.as_str() {
            Some("none") => Ok(None),
            _ => T::from_wire(v).map(Some),
        }
    }
}

impl<T: Wire> Wire for Vec<T> {
    fn to_wire(&self) -> Value {
        Value::Array(self.iter().map(Wire::to_wire).collect())
    }

    fn from_wire(v: &Value) -> Result<Self, WireError> {
        v.as_array()
            .ok_or_else(|| WireError::unexpected("array", v))?
            .iter()
            .map(T::from_wire)
            .collect()
    }
}

impl<S: Wire, T: Wire> Wire for (S, T) {
    fn to_wire(&self) -> Value {
        Value::Array(vec![self.0.to_wire(), self.1.to_wire()])
    }

    fn from_wire(v: &Value) -> Result<Self, WireError> {
        match v.as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok((S::from_wire(a)?, T::from_wire(b)?)),
            _ => Err(WireError::unexpected("pair", v)),
        }
    }
}

impl<T> Wire for Ratio<T>
where
    T: Clone + Integer + Signed + FromPrimitive + ToPrimitive + Display + FromStr + Debug + Send + Sync + 'static,
{
    fn to_wire(&self) -> Value {
        Value::from(self.canonical())
    }

    fn from_wire(v: &Value) -> Result<Self, WireError> {
        let s = v
            .as_str()
            .ok_or_else(|| WireError::unexpected("rational string", v))?;
        Ok(Self::parse_exact(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;
    use serde_json::json;

    #[test]
    fn kleenean_prefix_form() {
        let prefix = vec![None, Some(true), Some(false)];
        assert_eq!(prefix.to_wire(), json!(["none", true, false]));
        assert_eq!(Vec::<Option<bool>>::from_wire(&json!(["none", true])).unwrap(), vec![None, Some(true)]);
    }

    #[test]
    fn rationals_are_canonical_strings() {
        let x = BigRational::ratio(-4, 6);
        assert_eq!(x.to_wire(), json!("-2/3"));
        assert_eq!(BigRational::from_wire(&json!("-2/3")).unwrap(), x);
        assert!(BigRational::from_wire(&json!(3)).is_err());
        assert!(BigRational::from_wire(&json!("3/0")).is_err());
    }

    #[test]
    fn star_and_pairs() {
        assert_eq!(().to_wire(), json!("*"));
        assert_eq!(<(usize, bool)>::from_wire(&json!([3, true])).unwrap(), (3, true));
        assert!(<(usize, bool)>::from_wire(&json!([3])).is_err());
    }

    proptest! {
        #[test]
        fn nested_values_round_trip(v in proptest::collection::vec((0usize..50, proptest::option::of(any::<bool>())), 0..8)) {
            prop_assert_eq!(Vec::<(usize, Option<bool>)>::from_wire(&v.to_wire()).unwrap(), v);
        }
    }
}
