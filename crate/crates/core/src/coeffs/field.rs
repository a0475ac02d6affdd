use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{FromPrimitive, Num, Signed};

/// Exact coefficient field for every computation in the crate.
///
/// Zero-testing has to be exact, so only exact fields are admissible: in
/// practice `num_rational::BigRational` (the default everywhere) or a
/// machine-word `Ratio<i64>` for small experiments where overflow is not a
/// concern.
pub trait Field:
    Clone + Debug + Display + PartialEq + Eq + Hash + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    /// Parse a decimal integer or `a/b` literal.
    fn parse_literal(text: &str) -> Option<Self> {
        if !text.bytes().all(|b| b.is_ascii_digit() || b == b'/' || b == b'-') {
            return None;
        }
        if text.contains('/') {
            Self::from_str_radix(text, 10).ok()
        } else {
            // ratio parsers insist on an explicit denominator
            Self::from_str_radix(&format!("{text}/1"), 10)
                .or_else(|_| Self::from_str_radix(text, 10))
                .ok()
        }
    }

    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("every exact field embeds the integers")
    }
}

impl<T> Field for T where
    T: Clone + Debug + Display + PartialEq + Eq + Hash + Num + Signed + FromPrimitive + Send + Sync + 'static
{
}
