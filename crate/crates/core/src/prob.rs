use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, LoadError, ParseError};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

/// Largest decimal exponent accepted by [`parse_rational`].
const MAX_EXPONENT: i64 = 400;

/// An exact probability in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prob(Rational);

impl Prob {
    pub fn new(value: Rational) -> Result<Self, Error> {
        if value.is_negative() || value > Rational::one() {
            return Err(Error::ProbOutOfRange { value });
        }
        Ok(Prob(value))
    }

    /// `numer / denom` from machine integers. Panics if `denom == 0`.
    pub fn ratio(numer: i64, denom: i64) -> Result<Self, Error> {
        Prob::new(Rational::new(numer.into(), denom.into()))
    }

    pub fn zero() -> Self {
        Prob(Rational::zero())
    }

    pub fn one() -> Self {
        Prob(Rational::one())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_value(self) -> Rational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `1 - p`.
    pub fn complement(&self) -> Prob {
        Prob(Rational::one() - &self.0)
    }

    /// Nearest `f64` (correctly rounded by the bigint conversion).
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Construction for values already known to be in range.
    pub(crate) fn from_unchecked(value: Rational) -> Self {
        debug_assert!(!value.is_negative() && value <= Rational::one());
        Prob(value)
    }
}

impl fmt::Display for Prob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Prob {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

impl FromStr for Prob {
    type Err = LoadError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Prob::new(parse_rational(s)?)?)
    }
}

/// Parses `"0.2"`, `"1/5"`, `"-3"`, `".5"`, `"2.5e-1"` into an exact rational.
///
/// Decimal notation is converted exactly (`"0.3"` is `3/10`). Surrounding
/// whitespace is ignored.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let invalid = |reason| ParseError::InvalidNumber { text: text.to_string(), reason };
    let s = text.trim();
    if s.is_empty() {
        return Err(invalid("empty"));
    }
    if let Some((numer, denom)) = s.split_once('/') {
        let numer = parse_signed_integer(numer.trim()).ok_or_else(|| invalid("bad numerator"))?;
        let denom = parse_signed_integer(denom.trim()).ok_or_else(|| invalid("bad denominator"))?;
        if denom.is_zero() {
            return Err(invalid("zero denominator"));
        }
        return Ok(Rational::new(numer, denom));
    }

    let (negative, rest) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match rest.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = rest[pos + 1..].parse().map_err(|_| invalid("bad exponent"))?;
            if exp.abs() > MAX_EXPONENT {
                return Err(invalid("exponent out of range"));
            }
            (&rest[..pos], exp)
        }
        None => (rest, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(invalid("no digits"));
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(invalid("unexpected character"));
    }

    let digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = digits.parse().map_err(|_| invalid("no digits"))?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

fn parse_signed_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}
