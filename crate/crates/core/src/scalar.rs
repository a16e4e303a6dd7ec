//! Scalar abstraction shared by every computation in the crate.
//!
//! All algorithms are written against [`Scalar`], a field-like numeric type
//! from `num-traits`. The crate is meant to run on exact rationals
//! ([`crate::Rational`]); `f64`/`f32` also satisfy the bound and are handy
//! for quick approximate evaluation, but integrality and equality claims are
//! only decidable on exact types.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// A field-like scalar: ring operations, division, ordering and text I/O.
pub trait Scalar:
    Clone
    + Num
    + Signed
    + PartialOrd
    + FromPrimitive
    + Display
    + FromStr
    + Debug
    + Send
    + Sync
    + 'static
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("every scalar type represents small integers")
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }
}

impl<T> Scalar for T where
    T: Clone
        + Num
        + Signed
        + PartialOrd
        + FromPrimitive
        + Display
        + FromStr
        + Debug
        + Send
        + Sync
        + 'static
{
}

/// Scalars with decidable integrality, i.e. exact rational types.
pub trait ExactScalar: Scalar + Ord {
    /// The value as an integer, if it is one.
    fn as_integer(&self) -> Option<BigInt>;
}

impl ExactScalar for Ratio<BigInt> {
    fn as_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.numer().clone())
    }
}

impl ExactScalar for Ratio<i64> {
    fn as_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| BigInt::from(*self.numer()))
    }
}

/// Integer power of a Gaussian scalar, negative exponents through the inverse.
pub fn complex_pow<S: Scalar>(z: &Complex<S>, exp: i64) -> Complex<S> {
    let mut base = if exp < 0 { z.inv() } else { z.clone() };
    let mut e = exp.unsigned_abs();
    let mut acc = Complex::new(S::one(), S::zero());
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * base;
        }
    }
    acc
}

/// Total order on Gaussian scalars (real part first), used to canonicalise
/// multisets. Incomparable parts (NaN) compare equal.
pub fn complex_cmp<S: Scalar>(a: &Complex<S>, b: &Complex<S>) -> std::cmp::Ordering {
    use std::cmp::Ordering::Equal;
    a.re.partial_cmp(&b.re)
        .unwrap_or(Equal)
        .then(a.im.partial_cmp(&b.im).unwrap_or(Equal))
}

/// Whether `z` lies on the unit circle, i.e. `re² + im² = 1`.
pub fn on_unit_circle<S: Scalar>(z: &Complex<S>) -> bool {
    z.norm_sqr().is_one()
}

/// Serde adapter writing a scalar through `Display` and reading it back with
/// `FromStr`, so exact rationals travel as `"p/q"` strings.
pub mod as_string {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(de: D) -> Result<T, D::Error>
    where
        T: FromStr,
        D: Deserializer<'de>,
    {
        let s = String::deserialize(de)?;
        s.trim()
            .parse()
            .map_err(|_| D::Error::custom(format!("invalid scalar literal {s:?}")))
    }
}

/// Serde adapter for Gaussian scalars as `{"re": "p/q", "im": "p/q"}`.
pub mod complex_as_strings {
    use num_complex::Complex;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::Scalar;

    #[derive(Serialize, Deserialize)]
    struct Parts {
        re: String,
        im: String,
    }

    pub fn serialize<T: Scalar, S: Serializer>(z: &Complex<T>, ser: S) -> Result<S::Ok, S::Error> {
        Parts {
            re: z.re.to_string(),
            im: z.im.to_string(),
        }
        .serialize(ser)
    }

    pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(de: D) -> Result<Complex<T>, D::Error> {
        let parts = Parts::deserialize(de)?;
        let parse = |s: &str| {
            s.trim()
                .parse::<T>()
                .map_err(|_| D::Error::custom(format!("invalid scalar literal {s:?}")))
        };
        Ok(Complex::new(parse(&parts.re)?, parse(&parts.im)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Gaussian, Rational};

    fn g(re: i64, im: i64) -> Gaussian {
        Complex::new(Rational::from_int(re), Rational::from_int(im))
    }

    #[test]
    fn powers_of_i() {
        let i = g(0, 1);
        assert_eq!(complex_pow(&i, 2), g(-1, 0));
        assert_eq!(complex_pow(&i, 4), g(1, 0));
        assert_eq!(complex_pow(&i, -1), g(0, -1));
        assert_eq!(complex_pow(&i, 0), g(1, 0));
    }

    #[test]
    fn one_plus_i_squared() {
        assert_eq!(complex_pow(&g(1, 1), 2), g(0, 2));
    }

    #[test]
    fn integrality() {
        assert_eq!(Rational::from_ratio(6, 3).as_integer(), Some(BigInt::from(2)));
        assert_eq!(Rational::from_ratio(7, 3).as_integer(), None);
    }

    #[test]
    fn float_scalars_work_too() {
        let z = Complex::new(0.0f64, 1.0);
        assert_eq!(complex_pow(&z, 2), Complex::new(-1.0, 0.0));
    }

    #[test]
    fn pythagorean_point_is_on_unit_circle() {
        let z = Complex::new(Rational::from_ratio(3, 5), Rational::from_ratio(4, 5));
        assert!(on_unit_circle(&z));
        assert!(!on_unit_circle(&g(1, 1)));
    }
}
