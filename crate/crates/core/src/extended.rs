//! Nonnegative reals extended with `+∞`.

use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A value in `[0, +∞]`. Divergent modulars and norms are `+∞`, never an error.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ExtendedReal(f64);

impl ExtendedReal {
    pub const ZERO: ExtendedReal = ExtendedReal(0.0);
    pub const INFINITY: ExtendedReal = ExtendedReal(f64::INFINITY);

    /// Panics on negative or NaN input.
    pub fn new(value: f64) -> Self {
        assert!(value >= 0.0, "ExtendedReal must be nonnegative, got {value}");
        ExtendedReal(value)
    }

    pub fn finite(self) -> Option<f64> {
        self.0.is_finite().then_some(self.0)
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    /// The raw value, `f64::INFINITY` for `+∞`.
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn max(self, other: Self) -> Self {
        if other.0 > self.0 {
            other
        } else {
            self
        }
    }
}

impl Add for ExtendedReal {
    type Output = ExtendedReal;

    fn add(self, rhs: Self) -> Self {
        ExtendedReal(self.0 + rhs.0)
    }
}

/// Scaling by a positive constant; `0 · ∞` is taken as `0`.
impl Mul<f64> for ExtendedReal {
    type Output = ExtendedReal;

    fn mul(self, c: f64) -> Self {
        assert!(c >= 0.0, "ExtendedReal scaled by negative constant {c}");
        if c == 0.0 {
            ExtendedReal::ZERO
        } else {
            ExtendedReal(self.0 * c)
        }
    }
}

impl From<ExtendedReal> for f64 {
    fn from(v: ExtendedReal) -> f64 {
        v.0
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            f.write_str("inf")
        } else {
            fmt::Display::fmt(&self.0, f)
        }
    }
}

// JSON has no infinity literal; +∞ travels as the string "inf".
impl Serialize for ExtendedReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) if v >= 0.0 => Ok(ExtendedReal(v)),
            Repr::Num(v) => Err(serde::de::Error::custom(format!("negative extended real {v}"))),
            Repr::Str(s) if s == "inf" => Ok(ExtendedReal::INFINITY),
            Repr::Str(s) => Err(serde::de::Error::custom(format!("expected number or \"inf\", got {s:?}"))),
        }
    }
}
