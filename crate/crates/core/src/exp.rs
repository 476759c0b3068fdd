//! Extended-real exponents for ℓ_p norms.
//!
//! Infinity is a distinguished enum variant, never a float sentinel, so no
//! arithmetic ever silently mixes `f64::INFINITY` into a sum.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exponent in `(0, ∞]`. Space exponents are restricted to `[1, ∞]` by
/// [`crate::spaces::SpaceSpec`]; sequence norms accept the full range where the
/// operation permits it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exp {
    Finite(f64),
    Inf,
}

impl Exp {
    /// Constructs a finite exponent. Panics on non-positive or non-finite input;
    /// use [`Exp::try_finite`] for fallible construction.
    pub fn finite(p: f64) -> Self {
        Self::try_finite(p).expect("exponent must be positive and finite")
    }

    pub fn try_finite(p: f64) -> Option<Self> {
        (p > 0.0 && p.is_finite()).then_some(Exp::Finite(p))
    }

    pub fn is_inf(self) -> bool {
        matches!(self, Exp::Inf)
    }

    /// `1/p`, with `1/∞ = 0`.
    pub fn recip(self) -> f64 {
        match self {
            Exp::Finite(p) => 1.0 / p,
            Exp::Inf => 0.0,
        }
    }

    /// The conjugate exponent `p'` with `1/p + 1/p' = 1`. Only defined for
    /// `p ≥ 1`; `dual(1) = ∞` and `dual(∞) = 1`.
    pub fn dual(self) -> Exp {
        match self {
            Exp::Inf => Exp::Finite(1.0),
            Exp::Finite(p) => {
                debug_assert!(p >= 1.0, "conjugate exponent needs p >= 1");
                if p <= 1.0 {
                    Exp::Inf
                } else {
                    Exp::Finite(p / (p - 1.0))
                }
            }
        }
    }

    /// Solves `1/r = 1/q - 1/s` for the factorization exponent of the mixed
    /// norm. Requires `q ≤ s`; returns `Inf` when `q = s`.
    pub fn mixed_r(s: Exp, q: Exp) -> Exp {
        let diff = q.recip() - s.recip();
        if diff <= 0.0 {
            Exp::Inf
        } else {
            Exp::Finite(1.0 / diff)
        }
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Exp::Finite(p) => Some(p),
            Exp::Inf => None,
        }
    }
}

impl fmt::Display for Exp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exp::Finite(p) => write!(f, "{p}"),
            Exp::Inf => write!(f, "inf"),
        }
    }
}

// Wire format: a JSON number, or the string "inf".
impl Serialize for Exp {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Exp::Finite(p) => serializer.serialize_f64(*p),
            Exp::Inf => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exp {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(p) => {
                Exp::try_finite(p).ok_or_else(|| D::Error::custom("exponent must be in (0, inf)"))
            }
            Raw::Str(s) if s == "inf" => Ok(Exp::Inf),
            Raw::Str(s) => Err(D::Error::custom(format!(
                "unknown exponent literal {s:?}, expected a number or \"inf\""
            ))),
        }
    }
}

/// `(Σ |v_i|^p)^{1/p}`, or `max |v_i|` at `p = ∞`.
#[allow(clippy::redundant_guards)] // float literals in patterns are worse
pub fn lp_norm(values: impl IntoIterator<Item = f64>, p: Exp) -> f64 {
    match p {
        Exp::Inf => values.into_iter().fold(0.0, |acc, v| acc.max(v.abs())),
        Exp::Finite(p) if p == 1.0 => values.into_iter().map(f64::abs).sum(),
        Exp::Finite(p) if p == 2.0 => values
            .into_iter()
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt(),
        Exp::Finite(p) => values
            .into_iter()
            .map(|v| v.abs().powf(p))
            .sum::<f64>()
            .powf(1.0 / p),
    }
}

/// `|t|^p` with the common small exponents special-cased.
pub fn abs_pow(t: f64, p: f64) -> f64 {
    if p == 1.0 {
        t.abs()
    } else if p == 2.0 {
        t * t
    } else {
        t.abs().powf(p)
    }
}
