use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A scalar of the extended real line `ℝ ∪ {−∞, +∞}`.
///
/// Finite values are `f64` and are never NaN (construction checks).
/// The ordering is total: `NegInf < finite < PosInf`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtReal {
    NegInf,
    Finite(f64),
    PosInf,
}

use ExtReal::{Finite, NegInf, PosInf};

impl ExtReal {
    pub fn finite(value: f64) -> Self {
        assert!(!value.is_nan(), "ExtReal cannot hold NaN");
        Finite(value)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    /// The finite payload, if any.
    pub fn as_finite(self) -> Option<f64> {
        match self {
            Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Max-plus addition `⊕`: maximum.
    pub fn oplus(self, other: Self) -> Self {
        self.max(other)
    }

    /// Max-plus multiplication `⊗`: sum, absorbed by `−∞`.
    ///
    /// `(−∞) ⊗ (+∞) = −∞`.
    pub fn otimes(self, other: Self) -> Self {
        match (self, other) {
            (NegInf, _) | (_, NegInf) => NegInf,
            (PosInf, _) | (_, PosInf) => PosInf,
            (Finite(a), Finite(b)) => Finite(a + b),
        }
    }

    /// Dual addition `⊞`: minimum.
    pub fn dplus(self, other: Self) -> Self {
        self.min(other)
    }

    /// Dual multiplication `⊠`: sum, absorbed by `+∞`.
    ///
    /// `(−∞) ⊠ (+∞) = +∞`.
    pub fn dtimes(self, other: Self) -> Self {
        match (self, other) {
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
            (Finite(a), Finite(b)) => Finite(a + b),
        }
    }

    /// Equality up to `tol` on finite values; infinities must match exactly.
    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        match (self, other) {
            (Finite(a), Finite(b)) => (a - b).abs() <= tol,
            (a, b) => a == b,
        }
    }

    /// Raw `f64` view: `−∞`/`+∞` map to the IEEE infinities.
    ///
    /// Only safe to compute with when the context rules out one of the
    /// infinities (e.g. inside the Kleene-star sweep, where `+∞` entries
    /// are rejected up front), so the NaN-producing `−∞ + ∞` cannot occur.
    pub(crate) fn to_raw(self) -> f64 {
        match self {
            NegInf => f64::NEG_INFINITY,
            Finite(v) => v,
            PosInf => f64::INFINITY,
        }
    }

    pub(crate) fn from_raw(raw: f64) -> Self {
        debug_assert!(!raw.is_nan());
        if raw == f64::NEG_INFINITY {
            NegInf
        } else if raw == f64::INFINITY {
            PosInf
        } else {
            Finite(raw)
        }
    }
}

impl Eq for ExtReal {}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            // No NaN by construction.
            (Finite(a), Finite(b)) => a.partial_cmp(b).expect("ExtReal holds NaN"),
        }
    }
}

impl Neg for ExtReal {
    type Output = Self;

    fn neg(self) -> Self {
        match self {
            NegInf => PosInf,
            Finite(v) => Finite(-v),
            PosInf => NegInf,
        }
    }
}

impl From<f64> for ExtReal {
    fn from(value: f64) -> Self {
        if value == f64::NEG_INFINITY {
            NegInf
        } else if value == f64::INFINITY {
            PosInf
        } else {
            Self::finite(value)
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => write!(f, "-inf"),
            Finite(v) => write!(f, "{v}"),
            PosInf => write!(f, "+inf"),
        }
    }
}

impl FromStr for ExtReal {
    type Err = std::num::ParseFloatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "-inf" => Ok(NegInf),
            "+inf" | "inf" => Ok(PosInf),
            t => t.parse::<f64>().map(ExtReal::finite),
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
