//! Exponents in `[1, ∞]` with exact handling of `∞` and of conjugation.
//!
//! An exponent is stored through its reciprocal `1/p` together with the
//! reciprocal of its conjugate `1 - 1/p`. Conjugation swaps the two, so it is
//! an exact involution in floating point.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy)]
pub struct ExtExponent {
    recip: f64,
    conj_recip: f64,
}

impl ExtExponent {
    pub const ONE: ExtExponent = ExtExponent { recip: 1.0, conj_recip: 0.0 };
    pub const TWO: ExtExponent = ExtExponent { recip: 0.5, conj_recip: 0.5 };
    pub const INF: ExtExponent = ExtExponent { recip: 0.0, conj_recip: 1.0 };

    /// A finite exponent `p >= 1`.
    pub fn finite(p: f64) -> Result<Self> {
        if !p.is_finite() || p.is_nan() || p < 1.0 {
            if p == f64::INFINITY {
                return Ok(Self::INF);
            }
            return Err(Error::Exponent(p.to_string()));
        }
        Ok(Self::from_recip(1.0 / p))
    }

    /// Builds an exponent from `1/p ∈ [0, 1]`.
    pub fn from_recip(recip: f64) -> Self {
        assert!(
            (0.0..=1.0).contains(&recip),
            "reciprocal exponent {recip} outside [0, 1]"
        );
        if recip == 0.0 {
            Self::INF
        } else if recip == 1.0 {
            Self::ONE
        } else {
            ExtExponent { recip, conj_recip: 1.0 - recip }
        }
    }

    pub fn recip(self) -> f64 {
        self.recip
    }

    /// `1/q` for the conjugate exponent `q`.
    pub fn conj_recip(self) -> f64 {
        self.conj_recip
    }

    pub fn conjugate(self) -> Self {
        ExtExponent { recip: self.conj_recip, conj_recip: self.recip }
    }

    pub fn is_inf(self) -> bool {
        self.recip == 0.0
    }

    pub fn is_one(self) -> bool {
        self.recip == 1.0
    }

    /// The exponent as a float, `f64::INFINITY` for `∞`.
    pub fn value(self) -> f64 {
        if self.is_inf() {
            f64::INFINITY
        } else {
            1.0 / self.recip
        }
    }

    /// The exponent `p` with `1/p = (1-θ)/p0 + θ/p1`.
    pub fn interpolate(p0: Self, p1: Self, theta: f64) -> Self {
        assert!((0.0..=1.0).contains(&theta), "theta {theta} outside [0, 1]");
        if theta == 0.0 {
            return p0;
        }
        if theta == 1.0 {
            return p1;
        }
        let r = ((1.0 - theta) * p0.recip + theta * p1.recip).clamp(0.0, 1.0);
        Self::from_recip(r)
    }

    /// `p0 / p1` as an exponent, for `p0 >= p1` (with `∞/p = ∞`).
    pub fn ratio(p0: Self, p1: Self) -> Result<Self> {
        if p1.is_inf() {
            return Err(Error::Domain("ratio with infinite denominator".into()));
        }
        if p0.is_inf() {
            return Ok(Self::INF);
        }
        let recip = p0.recip / p1.recip;
        if recip > 1.0 {
            return Err(Error::Exponent(format!("{}/{}", p0, p1)));
        }
        Ok(Self::from_recip(recip))
    }

    /// Vector p-norm of `x`.
    pub fn vec_norm(self, x: &[f64]) -> f64 {
        if self.is_inf() {
            return x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        }
        if self.is_one() {
            return x.iter().map(|v| v.abs()).sum();
        }
        if self.recip == 0.5 {
            return x.iter().map(|v| v * v).sum::<f64>().sqrt();
        }
        let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if scale == 0.0 {
            return 0.0;
        }
        let p = self.value();
        let s: f64 = x.iter().map(|v| (v.abs() / scale).powf(p)).sum();
        scale * s.powf(self.recip)
    }
}

impl PartialEq for ExtExponent {
    fn eq(&self, other: &Self) -> bool {
        self.recip == other.recip
    }
}

impl PartialOrd for ExtExponent {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        other.recip.partial_cmp(&self.recip)
    }
}

impl fmt::Debug for ExtExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtExponent({self})")
    }
}

impl fmt::Display for ExtExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inf() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.value())
        }
    }
}

impl FromStr for ExtExponent {
    type Err = Error;

    /// Accepts `inf`, `∞`, a decimal, or a fraction such as `4/3`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => return Ok(Self::INF),
            _ => {}
        }
        let bad = || Error::Exponent(s.to_string());
        let p = if let Some((num, den)) = t.split_once('/') {
            let num: f64 = num.trim().parse().map_err(|_| bad())?;
            let den: f64 = den.trim().parse().map_err(|_| bad())?;
            num / den
        } else {
            t.parse::<f64>().map_err(|_| bad())?
        };
        Self::finite(p).map_err(|_| bad())
    }
}

impl Serialize for ExtExponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_inf() {
            serializer.serialize_str("inf")
        } else {
            serializer.serialize_f64(self.value())
        }
    }
}

impl<'de> Deserialize<'de> for ExtExponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Str(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Num(p) => ExtExponent::finite(p).map_err(serde::de::Error::custom),
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Parses a comma-separated exponent list such as `1,4/3,2,inf`.
pub fn parse_grid(s: &str) -> Result<Vec<ExtExponent>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect()
}
