use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact values longer than this many decimal digits are kept as logarithms.
pub const PROMOTION_DIGITS: u64 = 1_000_000;

/// A nonnegative number that may be far outside `f64` range.
///
/// Depth 0 holds an exact integer. Depth 1 holds `log10` of the number,
/// which reaches values like `10^(1.8e55)` whose logarithm still fits in a
/// double. Exact values move to depth 1 only when they grow past
/// [`PROMOTION_DIGITS`]; real-valued estimates start at depth 1.
#[derive(Debug, Clone, PartialEq)]
pub enum Magnitude {
    Exact(BigUint),
    Log10(f64),
}

fn log10_big(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("fits in f64").log10();
    }
    // Keep the leading 64 bits and account for the rest as a power of two.
    let shift = bits - 64;
    let top = (n >> shift).to_f64().expect("64 bits");
    top.log10() + shift as f64 * std::f64::consts::LOG10_2
}

fn decimal_digits(n: &BigUint) -> u64 {
    if n.is_zero() {
        return 1;
    }
    let log = log10_big(n);
    if log < 300.0 {
        return n.to_string().len() as u64;
    }
    let est = log.floor() as u64 + 1;
    let frac = log - log.floor();
    if frac > 1e-6 && frac < 1.0 - 1e-6 {
        return est;
    }
    // Close to a power of ten the float estimate may be off by one.
    let ten = BigUint::from(10u32);
    if *n >= ten.pow(est as u32) {
        est + 1
    } else if *n < ten.pow(est as u32 - 1) {
        est - 1
    } else {
        est
    }
}

impl Magnitude {
    pub fn exact(n: impl Into<BigUint>) -> Self {
        Magnitude::promote(n.into())
    }

    fn promote(n: BigUint) -> Self {
        let log = log10_big(&n);
        if log > PROMOTION_DIGITS as f64 - 2.0 && decimal_digits(&n) > PROMOTION_DIGITS {
            Magnitude::Log10(log)
        } else {
            Magnitude::Exact(n)
        }
    }

    /// A positive real quantity; always depth 1.
    pub fn from_real(x: f64) -> Result<Self> {
        if x.is_finite() && x > 0.0 {
            Ok(Magnitude::Log10(x.log10()))
        } else {
            Err(Error::Config(format!(
                "magnitude needs a positive finite value, got {x}"
            )))
        }
    }

    pub fn from_log10(log10: f64) -> Result<Self> {
        if log10.is_finite() {
            Ok(Magnitude::Log10(log10))
        } else {
            Err(Error::Config("log10 out of representable range".into()))
        }
    }

    pub fn depth(&self) -> u8 {
        match self {
            Magnitude::Exact(_) => 0,
            Magnitude::Log10(_) => 1,
        }
    }

    pub fn as_exact(&self) -> Option<&BigUint> {
        match self {
            Magnitude::Exact(n) => Some(n),
            Magnitude::Log10(_) => None,
        }
    }

    pub fn log10(&self) -> f64 {
        match self {
            Magnitude::Exact(n) => log10_big(n),
            Magnitude::Log10(l) => *l,
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Magnitude::Exact(n) if n.is_zero())
    }

    pub fn mul(&self, other: &Magnitude) -> Magnitude {
        match (self, other) {
            (Magnitude::Exact(a), Magnitude::Exact(b)) => Magnitude::promote(a * b),
            _ if self.is_zero() || other.is_zero() => Magnitude::Exact(BigUint::zero()),
            _ => Magnitude::Log10(self.log10() + other.log10()),
        }
    }

    pub fn pow(&self, exp: u64) -> Magnitude {
        match self {
            Magnitude::Exact(n) => {
                if exp == 0 {
                    return Magnitude::Exact(BigUint::one());
                }
                if n.is_zero() || n.is_one() {
                    return Magnitude::Exact(n.clone());
                }
                let log = exp as f64 * log10_big(n);
                if log > PROMOTION_DIGITS as f64 + 1.0 {
                    Magnitude::Log10(log)
                } else {
                    // Below the promotion threshold the exponent is far
                    // under u32::MAX.
                    Magnitude::promote(n.pow(exp as u32))
                }
            }
            Magnitude::Log10(l) => Magnitude::Log10(l * exp as f64),
        }
    }

    /// `self ^ exp` where the exponent may itself be a magnitude.
    pub fn pow_magnitude(&self, exp: &Magnitude) -> Result<Magnitude> {
        if let Some(e) = exp.as_exact().and_then(ToPrimitive::to_u64) {
            return Ok(self.pow(e));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let base = self.log10();
        if base == 0.0 {
            return Ok(Magnitude::Exact(BigUint::one()));
        }
        // log10(base^exp) = exp * log10(base) = 10^(log10 exp + log10 log10 base)
        let exponent = exp.log10() + base.abs().log10();
        if exponent > f64::MAX_10_EXP as f64 {
            return Err(Error::Config(
                "power exceeds the range of a depth-1 magnitude".into(),
            ));
        }
        Magnitude::from_log10(base.signum() * 10f64.powf(exponent))
    }

    /// Decimal digit count; exact for depth 0.
    pub fn digits(&self) -> f64 {
        match self {
            Magnitude::Exact(n) => decimal_digits(n) as f64,
            Magnitude::Log10(l) => l.floor() + 1.0,
        }
    }
}

impl PartialOrd for Magnitude {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Magnitude::Exact(a), Magnitude::Exact(b)) => Some(a.cmp(b)),
            _ => self.log10().partial_cmp(&other.log10()),
        }
    }
}

impl From<u64> for Magnitude {
    fn from(n: u64) -> Self {
        Magnitude::Exact(BigUint::from(n))
    }
}

impl Serialize for Magnitude {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(1))?;
        match self {
            Magnitude::Exact(n) => map.serialize_entry("exact", &n.to_string())?,
            Magnitude::Log10(l) => map.serialize_entry("log10", l)?,
        }
        map.end()
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Magnitude::Exact(n) if decimal_digits(n) <= 60 => write!(f, "{n}"),
            Magnitude::Exact(n) => write!(f, "10^{:.6}", log10_big(n)),
            Magnitude::Log10(l) if l.abs() < 1e6 => write!(f, "10^{l:.6}"),
            Magnitude::Log10(l) => write!(f, "10^({l:.6e})"),
        }
    }
}
