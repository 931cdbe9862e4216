//! Scalar field abstraction.
//!
//! Every construction in this crate is generic over [`Scalar`]. Two
//! implementations are provided: [`Rational`] (exact, arbitrary precision)
//! and `f64` (tolerance-based zero tests).

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational.
pub type Rational = BigRational;

/// Default zero tolerance for float mode.
pub const DEFAULT_FLOAT_TOL: f64 = 1e-9;

/// Which scalar field a session computes in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    Rational,
    Float,
}

impl FromStr for ScalarMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rational" | "exact" => Ok(ScalarMode::Rational),
            "float" | "f64" => Ok(ScalarMode::Float),
            other => Err(Error::Parse(format!("unknown scalar mode `{other}`"))),
        }
    }
}

impl Display for ScalarMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarMode::Rational => f.write_str("rational"),
            ScalarMode::Float => f.write_str("float"),
        }
    }
}

/// A field of scalars usable as coefficients.
pub trait Scalar: Signed + Clone + PartialOrd + Debug + Send + Sync + 'static {
    const MODE: ScalarMode;

    /// `true` when arithmetic is exact and zero tests ignore tolerances.
    const EXACT: bool;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    fn to_f64(&self) -> f64;

    /// Zero test. Exact scalars compare with zero; floats use `|x| <= tol`.
    fn is_negligible(&self, tol: f64) -> bool;

    /// Parses `"p/q"`, `"p"`, or a decimal literal.
    fn parse_str(s: &str) -> Result<Self>;

    fn from_json(v: &Value) -> Result<Self>;

    fn to_json(&self) -> Value;

    /// Lossless text rendering: `p/q` for rationals, 17 significant digits for floats.
    fn render(&self) -> String;

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.clone() - other.clone()).is_negligible(tol)
    }
}

fn parse_decimal_rational(s: &str) -> Option<Rational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().ok()? };
    if neg {
        numer = -numer;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}

impl Scalar for Rational {
    const MODE: ScalarMode = ScalarMode::Rational;
    const EXACT: bool = true;

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn parse_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
            let q: BigInt = q.trim().parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            return Ok(Rational::new(p, q));
        }
        parse_decimal_rational(s).ok_or_else(|| Error::Parse(format!("bad rational `{s}`")))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => Self::parse_str(s),
            // Integers and decimal literals are taken at their written value.
            Value::Number(n) => Self::parse_str(&n.to_string()),
            other => Err(Error::Parse(format!("expected rational, found {other}"))),
        }
    }

    fn to_json(&self) -> Value {
        Value::String(self.render())
    }

    fn render(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Scalar for f64 {
    const MODE: ScalarMode = ScalarMode::Float;
    const EXACT: bool = false;

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn parse_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: f64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad number `{s}`")))?;
            let q: f64 = q.trim().parse().map_err(|_| Error::Parse(format!("bad number `{s}`")))?;
            if q == 0.0 {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            return Ok(p / q);
        }
        s.parse().map_err(|_| Error::Parse(format!("bad number `{s}`")))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => Self::parse_str(s),
            Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| Error::Parse(format!("bad number {n}"))),
            other => Err(Error::Parse(format!("expected number, found {other}"))),
        }
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or_else(|| Value::String(self.render()))
    }

    fn render(&self) -> String {
        format!("{:.16e}", self)
    }
}

/// `1/n` in the scalar field.
pub fn reciprocal<S: Scalar>(n: usize) -> S {
    S::one() / S::from_int(n as i64)
}

pub fn half<S: Scalar>() -> S {
    S::from_ratio(1, 2)
}
