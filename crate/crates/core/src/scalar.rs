//! Arithmetic backends. A computation runs entirely in one of them:
//! exact arbitrary-precision rationals (`Q`) or binary64 floats with a
//! tolerance passed alongside.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-1/2"` or a finite decimal like `"0.25"` into an exact rational.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        let ip: BigInt = if ip.is_empty() { BigInt::zero() } else { ip.parse().map_err(|_| bad())? };
        let fpv: BigInt = fp.parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), fp.len());
        let v = Q::new(ip * &den + fpv, den);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Q::from_integer(n))
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Exact square root of a rational, if it has one.
pub fn sqrt_q(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = num_integer::Roots::sqrt(x.numer());
    let d = num_integer::Roots::sqrt(x.denom());
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

/// Closest rational with denominator at most `max_den` (continued fractions).
pub fn rationalize(x: f64, max_den: i64) -> Option<Q> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = r - a;
        if frac.abs() < 1e-12 {
            break;
        }
        r = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    Some(Q::new(BigInt::from(h1), BigInt::from(k1)))
}

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    const EXACT: bool;
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_q(x: &Q) -> Self;
    /// Floats pass through; exact backends take the exact binary value.
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    /// Exact zero test, or `|x| <= eps` for floats.
    fn is_zero_eps(&self, eps: f64) -> bool;
    fn abs_val(&self) -> Self;
    fn sqrt_opt(&self) -> Option<Self>;
    fn to_json(&self) -> serde_json::Value;
    fn from_json(v: &serde_json::Value) -> Result<Self>;
    fn show(&self) -> String;
    /// Stable textual key used for deterministic ordering.
    fn key(&self) -> String;

    fn is_zero_exact(&self) -> bool {
        self.is_zero_eps(0.0)
    }
    fn sign_eps(&self, eps: f64) -> i8 {
        if self.is_zero_eps(eps) {
            0
        } else if self.to_f64() > 0.0 {
            1
        } else {
            -1
        }
    }
    fn recip(&self) -> Self {
        Self::one() / self
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_q(&qf(n, d))
    }
}

impl Scalar for Q {
    const EXACT: bool = true;
    const NAME: &'static str = "exact";

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        q(n)
    }
    fn from_q(x: &Q) -> Self {
        x.clone()
    }
    fn from_f64(x: f64) -> Self {
        Q::from_float(x).unwrap_or_default()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_zero_eps(&self, _eps: f64) -> bool {
        Zero::is_zero(self)
    }
    fn sign_eps(&self, _eps: f64) -> i8 {
        if Zero::is_zero(self) {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
    fn abs_val(&self) -> Self {
        Signed::abs(self)
    }
    fn sqrt_opt(&self) -> Option<Self> {
        sqrt_q(self)
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(fmt_q(self))
    }
    fn from_json(v: &serde_json::Value) -> Result<Self> {
        match v {
            serde_json::Value::String(s) => parse_q(s),
            serde_json::Value::Number(n) => parse_q(&n.to_string()),
            other => Err(Error::Parse(format!("expected a rational, got {other}"))),
        }
    }
    fn show(&self) -> String {
        fmt_q(self)
    }
    fn key(&self) -> String {
        fmt_q(self)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const NAME: &'static str = "float";

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_q(x: &Q) -> Self {
        ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero_eps(&self, eps: f64) -> bool {
        self.abs() <= eps
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
    fn sqrt_opt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Number::from_f64(*self)
            .map(serde_json::Value::Number)
            .unwrap_or(serde_json::Value::Null)
    }
    fn from_json(v: &serde_json::Value) -> Result<Self> {
        match v {
            serde_json::Value::Number(n) => {
                n.as_f64().ok_or_else(|| Error::Parse(format!("bad number {n}")))
            }
            serde_json::Value::String(s) => Ok(Scalar::to_f64(&parse_q(s)?)),
            other => Err(Error::Parse(format!("expected a number, got {other}"))),
        }
    }
    fn show(&self) -> String {
        format!("{self}")
    }
    fn key(&self) -> String {
        format!("{:+.9e}", self)
    }
}
