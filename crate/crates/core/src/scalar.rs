//! Scalar modes: exact rationals for polytope work, `f64` for quantum work.
//!
//! Every container is homogeneous in one mode. Rational → float conversion is
//! explicit ([`Scalar::to_f64`]); there is no float → rational conversion.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Default tolerance for float-mode predicates.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    Rational,
    Float,
}

/// Field element usable in correlation tables, polytopes and the simplex solver.
///
/// Comparisons that take `tol` are exact for [`Rational`] (the tolerance is
/// ignored) and tolerance-based for `f64`.
pub trait Scalar: Signed + Clone + PartialOrd + Debug + Display + Send + Sync + 'static {
    const MODE: ScalarMode;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }

    fn to_f64(&self) -> f64;

    fn is_zero_tol(&self, tol: f64) -> bool;

    /// Strictly below zero, beyond `tol` in float mode.
    fn is_negative_tol(&self, tol: f64) -> bool;

    /// Strictly above zero, beyond `tol` in float mode.
    fn is_positive_tol(&self, tol: f64) -> bool {
        (-self.clone()).is_negative_tol(tol)
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.clone() - other.clone()).is_zero_tol(tol)
    }

    /// |a − b| as a float, for reporting deviations.
    fn deviation(&self, other: &Self) -> f64 {
        (self.clone() - other.clone()).abs().to_f64()
    }

    /// Scale a linear functional (coefficients and bound) to a canonical form.
    /// Rationals become coprime integers; floats are scaled to unit max-norm.
    fn normalize_functional(coeffs: &mut [Self], bound: &mut Self);

    fn parse_json(value: &serde_json::Value) -> Result<Self, String>;

    fn to_json(&self) -> serde_json::Value;
}

impl Scalar for Rational {
    const MODE: ScalarMode = ScalarMode::Rational;

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        // BigRational::to_f64 handles huge numerators/denominators without overflow.
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_zero_tol(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn is_negative_tol(&self, _tol: f64) -> bool {
        self.is_negative()
    }

    fn normalize_functional(coeffs: &mut [Self], bound: &mut Self) {
        let mut lcm = BigInt::one();
        for c in coeffs.iter().chain(std::iter::once(&*bound)) {
            lcm = lcm.lcm(c.denom());
        }
        let scaled: Vec<BigInt> = coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let scaled_bound = (&*bound * BigRational::from_integer(lcm)).to_integer();
        let mut gcd = scaled_bound.abs();
        for c in &scaled {
            gcd = gcd.gcd(c);
        }
        if gcd.is_zero() {
            return;
        }
        for (c, s) in coeffs.iter_mut().zip(scaled) {
            *c = BigRational::from_integer(s / &gcd);
        }
        *bound = BigRational::from_integer(scaled_bound / gcd);
    }

    fn parse_json(value: &serde_json::Value) -> Result<Self, String> {
        match value {
            serde_json::Value::String(s) => parse_rational(s),
            serde_json::Value::Number(n) if n.is_i64() => Ok(Self::from_int(n.as_i64().unwrap())),
            other => Err(format!("expected rational string \"a/b\", found {other}")),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format_rational(self))
    }
}

impl Scalar for f64 {
    const MODE: ScalarMode = ScalarMode::Float;

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_zero_tol(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn is_negative_tol(&self, tol: f64) -> bool {
        *self < -tol
    }

    fn normalize_functional(coeffs: &mut [Self], bound: &mut Self) {
        let scale = coeffs
            .iter()
            .chain(std::iter::once(&*bound))
            .fold(0.0f64, |acc, c| acc.max(c.abs()));
        if scale > 0.0 {
            coeffs.iter_mut().for_each(|c| *c /= scale);
            *bound /= scale;
        }
    }

    fn parse_json(value: &serde_json::Value) -> Result<Self, String> {
        value
            .as_f64()
            .ok_or_else(|| format!("expected a number, found {value}"))
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Number::from_f64(*self)
            .map(serde_json::Value::Number)
            .unwrap_or(serde_json::Value::Null)
    }
}

/// Canonical "a/b" form; integers keep the explicit "/1".
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts "a/b" or a bare integer "a".
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
    let den = BigInt::from_str(den).map_err(|e| format!("bad denominator in {s:?}: {e}"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(num, den))
}

/// Shorthand for building exact constants.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}
