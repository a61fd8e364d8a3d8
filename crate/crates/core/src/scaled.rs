//! Complex numbers with an unbounded binary exponent.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// `mantissa · 2^exponent` with `|mantissa| ∈ [1, 2)`, or exactly zero with
/// exponent 0. Every constructor and operation renormalizes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledValue {
    mantissa: Complex64,
    exponent: i64,
}

/// `x · 2^k` without forming an overflowing power of two.
pub(crate) fn ldexp(mut x: f64, mut k: i64) -> f64 {
    while k != 0 && x != 0.0 && x.is_finite() {
        let step = k.clamp(-1000, 1000);
        x *= 2f64.powi(step as i32);
        k -= step;
    }
    x
}

fn ldexp_c(z: Complex64, k: i64) -> Complex64 {
    Complex64::new(ldexp(z.re, k), ldexp(z.im, k))
}

impl ScaledValue {
    pub const ZERO: ScaledValue = ScaledValue { mantissa: Complex64::new(0.0, 0.0), exponent: 0 };
    pub const ONE: ScaledValue = ScaledValue { mantissa: Complex64::new(1.0, 0.0), exponent: 0 };

    pub fn new(mantissa: Complex64, exponent: i64) -> Self {
        let norm = mantissa.norm();
        if norm == 0.0 {
            return Self::ZERO;
        }
        if !norm.is_finite() {
            return ScaledValue { mantissa, exponent };
        }
        let mut e = norm.log2().floor() as i64;
        let mut m = ldexp_c(mantissa, -e);
        // log2 can be off by one ulp near powers of two.
        while m.norm() >= 2.0 {
            m /= 2.0;
            e += 1;
        }
        while m.norm() < 1.0 {
            m *= 2.0;
            e -= 1;
        }
        ScaledValue { mantissa: m, exponent: exponent + e }
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z, 0)
    }

    pub fn from_f64(x: f64) -> Self {
        Self::new(Complex64::new(x, 0.0), 0)
    }

    pub fn mantissa(&self) -> Complex64 {
        self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.re == 0.0 && self.mantissa.im == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.mantissa.re.is_finite() && self.mantissa.im.is_finite()
    }

    /// Plain complex value; overflows to infinity or underflows to zero when
    /// the exponent is out of `f64` range.
    pub fn to_complex(&self) -> Complex64 {
        ldexp_c(self.mantissa, self.exponent)
    }

    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.mantissa.norm().log2() + self.exponent as f64
        }
    }

    pub fn ln_abs(&self) -> f64 {
        self.log2_abs() * std::f64::consts::LN_2
    }

    /// Phase in `(-π, π]`.
    pub fn arg(&self) -> f64 {
        self.mantissa.arg()
    }

    pub fn mul_pow2(self, k: i64) -> Self {
        if self.is_zero() {
            self
        } else {
            ScaledValue { mantissa: self.mantissa, exponent: self.exponent + k }
        }
    }

    pub fn powi(self, k: i64) -> Self {
        let mut base = if k < 0 { self.recip() } else { self };
        let mut k = k.unsigned_abs();
        let mut acc = Self::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }

    pub fn recip(self) -> Self {
        ScaledValue::new(self.mantissa.inv(), -self.exponent)
    }

    pub fn scale(self, factor: Complex64) -> Self {
        ScaledValue::new(self.mantissa * factor, self.exponent)
    }

    /// `|a - b| / max(|a|, |b|)`, evaluated without leaving scaled
    /// arithmetic; zero when both are zero.
    pub fn relative_error(&self, other: &ScaledValue) -> f64 {
        let denom = self.log2_abs().max(other.log2_abs());
        if denom == f64::NEG_INFINITY {
            return 0.0;
        }
        let diff = (*self - *other).log2_abs();
        (diff - denom).exp2()
    }

    /// Decimal rendering with 17 significant digits, `re` or `re+imi`.
    pub fn to_decimal_string(&self) -> String {
        if !self.is_finite() {
            return format!("{}", self.mantissa);
        }
        if self.is_zero() {
            return "0".into();
        }
        let t = self.exponent as f64 * std::f64::consts::LOG10_2;
        let k = t.floor();
        let factor = 10f64.powf(t - k);
        let k = k as i64;
        let re = render_sci(self.mantissa.re * factor, k);
        if self.mantissa.im == 0.0 {
            re
        } else {
            let im = render_sci(self.mantissa.im * factor, k);
            if im.starts_with('-') {
                format!("{re}{im}i")
            } else {
                format!("{re}+{im}i")
            }
        }
    }
}

fn render_sci(x: f64, extra: i64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let s = format!("{x:.16e}");
    let (digits, exp) = s.split_once('e').expect("scientific format has an exponent");
    let exp: i64 = exp.parse().expect("integer exponent");
    format!("{digits}e{}", exp + extra)
}

impl fmt::Display for ScaledValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

impl Default for ScaledValue {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<f64> for ScaledValue {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl From<Complex64> for ScaledValue {
    fn from(z: Complex64) -> Self {
        Self::from_complex(z)
    }
}

impl Mul for ScaledValue {
    type Output = ScaledValue;
    fn mul(self, rhs: ScaledValue) -> ScaledValue {
        ScaledValue::new(self.mantissa * rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Add for ScaledValue {
    type Output = ScaledValue;
    fn add(self, rhs: ScaledValue) -> ScaledValue {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (big, small) = if self.exponent >= rhs.exponent { (self, rhs) } else { (rhs, self) };
        let m = big.mantissa + ldexp_c(small.mantissa, small.exponent - big.exponent);
        ScaledValue::new(m, big.exponent)
    }
}

impl Neg for ScaledValue {
    type Output = ScaledValue;
    fn neg(self) -> ScaledValue {
        ScaledValue { mantissa: -self.mantissa, exponent: self.exponent }
    }
}

impl Sub for ScaledValue {
    type Output = ScaledValue;
    fn sub(self, rhs: ScaledValue) -> ScaledValue {
        self + (-rhs)
    }
}

impl Sum for ScaledValue {
    fn sum<I: Iterator<Item = ScaledValue>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

impl Product for ScaledValue {
    fn product<I: Iterator<Item = ScaledValue>>(iter: I) -> Self {
        iter.fold(Self::ONE, |a, b| a * b)
    }
}

impl Serialize for ScaledValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ScaledValue", 3)?;
        s.serialize_field("mantissa", &[self.mantissa.re, self.mantissa.im])?;
        s.serialize_field("exponent", &self.exponent)?;
        s.serialize_field("decimal", &self.to_decimal_string())?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for ScaledValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            mantissa: [f64; 2],
            exponent: i64,
        }
        let raw = Raw::deserialize(deserializer)?;
        Ok(ScaledValue::new(Complex64::new(raw.mantissa[0], raw.mantissa[1]), raw.exponent))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalization() {
        let v = ScaledValue::from_f64(6.0);
        assert_eq!(v.mantissa(), Complex64::new(1.5, 0.0));
        assert_eq!(v.exponent(), 2);
        assert_eq!(ScaledValue::from_f64(0.0), ScaledValue::ZERO);
        let w = ScaledValue::from_f64(-0.75);
        assert_eq!((w.mantissa().re, w.exponent()), (-1.5, -1));
    }

    #[test]
    fn beyond_f64_range() {
        let big = ScaledValue::from_f64(1e300).powi(10);
        assert!(big.to_complex().re.is_infinite());
        let back = big * ScaledValue::from_f64(1e-300).powi(10);
        assert!(back.relative_error(&ScaledValue::ONE) < 1e-12);
        assert!((big.log2_abs() - 3000.0 * 10f64.log2()).abs() < 1e-9);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(ScaledValue::from_f64(6.0).to_decimal_string(), "6.0000000000000000e0");
        let z = ScaledValue::from_complex(Complex64::new(1.0, -2.0));
        assert_eq!(z.to_decimal_string(), "1.0000000000000000e0-2.0000000000000000e0i");
        let tiny = ScaledValue::new(Complex64::new(1.0, 0.0), -4000);
        assert!(tiny.to_decimal_string().ends_with("e-1205"));
    }

    #[test]
    fn serde_round_trip() {
        let z = ScaledValue::new(Complex64::new(1.25, 0.5), 77);
        let json = serde_json::to_string(&z).unwrap();
        assert!(json.contains("\"exponent\":77"));
        let back: ScaledValue = serde_json::from_str(&json).unwrap();
        assert_eq!(back, z);
    }

    proptest! {
        #[test]
        fn arithmetic_matches_complex(a in -1e6f64..1e6, b in -1e6f64..1e6, c in -1e6f64..1e6, d in -1e6f64..1e6) {
            let x = Complex64::new(a, b);
            let y = Complex64::new(c, d);
            let sx = ScaledValue::from_complex(x);
            let sy = ScaledValue::from_complex(y);
            let prod = (sx * sy).to_complex();
            prop_assert!((prod - x * y).norm() <= 1e-14 * (x * y).norm().max(1e-300));
            let sum = (sx + sy).to_complex();
            prop_assert!((sum - (x + y)).norm() <= 1e-15 * (x.norm() + y.norm()));
            let m = sx.mantissa().norm();
            prop_assert!(sx.is_zero() || (1.0..2.0).contains(&m));
        }
    }
}
