//! Exact 24th roots of unity, the value group of the eta multiplier.

use std::fmt;
use std::ops::{Mul, MulAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// `exp(2 pi i k / 24)` stored as `k` in `0..24`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root24(u8);

impl Root24 {
    pub const ONE: Root24 = Root24(0);
    pub const I: Root24 = Root24(6);
    pub const MINUS_ONE: Root24 = Root24(12);
    pub const MINUS_I: Root24 = Root24(18);

    pub fn from_exponent(k: i64) -> Self {
        Root24(k.rem_euclid(24) as u8)
    }

    pub fn from_big_exponent(k: &BigInt) -> Self {
        let r = k.mod_floor(&BigInt::from(24));
        Root24(r.to_u8().expect("residue mod 24"))
    }

    /// `symbol * exp(pi i m / 12)` with `symbol` in `{-1, +1}`.
    pub fn from_signed_twelfth(symbol: i8, m: &BigInt) -> Self {
        debug_assert!(symbol == 1 || symbol == -1);
        let shift = if symbol < 0 { 12 } else { 0 };
        Self::from_big_exponent(&(m + shift))
    }

    /// `exp(pi i f / 6)`.
    pub fn from_sixth(f: &BigInt) -> Self {
        Self::from_big_exponent(&(f * 2))
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn pow(self, k: i64) -> Self {
        Self::from_exponent(i64::from(self.0) * k.rem_euclid(24))
    }

    pub fn inverse(self) -> Self {
        Self::from_exponent(-i64::from(self.0))
    }

    /// Multiplicative order, a divisor of 24.
    pub fn order(self) -> u8 {
        24 / (self.0.gcd(&24))
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::PI * f64::from(self.0) / 12.0)
    }

    /// `"k/24"`.
    pub fn fraction(self) -> String {
        format!("{}/24", self.0)
    }

    /// `1`, `i`, `-1`, `-i` for the fourth roots, otherwise the exponential form.
    pub fn short_name(self) -> String {
        match self.0 {
            0 => "1".into(),
            6 => "i".into(),
            12 => "-1".into(),
            18 => "-i".into(),
            _ => self.to_string(),
        }
    }
}

impl Mul for Root24 {
    type Output = Root24;

    fn mul(self, rhs: Root24) -> Root24 {
        Root24((self.0 + rhs.0) % 24)
    }
}

impl MulAssign for Root24 {
    fn mul_assign(&mut self, rhs: Root24) {
        *self = *self * rhs;
    }
}

impl fmt::Display for Root24 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp(2*pi*i*{}/24)", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        assert_eq!(Root24::I * Root24::I, Root24::MINUS_ONE);
        assert_eq!(Root24::MINUS_I.inverse(), Root24::I);
        assert_eq!(Root24::from_exponent(-3), Root24(21));
        assert_eq!(Root24::from_exponent(1).pow(24), Root24::ONE);
        assert_eq!(Root24::from_exponent(5).pow(-1), Root24::from_exponent(19));
        assert_eq!(Root24::from_exponent(2).order(), 12);
        assert_eq!(Root24::ONE.order(), 1);
    }

    #[test]
    fn conversions() {
        assert_eq!(
            Root24::from_signed_twelfth(-1, &BigInt::from(-6)),
            Root24(6)
        );
        assert_eq!(Root24::from_sixth(&BigInt::from(9)), Root24::MINUS_I);
        let z = Root24::from_exponent(21).to_complex();
        let expected = Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4);
        assert!((z - expected).norm() < 1e-15);
    }

    #[test]
    fn formatting() {
        assert_eq!(Root24::MINUS_I.fraction(), "18/24");
        assert_eq!(Root24::MINUS_I.short_name(), "-i");
        assert_eq!(Root24(1).short_name(), "exp(2*pi*i*1/24)");
        assert_eq!(serde_json::to_string(&Root24(7)).unwrap(), "7");
    }
}
