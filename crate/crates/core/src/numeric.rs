//! High-precision numeric helpers for the checks that leave `Q(v)` (square
//! roots of q-numbers).
//!
//! Everything stays in exact rational arithmetic; square roots are rational
//! approximations correct to a requested number of decimal digits, so the
//! only error in a numeric check is the explicitly controlled sqrt error.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{QError, Result};

/// Default number of decimal digits carried by numeric checks.
pub const DEFAULT_DIGITS: u32 = 64;

/// Floor of the integer square root.
pub fn isqrt(n: &BigInt) -> BigInt {
    if n.is_negative() {
        panic!("isqrt of negative integer");
    }
    if n.is_zero() {
        return BigInt::zero();
    }
    // Newton iteration with a power-of-two seed.
    let bits = n.bits();
    let mut x = BigInt::from(1) << bits.div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Rational approximation of `sqrt(x)` with error below `10^-digits`.
/// Negative radicands are rejected.
pub fn sqrt_approx(x: &BigRational, digits: u32) -> Result<BigRational> {
    if x.is_negative() {
        return Err(QError::InvalidArgument(
            "square root of a negative value".into(),
        ));
    }
    let scale = BigInt::from(10).pow(digits);
    let scaled = x * BigRational::from(&scale * &scale);
    // isqrt of the nearest integer keeps the error within one ulp of 10^-digits.
    let numer = scaled.numer();
    let denom = scaled.denom();
    let root = isqrt(&(numer * denom)) / denom.clone();
    Ok(BigRational::new(root, scale))
}

/// `|x| < 10^-tol_digits`.
pub fn within_tolerance(x: &BigRational, tol_digits: u32) -> bool {
    let tol = BigRational::new(BigInt::from(1), BigInt::from(10).pow(tol_digits));
    x.abs() < tol
}

/// Fixed-point decimal rendering with the given number of fraction digits.
pub fn decimal_string(x: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = (x * BigRational::from(scale.clone())).round();
    let value = scaled.to_integer();
    let (sign, magnitude) = if value.is_negative() {
        ("-", -value)
    } else {
        ("", value)
    };
    let s = magnitude.to_string();
    if digits == 0 {
        return format!("{sign}{s}");
    }
    let d = digits as usize;
    if s.len() <= d {
        format!("{sign}0.{}{}", "0".repeat(d - s.len()), s)
    } else {
        format!("{sign}{}.{}", &s[..s.len() - d], &s[s.len() - d..])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn isqrt_basics() {
        assert_eq!(isqrt(&BigInt::from(0)), BigInt::from(0));
        assert_eq!(isqrt(&BigInt::from(1)), BigInt::from(1));
        assert_eq!(isqrt(&BigInt::from(15)), BigInt::from(3));
        assert_eq!(isqrt(&BigInt::from(16)), BigInt::from(4));
        let big = BigInt::from(10).pow(40) + 12345;
        let r = isqrt(&big);
        assert!(&r * &r <= big);
        let r1 = &r + 1;
        assert!(&r1 * &r1 > big);
    }

    #[test]
    fn sqrt_approx_accuracy() {
        let x = BigRational::new(BigInt::from(7), BigInt::from(10));
        let r = sqrt_approx(&x, 64).unwrap();
        let err = &(&r * &r) - &x;
        // |r^2 - x| <= 3 * 10^-64 roughly; comfortably below 10^-60
        assert!(within_tolerance(&err, 60));
        assert!(sqrt_approx(&-x, 10).is_err());
    }

    #[test]
    fn decimal_rendering() {
        let x = BigRational::new(BigInt::from(1), BigInt::from(8));
        assert_eq!(decimal_string(&x, 4), "0.1250");
        assert_eq!(decimal_string(&-x, 4), "-0.1250");
        assert_eq!(decimal_string(&BigRational::one(), 2), "1.00");
    }
}
