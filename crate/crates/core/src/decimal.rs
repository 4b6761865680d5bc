//! Decimal rendering of exact rationals, rounded half away from zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::chow::Rational;

/// Significant digits used by reports.
pub const REPORT_DIGITS: usize = 6;

/// Renders `x` with `digits` significant digits in positional notation.
///
/// `98/15` becomes `6.53333`, `216` becomes `216.000`.
pub fn to_significant(x: &Rational, digits: usize) -> String {
    assert!(digits > 0, "need at least one significant digit");
    if x.is_zero() {
        return if digits == 1 {
            "0".to_string()
        } else {
            format!("0.{}", "0".repeat(digits - 1))
        };
    }
    let negative = x.is_negative();
    let ax = x.abs();
    let ten = BigInt::from(10);

    // Decimal exponent e with 10^e <= |x| < 10^(e + 1).
    let mut e: i64 = ax.to_integer().to_string().len() as i64 - 1;
    if ax < Rational::from_integer(BigInt::from(1)) {
        e = -1;
        let mut probe = ax.clone() * Rational::from_integer(ten.clone());
        while probe < Rational::from_integer(BigInt::from(1)) {
            probe *= Rational::from_integer(ten.clone());
            e -= 1;
        }
    }

    let mut shift = digits as i64 - 1 - e;
    let mut mantissa = round_scaled(&ax, shift);
    if mantissa.to_string().len() > digits {
        // rounding carried into a new digit, e.g. 9.999996 -> 10.0000
        shift -= 1;
        mantissa = round_scaled(&ax, shift);
    }

    let mut body = mantissa.to_string();
    let text = if shift <= 0 {
        body.push_str(&"0".repeat((-shift) as usize));
        body
    } else {
        let shift = shift as usize;
        if body.len() <= shift {
            body = format!("{}{}", "0".repeat(shift - body.len() + 1), body);
        }
        let split = body.len() - shift;
        format!("{}.{}", &body[..split], &body[split..])
    };
    if negative {
        format!("-{text}")
    } else {
        text
    }
}

/// `round(x * 10^shift)` for non-negative `x`, halves rounded up.
fn round_scaled(x: &Rational, shift: i64) -> BigInt {
    let pow = BigInt::from(10).pow(shift.unsigned_abs() as u32);
    let scaled = if shift >= 0 {
        x * Rational::from_integer(pow)
    } else {
        x / Rational::from_integer(pow)
    };
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    if r * BigInt::from(2) >= *scaled.denom() {
        q + 1
    } else {
        q
    }
}

pub fn report_decimal(x: &Rational) -> String {
    to_significant(x, REPORT_DIGITS)
}
