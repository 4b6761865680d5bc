//! Invariants of a fibered surface `S -> C` with fibers of genus `g` over a
//! base of genus `q`:
//!
//! ```text
//! kappa  = c_1(S)^2 - 2 (2g - 2)(2q - 2)
//! delta  = c_2(S) - (2 - 2g)(2 - 2q)
//! lambda = (kappa + delta) / 12
//! slope  = delta / lambda
//! ```

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::chow::{rat, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FamilyOptions {
    /// Accept fiber genus 0 or 1.
    pub allow_low_genus: bool,
    /// Attach a warning when `kappa + delta` is not divisible by 12.
    pub require_integral_lambda: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyInvariants {
    pub kappa: Rational,
    pub delta: Rational,
    pub lambda: Rational,
    /// `None` exactly when `lambda` is zero.
    pub slope: Option<Rational>,
    pub fiber_genus: i64,
    pub base_genus: i64,
    pub warnings: Vec<String>,
}

impl FamilyInvariants {
    pub fn slope(&self) -> Result<&Rational> {
        self.slope.as_ref().ok_or(Error::SlopeUndefined)
    }
}

pub fn invariants_from_chern_numbers(
    c1_sq: &Rational,
    c2: &Rational,
    fiber_genus: i64,
    base_genus: i64,
    options: FamilyOptions,
) -> Result<FamilyInvariants> {
    if fiber_genus < 0 || (fiber_genus < 2 && !options.allow_low_genus) {
        return Err(Error::Argument(format!(
            "fiber genus {fiber_genus} is below 2 (set allow_low_genus to accept g >= 0)"
        )));
    }
    if base_genus < 0 {
        return Err(Error::Argument(format!("base genus {base_genus} is negative")));
    }
    let g = fiber_genus;
    let q = base_genus;
    let kappa = c1_sq - rat(2 * (2 * g - 2) * (2 * q - 2));
    let delta = c2 - rat((2 - 2 * g) * (2 - 2 * q));
    let sum = &kappa + &delta;
    let lambda = &sum / rat(12);

    let mut warnings = Vec::new();
    if options.require_integral_lambda
        && !(sum.is_integer() && sum.to_integer().is_multiple_of(&BigInt::from(12)))
    {
        warnings.push(format!(
            "kappa + delta = {sum} is not divisible by 12; lambda = {lambda} is not integral"
        ));
    }
    let slope = if lambda.is_zero() {
        None
    } else {
        Some(&delta / &lambda)
    };
    Ok(FamilyInvariants {
        kappa,
        delta,
        lambda,
        slope,
        fiber_genus,
        base_genus,
        warnings,
    })
}
