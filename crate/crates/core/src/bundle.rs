//! Vector bundles and virtual bundle classes, tracked as `(rank, total Chern class)`.
//!
//! Only the operations with closed forms at this level are offered: line
//! bundles, Whitney sums, duals, twists by a line bundle, kernels of short
//! exact sequences and virtual differences. Tensor products of two bundles
//! of higher rank are out of reach without Chern roots and are not provided.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::chow::{ChowElement, ProductSpace, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleClass {
    rank: i64,
    total_chern: ChowElement,
}

impl BundleClass {
    /// Wraps a rank and total Chern class. The class must have constant term 1.
    pub fn new(rank: i64, total_chern: ChowElement) -> Result<Self> {
        let c0 = total_chern.constant_term();
        if !c0.is_one() {
            return Err(Error::Argument(format!(
                "total Chern class must start with 1, found constant term {c0}"
            )));
        }
        Ok(Self { rank, total_chern })
    }

    /// The trivial bundle `O^rank`.
    pub fn trivial(space: &ProductSpace, rank: i64) -> Self {
        Self {
            rank,
            total_chern: ChowElement::one(space),
        }
    }

    /// `O(a_1, ..., a_k)^multiplicity`, with total Chern class `(1 + sum a_i H_i)^multiplicity`.
    pub fn line_bundle(space: &ProductSpace, degrees: &[i64], multiplicity: i64) -> Result<Self> {
        if multiplicity <= 0 {
            return Err(Error::Argument(format!(
                "line bundle multiplicity must be positive, got {multiplicity}"
            )));
        }
        if degrees.len() != space.factors() {
            return Err(Error::Argument(format!(
                "O({}) has {} degrees but {space} has {} factors",
                join(degrees),
                degrees.len(),
                space.factors()
            )));
        }
        let c1 = first_chern_of_line(space, degrees);
        let single = &ChowElement::one(space) + &c1;
        let exponent = u32::try_from(multiplicity)
            .map_err(|_| Error::Argument(format!("multiplicity {multiplicity} too large")))?;
        Ok(Self {
            rank: multiplicity,
            total_chern: single.pow(exponent),
        })
    }

    pub fn space(&self) -> &ProductSpace {
        self.total_chern.space()
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn total_chern(&self) -> &ChowElement {
        &self.total_chern
    }

    /// The `i`-th Chern class.
    pub fn chern(&self, i: u32) -> ChowElement {
        self.total_chern.graded_part(i)
    }

    /// Whitney sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            rank: self.rank + other.rank,
            total_chern: self.total_chern.try_mul(&other.total_chern)?,
        })
    }

    /// `c_i(E^*) = (-1)^i c_i(E)`.
    pub fn dual(&self) -> Self {
        Self {
            rank: self.rank,
            total_chern: self.total_chern.alternate_signs(),
        }
    }

    /// `E (x) L` for a line bundle `L`, using
    /// `c_k(E (x) L) = sum_{i <= k} C(r - i, k - i) c_i(E) c_1(L)^{k - i}`.
    pub fn twist(&self, line: &Self) -> Result<Self> {
        if line.rank != 1 {
            return Err(Error::Argument(format!(
                "twisting requires a rank-1 bundle, got rank {}",
                line.rank
            )));
        }
        if self.rank < 0 {
            return Err(Error::VirtualTwist(self.rank));
        }
        let space = self.space();
        if line.space() != space {
            return Err(Error::SpaceMismatch {
                left: space.to_string(),
                right: line.space().to_string(),
            });
        }
        let ell = line.chern(1);
        let top = space.dimension();
        let ell_powers: Vec<ChowElement> = (0..=top).map(|j| ell.pow(j)).collect();
        let parts: Vec<ChowElement> = (0..=top).map(|i| self.chern(i)).collect();

        let mut total = ChowElement::zero(space);
        for k in 0..=top {
            for i in 0..=k {
                let coeff = binomial(self.rank - i64::from(i), k - i);
                if coeff.is_zero() || parts[i as usize].is_zero() {
                    continue;
                }
                let term = &parts[i as usize] * &ell_powers[(k - i) as usize];
                total = &total + &term.scale(&coeff);
            }
        }
        Ok(Self {
            rank: self.rank,
            total_chern: total,
        })
    }

    /// The kernel `K` of a surjection in `0 -> K -> middle -> quotient -> 0`.
    pub fn kernel_from_sequence(middle: &Self, quotient: &Self) -> Result<Self> {
        if middle.rank < quotient.rank {
            return Err(Error::Argument(format!(
                "middle term has rank {} below quotient rank {}",
                middle.rank, quotient.rank
            )));
        }
        Self::virtual_difference(middle, quotient)
    }

    /// The K-theory class `b - a`, with `c(b - a) = c(b) / c(a)`. The rank may be negative.
    pub fn virtual_difference(b: &Self, a: &Self) -> Result<Self> {
        let inverse = a.total_chern.invert_unit_series()?;
        Ok(Self {
            rank: b.rank - a.rank,
            total_chern: b.total_chern.try_mul(&inverse)?,
        })
    }
}

fn first_chern_of_line(space: &ProductSpace, degrees: &[i64]) -> ChowElement {
    let mut c1 = ChowElement::zero(space);
    for (i, &a) in degrees.iter().enumerate() {
        if a != 0 {
            let h = ChowElement::hyperplane(space, i + 1).expect("index within range");
            c1 = &c1 + &h.scale(&Rational::from_integer(BigInt::from(a)));
        }
    }
    c1
}

/// Generalized binomial coefficient `C(n, k)` for integer `n` and `k >= 0`.
pub(crate) fn binomial(n: i64, k: u32) -> Rational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..i64::from(k) {
        num *= BigInt::from(n - j);
        den *= BigInt::from(j + 1);
    }
    Rational::new(num, den)
}

fn join(xs: &[i64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
