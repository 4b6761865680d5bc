//! The Chow ring of a product of projective spaces.
//!
//! For `P^{n_1} x ... x P^{n_k}` the ring is `Q[H_1, ..., H_k] / (H_i^{n_i + 1})`,
//! where `H_i` is the pullback of the hyperplane class of the `i`-th factor.
//! Elements are stored sparsely, keyed by exponent vectors, and every term
//! with `e_i > n_i` is discarded as soon as it is produced. Zero coefficients
//! are never stored, so structural equality is ring equality.
//!
//! Text form: terms in ascending lexicographic exponent order, each rendered
//! as `<rational>*H1^<e1>*...*Hk^<ek>` with exponent-0 factors omitted,
//! joined by ` + `. Negative coefficients are rendered inline
//! (`2*H1^1 + -3*H2^1`) and the zero element is `0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for an integral rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A product `P^{n_1} x ... x P^{n_k}` of projective spaces.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProductSpace {
    dims: Arc<[u32]>,
}

impl ProductSpace {
    pub fn new(dims: &[u32]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidSpace("no projective factors".into()));
        }
        if let Some(pos) = dims.iter().position(|&n| n == 0) {
            return Err(Error::InvalidSpace(format!(
                "factor {} has dimension 0; every factor needs n >= 1",
                pos + 1
            )));
        }
        Ok(Self { dims: dims.into() })
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn factors(&self) -> usize {
        self.dims.len()
    }

    pub fn dimension(&self) -> u32 {
        self.dims.iter().sum()
    }

    /// The exponent vector of the fundamental point class `H_1^{n_1} ... H_k^{n_k}`.
    pub fn top_exponents(&self) -> Vec<u32> {
        self.dims.to_vec()
    }

    fn admits(&self, exps: &[u32]) -> bool {
        exps.len() == self.dims.len() && exps.iter().zip(self.dims.iter()).all(|(e, n)| e <= n)
    }

    /// Every monomial of total degree `d` that survives truncation, in
    /// lexicographic order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Vec<u32>> {
        fn go(dims: &[u32], left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            match dims.split_first() {
                None => {
                    if left == 0 {
                        out.push(prefix.clone());
                    }
                }
                Some((&n, rest)) => {
                    for e in 0..=n.min(left) {
                        prefix.push(e);
                        go(rest, left - e, prefix, out);
                        prefix.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        go(&self.dims, d, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Debug for ProductSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ProductSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.dims.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "P^{n}")?;
        }
        Ok(())
    }
}

/// An element of the truncated graded ring attached to a [`ProductSpace`].
#[derive(Clone, PartialEq, Eq)]
pub struct ChowElement {
    space: ProductSpace,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl ChowElement {
    pub fn zero(space: &ProductSpace) -> Self {
        Self {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: &ProductSpace) -> Self {
        Self::constant(space, Rational::one())
    }

    pub fn constant(space: &ProductSpace, c: Rational) -> Self {
        Self::monomial(space, &vec![0; space.factors()], c)
    }

    /// `c * H^exps`, reduced: returns zero if any exponent exceeds its factor's dimension.
    ///
    /// Panics if `exps` does not have one entry per factor.
    pub fn monomial(space: &ProductSpace, exps: &[u32], c: Rational) -> Self {
        assert_eq!(exps.len(), space.factors(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if space.admits(exps) && !c.is_zero() {
            terms.insert(exps.to_vec(), c);
        }
        Self {
            space: space.clone(),
            terms,
        }
    }

    /// Builds an element from raw terms, summing duplicates and dropping any
    /// term that vanishes in the quotient.
    pub fn from_terms<I>(space: &ProductSpace, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut out = Self::zero(space);
        for (exps, c) in terms {
            if exps.len() != space.factors() {
                return Err(Error::Argument(format!(
                    "exponent vector {exps:?} has {} entries, space {space} has {} factors",
                    exps.len(),
                    space.factors()
                )));
            }
            if space.admits(&exps) {
                out.add_term(exps, c);
            }
        }
        Ok(out)
    }

    /// The hyperplane generator `H_i`, with `i` counted from 1.
    pub fn hyperplane(space: &ProductSpace, i: usize) -> Result<Self> {
        if i == 0 || i > space.factors() {
            return Err(Error::Argument(format!(
                "hyperplane index {i} out of range 1..={}",
                space.factors()
            )));
        }
        let mut exps = vec![0; space.factors()];
        exps[i - 1] = 1;
        Ok(Self::monomial(space, &exps, Rational::one()))
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.space.factors()])
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                left: self.space.to_string(),
                right: other.space.to_string(),
            });
        }
        Ok(())
    }

    /// `sum_i coeffs[i] * elems[i]`.
    pub fn linear_combine(coeffs: &[Rational], elems: &[ChowElement]) -> Result<Self> {
        if coeffs.len() != elems.len() {
            return Err(Error::Argument(format!(
                "{} coefficients for {} elements",
                coeffs.len(),
                elems.len()
            )));
        }
        let first = elems
            .first()
            .ok_or_else(|| Error::Argument("empty linear combination has no space".into()))?;
        let mut out = Self::zero(&first.space);
        for (c, x) in coeffs.iter().zip(elems) {
            out.check_space(x)?;
            for (e, a) in &x.terms {
                out.add_term(e.clone(), c * a);
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    /// Ring product, truncated by `H_i^{n_i + 1} = 0`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let dims = self.space.dims();
        let mut out = Self::zero(&self.space);
        for (ea, ca) in &self.terms {
            'pairs: for (eb, cb) in &other.terms {
                let mut exps = Vec::with_capacity(dims.len());
                for ((a, b), n) in ea.iter().zip(eb).zip(dims) {
                    let e = a + b;
                    if e > *n {
                        continue 'pairs;
                    }
                    exps.push(e);
                }
                out.add_term(exps, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.space);
        }
        Self {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.space);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The homogeneous component of total degree `d`.
    pub fn graded_part(&self, d: u32) -> Self {
        Self {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// True if every term has total degree `d`. The zero element is homogeneous of every degree.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    /// Degree map: the coefficient of the point class `H_1^{n_1} ... H_k^{n_k}`.
    pub fn integrate(&self) -> Rational {
        self.coefficient(self.space.dims())
    }

    /// `integrate(self * other)`.
    pub fn pair(&self, other: &Self) -> Result<Rational> {
        Ok(self.try_mul(other)?.integrate())
    }

    /// Inverse of an element whose constant term is 1, computed as the
    /// geometric series `sum_{j >= 0} (1 - x)^j`. The series terminates
    /// because `1 - x` is nilpotent of order at most `dim + 1`.
    pub fn invert_unit_series(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if !c0.is_one() {
            return Err(Error::NonUnit(c0.to_string()));
        }
        let one = Self::one(&self.space);
        let nil = &one - self;
        let mut acc = one.clone();
        let mut power = one;
        for _ in 0..self.space.dimension() {
            power = &power * &nil;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc)
    }

    /// Multiplies the degree-`i` component by `(-1)^i`.
    pub fn alternate_signs(&self) -> Self {
        Self {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let d: u32 = e.iter().sum();
                    (e.clone(), if d % 2 == 1 { -c } else { c.clone() })
                })
                .collect(),
        }
    }

    /// Parses the text form produced by [`fmt::Display`]. Also accepts `Hi`
    /// without an explicit exponent, which means `Hi^1`.
    pub fn parse(space: &ProductSpace, input: &str) -> Result<Self> {
        let err = |reason: String| Error::ClassParse {
            input: input.to_string(),
            reason,
        };
        let trimmed = input.trim();
        if trimmed.is_empty() {
            return Err(err("empty input".into()));
        }
        if trimmed == "0" {
            return Ok(Self::zero(space));
        }
        let mut out = Self::zero(space);
        for term in trimmed.split(" + ") {
            let mut factors = term.trim().split('*');
            let coeff_text = factors.next().unwrap_or_default().trim();
            let coeff = Rational::from_str(coeff_text)
                .map_err(|_| err(format!("bad coefficient {coeff_text:?}")))?;
            let mut exps = vec![0u32; space.factors()];
            for factor in factors {
                let factor = factor.trim();
                let body = factor
                    .strip_prefix('H')
                    .ok_or_else(|| err(format!("expected H<i>^<e>, found {factor:?}")))?;
                let (idx, e) = match body.split_once('^') {
                    Some((i, e)) => (i, e),
                    None => (body, "1"),
                };
                let idx: usize = idx
                    .parse()
                    .map_err(|_| err(format!("bad generator index in {factor:?}")))?;
                let e: u32 = e
                    .parse()
                    .map_err(|_| err(format!("bad exponent in {factor:?}")))?;
                if idx == 0 || idx > space.factors() {
                    return Err(err(format!("generator H{idx} not in {space}")));
                }
                exps[idx - 1] += e;
            }
            if space.admits(&exps) {
                out.add_term(exps, coeff);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ChowElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self, |c| c.to_string())
    }
}

impl fmt::Debug for ChowElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChowElement({} on {})", self, self.space)
    }
}

/// Renders an element with a custom coefficient formatter.
pub(crate) fn write_terms<W, F>(w: &mut W, x: &ChowElement, coeff: F) -> fmt::Result
where
    W: fmt::Write,
    F: Fn(&Rational) -> String,
{
    if x.is_zero() {
        return w.write_str("0");
    }
    for (n, (exps, c)) in x.terms.iter().enumerate() {
        if n > 0 {
            w.write_str(" + ")?;
        }
        w.write_str(&coeff(c))?;
        for (i, e) in exps.iter().enumerate() {
            if *e > 0 {
                write!(w, "*H{}^{}", i + 1, e)?;
            }
        }
    }
    Ok(())
}

// Operator forms panic on mismatched spaces; use the `try_*` methods when
// the operands are not known to share a space.

impl Add for &ChowElement {
    type Output = ChowElement;
    fn add(self, rhs: &ChowElement) -> ChowElement {
        self.try_add(rhs).expect("addition across product spaces")
    }
}

impl Sub for &ChowElement {
    type Output = ChowElement;
    fn sub(self, rhs: &ChowElement) -> ChowElement {
        self.try_sub(rhs).expect("subtraction across product spaces")
    }
}

impl Mul for &ChowElement {
    type Output = ChowElement;
    fn mul(self, rhs: &ChowElement) -> ChowElement {
        self.try_mul(rhs).expect("product across product spaces")
    }
}

impl Neg for &ChowElement {
    type Output = ChowElement;
    fn neg(self) -> ChowElement {
        self.scale(&-Rational::one())
    }
}
