//! Brute-force reference for P^1 x P^3 computations.
//!
//! Works with *untruncated* integer polynomials in H1, H2 and a formal
//! grading variable t, expands every total Chern class as a product of
//! linear factors (inverses as explicit finite geometric series), assembles
//! the degeneracy formulas without reduction and only at the very end reads
//! off the coefficient of H1*H2^3. Nothing here touches the library's ring.

use std::collections::BTreeMap;

/// Integer polynomial in H1, H2, keyed by (e1, e2). No truncation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly(pub BTreeMap<(u32, u32), i128>);

impl Poly {
    pub fn constant(c: i128) -> Self {
        let mut p = Poly::default();
        p.add_term((0, 0), c);
        p
    }

    pub fn linear(a: i128, b: i128) -> Self {
        let mut p = Poly::default();
        p.add_term((1, 0), a);
        p.add_term((0, 1), b);
        p
    }

    pub fn from_terms(terms: &[((u32, u32), i128)]) -> Self {
        let mut p = Poly::default();
        for &(e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: (u32, u32), c: i128) {
        if c == 0 {
            return;
        }
        let v = self.0.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.0.remove(&e);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (&e, &c) in &o.0 {
            p.add_term(e, c);
        }
        p
    }

    pub fn scale(&self, k: i128) -> Poly {
        let mut p = Poly::default();
        for (&e, &c) in &self.0 {
            p.add_term(e, c * k);
        }
        p
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(-1))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut p = Poly::default();
        for (&(a1, a2), &c) in &self.0 {
            for (&(b1, b2), &d) in &o.0 {
                p.add_term((a1 + b1, a2 + b2), c * d);
            }
        }
        p
    }

    pub fn coeff(&self, e: (u32, u32)) -> i128 {
        self.0.get(&e).copied().unwrap_or(0)
    }

    /// Drops every monomial divisible by H1^2 or H2^4.
    pub fn reduce_p1p3(&self) -> Poly {
        Poly(
            self.0
                .iter()
                .filter(|((e1, e2), _)| *e1 <= 1 && *e2 <= 3)
                .map(|(&e, &c)| (e, c))
                .collect(),
        )
    }

    /// The library's text form, for comparison against `ChowElement::to_string`.
    pub fn render(&self) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        // BTreeMap on (e1, e2) is already lexicographic.
        self.0
            .iter()
            .map(|(&(e1, e2), &c)| {
                let mut s = c.to_string();
                if e1 > 0 {
                    s += &format!("*H1^{e1}");
                }
                if e2 > 0 {
                    s += &format!("*H2^{e2}");
                }
                s
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Truncated power series in t with polynomial coefficients, up to t^4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSeries(pub Vec<Poly>);

pub const T_ORDER: usize = 4;

impl TSeries {
    pub fn one() -> Self {
        let mut v = vec![Poly::default(); T_ORDER + 1];
        v[0] = Poly::constant(1);
        TSeries(v)
    }

    /// 1 + t * (a H1 + b H2).
    pub fn line(a: i128, b: i128) -> Self {
        let mut s = Self::one();
        s.0[1] = Poly::linear(a, b);
        s
    }

    /// 1 - t l + t^2 l^2 - t^3 l^3 + t^4 l^4 for l = a H1 + b H2.
    pub fn line_inverse(a: i128, b: i128) -> Self {
        let l = Poly::linear(a, b);
        let mut s = Self::one();
        let mut power = Poly::constant(1);
        for k in 1..=T_ORDER {
            power = power.mul(&l);
            s.0[k] = power.scale(if k % 2 == 1 { -1 } else { 1 });
        }
        s
    }

    pub fn mul(&self, o: &TSeries) -> TSeries {
        let mut out = vec![Poly::default(); T_ORDER + 1];
        for i in 0..=T_ORDER {
            for j in 0..=(T_ORDER - i) {
                out[i + j] = out[i + j].add(&self.0[i].mul(&o.0[j]));
            }
        }
        TSeries(out)
    }

    pub fn pow(&self, k: u32) -> TSeries {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn coeff(&self, k: usize) -> Poly {
        self.0.get(k).cloned().unwrap_or_default()
    }
}

/// A line-bundle sum on P^1 x P^3: entries (a, b, multiplicity).
pub type LineSum = Vec<(i128, i128, u32)>;

pub fn total_chern(sum: &LineSum) -> TSeries {
    sum.iter()
        .fold(TSeries::one(), |acc, &(a, b, m)| acc.mul(&TSeries::line(a, b).pow(m)))
}

pub fn total_chern_inverse(sum: &LineSum) -> TSeries {
    sum.iter().fold(TSeries::one(), |acc, &(a, b, m)| {
        acc.mul(&TSeries::line_inverse(a, b).pow(m))
    })
}

/// c(E(2)) for the kernel E of O(1,0)^8 + O(0,-1) -> O(1,1)^4, written directly
/// with twisted line bundles: (1 + t(H1 + 2H2))^8 (1 + t H2) (1 + t(H1 + 3H2))^-4.
pub fn m15_e2() -> TSeries {
    TSeries::line(1, 2)
        .pow(8)
        .mul(&TSeries::line(0, 1))
        .mul(&TSeries::line_inverse(1, 3).pow(4))
}

pub struct OracleNumbers {
    pub c1_sq: i128,
    pub c2: i128,
    pub c2_double_point: i128,
}

/// Evaluates both degeneracy formulas and the double-point variant from the
/// t-expansions of c(A), c(B) and c(B - A), untruncated until the final read-off.
pub fn degeneracy_numbers(a: &TSeries, b: &TSeries, diff: &TSeries) -> OracleNumbers {
    let tangent = TSeries::line(1, 0).pow(2).mul(&TSeries::line(0, 1).pow(4));
    let m1 = tangent.coeff(1);
    let m2 = tangent.coeff(2);
    let c: Vec<Poly> = (0..=4).map(|k| diff.coeff(k)).collect();
    let top = (1, 3);

    let x = m1.sub(&c[1]);
    let c1_sq = x
        .mul(&x)
        .mul(&c[2])
        .sub(&x.scale(2).mul(&c[3]))
        .add(&c[4])
        .coeff(top);

    let coefficient = m2
        .sub(&m1.mul(&c[1]))
        .add(&a.coeff(2))
        .sub(&b.coeff(2))
        .add(&b.coeff(1).mul(&b.coeff(1)))
        .sub(&a.coeff(1).mul(&b.coeff(1)));
    let c2 = coefficient
        .mul(&c[2])
        .sub(&m1.sub(&c[1].scale(2)).mul(&c[3]))
        .add(&c[4])
        .coeff(top);

    let dp = c1_sq
        + x.mul(&m1)
            .mul(&c[2])
            .sub(&c[3].mul(&m1))
            .scale(-1)
            .add(&m2.mul(&c[2]))
            .sub(&c[2].mul(&c[2]))
            .coeff(top);

    OracleNumbers {
        c1_sq,
        c2,
        c2_double_point: dp,
    }
}

/// Numbers for a degeneracy pair of line-bundle sums.
pub fn degeneracy_for_sums(a: &LineSum, b: &LineSum) -> OracleNumbers {
    let ca = total_chern(a);
    let cb = total_chern(b);
    let diff = cb.mul(&total_chern_inverse(a));
    degeneracy_numbers(&ca, &cb, &diff)
}

/// `sum_k (-1)^k (H1 + H2)^k` with no truncation, as a reference for inversion.
pub fn geometric_inverse_h1_plus_h2() -> Poly {
    let l = Poly::linear(1, 1);
    let mut acc = Poly::constant(1);
    let mut power = Poly::constant(1);
    for k in 1..=8 {
        power = power.mul(&l);
        acc = acc.add(&power.scale(if k % 2 == 1 { -1 } else { 1 }));
    }
    acc
}
