//! Virtual Chern numbers of the rank-drop locus of a bundle map.
//!
//! Let `M` be a smooth fourfold and `f: A -> B` a map of bundles of ranks
//! `a` and `a + 1`. Where `f` has rank `< a` it cuts out a locus `Z` of
//! expected codimension 2, with expected class `c_2(B - A)`. Writing
//! `c_i = c_i(B - A)`, the Chern numbers of `Z` (assuming it is a local
//! complete intersection) are
//!
//! ```text
//! c_1(Z)^2 = (c_1(M) - c_1)^2 c_2 - 2 (c_1(M) - c_1) c_3 + c_4
//! c_2(Z)   = (c_2(M) - c_1(M) c_1 + c_2(A) - c_2(B) + c_1(B)^2 - c_1(A) c_1(B)) c_2
//!            + (-c_1(M) + 2 c_1) c_3 + c_4
//! ```
//!
//! Earlier published versions of these formulas wrote `c_1 c_2` and
//! `c_1^2 c_2` in the places of `c_3` and `c_4`, and carried the opposite
//! sign on `c_1(M)` in the `c_3` coefficient of `c_2(Z)`. Only the form
//! above is implemented; there is deliberately no switch for the old one.
//!
//! [`double_point_check`] recomputes `c_2(Z)` by a different route and is
//! meant for spot checks on specific inputs.

use crate::bundle::BundleClass;
use crate::chow::{rat, ChowElement, ProductSpace, Rational};
use crate::error::{Error, Result};

/// Ambient data and the bundle pair `A -> B`.
#[derive(Clone, Debug)]
pub struct DegeneracyInput {
    space: ProductSpace,
    tangent_c1: ChowElement,
    tangent_c2: ChowElement,
    source: BundleClass,
    target: BundleClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualChernNumbers {
    pub c1_sq_class: ChowElement,
    pub c2_class: ChowElement,
    pub c1_sq: Rational,
    pub c2: Rational,
}

/// `c_1` and `c_2` of the tangent bundle of a product of projective spaces,
/// read off from `c(T) = prod_i (1 + H_i)^{n_i + 1}`.
pub fn ambient_tangent_of_product(space: &ProductSpace) -> (ChowElement, ChowElement) {
    let one = ChowElement::one(space);
    let mut total = one.clone();
    for (i, &n) in space.dims().iter().enumerate() {
        let h = ChowElement::hyperplane(space, i + 1).expect("index within range");
        total = &total * &(&one + &h).pow(n + 1);
    }
    (total.graded_part(1), total.graded_part(2))
}

impl DegeneracyInput {
    pub fn new(
        tangent_c1: ChowElement,
        tangent_c2: ChowElement,
        source: BundleClass,
        target: BundleClass,
    ) -> Result<Self> {
        let space = tangent_c1.space().clone();
        if space.dimension() != 4 {
            return Err(Error::Argument(format!(
                "ambient space {space} has dimension {}, expected 4",
                space.dimension()
            )));
        }
        for (what, sp) in [
            ("c2(M)", tangent_c2.space()),
            ("A", source.space()),
            ("B", target.space()),
        ] {
            if *sp != space {
                return Err(Error::SpaceMismatch {
                    left: space.to_string(),
                    right: format!("{sp} (for {what})"),
                });
            }
        }
        if target.rank() != source.rank() + 1 {
            return Err(Error::RankMismatch(format!(
                "rank B = {} but rank A + 1 = {}",
                target.rank(),
                source.rank() + 1
            )));
        }
        if !tangent_c1.is_homogeneous(1) {
            return Err(Error::Argument(format!(
                "c1(M) = {tangent_c1} is not homogeneous of degree 1"
            )));
        }
        if !tangent_c2.is_homogeneous(2) {
            return Err(Error::Argument(format!(
                "c2(M) = {tangent_c2} is not homogeneous of degree 2"
            )));
        }
        Ok(Self {
            space,
            tangent_c1,
            tangent_c2,
            source,
            target,
        })
    }

    /// Uses the tangent classes of the product of projective spaces itself.
    pub fn on_product(source: BundleClass, target: BundleClass) -> Result<Self> {
        let (c1, c2) = ambient_tangent_of_product(source.space());
        Self::new(c1, c2, source, target)
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn tangent_c1(&self) -> &ChowElement {
        &self.tangent_c1
    }

    pub fn tangent_c2(&self) -> &ChowElement {
        &self.tangent_c2
    }

    pub fn source(&self) -> &BundleClass {
        &self.source
    }

    pub fn target(&self) -> &BundleClass {
        &self.target
    }

    /// The virtual class `B - A`.
    pub fn difference(&self) -> BundleClass {
        BundleClass::virtual_difference(&self.target, &self.source)
            .expect("validated bundles share a space and have unit classes")
    }
}

/// `c_1, ..., c_4` of `B - A`, indexed so that `c[i]` is `c_i`.
fn difference_classes(input: &DegeneracyInput) -> [ChowElement; 5] {
    let d = input.difference();
    [d.chern(0), d.chern(1), d.chern(2), d.chern(3), d.chern(4)]
}

fn integrate_top(label: &str, class: &ChowElement) -> Result<Rational> {
    for d in 0..=class.space().dimension() {
        if d != 4 && !class.graded_part(d).is_zero() {
            return Err(Error::Check(format!(
                "{label} has a nonzero component in degree {d}"
            )));
        }
    }
    Ok(class.integrate())
}

pub fn virtual_chern_numbers(input: &DegeneracyInput) -> Result<VirtualChernNumbers> {
    let c = difference_classes(input);
    let m1 = input.tangent_c1();
    let m2 = input.tangent_c2();
    let a = input.source();
    let b = input.target();
    let two = rat(2);

    let excess = m1 - &c[1];
    let c1_sq_class = &(&(&excess * &excess) * &c[2]) - &(&excess * &c[3]).scale(&two);
    let c1_sq_class = &c1_sq_class + &c[4];

    let a1 = a.chern(1);
    let b1 = b.chern(1);
    let coefficient = &(&(m2 - &(m1 * &c[1])) + &a.chern(2)) - &b.chern(2);
    let coefficient = &(&coefficient + &(&b1 * &b1)) - &(&a1 * &b1);
    let c3_coefficient = &c[1].scale(&two) - m1;
    let c2_class = &(&(&coefficient * &c[2]) + &(&c3_coefficient * &c[3])) + &c[4];

    let c1_sq = integrate_top("c1(Z)^2 class", &c1_sq_class)?;
    let c2 = integrate_top("c2(Z) class", &c2_class)?;
    Ok(VirtualChernNumbers {
        c1_sq_class,
        c2_class,
        c1_sq,
        c2,
    })
}

/// `c_2(Z)` recomputed as
/// `c_1(Z)^2 + int[ -((c_1(M) - c_1) c_1(M) c_2 - c_1(M) c_3) + c_2(M) c_2 - c_2^2 ]`.
pub fn double_point_check(input: &DegeneracyInput) -> Result<Rational> {
    let c = difference_classes(input);
    let m1 = input.tangent_c1();
    let m2 = input.tangent_c2();
    let base = virtual_chern_numbers(input)?;

    let first = &(&(&(m1 - &c[1]) * m1) * &c[2]) - &(m1 * &c[3]);
    let correction = &(&(m2 * &c[2]) - &first) - &(&c[2] * &c[2]);
    Ok(base.c1_sq + integrate_top("double-point correction", &correction)?)
}

/// Expected class of the locus, `c_2(B - A)`.
pub fn degeneracy_class(input: &DegeneracyInput) -> ChowElement {
    input.difference().chern(2)
}
