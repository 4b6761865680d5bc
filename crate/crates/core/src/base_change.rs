//! Slope of a family after base change along two multisections.
//!
//! Start with a family of curves `Y -> C` over a base of genus `h` carrying
//! multisections `A_1`, `A_2` of degrees `m_1`, `m_2`. Base changing along
//! `A_1 x_C A_2` produces two sections; blowing up the points where they
//! meet separates them. Intersection numbers with `lambda` and `delta_j`
//! (`j` not `0`, `1` or `i`) scale by `m_1 m_2`, `delta_1` picks up `A_1 . A_2`,
//! and `delta_0` picks up
//!
//! ```text
//! sum_{l = 1, 2} ( m_{3-l} (m_l (2h - 2) - (2 g(A_l) - 2) + A_l . A_l) - A_1 . A_2 )
//! ```
//!
//! which is the sum of the self-intersections of the two separated sections.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::chow::{rat, Rational};
use crate::error::{Error, Result};

/// Which multisection a per-section quantity refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Section {
    First,
    Second,
}

impl Section {
    pub const BOTH: [Section; 2] = [Section::First, Section::Second];

    pub fn other(self) -> Section {
        match self {
            Section::First => Section::Second,
            Section::Second => Section::First,
        }
    }
}

/// Numeric data of a single multisection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multisection {
    pub degree: i64,
    pub genus: i64,
    pub self_intersection: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseChangeParams {
    pub first: Multisection,
    pub second: Multisection,
    /// `A_1 . A_2`.
    pub mutual_intersection: i64,
    /// Genus `h` of the base curve of the original family.
    pub base_genus: i64,
    /// `F . lambda` for the original family `F`.
    pub base_lambda: Rational,
    /// `F . delta_0`.
    pub base_delta0: Rational,
    /// `F . delta_j` for the remaining boundary components, keyed by an opaque label.
    pub base_delta_rest: BTreeMap<String, Rational>,
}

impl BaseChangeParams {
    pub fn validate(&self) -> Result<()> {
        for (name, s) in [("m1", &self.first), ("m2", &self.second)] {
            if s.degree < 1 {
                return Err(Error::Argument(format!(
                    "{name} = {} must be at least 1",
                    s.degree
                )));
            }
        }
        if self.mutual_intersection < 0 {
            return Err(Error::Argument(format!(
                "A12 = {} must be non-negative",
                self.mutual_intersection
            )));
        }
        Ok(())
    }

    pub fn section(&self, which: Section) -> &Multisection {
        match which {
            Section::First => &self.first,
            Section::Second => &self.second,
        }
    }

    /// The same data with the two multisections exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            first: self.second.clone(),
            second: self.first.clone(),
            ..self.clone()
        }
    }

    fn degree_product(&self) -> Rational {
        rat(self.first.degree * self.second.degree)
    }
}

/// `A_l . omega_{Y/C} = (2 g(A_l) - 2) - A_l^2 - m_l (2h - 2)`, by adjunction.
pub fn relative_omega_degree(params: &BaseChangeParams, which: Section) -> Rational {
    let s = params.section(which);
    rat(2 * s.genus - 2) - rat(s.self_intersection) - rat(s.degree * (2 * params.base_genus - 2))
}

/// Self-intersection of the separated section over the multisection `which`:
/// `m_other * (-A_l . omega_{Y/C}) - A_1 . A_2`.
pub fn sigma_tilde_self_intersection(params: &BaseChangeParams, which: Section) -> Rational {
    let other = params.section(which.other());
    rat(other.degree) * -relative_omega_degree(params, which) - rat(params.mutual_intersection)
}

/// The summation term added to `m_1 m_2 F . delta_0` in the `delta_0` intersection.
pub fn beta_delta0_correction(params: &BaseChangeParams) -> Rational {
    let h = params.base_genus;
    Section::BOTH
        .iter()
        .map(|&which| {
            let s = params.section(which);
            let other = params.section(which.other());
            let inner = s.degree * (2 * h - 2) - (2 * s.genus - 2) + s.self_intersection;
            rat(other.degree * inner - params.mutual_intersection)
        })
        .sum()
}

/// `m_1 m_2 F . delta_j`, valid for `j` other than `0`, `1` and `i`.
pub fn beta_delta_j(params: &BaseChangeParams, f_delta_j: &Rational) -> Rational {
    params.degree_product() * f_delta_j
}

/// Intersection numbers of the base-changed family with the Hodge and boundary classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackSlope {
    pub lambda: Rational,
    pub delta0: Rational,
    pub delta1: Rational,
    pub delta_rest: BTreeMap<String, Rational>,
    pub slope: Rational,
}

impl PullbackSlope {
    pub fn delta(&self) -> Rational {
        let rest: Rational = self.delta_rest.values().sum();
        &self.delta0 + &self.delta1 + rest
    }
}

pub fn pullback_slope(params: &BaseChangeParams) -> Result<PullbackSlope> {
    params.validate()?;
    if params.base_lambda.is_zero() {
        return Err(Error::SlopeUndefined);
    }
    let scale = params.degree_product();
    let lambda = &scale * &params.base_lambda;
    let delta0 = &scale * &params.base_delta0 + beta_delta0_correction(params);
    let delta1 = rat(params.mutual_intersection);
    let delta_rest: BTreeMap<String, Rational> = params
        .base_delta_rest
        .iter()
        .map(|(label, v)| (label.clone(), beta_delta_j(params, v)))
        .collect();
    let mut out = PullbackSlope {
        lambda,
        delta0,
        delta1,
        delta_rest,
        slope: Rational::zero(),
    };
    out.slope = out.delta() / &out.lambda;
    Ok(out)
}
