//! Running a scenario end to end and rendering the result.

use std::fmt::Write as _;

use serde::Serialize;

use crate::base_change::{
    beta_delta0_correction, pullback_slope, relative_omega_degree, sigma_tilde_self_intersection,
    BaseChangeParams, PullbackSlope, Section,
};
use crate::chow::{write_terms, ChowElement, ProductSpace, Rational};
use crate::decimal::report_decimal;
use crate::degeneracy::{
    degeneracy_class, double_point_check, virtual_chern_numbers, DegeneracyInput,
    VirtualChernNumbers,
};
use crate::error::{Error, Result};
use crate::family::{invariants_from_chern_numbers, FamilyInvariants};
use crate::scenario::Scenario;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Also run the double-point cross-check and the section identity, failing on mismatch.
    pub check: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Exact,
    Decimal,
    Json,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub scenario: String,
    pub space: ProductSpace,
    pub tangent_c1: ChowElement,
    pub tangent_c2: ChowElement,
    pub source_rank: i64,
    pub target_rank: i64,
    pub difference_rank: i64,
    /// `c_1, ..., c_4` of `B - A`.
    pub difference_chern: Vec<ChowElement>,
    pub degeneracy_class: ChowElement,
    /// The degeneracy class paired with each complementary monomial.
    pub class_degrees: Vec<(ChowElement, Rational)>,
    pub chern_numbers: VirtualChernNumbers,
    pub double_point: Option<Rational>,
    pub family: FamilyInvariants,
    pub base_change: Option<BaseChangeReport>,
}

#[derive(Clone, Debug)]
pub struct BaseChangeReport {
    pub params: BaseChangeParams,
    pub relative_omega: [Rational; 2],
    pub sigma_tilde_sq: [Rational; 2],
    pub delta0_correction: Rational,
    /// `phi_B^* delta - m1 m2 F . delta`: the `delta_0` correction plus `delta_1`.
    pub delta_correction_total: Rational,
    pub pullback: PullbackSlope,
}

pub fn run_scenario(scenario: &Scenario, options: RunOptions) -> Result<Report> {
    let space = scenario.space.clone();
    let input = DegeneracyInput::on_product(scenario.source.clone(), scenario.target.clone())
        .map_err(|e| e.at("degeneracy"))?;
    let difference = input.difference();
    let chern_numbers = virtual_chern_numbers(&input).map_err(|e| e.at("degeneracy"))?;

    let double_point = if options.check {
        let value = double_point_check(&input).map_err(|e| e.at("double-point check"))?;
        if value != chern_numbers.c2 {
            return Err(Error::Check(format!(
                "double-point formula gives c2(Z) = {value}, main formula gives {}",
                chern_numbers.c2
            )));
        }
        Some(value)
    } else {
        None
    };

    let class = degeneracy_class(&input);
    let complement = space.dimension().saturating_sub(2);
    let class_degrees = space
        .monomials_of_degree(complement)
        .into_iter()
        .map(|exps| {
            let m = ChowElement::monomial(&space, &exps, Rational::from_integer(1.into()));
            let d = class.pair(&m).expect("same space");
            (m, d)
        })
        .collect();

    let family = invariants_from_chern_numbers(
        &chern_numbers.c1_sq,
        &chern_numbers.c2,
        scenario.family.fiber_genus,
        scenario.family.base_genus,
        scenario.family.options,
    )
    .map_err(|e| e.at("family"))?;

    let base_change = match &scenario.base_change {
        None => None,
        Some(spec) => {
            let params = spec.params(&family.lambda, &family.delta);
            let pullback = pullback_slope(&params).map_err(|e| e.at("base change"))?;
            let relative_omega = Section::BOTH.map(|s| relative_omega_degree(&params, s));
            let sigma_tilde_sq = Section::BOTH.map(|s| sigma_tilde_self_intersection(&params, s));
            let delta0_correction = beta_delta0_correction(&params);
            if options.check {
                let sum = &sigma_tilde_sq[0] + &sigma_tilde_sq[1];
                if sum != delta0_correction {
                    return Err(Error::Check(format!(
                        "delta_0 correction {delta0_correction} differs from the section \
                         self-intersection total {sum}"
                    )));
                }
                let swapped = pullback_slope(&params.swapped()).map_err(|e| e.at("base change"))?;
                if swapped != pullback {
                    return Err(Error::Check(
                        "pulled-back slope changes when the multisections are exchanged".into(),
                    ));
                }
            }
            Some(BaseChangeReport {
                delta_correction_total: &delta0_correction + &pullback.delta1,
                params,
                relative_omega,
                sigma_tilde_sq,
                delta0_correction,
                pullback,
            })
        }
    };

    Ok(Report {
        scenario: scenario.name.clone(),
        space,
        tangent_c1: input.tangent_c1().clone(),
        tangent_c2: input.tangent_c2().clone(),
        source_rank: input.source().rank(),
        target_rank: input.target().rank(),
        difference_rank: difference.rank(),
        difference_chern: (1..=4).map(|i| difference.chern(i)).collect(),
        degeneracy_class: class,
        class_degrees,
        chern_numbers,
        double_point,
        family,
        base_change,
    })
}

fn monomial_label(m: &ChowElement) -> String {
    let (exps, _) = m.terms().next().expect("monomial is nonzero");
    let factors: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(i, e)| format!("H{}^{}", i + 1, e))
        .collect();
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join("*")
    }
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Exact => self.render_text(&|r: &Rational| r.to_string()),
            Format::Decimal => self.render_text(&report_decimal),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("plain data");
                s.push('\n');
                s
            }
        }
    }

    fn render_text(&self, num: &dyn Fn(&Rational) -> String) -> String {
        let class = |x: &ChowElement| {
            let mut s = String::new();
            write_terms(&mut s, x, num).expect("writing to a string");
            s
        };
        let mut out = String::new();
        let w = &mut out;
        // Writes into a String cannot fail.
        let _ = writeln!(w, "scenario {}", self.scenario);
        let _ = writeln!(w, "space {}", self.space);
        let _ = writeln!(w);
        let _ = writeln!(w, "[ambient]");
        let _ = writeln!(w, "c1(M) = {}", class(&self.tangent_c1));
        let _ = writeln!(w, "c2(M) = {}", class(&self.tangent_c2));
        let _ = writeln!(w);
        let _ = writeln!(w, "[degeneracy]");
        let _ = writeln!(w, "rank A = {}", self.source_rank);
        let _ = writeln!(w, "rank B = {}", self.target_rank);
        let _ = writeln!(w, "rank B-A = {}", self.difference_rank);
        for (i, c) in self.difference_chern.iter().enumerate() {
            let _ = writeln!(w, "c{}(B-A) = {}", i + 1, class(c));
        }
        let _ = writeln!(w, "[Z] = {}", class(&self.degeneracy_class));
        for (m, d) in &self.class_degrees {
            let _ = writeln!(w, "[Z].{} = {}", monomial_label(m), num(d));
        }
        let _ = writeln!(w, "c1(Z)^2 = {}", num(&self.chern_numbers.c1_sq));
        let _ = writeln!(w, "c2(Z) = {}", num(&self.chern_numbers.c2));
        if let Some(dp) = &self.double_point {
            let _ = writeln!(w, "c2(Z) double-point = {}", num(dp));
        }
        let _ = writeln!(w);
        let f = &self.family;
        let _ = writeln!(w, "[family]");
        let _ = writeln!(w, "fiber genus = {}", f.fiber_genus);
        let _ = writeln!(w, "base genus = {}", f.base_genus);
        let _ = writeln!(w, "kappa = {}", num(&f.kappa));
        let _ = writeln!(w, "delta = {}", num(&f.delta));
        let _ = writeln!(w, "lambda = {}", num(&f.lambda));
        match &f.slope {
            Some(s) => {
                let _ = writeln!(w, "slope = {}", num(s));
            }
            None => {
                let _ = writeln!(w, "slope = undefined");
            }
        }
        for warning in &f.warnings {
            let _ = writeln!(w, "warning: {warning}");
        }
        if let Some(b) = &self.base_change {
            let p = &b.params;
            let _ = writeln!(w);
            let _ = writeln!(w, "[base change]");
            let _ = writeln!(w, "m1 = {}", p.first.degree);
            let _ = writeln!(w, "m2 = {}", p.second.degree);
            let _ = writeln!(w, "g(A1) = {}", p.first.genus);
            let _ = writeln!(w, "g(A2) = {}", p.second.genus);
            let _ = writeln!(w, "A1^2 = {}", p.first.self_intersection);
            let _ = writeln!(w, "A2^2 = {}", p.second.self_intersection);
            let _ = writeln!(w, "A1.A2 = {}", p.mutual_intersection);
            let _ = writeln!(w, "base genus = {}", p.base_genus);
            let _ = writeln!(w, "F.lambda = {}", num(&p.base_lambda));
            let _ = writeln!(w, "F.delta0 = {}", num(&p.base_delta0));
            for (label, v) in &p.base_delta_rest {
                let _ = writeln!(w, "F.{label} = {}", num(v));
            }
            for (i, v) in b.relative_omega.iter().enumerate() {
                let _ = writeln!(w, "A{}.omega = {}", i + 1, num(v));
            }
            for (i, v) in b.sigma_tilde_sq.iter().enumerate() {
                let _ = writeln!(w, "sigma{}^2 = {}", i + 1, num(v));
            }
            let _ = writeln!(w, "delta0 correction = {}", num(&b.delta0_correction));
            let _ = writeln!(w, "delta correction = {}", num(&b.delta_correction_total));
            let _ = writeln!(w, "lambda_B = {}", num(&b.pullback.lambda));
            let _ = writeln!(w, "delta0_B = {}", num(&b.pullback.delta0));
            let _ = writeln!(w, "delta1_B = {}", num(&b.pullback.delta1));
            for (label, v) in &b.pullback.delta_rest {
                let _ = writeln!(w, "{label}_B = {}", num(v));
            }
            let _ = writeln!(w, "slope_B = {}", num(&b.pullback.slope));
        }
        out
    }

    fn to_json(&self) -> JsonReport {
        let class = |x: &ChowElement| JsonClass {
            exact: x.to_string(),
            decimal: {
                let mut s = String::new();
                write_terms(&mut s, x, report_decimal).expect("writing to a string");
                s
            },
        };
        let f = &self.family;
        JsonReport {
            scenario: self.scenario.clone(),
            space: self.space.dims().to_vec(),
            ambient: JsonAmbient {
                c1: class(&self.tangent_c1),
                c2: class(&self.tangent_c2),
            },
            degeneracy: JsonDegeneracy {
                rank_a: self.source_rank,
                rank_b: self.target_rank,
                rank_difference: self.difference_rank,
                difference_chern: self.difference_chern.iter().map(class).collect(),
                class: class(&self.degeneracy_class),
                class_degrees: self
                    .class_degrees
                    .iter()
                    .map(|(m, d)| JsonPairing {
                        monomial: monomial_label(m),
                        value: JsonNumber::new(d),
                    })
                    .collect(),
                c1_sq: JsonNumber::new(&self.chern_numbers.c1_sq),
                c2: JsonNumber::new(&self.chern_numbers.c2),
                c2_double_point: self.double_point.as_ref().map(JsonNumber::new),
            },
            family: JsonFamily {
                fiber_genus: f.fiber_genus,
                base_genus: f.base_genus,
                kappa: JsonNumber::new(&f.kappa),
                delta: JsonNumber::new(&f.delta),
                lambda: JsonNumber::new(&f.lambda),
                slope: f.slope.as_ref().map(JsonNumber::new),
                warnings: f.warnings.clone(),
            },
            base_change: self.base_change.as_ref().map(|b| JsonBaseChange {
                m1: b.params.first.degree,
                m2: b.params.second.degree,
                g_a1: b.params.first.genus,
                g_a2: b.params.second.genus,
                a1_sq: b.params.first.self_intersection,
                a2_sq: b.params.second.self_intersection,
                a12: b.params.mutual_intersection,
                base_genus: b.params.base_genus,
                base_lambda: JsonNumber::new(&b.params.base_lambda),
                base_delta0: JsonNumber::new(&b.params.base_delta0),
                relative_omega: b.relative_omega.iter().map(JsonNumber::new).collect(),
                sigma_tilde_sq: b.sigma_tilde_sq.iter().map(JsonNumber::new).collect(),
                delta0_correction: JsonNumber::new(&b.delta0_correction),
                delta_correction_total: JsonNumber::new(&b.delta_correction_total),
                lambda: JsonNumber::new(&b.pullback.lambda),
                delta0: JsonNumber::new(&b.pullback.delta0),
                delta1: JsonNumber::new(&b.pullback.delta1),
                delta_rest: b
                    .pullback
                    .delta_rest
                    .iter()
                    .map(|(k, v)| (k.clone(), JsonNumber::new(v)))
                    .collect(),
                slope: JsonNumber::new(&b.pullback.slope),
            }),
        }
    }
}

#[derive(Serialize)]
struct JsonNumber {
    exact: String,
    decimal: String,
}

impl JsonNumber {
    fn new(x: &Rational) -> Self {
        Self {
            exact: x.to_string(),
            decimal: report_decimal(x),
        }
    }
}

#[derive(Serialize)]
struct JsonClass {
    exact: String,
    decimal: String,
}

#[derive(Serialize)]
struct JsonPairing {
    monomial: String,
    value: JsonNumber,
}

#[derive(Serialize)]
struct JsonReport {
    scenario: String,
    space: Vec<u32>,
    ambient: JsonAmbient,
    degeneracy: JsonDegeneracy,
    family: JsonFamily,
    #[serde(skip_serializing_if = "Option::is_none")]
    base_change: Option<JsonBaseChange>,
}

#[derive(Serialize)]
struct JsonAmbient {
    c1: JsonClass,
    c2: JsonClass,
}

#[derive(Serialize)]
struct JsonDegeneracy {
    rank_a: i64,
    rank_b: i64,
    rank_difference: i64,
    difference_chern: Vec<JsonClass>,
    class: JsonClass,
    class_degrees: Vec<JsonPairing>,
    c1_sq: JsonNumber,
    c2: JsonNumber,
    #[serde(skip_serializing_if = "Option::is_none")]
    c2_double_point: Option<JsonNumber>,
}

#[derive(Serialize)]
struct JsonFamily {
    fiber_genus: i64,
    base_genus: i64,
    kappa: JsonNumber,
    delta: JsonNumber,
    lambda: JsonNumber,
    slope: Option<JsonNumber>,
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct JsonBaseChange {
    m1: i64,
    m2: i64,
    #[serde(rename = "g_A1")]
    g_a1: i64,
    #[serde(rename = "g_A2")]
    g_a2: i64,
    #[serde(rename = "A1_sq")]
    a1_sq: i64,
    #[serde(rename = "A2_sq")]
    a2_sq: i64,
    #[serde(rename = "A12")]
    a12: i64,
    base_genus: i64,
    base_lambda: JsonNumber,
    base_delta0: JsonNumber,
    relative_omega: Vec<JsonNumber>,
    sigma_tilde_sq: Vec<JsonNumber>,
    delta0_correction: JsonNumber,
    delta_correction_total: JsonNumber,
    lambda: JsonNumber,
    delta0: JsonNumber,
    delta1: JsonNumber,
    delta_rest: std::collections::BTreeMap<String, JsonNumber>,
    slope: JsonNumber,
}
