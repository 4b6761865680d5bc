//! Scenario files: JSON documents describing an ambient product of projective
//! spaces, named bundle expressions, the degeneracy pair and the family data.
//!
//! ```json
//! {
//!   "name": "m15",
//!   "space": [1, 3],
//!   "bundles": {
//!     "E": "ker(sum(O(1,0)^8, O(0,-1)^1) -> O(1,1)^4)",
//!     "A": "O(0,0)^4",
//!     "B": "twist(E, O(0,2))"
//!   },
//!   "degeneracy": { "A": "A", "B": "B" },
//!   "family": { "fiber_genus": 15, "base_genus": 0 }
//! }
//! ```
//!
//! An optional `base_change` object carries the multisection data; its
//! `base_lambda` and `base_delta0` default to the family's `lambda` and
//! `delta`. Rationals may be written as JSON integers or as `"p/q"` strings.
//! The full schema lives in `docs/scenario.schema.json`.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;

use crate::base_change::{BaseChangeParams, Multisection};
use crate::bundle::BundleClass;
use crate::chow::{ProductSpace, Rational};
use crate::error::{Error, Result};
use crate::expr::BundleExpr;
use crate::family::FamilyOptions;

const M15: &str = include_str!("../scenarios/m15.json");
const M16: &str = include_str!("../scenarios/m16.json");

/// Names of the scenarios shipped with the crate.
pub const BUNDLED: [&str; 2] = ["m15", "m16"];

/// JSON source of a bundled scenario.
pub fn bundled_source(name: &str) -> Option<&'static str> {
    match name {
        "m15" => Some(M15),
        "m16" => Some(M16),
        _ => None,
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    name: String,
    space: Vec<u32>,
    bundles: BTreeMap<String, String>,
    degeneracy: DegeneracyFile,
    family: FamilyFile,
    #[serde(default)]
    base_change: Option<BaseChangeFile>,
    #[serde(default)]
    notes: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DegeneracyFile {
    #[serde(rename = "A")]
    source: String,
    #[serde(rename = "B")]
    target: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    fiber_genus: i64,
    base_genus: i64,
    #[serde(default)]
    allow_low_genus: bool,
    #[serde(default)]
    require_integral_lambda: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BaseChangeFile {
    m1: i64,
    m2: i64,
    #[serde(rename = "g_A1")]
    genus1: i64,
    #[serde(rename = "g_A2")]
    genus2: i64,
    #[serde(rename = "A1_sq")]
    self1: i64,
    #[serde(rename = "A2_sq")]
    self2: i64,
    #[serde(rename = "A12")]
    mutual: i64,
    base_genus: i64,
    #[serde(default)]
    base_lambda: Option<RationalText>,
    #[serde(default)]
    base_delta0: Option<RationalText>,
    #[serde(default)]
    base_delta_rest: BTreeMap<String, RationalText>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalText {
    Integer(i64),
    Text(String),
}

impl RationalText {
    fn value(&self, key: &str) -> Result<Rational> {
        match self {
            RationalText::Integer(n) => Ok(Rational::from_integer((*n).into())),
            RationalText::Text(t) => Rational::from_str(t.trim())
                .map_err(|_| Error::Schema(format!("{key}: {t:?} is not a rational number"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub fiber_genus: i64,
    pub base_genus: i64,
    pub options: FamilyOptions,
}

/// Base-change data as written in a scenario; missing base intersection
/// numbers are filled in from the family stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseChangeSpec {
    pub first: Multisection,
    pub second: Multisection,
    pub mutual_intersection: i64,
    pub base_genus: i64,
    pub base_lambda: Option<Rational>,
    pub base_delta0: Option<Rational>,
    pub base_delta_rest: BTreeMap<String, Rational>,
}

impl BaseChangeSpec {
    pub fn params(&self, lambda: &Rational, delta: &Rational) -> BaseChangeParams {
        BaseChangeParams {
            first: self.first.clone(),
            second: self.second.clone(),
            mutual_intersection: self.mutual_intersection,
            base_genus: self.base_genus,
            base_lambda: self.base_lambda.clone().unwrap_or_else(|| lambda.clone()),
            base_delta0: self.base_delta0.clone().unwrap_or_else(|| delta.clone()),
            base_delta_rest: self.base_delta_rest.clone(),
        }
    }
}

/// A validated scenario with every bundle resolved.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub space: ProductSpace,
    pub expressions: BTreeMap<String, BundleExpr>,
    pub bundles: BTreeMap<String, BundleClass>,
    pub source: BundleClass,
    pub target: BundleClass,
    pub family: FamilySpec,
    pub base_change: Option<BaseChangeSpec>,
    pub notes: Vec<String>,
}

pub fn parse_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    Scenario::from_json(&text)
}

impl Scenario {
    pub fn bundled(name: &str) -> Result<Scenario> {
        let source = bundled_source(name).ok_or_else(|| {
            Error::Argument(format!(
                "no bundled scenario `{name}` (available: {})",
                BUNDLED.join(", ")
            ))
        })?;
        Scenario::from_json(source)
    }

    pub fn from_json(text: &str) -> Result<Scenario> {
        let mut de = serde_json::Deserializer::from_str(text);
        let file: ScenarioFile = serde_path_to_error::deserialize(&mut de).map_err(|e| {
            let path = e.path().to_string();
            if path == "." {
                Error::Schema(e.into_inner().to_string())
            } else {
                Error::Schema(format!("{path}: {}", e.into_inner()))
            }
        })?;
        de.end()
            .map_err(|e| Error::Schema(format!("trailing data: {e}")))?;
        Self::validate(file)
    }

    fn validate(file: ScenarioFile) -> Result<Scenario> {
        let space = ProductSpace::new(&file.space)
            .map_err(|e| Error::Schema(format!("space: {e}")))?;

        let mut expressions = BTreeMap::new();
        for (name, text) in &file.bundles {
            if BundleExpr::parse(name).ok() != Some(BundleExpr::Name(name.clone())) {
                return Err(Error::Schema(format!(
                    "bundles.{name}: not a valid bundle name"
                )));
            }
            let expr = BundleExpr::parse(text).map_err(|e| e.at(format!("bundles.{name}")))?;
            expressions.insert(name.clone(), expr);
        }

        let mut resolver = Resolver {
            space: &space,
            expressions: &expressions,
            done: BTreeMap::new(),
            active: Vec::new(),
        };
        for name in expressions.keys() {
            resolver.resolve(name, &format!("bundles.{name}"))?;
        }
        let source = resolver.eval_top(&file.degeneracy.source, "degeneracy.A")?;
        let target = resolver.eval_top(&file.degeneracy.target, "degeneracy.B")?;
        let bundles = resolver.done;

        if target.rank() != source.rank() + 1 {
            return Err(Error::RankMismatch(format!(
                "degeneracy: rank B = {} must equal rank A + 1 = {}",
                target.rank(),
                source.rank() + 1
            )));
        }

        let family = FamilySpec {
            fiber_genus: file.family.fiber_genus,
            base_genus: file.family.base_genus,
            options: FamilyOptions {
                allow_low_genus: file.family.allow_low_genus,
                require_integral_lambda: file.family.require_integral_lambda,
            },
        };
        if family.base_genus < 0 {
            return Err(Error::Schema(format!(
                "family.base_genus: {} is negative",
                family.base_genus
            )));
        }

        let base_change = file.base_change.map(base_change_spec).transpose()?;

        Ok(Scenario {
            name: file.name,
            space,
            expressions,
            bundles,
            source,
            target,
            family,
            base_change,
            notes: file.notes,
        })
    }
}

fn base_change_spec(b: BaseChangeFile) -> Result<BaseChangeSpec> {
    for (key, v) in [("base_change.m1", b.m1), ("base_change.m2", b.m2)] {
        if v < 1 {
            return Err(Error::Schema(format!("{key}: degree {v} must be at least 1")));
        }
    }
    if b.mutual < 0 {
        return Err(Error::Schema(format!(
            "base_change.A12: {} must be non-negative",
            b.mutual
        )));
    }
    let mut rest = BTreeMap::new();
    for (label, v) in &b.base_delta_rest {
        rest.insert(
            label.clone(),
            v.value(&format!("base_change.base_delta_rest.{label}"))?,
        );
    }
    Ok(BaseChangeSpec {
        first: Multisection {
            degree: b.m1,
            genus: b.genus1,
            self_intersection: b.self1,
        },
        second: Multisection {
            degree: b.m2,
            genus: b.genus2,
            self_intersection: b.self2,
        },
        mutual_intersection: b.mutual,
        base_genus: b.base_genus,
        base_lambda: b
            .base_lambda
            .map(|v| v.value("base_change.base_lambda"))
            .transpose()?,
        base_delta0: b
            .base_delta0
            .map(|v| v.value("base_change.base_delta0"))
            .transpose()?,
        base_delta_rest: rest,
    })
}

struct Resolver<'a> {
    space: &'a ProductSpace,
    expressions: &'a BTreeMap<String, BundleExpr>,
    done: BTreeMap<String, BundleClass>,
    active: Vec<String>,
}

impl Resolver<'_> {
    fn resolve(&mut self, name: &str, key: &str) -> Result<BundleClass> {
        if let Some(b) = self.done.get(name) {
            return Ok(b.clone());
        }
        if let Some(pos) = self.active.iter().position(|n| n == name) {
            let mut chain: Vec<&str> = self.active[pos..].iter().map(String::as_str).collect();
            chain.push(name);
            return Err(Error::CyclicBundle {
                key: format!("bundles.{}", self.active[pos]),
                chain: chain.join(" -> "),
            });
        }
        let Some(expr) = self.expressions.get(name) else {
            return Err(Error::UnresolvedBundle {
                key: key.to_string(),
                name: name.to_string(),
            });
        };
        self.active.push(name.to_string());
        let own_key = format!("bundles.{name}");
        let result = self.eval(expr, &own_key);
        self.active.pop();
        let bundle = result?;
        self.done.insert(name.to_string(), bundle.clone());
        Ok(bundle)
    }

    fn eval(&mut self, expr: &BundleExpr, key: &str) -> Result<BundleClass> {
        let space = self.space;
        expr.eval(space, &mut |n: &str| self.resolve(n, key))
            .map_err(|e| match e {
                Error::UnresolvedBundle { .. } | Error::CyclicBundle { .. } | Error::Stage { .. } => e,
                other => other.at(key),
            })
    }

    fn eval_top(&mut self, text: &str, key: &str) -> Result<BundleClass> {
        let expr = BundleExpr::parse(text).map_err(|e| e.at(key))?;
        self.eval(&expr, key)
    }
}
