//! Randomized property checks shared by the property test target and the
//! acceptance suite. Each check runs `CASES` cases and returns the first
//! counterexample as an error string.

use std::collections::BTreeMap;

use chernslope::base_change::{
    beta_delta0_correction, pullback_slope, sigma_tilde_self_intersection, BaseChangeParams,
    Multisection, Section,
};
use chernslope::degeneracy::{virtual_chern_numbers, DegeneracyInput};
use chernslope::family::{invariants_from_chern_numbers, FamilyOptions};
use chernslope::{rat, BundleClass, ChowElement, ProductSpace, Rational};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use super::oracle;

pub const CASES: u32 = 256;

const SPACES: [&[u32]; 5] = [&[1, 3], &[2, 2], &[1, 1, 2], &[4], &[2, 3]];

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    })
}

fn run<S, F>(strategy: S, test: F) -> Result<(), String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    runner().run(&strategy, test).map_err(|e| e.to_string())
}

fn space(i: usize) -> ProductSpace {
    ProductSpace::new(SPACES[i % SPACES.len()]).unwrap()
}

type RawTerms = Vec<(Vec<u32>, i64, i64)>;

fn raw_terms(max_len: usize) -> impl Strategy<Value = RawTerms> {
    prop::collection::vec(
        (prop::collection::vec(0u32..8, 3), -6i64..=6, 1i64..=4),
        0..max_len,
    )
}

fn element(space: &ProductSpace, raw: &RawTerms) -> ChowElement {
    let terms = raw.iter().map(|(exps, p, q)| {
        let e: Vec<u32> = space
            .dims()
            .iter()
            .zip(exps)
            .map(|(n, e)| e % (n + 1))
            .collect();
        (e, Rational::new((*p).into(), (*q).into()))
    });
    ChowElement::from_terms(space, terms).unwrap()
}

/// `1 + (positive-degree part of raw)`.
fn unit(space: &ProductSpace, raw: &RawTerms) -> ChowElement {
    let x = element(space, raw);
    let shifted = &x - &x.graded_part(0);
    &ChowElement::one(space) + &shifted
}

fn line_sum_on(space: &ProductSpace, sum: &[(Vec<i64>, i64)]) -> BundleClass {
    sum.iter().fold(BundleClass::trivial(space, 0), |acc, (d, m)| {
        let degrees: Vec<i64> = d.iter().take(space.factors()).copied().collect();
        acc.direct_sum(&BundleClass::line_bundle(space, &degrees, *m).unwrap())
            .unwrap()
    })
}

fn line_sum_strategy(max_len: usize) -> impl Strategy<Value = Vec<(Vec<i64>, i64)>> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, 3), 1i64..=3), 1..max_len)
}

pub fn ring_axioms() -> Result<(), String> {
    run(
        (0usize..5, raw_terms(6), raw_terms(6), raw_terms(6), -3i64..=3, -3i64..=3),
        |(s, a, b, c, p, q)| {
            let s = space(s);
            let (x, y, z) = (element(&s, &a), element(&s, &b), element(&s, &c));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            let combo = ChowElement::linear_combine(&[rat(p), rat(q)], &[y.clone(), z.clone()]).unwrap();
            let expanded =
                ChowElement::linear_combine(&[rat(p), rat(q)], &[&x * &y, &x * &z]).unwrap();
            prop_assert_eq!(&x * &combo, expanded);
            prop_assert_eq!(&x * &ChowElement::one(&s), x.clone());
            prop_assert!(x.try_sub(&x).unwrap().is_zero());
            Ok(())
        },
    )
}

pub fn truncation_idempotence() -> Result<(), String> {
    run((0usize..5, raw_terms(8)), |(s, a)| {
        let s = space(s);
        let x = element(&s, &a);
        let again = ChowElement::from_terms(
            &s,
            x.terms().map(|(e, c)| (e.to_vec(), c.clone())),
        )
        .unwrap();
        prop_assert_eq!(&again, &x);
        let canonical = x
            .terms()
            .all(|(e, c)| *c != rat(0) && e.iter().zip(s.dims()).all(|(e, n)| e <= n));
        prop_assert!(canonical, "non-canonical terms in {}", x);
        let text = x.to_string();
        let parsed = ChowElement::parse(&s, &text).unwrap();
        prop_assert_eq!(&parsed, &x);
        prop_assert_eq!(parsed.to_string(), text);
        Ok(())
    })
}

pub fn unit_inverse() -> Result<(), String> {
    run((0usize..5, raw_terms(8)), |(s, a)| {
        let s = space(s);
        let x = unit(&s, &a);
        let inv = x.invert_unit_series().unwrap();
        prop_assert_eq!(&x * &inv, ChowElement::one(&s));
        prop_assert_eq!(&inv * &x, ChowElement::one(&s));
        Ok(())
    })
}

pub fn integration_linear() -> Result<(), String> {
    run(
        (0usize..5, raw_terms(6), raw_terms(6), -4i64..=4, -4i64..=4),
        |(s, a, b, p, q)| {
            let s = space(s);
            let (x, y) = (element(&s, &a), element(&s, &b));
            let combo = ChowElement::linear_combine(&[rat(p), rat(q)], &[x.clone(), y.clone()]).unwrap();
            prop_assert_eq!(combo.integrate(), rat(p) * x.integrate() + rat(q) * y.integrate());
            let below_top = &x - &x.graded_part(s.dimension());
            prop_assert_eq!(below_top.integrate(), rat(0));
            Ok(())
        },
    )
}

pub fn whitney_cancellation() -> Result<(), String> {
    run(
        (0usize..5, line_sum_strategy(5), line_sum_strategy(5)),
        |(s, e, f)| {
            let s = space(s);
            let (e, f) = (line_sum_on(&s, &e), line_sum_on(&s, &f));
            let sum = e.direct_sum(&f).unwrap();
            prop_assert_eq!(sum.rank(), e.rank() + f.rank());
            let k = BundleClass::kernel_from_sequence(&sum, &f).unwrap();
            prop_assert_eq!(k.rank(), e.rank());
            prop_assert_eq!(k.total_chern(), e.total_chern());
            let d = BundleClass::virtual_difference(&f, &e).unwrap();
            prop_assert_eq!(d.rank(), f.rank() - e.rank());
            prop_assert_eq!(&(d.total_chern() * e.total_chern()), f.total_chern());
            prop_assert_eq!(e.dual().dual(), e.clone());
            let o = BundleClass::line_bundle(&s, &vec![0; s.factors()], 1).unwrap();
            prop_assert_eq!(e.twist(&o).unwrap(), e);
            Ok(())
        },
    )
}

pub fn twist_sequence_commutation() -> Result<(), String> {
    run(
        (
            0usize..5,
            line_sum_strategy(7),
            line_sum_strategy(3),
            prop::collection::vec(-3i64..=3, 3),
        ),
        |(s, middle, quotient, l)| {
            let s = space(s);
            let m = line_sum_on(&s, &middle);
            let q = line_sum_on(&s, &quotient);
            prop_assume!(m.rank() >= q.rank());
            let degrees: Vec<i64> = l.iter().take(s.factors()).copied().collect();
            let line = BundleClass::line_bundle(&s, &degrees, 1).unwrap();

            let k = BundleClass::kernel_from_sequence(&m, &q).unwrap();
            let twisted_kernel = k.twist(&line).unwrap();
            let kernel_of_twists = BundleClass::kernel_from_sequence(
                &m.twist(&line).unwrap(),
                &q.twist(&line).unwrap(),
            )
            .unwrap();
            prop_assert_eq!(twisted_kernel, kernel_of_twists);
            Ok(())
        },
    )
}

fn oracle_sum(sum: &[(Vec<i64>, i64)]) -> oracle::LineSum {
    sum.iter()
        .map(|(d, m)| (i128::from(d[0]), i128::from(d[1]), *m as u32))
        .collect()
}

pub fn degeneracy_trivial_kill() -> Result<(), String> {
    run(
        (line_sum_strategy(4), prop::collection::vec(-3i64..=3, 2)),
        |(a, l)| {
            let s = space(0);
            let a = line_sum_on(&s, &a);
            let b = a.direct_sum(&BundleClass::line_bundle(&s, &l, 1).unwrap()).unwrap();
            let input = DegeneracyInput::on_product(a, b).unwrap();
            let diff = input.difference();
            prop_assert!((2..=4).all(|i| diff.chern(i).is_zero()));
            let v = virtual_chern_numbers(&input).unwrap();
            prop_assert_eq!(v.c1_sq, rat(0));
            prop_assert_eq!(v.c2, rat(0));
            Ok(())
        },
    )
}

pub fn degeneracy_matches_oracle() -> Result<(), String> {
    run(
        (line_sum_strategy(3), line_sum_strategy(3), prop::collection::vec(-2i64..=2, 2)),
        |(a_terms, b_terms, pad)| {
            let s = space(0);
            let mut a_terms = a_terms;
            let mut b_terms = b_terms;
            let rank = |t: &[(Vec<i64>, i64)]| t.iter().map(|x| x.1).sum::<i64>();
            // pad the smaller side with copies of one line bundle to force rank B = rank A + 1
            let gap = rank(&a_terms) + 1 - rank(&b_terms);
            if gap > 0 {
                b_terms.push((pad.clone(), gap));
            } else if gap < 0 {
                a_terms.push((pad.clone(), -gap));
            }
            let a = line_sum_on(&s, &a_terms);
            let b = line_sum_on(&s, &b_terms);
            let input = DegeneracyInput::on_product(a, b).unwrap();
            let v = virtual_chern_numbers(&input).unwrap();
            let dp = chernslope::degeneracy::double_point_check(&input).unwrap();
            let o = oracle::degeneracy_for_sums(&oracle_sum(&a_terms), &oracle_sum(&b_terms));
            prop_assert_eq!(v.c1_sq, Rational::from_integer(o.c1_sq.into()));
            prop_assert_eq!(v.c2, Rational::from_integer(o.c2.into()));
            prop_assert_eq!(dp, Rational::from_integer(o.c2_double_point.into()));
            Ok(())
        },
    )
}

fn params_strategy() -> impl Strategy<Value = BaseChangeParams> {
    (
        (1i64..=20, 0i64..=200, -50i64..=50),
        (1i64..=20, 0i64..=200, -50i64..=50),
        0i64..=40,
        0i64..=5,
        (1i64..=100, 1i64..=7),
        -500i64..=500,
        prop::collection::vec(-5i64..=5, 0..3),
    )
        .prop_map(|(a, b, mutual, h, (lp, lq), d0, rest)| BaseChangeParams {
            first: Multisection {
                degree: a.0,
                genus: a.1,
                self_intersection: a.2,
            },
            second: Multisection {
                degree: b.0,
                genus: b.1,
                self_intersection: b.2,
            },
            mutual_intersection: mutual,
            base_genus: h,
            base_lambda: Rational::new(lp.into(), lq.into()),
            base_delta0: rat(d0),
            base_delta_rest: rest
                .into_iter()
                .enumerate()
                .map(|(i, v)| (format!("delta_{}", i + 2), rat(v)))
                .collect::<BTreeMap<_, _>>(),
        })
}

pub fn base_change_identity() -> Result<(), String> {
    run(params_strategy(), |p| {
        let sum = sigma_tilde_self_intersection(&p, Section::First)
            + sigma_tilde_self_intersection(&p, Section::Second);
        prop_assert_eq!(beta_delta0_correction(&p), sum);
        Ok(())
    })
}

pub fn base_change_swap_symmetry() -> Result<(), String> {
    run(params_strategy(), |p| {
        let q = p.swapped();
        prop_assert_eq!(beta_delta0_correction(&p), beta_delta0_correction(&q));
        prop_assert_eq!(pullback_slope(&p).unwrap(), pullback_slope(&q).unwrap());
        prop_assert_eq!(
            sigma_tilde_self_intersection(&p, Section::First),
            sigma_tilde_self_intersection(&q, Section::Second)
        );
        Ok(())
    })
}

pub fn family_mumford_relation() -> Result<(), String> {
    run(
        (-2000i64..2000, 1i64..=6, -2000i64..2000, 0i64..=30, 0i64..=5),
        |(c1_num, c1_den, c2, g, q)| {
            let opts = FamilyOptions {
                allow_low_genus: true,
                require_integral_lambda: true,
            };
            let c1 = Rational::new(c1_num.into(), c1_den.into());
            let f = invariants_from_chern_numbers(&c1, &rat(c2), g, q, opts).unwrap();
            prop_assert_eq!(rat(12) * &f.lambda, &f.kappa + &f.delta);
            if let Some(slope) = &f.slope {
                prop_assert_eq!(slope * &f.lambda, f.delta.clone());
            } else {
                prop_assert_eq!(f.lambda.clone(), rat(0));
            }
            let g2 = invariants_from_chern_numbers(&c1, &rat(c2 + 12), g, q, opts).unwrap();
            prop_assert_eq!(&g2.delta - &f.delta, rat(12));
            prop_assert_eq!(&g2.lambda - &f.lambda, rat(1));
            Ok(())
        },
    )
}

pub type Suite = fn() -> Result<(), String>;

/// Every property suite, by name.
pub fn all() -> Vec<(&'static str, Suite)> {
    vec![
        ("chow ring axioms", ring_axioms as Suite),
        ("truncation idempotence and text round trip", truncation_idempotence),
        ("mul(x, invert(x)) = 1", unit_inverse),
        ("integration is linear and top-degree only", integration_linear),
        ("Whitney cancellation, dual and trivial twist", whitney_cancellation),
        ("twist-sequence commutation", twist_sequence_commutation),
        ("degeneracy numbers vanish when c2..c4 vanish", degeneracy_trivial_kill),
        ("degeneracy numbers match brute-force expansion", degeneracy_matches_oracle),
        ("delta_0 correction = sigma_1^2 + sigma_2^2", base_change_identity),
        ("base change symmetric under section swap", base_change_swap_symmetry),
        ("12 lambda = kappa + delta", family_mumford_relation),
    ]
}
