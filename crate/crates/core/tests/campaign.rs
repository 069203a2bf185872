use num_rational::BigRational;
use proptest::prelude::*;

use schmidt_core::harness::campaign::{check_kernel_roots, evaluate_instance, Exclusion};
use schmidt_core::harness::{parse_config, run_campaign, CampaignConfig};
use schmidt_core::projgeom::{first_main_identity, height_form, height_point, HomForm, ProjectivePoint};

fn config(doc: serde_json::Value) -> CampaignConfig {
    parse_config(&doc.to_string()).unwrap()
}

fn moving_config() -> CampaignConfig {
    // x0 + alpha*x1, x1, (x0 + x1)/(alpha + 1) along (1 : 3^alpha)
    config(serde_json::json!({
        "n": 1, "N": 1, "epsilon": "1/3", "places": ["inf", 2, 3],
        "alpha_range": [1, 12],
        "family": [
            {"degree": 1, "coefficients": [{"exponents": [1, 0], "num": [1]}, {"exponents": [0, 1], "num": [0, 1]}]},
            {"degree": 1, "coefficients": [{"exponents": [0, 1], "num": [1]}]},
            {"degree": 1, "coefficients": [
                {"exponents": [1, 0], "num": [1], "den": [1, 1]},
                {"exponents": [0, 1], "num": [1], "den": [1, 1]}]}
        ],
        "points": {"kind": "exponential", "bases": [1, 3]}
    }))
}

#[test]
fn multipliers_match_first_main_identity() {
    // on S = all places where a multiplier can differ from 1, the product is H(x)^d H(Q)
    let c = moving_config();
    for a in c.alphas() {
        let rec = evaluate_instance(&c, a, false).unwrap();
        assert_eq!(rec.excluded, Exclusion::None);
        for j in 0..c.family.q() {
            let q = c.family.form_at(j, a).unwrap().unwrap();
            let x = c.points.point(a).unwrap();
            let full = first_main_identity(&q, &x).unwrap();
            let expected = height_point(&x).pow(q.degree()).compose(&height_form(&q));
            assert_eq!(&full, expected.value());
            let on_s: BigRational = rec.multipliers.iter().map(|row| row[j].value().clone()).product();
            assert!(on_s <= full);
        }
        assert_eq!(check_kernel_roots(&rec, &c.family.degrees()), Some(true));
    }
}

#[test]
fn sort_permutations_are_sorted() {
    let c = moving_config();
    for a in c.alphas() {
        let rec = evaluate_instance(&c, a, false).unwrap();
        let x = c.points.point(a).unwrap();
        for (vi, v) in c.places.iter().enumerate() {
            let local: Vec<BigRational> = rec.sort_permutations[vi]
                .iter()
                .map(|&j| {
                    let q = c.family.form_at(j - 1, a).unwrap().unwrap();
                    let value = schmidt_core::projgeom::evaluate(&q, &x).unwrap();
                    schmidt_core::places::local_norm(*v, &value).unwrap().into_inner()
                })
                .collect();
            assert!(local.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}

#[test]
fn mixed_degree_kernel_uses_lcm() {
    let c = config(serde_json::json!({
        "n": 1, "N": 1, "epsilon": "1/2", "places": ["inf", 2],
        "alpha_range": [1, 6],
        "family": [
            {"degree": 2, "coefficients": [{"exponents": [2, 0], "num": [1]}, {"exponents": [0, 2], "num": [1]}]},
            {"degree": 3, "coefficients": [{"exponents": [0, 3], "num": [1]}]}
        ],
        "points": {"kind": "exponential", "bases": [1, 2]}
    }));
    let run = run_campaign(&c, false).unwrap();
    assert_eq!(run.summary.violations, 0);
    for rec in &run.records {
        assert_eq!(rec.kernel_root, 6);
        assert_eq!(check_kernel_roots(rec, &[2, 3]), Some(true));
    }
}

#[test]
fn csv_is_deterministic() {
    let c = moving_config();
    let mut first = Vec::new();
    let mut second = Vec::new();
    schmidt_core::harness::campaign::write_csv(&run_campaign(&c, false).unwrap().records, &mut first).unwrap();
    schmidt_core::harness::campaign::write_csv(&run_campaign(&c, false).unwrap().records, &mut second).unwrap();
    assert_eq!(first, second);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identity_on_random_linear_forms(a in -50i64..=50, b in 1i64..=50, x0 in -30i64..=30, x1 in -30i64..=30) {
        prop_assume!(a != 0);
        let q = HomForm::parse(1, &format!("{a}*x0 + {b}/7*x1")).unwrap();
        let x = ProjectivePoint::from_integers([x0, x1]);
        prop_assume!(x.is_ok());
        let x = x.unwrap();
        match first_main_identity(&q, &x) {
            Ok(p) => {
                let expected = height_point(&x).compose(&height_form(&q));
                prop_assert_eq!(&p, expected.value());
            }
            Err(schmidt_core::Error::PointOnHypersurface) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }
}
