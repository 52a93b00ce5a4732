mod common;

use coxring::exactmath::{int, rat, RationalFunction, UniPoly};
use coxring::ratcurve::*;
use proptest::prelude::*;

fn pt(n: i64) -> P1Point {
    P1Point::finite(n)
}

fn cp(p: P1Point, i: u32) -> CurvePoint {
    CurvePoint::new(p, i)
}

fn inf() -> P1Point {
    P1Point::Infinity
}

fn z_minus(a: i64) -> RationalFunction {
    RationalFunction::linear(&int(a))
}

#[test]
fn order_at_examples() {
    assert_eq!(order_at(&RationalFunction::z(), &pt(0)).unwrap(), 1);
    let f6 = &RationalFunction::z() / &z_minus(1);
    assert_eq!(order_at(&f6, &inf()).unwrap(), 0);
    assert_eq!(order_at(&z_minus(1).recip(), &pt(1)).unwrap(), -1);
    assert_eq!(order_at(&RationalFunction::zero(), &pt(0)), Err(CurveError::ZeroFunction));
}

#[test]
fn principal_divisor_examples() {
    let x = GluedCurve::tripled_line();
    assert!(principal_divisor(&RationalFunction::one(), &x).unwrap().is_zero());
    let expected = Divisor::from_terms([(cp(pt(0), 0), 1), (cp(pt(0), 1), 1), (cp(inf(), 0), -1), (cp(inf(), 1), -1)]);
    assert_eq!(principal_divisor(&RationalFunction::z(), &x).unwrap(), expected);
    let expected = Divisor::from_terms([(cp(pt(1), 0), 1), (cp(pt(1), 1), 1), (cp(inf(), 0), -1), (cp(inf(), 1), -1)]);
    assert_eq!(principal_divisor(&z_minus(1), &x).unwrap(), expected);
    let irreducible = RationalFunction::from_poly(UniPoly::from_ints(&[1, 0, 1]));
    assert!(matches!(principal_divisor(&irreducible, &x), Err(CurveError::NonRationalSupport(_))));
}

#[test]
fn min_divisor_examples() {
    let x = GluedCurve::tripled_line();
    assert!(min_divisor(&Divisor::zero(), &x).is_empty());
    assert!(min_divisor(&Divisor::point(cp(pt(0), 0)), &x).is_empty());
    let d = Divisor::from_terms([(cp(pt(1), 0), 1), (cp(pt(1), 1), 1)]);
    assert_eq!(min_divisor(&d, &x).into_iter().collect::<Vec<_>>(), vec![(pt(1), 1)]);
}

#[test]
fn section_space_examples() {
    let x = GluedCurve::tripled_line();
    let s = section_space(&x, &Divisor::zero());
    assert_eq!(s.basis(), &[RationalFunction::one()]);

    let d = Divisor::from_terms([(cp(pt(1), 0), 1), (cp(pt(1), 1), 1), (cp(inf(), 0), -1)]);
    let s = section_space(&x, &d);
    assert_eq!(s.basis(), &[z_minus(1).recip()]);

    let d = Divisor::from_terms([(cp(pt(1), 0), 1), (cp(pt(1), 1), 1)]);
    let s = section_space(&x, &d);
    assert_eq!(s.dim(), 2);
    assert!(s.contains(&RationalFunction::one()));
    assert!(s.contains(&z_minus(1).recip()));
    assert!(!s.contains(&z_minus(1).recip().powi(2)));
    assert!(!s.contains(&RationalFunction::z()));
    for f in s.basis() {
        assert!(satisfies_order_conditions(&x, &d, f).unwrap());
    }

    let d = Divisor::from_terms([(cp(pt(0), 0), -1)]);
    assert_eq!(section_space(&x, &d).dim(), 0);
}

#[test]
fn picard_examples() {
    let line = GluedCurve::projective_line();
    let pic = picard_group(&line).unwrap();
    assert_eq!(pic.rank(), 1);
    assert_eq!(pic.class_of(&Divisor::from_terms([(cp(pt(3), 0), 2), (cp(pt(5), 0), -1)])).unwrap(), vec![1]);

    let x = GluedCurve::tripled_line();
    let pic = picard_group(&x).unwrap();
    assert_eq!(pic.rank(), 4);
    assert_eq!(pic.principal_quotient().rank(), 4);
    assert!(pic.principal_quotient().is_free());
    assert_eq!(pic.basis_labels(), vec!["D_0", "D_1", "D_1'", "D_inf"]);

    let doubled = GluedCurve::doubled_line();
    let pic2 = picard_group(&doubled).unwrap();
    assert_eq!(pic2.rank(), 2);
    assert_eq!(pic2.principal_quotient().rank(), 2);
    assert!(pic2.principal_quotient().is_free());

    // the other copies, as in the gradings of the generators
    assert_eq!(pic.class_of(&Divisor::point(cp(pt(0), 1))).unwrap(), vec![-1, 1, 1, 0]);
    assert_eq!(pic.class_of(&Divisor::point(cp(inf(), 1))).unwrap(), vec![0, 1, 1, -1]);
}

#[test]
fn is_principal_examples() {
    let x = GluedCurve::tripled_line();
    assert_eq!(is_principal(&x, &Divisor::zero()).unwrap(), Principality::Principal(RationalFunction::one()));
    let d = Divisor::from_terms([(cp(pt(0), 0), 1), (cp(pt(0), 1), 1), (cp(inf(), 0), -1), (cp(inf(), 1), -1)]);
    match is_principal(&x, &d).unwrap() {
        Principality::Principal(g) => {
            assert_eq!(principal_divisor(&g, &x).unwrap(), d);
            assert!((&g / &RationalFunction::z()).is_constant());
        }
        other => panic!("expected principal, got {other:?}"),
    }
    assert_eq!(is_principal(&x, &Divisor::point(cp(pt(0), 0))).unwrap(), Principality::NotPrincipal(vec![1, 0, 0, 0]));
}

#[test]
fn json_round_trip() {
    let text = r#"{"special": [{"point": "0", "multiplicity": 2}, {"point": "1", "multiplicity": 2},
                  {"point": "inf", "multiplicity": 2}], "anchor": "1"}"#;
    let x = parse_curve(text).unwrap();
    assert_eq!(x, GluedCurve::tripled_line());
    assert_eq!(parse_curve(&curve_to_json(&x)).unwrap(), x);
    let d = parse_divisor(r#"[{"point": "1", "copy": 1, "coeff": 2}, {"point": "1/2", "coeff": -1}]"#, &x).unwrap();
    assert_eq!(d.coeff(&cp(pt(1), 1)), 2);
    assert_eq!(d.coeff(&cp(P1Point::Finite(rat(1, 2)), 0)), -1);
    assert!(matches!(parse_divisor(r#"[{"point": "0", "copy": 2, "coeff": 1}]"#, &x), Err(CurveError::InvalidCopy(_))));
    assert!(matches!(parse_curve(r#"{"special": []}"#), Err(CurveError::NoSpecialPoints)));
    assert!(matches!(
        parse_curve(r#"{"special": [{"point": "0", "multiplicity": 0}]}"#),
        Err(CurveError::ZeroMultiplicity(_))
    ));
}

// random data

fn arb_point() -> impl Strategy<Value = P1Point> {
    prop_oneof![
        1 => Just(P1Point::Infinity),
        6 => (-3i64..=3, 1i64..=2).prop_map(|(n, d)| P1Point::Finite(rat(n, d))),
    ]
}

fn arb_curve() -> impl Strategy<Value = GluedCurve> {
    proptest::collection::btree_map(arb_point(), 1u32..=3, 1..=4).prop_flat_map(|m| {
        let special: Vec<(P1Point, u32)> = m.into_iter().collect();
        let n = special.len();
        (Just(special), 0..n).prop_map(|(special, a)| {
            let anchor = special[a].0.clone();
            GluedCurve::new(special).unwrap().with_anchor(&anchor).unwrap()
        })
    })
}

fn arb_divisor(curve: GluedCurve) -> impl Strategy<Value = Divisor> {
    let mut points = curve.special_copies();
    points.push(cp(P1Point::Finite(rat(7, 3)), 0));
    points.push(cp(P1Point::Finite(int(-5)), 0));
    proptest::collection::vec(-3i64..=3, points.len())
        .prop_map(move |cs| Divisor::from_terms(points.iter().cloned().zip(cs)))
}

fn arb_function() -> impl Strategy<Value = RationalFunction> {
    let factor = (-3i64..=3, 1i64..=2, -2i64..=2);
    (proptest::collection::vec(factor, 0..4), -3i64..=3).prop_map(|(fs, c)| {
        let c = if c == 0 { 1 } else { c };
        fs.into_iter().fold(RationalFunction::constant(int(c)), |acc, (n, d, e)| {
            &acc * &RationalFunction::linear(&rat(n, d)).powi(e)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn divisor_of_product_is_sum(f in arb_function(), g in arb_function(), x in arb_curve()) {
        let lhs = principal_divisor(&(&f * &g), &x).unwrap();
        let rhs = principal_divisor(&f, &x).unwrap().add(&principal_divisor(&g, &x).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dimension_matches_formula_and_ansatz((x, d) in arb_curve().prop_flat_map(|x| (Just(x.clone()), arb_divisor(x)))) {
        let s = section_space(&x, &d);
        let deg = line_divisor_degree(&min_divisor(&d, &x));
        prop_assert_eq!(s.dim() as i64, (deg + 1).max(0));
        prop_assert_eq!(s.dim(), common::ansatz_dimension(&x, &d));
        for f in s.basis() {
            prop_assert!(satisfies_order_conditions(&x, &d, f).unwrap());
        }
    }

    #[test]
    fn products_of_sections_are_sections(
        (x, d, e) in arb_curve().prop_flat_map(|x| (Just(x.clone()), arb_divisor(x.clone()), arb_divisor(x)))
    ) {
        let s = section_space(&x, &d);
        let t = section_space(&x, &e);
        let de = d.add(&e);
        let st = section_space(&x, &de);
        for f in s.basis() {
            for g in t.basis() {
                let h = f * g;
                prop_assert!(st.contains(&h));
                prop_assert!(satisfies_order_conditions(&x, &de, &h).unwrap());
            }
        }
    }

    #[test]
    fn class_of_is_additive_and_kills_principal(
        (x, d, e) in arb_curve().prop_flat_map(|x| (Just(x.clone()), arb_divisor(x.clone()), arb_divisor(x))),
        f in arb_function(),
    ) {
        let pic = picard_group(&x).unwrap();
        let cd = pic.class_of(&d).unwrap();
        let ce = pic.class_of(&e).unwrap();
        let sum: Vec<i64> = cd.iter().zip(&ce).map(|(a, b)| a + b).collect();
        prop_assert_eq!(pic.class_of(&d.add(&e)).unwrap(), sum);
        let p = principal_divisor(&f, &x).unwrap();
        prop_assert!(pic.class_of(&p).unwrap().iter().all(|&c| c == 0));
        match pic.is_principal(&p).unwrap() {
            Principality::Principal(g) => prop_assert_eq!(principal_divisor(&g, &x).unwrap(), p),
            other => prop_assert!(false, "not principal: {:?}", other),
        }
        // decomposition witness
        let (class, g) = pic.decompose(&d).unwrap();
        let rebuilt = pic.representative(&class).add(&principal_divisor(&g, &x).unwrap());
        prop_assert_eq!(rebuilt, d.clone());
        // nonzero class means not principal
        if cd.iter().any(|&c| c != 0) {
            prop_assert_eq!(pic.is_principal(&d).unwrap(), Principality::NotPrincipal(cd));
        }
    }

    #[test]
    fn picard_rank_formula(x in arb_curve()) {
        let pic = picard_group(&x).unwrap();
        prop_assert_eq!(pic.rank(), x.expected_picard_rank());
        prop_assert_eq!(pic.principal_quotient().rank(), x.expected_picard_rank());
        prop_assert!(pic.principal_quotient().is_free());
        for b in pic.basis_points() {
            prop_assert!(pic.point_weight(b) > 0);
        }
        for (rel, _) in pic.relations() {
            let class = pic.class_of(rel).unwrap();
            prop_assert_eq!(pic.weight(&class), 0);
        }
    }
}
