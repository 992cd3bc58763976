use bcov_numeric::{int, rat, QSeries, Rational};
use bcov_polyring::{enumerate_monomials, t, Degree, Grading, Monomial, OTElement, WeightedPoly};
use proptest::prelude::*;

fn p(s: &str) -> OTElement {
    OTElement::parse(s).unwrap()
}

#[test]
fn arithmetic_examples() {
    assert_eq!(t(0).add(&t(0)), t(0).scale(&int(2)));
    let inv5 = OTElement::one().div_unit(1, 0, 0);
    assert_eq!(inv5.mul(&t(5)), OTElement::one());
    let a = OTElement::disc().div_unit(1, 0, 0);
    let b = t(0).pow(5).div_unit(1, 0, 0);
    assert_eq!(a.add(&b), t(4).div_unit(1, 0, 0));
}

#[test]
fn partial_examples() {
    assert_eq!(t(0).pow(5).partial(0), t(0).pow(4).scale(&int(5)));
    let r = OTElement::one().div_unit(0, 0, 1).partial(0);
    assert_eq!(r, t(0).pow(4).scale(&int(5)).div_unit(0, 0, 2));
    let r = t(6).div_unit(1, 0, 0).partial(5);
    assert_eq!(r, t(6).neg().div_unit(2, 0, 0));
}

#[test]
fn grading_examples() {
    assert_eq!(OTElement::disc().grading(Grading::W), Degree::Homogeneous(15));
    let y = OTElement::disc().pow(2).scale(&int(390625)).div_unit(3, 0, 0);
    assert_eq!(y.grading(Grading::W), Degree::Homogeneous(-3));
    assert_eq!(t(0).add(&t(1)).grading(Grading::W), Degree::Mixed);
    assert_eq!(t(5).grading(Grading::E1), Degree::Homogeneous(1));
}

#[test]
fn canonical_text() {
    let e = p("3750*t0^5*t4 - 625*t4^2");
    assert_eq!(e.to_string(), "-625*t4^2 + 3750*t0^5*t4");
    let f = p("(15625*t0^4*t4 + 5*t3*t4) / (t5)");
    assert_eq!(f.to_string(), "(5*t3*t4 + 15625*t0^4*t4) / (t5)");
    let g = p("(t0 + 1/5*t6) / (t5^3 * t4 * disc^2)");
    assert_eq!(OTElement::parse(&g.to_string()).unwrap(), g);
    assert!(OTElement::parse("t0 / (t1)").is_err());
    assert!(WeightedPoly::parse("t7").is_err());
}

#[test]
fn normalization_cancels_disc() {
    // (t4^2 - t0^10) / disc = t4 + t0^5
    let n = WeightedPoly::parse("t4^2 - t0^10").unwrap();
    let e = OTElement::new(n, 0, 0, 1);
    assert_eq!(e, t(4).add(&t(0).pow(5)));
    assert!(WeightedPoly::parse("t4^2 - t0^9").unwrap().div_disc().is_none());
}

#[test]
fn unit_inverse() {
    let u = OTElement::disc().pow(3).mul(&t(4)).scale(&rat(-7, 3)).div_unit(1, 0, 0);
    let v = u.inverse().unwrap();
    assert_eq!(u.mul(&v), OTElement::one());
    assert!(t(0).inverse().is_err());
}

#[test]
fn enumeration_examples() {
    assert_eq!(enumerate_monomials(0, 0), vec![Monomial::one()]);
    assert_eq!(enumerate_monomials(1, 0), vec![Monomial::var(0)]);
}

/// Independent oracle: loop over the exponent box.
fn brute_force_count(e0: i64, e1: i64) -> usize {
    let w = [1i64, 2, 3, 4, 5, 3, 2];
    let mut n = 0;
    let bound = |k: usize| (e0 / w[k]) as u16;
    for i0 in 0..=bound(0) {
        for i1 in 0..=bound(1) {
            for i2 in 0..=bound(2) {
                for i3 in 0..=bound(3) {
                    for i4 in 0..=bound(4) {
                        for i5 in 0..=bound(5) {
                            for i6 in 0..=bound(6) {
                                let m = Monomial([i0, i1, i2, i3, i4, i5, i6]);
                                if m.e0() == e0 && m.e1() == e1 {
                                    n += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    n
}

#[test]
fn enumeration_matches_brute_force() {
    let q2 = enumerate_monomials(21, 3);
    assert_eq!(q2.len(), brute_force_count(21, 3));
    assert_eq!(q2.len(), 258);
    for (e0, e1) in [(7, 2), (10, 0), (12, 4)] {
        assert_eq!(enumerate_monomials(e0, e1).len(), brute_force_count(e0, e1));
    }
    let mut sorted = q2.clone();
    sorted.dedup();
    assert_eq!(sorted.len(), q2.len());
    assert!(q2.iter().all(|m| m.w() == 69));
}

#[test]
fn weight_identity_exhaustive() {
    for e0 in 0..=14 {
        for e1 in 0..=4 {
            for m in enumerate_monomials(e0, e1) {
                assert_eq!(m.w(), 3 * m.e0() + 2 * m.e1(), "{m}");
            }
        }
    }
}

#[test]
fn series_evaluation_examples() {
    let n = 6;
    let mut vals: [QSeries; 7] = std::array::from_fn(|_| QSeries::one(n));
    vals[0] = QSeries::from_ints(&[1, 1], n);
    assert_eq!(t(0).evaluate_series(&vals).unwrap(), vals[0]);
    vals[5] = QSeries::from_ints(&[1, -1], n);
    let r = OTElement::one().div_unit(1, 0, 0).evaluate_series(&vals).unwrap();
    assert_eq!(r, QSeries::from_ints(&[1; 7], n));
    vals[5] = QSeries::zero(n);
    assert!(OTElement::one().div_unit(1, 0, 0).evaluate_series(&vals).is_err());
}

#[test]
fn series_evaluation_two_routes() {
    let n = 8;
    let mut vals: [QSeries; 7] = std::array::from_fn(|i| QSeries::from_ints(&[i as i64 + 1, 2, -1], n));
    vals[4] = QSeries::from_ints(&[3, 1, 4, 1, 5], n);
    let e = OTElement::disc().div_unit(0, 1, 0);
    let direct = e.evaluate_series(&vals).unwrap();
    let num = OTElement::disc().evaluate_series(&vals).unwrap();
    let den = t(4).evaluate_series(&vals).unwrap();
    assert_eq!(direct, num.div(&den).unwrap());
}

fn arb_ot() -> impl Strategy<Value = OTElement> {
    let term = (prop::array::uniform7(0u16..3), -9i64..9);
    (prop::collection::vec(term, 1..5), 0u32..3, 0u32..2, 0u32..3).prop_map(|(ts, a, b, c)| {
        let num = WeightedPoly::from_terms(ts.into_iter().map(|(e, k)| (Monomial(e), int(k))));
        OTElement::new(num, a, b, c)
    })
}

fn point() -> [Rational; 7] {
    [rat(2, 3), rat(-1, 2), int(3), rat(5, 7), int(7), rat(-3, 4), int(2)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn leibniz(a in arb_ot(), b in arb_ot(), i in 0usize..7) {
        let lhs = a.mul(&b).partial(i);
        let rhs = a.partial(i).mul(&b).add(&a.mul(&b.partial(i)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mixed_partials_commute(a in arb_ot(), i in 0usize..7, j in 0usize..7) {
        prop_assert_eq!(a.partial(i).partial(j), a.partial(j).partial(i));
    }

    #[test]
    fn normalization_idempotent(a in arb_ot()) {
        let (x, y, z) = a.den_exps();
        let again = OTElement::new(a.numerator().clone(), x, y, z);
        prop_assert_eq!(&again, &a);
        let back = a.mul(&OTElement::disc()).div_unit(0, 0, 1);
        prop_assert_eq!(back, a);
    }

    #[test]
    fn arithmetic_agrees_with_point_evaluation(a in arb_ot(), b in arb_ot()) {
        let x = point();
        let (va, vb) = (a.eval(&x).unwrap(), b.eval(&x).unwrap());
        prop_assert_eq!(a.add(&b).eval(&x).unwrap(), &va + &vb);
        prop_assert_eq!(a.mul(&b).eval(&x).unwrap(), &va * &vb);
    }

    #[test]
    fn text_round_trip(a in arb_ot()) {
        prop_assert_eq!(OTElement::parse(&a.to_string()).unwrap(), a);
    }
}
