use bcov_liealg::{
    basis_element, build_phi, canonical_basis, closure_report, decompose, is_in_lie, mat_bracket, BasisKind,
    BlockShape, QMat,
};
use bcov_numeric::{int, Rational};
use proptest::prelude::*;

#[test]
fn phi_h1_matches_display() {
    let phi = build_phi(1);
    let expect = QMat::from_rows(vec![
        vec![int(0), int(0), int(0), int(-1)],
        vec![int(0), int(0), int(1), int(0)],
        vec![int(0), int(-1), int(0), int(0)],
        vec![int(1), int(0), int(0), int(0)],
    ]);
    assert_eq!(phi, expect);
}

#[test]
fn phi_antisymmetric_and_squares_to_minus_identity() {
    for h in 1..=4 {
        let phi = build_phi(h);
        assert_eq!(phi.transpose(), phi.neg());
        assert_eq!(phi.mul(&phi), QMat::identity(2 * h + 2).neg());
    }
}

#[test]
fn basis_sizes() {
    assert_eq!(canonical_basis(1).len(), 6);
    assert_eq!(canonical_basis(2).len(), 13);
    for h in 1..=4 {
        assert_eq!(canonical_basis(h).len(), (3 * h * h + 5 * h + 4) / 2);
    }
    // dim T = h + dim G = 7 coordinates t0..t6 for h = 1.
    assert_eq!(1 + BlockShape::new(1).dim_g(), 7);
}

#[test]
fn t_is_a_single_corner_entry() {
    // Display: -1 at (4,1); the Lie(G) element is its transpose.
    let t = basis_element(1, BasisKind::T);
    assert_eq!(t.nonzero(), vec![(0, 3, int(-1))]);
    assert_eq!(t.transpose().nonzero(), vec![(3, 0, int(-1))]);
}

#[test]
fn membership_examples() {
    let s = BlockShape::new(1);
    for e in canonical_basis(1) {
        assert!(is_in_lie(&e.mat, s), "{}", e.name);
    }
    assert!(!is_in_lie(&QMat::identity(4), s));
    let id = QMat::identity(4);
    let phi = build_phi(1);
    assert_eq!(id.transpose().mul(&phi).add(&phi.mul(&id)), phi.scale(&int(2)));
    assert!(is_in_lie(&QMat::zeros(4, 4), s));
    // Displays themselves are lower triangular and fail the block condition.
    assert!(!is_in_lie(&basis_element(1, BasisKind::T).transpose(), s));
}

#[test]
fn bracket_of_g0_and_k_stays_in_lie() {
    let g0 = basis_element(1, BasisKind::G0);
    let k = basis_element(1, BasisKind::Ka(1));
    let b = mat_bracket(&g0, &k);
    assert!(is_in_lie(&b, BlockShape::new(1)));
    assert_eq!(b, k.neg());
    assert!(mat_bracket(&k, &k).is_zero());
}

#[test]
fn closure_h1_to_h3() {
    for h in 1..=3 {
        let r = closure_report(h);
        assert!(r.passed(), "closure fails for h={h}");
    }
}

/// Rows of the bracket table that involve only Lie(G) fields, h = 1.
#[test]
fn pure_lie_table_rows_h1() {
    use BasisKind::*;
    let e = |k| basis_element(1, k);
    let cases: Vec<(BasisKind, BasisKind, QMat)> = vec![
        (G0, Ta(1), e(Ta(1)).neg()),
        (G0, T, e(T).scale(&int(-2))),
        (G0, Ka(1), e(Ka(1)).neg()),
        (G0, Tab(1, 1), QMat::zeros(4, 4)),
        (Gab(1, 1), Tab(1, 1), e(Tab(1, 1)).scale(&int(-2))),
        (Gab(1, 1), Ta(1), e(Ta(1)).neg()),
        (Gab(1, 1), Ka(1), e(Ka(1))),
        (Tab(1, 1), Ka(1), e(Ta(1))),
        (Ta(1), Ka(1), e(T).scale(&int(2))),
        (Ka(1), Tab(1, 1), e(Ta(1)).neg()),
        (Ka(1), Ta(1), e(T).scale(&int(-2))),
        (Ta(1), G0, e(Ta(1))),
    ];
    for (x, y, want) in cases {
        assert_eq!(mat_bracket(&e(x), &e(y)), want, "[{}, {}]", x.name(), y.name());
    }
}

/// Generic h: g0 grades the basis by block distance.
#[test]
fn g0_grading_generic_h() {
    for h in 1..=3 {
        let g0 = basis_element(h, BasisKind::G0);
        for e in canonical_basis(h) {
            let br = mat_bracket(&g0, &e.mat);
            let w = match e.name.chars().next().unwrap() {
                't' if e.name == "t" => -2,
                't' if e.name.starts_with("t_a[") => -1,
                'k' => -1,
                _ => 0,
            };
            assert_eq!(br, e.mat.scale(&int(w)), "[g0, {}] h={h}", e.name);
        }
    }
}

#[test]
fn decomposition_rejects_non_members() {
    let basis = canonical_basis(1);
    assert!(decompose(&QMat::identity(4), &basis).is_none());
}

#[test]
fn export_shape() {
    let e = &canonical_basis(1)[0];
    let x = e.export();
    assert_eq!(x.h, 1);
    assert_eq!(x.name, "t_ab[1][1]");
    assert_eq!(x.entries.len(), 4);
}

fn arb_combo(h: usize) -> impl Strategy<Value = QMat> {
    let n = BlockShape::new(h).dim_g();
    prop::collection::vec(-4i64..5, n).prop_map(move |cs| {
        let basis = canonical_basis(h);
        let c: Vec<Rational> = cs.into_iter().map(int).collect();
        bcov_liealg::combine(&c, &basis)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn jacobi(a in arb_combo(2), b in arb_combo(2), c in arb_combo(2)) {
        let j = mat_bracket(&a, &mat_bracket(&b, &c))
            .add(&mat_bracket(&b, &mat_bracket(&c, &a)))
            .add(&mat_bracket(&c, &mat_bracket(&a, &b)));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn brackets_stay_in_lie(a in arb_combo(3), b in arb_combo(3)) {
        prop_assert!(is_in_lie(&mat_bracket(&a, &b), BlockShape::new(3)));
    }
}
