use bcov_liealg::{basis_display, basis_element};
use bcov_numeric::{int, rat, Rational};
use bcov_special::bmatrix::{determinant, inverse, is_block_lower, pairing_residual, set_zero};
use bcov_special::*;
use num_traits::Zero;
use proptest::prelude::*;

fn sym(x: Sym) -> SymRat {
    SymRat::sym(x)
}

#[test]
fn b_entries() {
    let b = build_b();
    assert_eq!(b.get(0, 0), &SymRat::monomial(int(1), &[(Sym::G0, -1)]));
    assert_eq!(b.get(1, 0), &SymRat::monomial(int(1), &[(Sym::G0, -1), (Sym::L1, 1)]));
    assert_eq!(b.get(3, 3), &sym(Sym::G0));
    assert!(is_block_lower(&b));
    assert_eq!(determinant(&b), SymRat::one());
}

#[test]
fn inverse_is_exact() {
    let b = build_b();
    let bi = inverse(&b).unwrap();
    assert_eq!(b.mul(&bi), SymMat::identity(4));
    assert_eq!(bi.mul(&b), SymMat::identity(4));
}

#[test]
fn m_matrix_examples() {
    let mt = m_matrix(Sym::T);
    assert_eq!(mt.nonzero(), vec![(3, 0, SymRat::constant(int(-2)))]);
    let ml = m_matrix(Sym::L1);
    assert_eq!(ml.nonzero(), vec![(1, 0, SymRat::one()), (3, 2, SymRat::one())]);
    let m1 = m_matrix(Sym::T1);
    assert_eq!(
        m1.nonzero(),
        vec![(2, 0, SymRat::constant(int(-1))), (3, 0, sym(Sym::L1).scale(&int(-2))), (3, 1, SymRat::one())]
    );
}

#[test]
fn m_matrices_match_displays_entrywise() {
    for x in [Sym::T11, Sym::T1, Sym::T, Sym::L1, Sym::G0, Sym::G] {
        let d = m_display(x).unwrap();
        assert_eq!(compare(&m_matrix(x), &d), vec![], "M_{}", x.name());
    }
}

#[test]
fn m_matrices_free_of_holomorphic_constants() {
    for x in Sym::GENERATORS {
        let m = m_matrix(x);
        for (_, _, e) in m.nonzero() {
            assert!(!e.symbols().contains(&Sym::H) && !e.symbols().contains(&Sym::H1));
        }
    }
}

#[test]
fn combos_are_the_lie_displays() {
    for c in canonical_combos(G0Combo::Weighted) {
        let m = c.constant().unwrap_or_else(|| panic!("{:?} not constant: {}", c.kind, c.value));
        assert_eq!(m, basis_display(c.kind, 1), "{:?}", c.kind);
        assert_eq!(m.transpose(), basis_element(1, c.kind));
    }
}

#[test]
fn t1_combo_cancels_l1() {
    let c = &canonical_combos(G0Combo::Weighted)[1];
    let m = c.constant().unwrap();
    assert_eq!(m.get(2, 0), &int(-1));
    assert_eq!(m.get(3, 1), &int(1));
}

#[test]
fn printed_g0_combo_is_not_constant() {
    let combos = canonical_combos(G0Combo::Printed);
    let g0 = combos.last().unwrap();
    assert!(g0.constant().is_none());
    assert_eq!(g0.value.get(3, 0), &sym(Sym::T).scale(&int(4)).sub(&SymRat::constant(int(4))));
    assert!(combos[..5].iter().all(Combo::matches_basis));
}

#[test]
fn pairing_residual_is_the_h1_term() {
    let r = check_pairing_b();
    let t = sym(Sym::G0).mul(&sym(Sym::G)).mul(&sym(Sym::H1));
    let mut nz = r.nonzero();
    nz.sort_by_key(|x| (x.0, x.1));
    assert_eq!(nz, vec![(2, 3, t.neg()), (3, 2, t)]);
    assert!(set_zero(&r, Sym::H1).is_zero());
    assert_eq!(r.get(0, 3), &SymRat::zero());
    assert_eq!(r.get(1, 2), &SymRat::zero());
}

#[test]
fn pairing_negative_control() {
    let mut b = set_zero(&build_b(), Sym::H1);
    assert!(pairing_residual(&b).is_zero());
    b.set(3, 3, sym(Sym::G0).add(&SymRat::one()));
    assert!(!pairing_residual(&b).is_zero());
}

#[test]
fn dring_examples() {
    use Sym::*;
    assert_eq!(dring_derivation(&sym(G0)), sym(L1).mul(&sym(G0)).neg());
    let want = sym(L1).pow(2).neg().sub(&sym(C111).mul(&sym(T1))).add(&SymRat::monomial(int(1), &[(G0, -2), (K11, 1)]));
    assert_eq!(dring_derivation(&sym(L1)), want);
    assert_eq!(dring_derivation(&sym(G0).pow(2)), sym(L1).mul(&sym(G0).pow(2)).scale(&int(-2)));
    assert!(dring_derivation(&sym(H)).is_zero());
    assert!(dring_derivation(&SymRat::constant(rat(3, 7))).is_zero());
}

fn arb_symrat() -> impl Strategy<Value = SymRat> {
    prop::collection::vec((-3i64..4, prop::collection::vec((0usize..NSYM, -2i32..3), 0..3)), 0..4).prop_map(|ts| {
        let mut acc = SymRat::zero();
        for (c, ps) in ts {
            let powers: Vec<(Sym, i32)> = ps.into_iter().map(|(i, k)| (Sym::ALL[i], k)).collect();
            acc = acc.add(&SymRat::monomial(Rational::from_integer(c.into()), &powers));
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivation_leibniz(f in arb_symrat(), g in arb_symrat()) {
        let lhs = dring_derivation(&f.mul(&g));
        let rhs = dring_derivation(&f).mul(&g).add(&f.mul(&dring_derivation(&g)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_axioms(a in arb_symrat(), b in arb_symrat(), c in arb_symrat()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
    }
}
