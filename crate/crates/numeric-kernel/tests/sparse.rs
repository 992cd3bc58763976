use bcov_numeric::sparse::{rational_reconstruct, solve_fraction_free, solve_multimodular, SparseSystem};
use bcov_numeric::{int, rat};
use num_bigint::BigInt;
use proptest::prelude::*;

fn small_system() -> SparseSystem {
    // x0 + 2x1 = 3, x1 - x2 = 1/2 (one free variable); second rhs is zero.
    let mut s = SparseSystem::new(3, 2);
    s.push_row(vec![(0, int(1)), (1, int(2))], vec![int(3), int(0)]);
    s.push_row(vec![(1, int(1)), (2, int(-1))], vec![rat(1, 2), int(0)]);
    s
}

#[test]
fn fraction_free_small() {
    let s = small_system();
    let (sol, stats) = solve_fraction_free(&s);
    assert_eq!(stats.rank, 2);
    assert_eq!(sol.kernel.len(), 1);
    for k in 0..2 {
        assert!(s.residual(&sol.particular[k], k).is_empty());
    }
    assert_eq!(s.kernel_residual(&sol.kernel[0]), 0);
}

#[test]
fn obstruction_reported() {
    let mut s = SparseSystem::new(1, 2);
    s.push_row(vec![(0, int(1))], vec![int(1), int(0)]);
    s.push_row(vec![(0, int(2))], vec![int(3), int(1)]);
    let (sol, _) = solve_fraction_free(&s);
    assert!(!sol.is_consistent(0));
    assert_eq!(sol.obstructions.len(), 1);
}

#[test]
fn modular_matches_small() {
    let s = small_system();
    let (sol, _) = solve_fraction_free(&s);
    let m = solve_multimodular(&s, 16).unwrap();
    assert_eq!(m.canonical, sol.canonical());
}

#[test]
fn reconstruction() {
    let m = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64);
    let r = rat(-355, 113);
    let a = (r.numer() * modinv(r.denom(), &m)) % &m;
    assert_eq!(rational_reconstruct(&a, &m), Some(r));
}

fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
    use num_integer::Integer;
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Random sparse systems: both solvers agree and solutions check out.
    #[test]
    fn solvers_agree(rows in prop::collection::vec(
        (prop::collection::vec((0usize..6, -5i64..6), 1..4), -4i64..5, -3i64..4), 1..8)) {
        let mut s = SparseSystem::new(6, 2);
        for (entries, b0, b1) in rows {
            s.push_row(entries.into_iter().map(|(c, v)| (c, int(v))).collect(), vec![int(b0), rat(b1, 7)]);
        }
        let (sol, _) = solve_fraction_free(&s);
        for k in 0..2 {
            if sol.is_consistent(k) {
                prop_assert!(s.residual(&sol.particular[k], k).is_empty());
            }
        }
        for v in &sol.kernel {
            prop_assert_eq!(s.kernel_residual(v), 0);
        }
        let m = solve_multimodular(&s, 24).unwrap();
        prop_assert_eq!(m.canonical, sol.canonical());
    }
}
