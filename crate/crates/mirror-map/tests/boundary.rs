use bcov_anomaly::{rhs_genus, solve_chain, solve_genus, Amplitude, LogAmplitude, SolveOptions};
use bcov_mirror::amplitudes::{self, constant_map, gap_leading};
use bcov_mirror::{conifold, gv, mum, BpsTable, MirrorConfig};
use bcov_fields::YukawaVariant;
use bcov_numeric::{int, rat, QSeries, Rational};
use num_bigint::BigInt;

fn cfg(order: usize) -> MirrorConfig {
    MirrorConfig { order, ..MirrorConfig::default() }
}

fn coeffs(s: &QSeries, n: usize) -> Vec<Rational> {
    (0..n).map(|k| s.coeff(k).clone()).collect()
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn values(row: &[(u32, BigInt)]) -> Vec<BigInt> {
    row.iter().map(|(_, n)| n.clone()).collect()
}

/// Genus 0 and 1 rows; theta log costs one order, so `max_d < data.order`.
fn lower_table(data: &mum::MumData, max_d: u32) -> BpsTable {
    let mut t = BpsTable::default();
    let y = mum::yukawa_q(&data.tc, YukawaVariant::Disc).unwrap();
    let r = gv::extract(&y, 0, 3, max_d, &t).unwrap();
    gv::insert_row(&mut t, 0, &r);
    let th = amplitudes::f1_theta_q(&data.tc, &LogAmplitude::normalized()).unwrap();
    let th = th.sub(&QSeries::constant(rat(-50, 24), th.order()));
    let r = gv::extract(&th, 1, 1, max_d, &t).unwrap();
    gv::insert_row(&mut t, 1, &r);
    t
}

#[test]
fn conifold_periods() {
    let p = conifold::conifold_periods(&bcov_mirror::PicardFuchs::quintic(), 8).unwrap();
    assert_eq!(p.regular_dim, 3);
    assert_eq!(coeffs(&p.x_d, 4), vec![int(0), int(1), rat(7, 10), rat(41, 75)]);
    assert_eq!(coeffs(&p.x_0, 5), vec![int(1), int(0), int(0), rat(2, 625), rat(97, 18750)]);
    assert_eq!(coeffs(&p.x_2, 3), vec![int(0), int(0), int(1)]);
    let more = conifold::conifold_periods(&bcov_mirror::PicardFuchs::quintic(), 12).unwrap();
    assert_eq!(more.x_d.truncate(8), p.x_d);
    assert_eq!(more.x_0.truncate(8), p.x_0);
}

#[test]
fn conifold_yukawa_residue() {
    let con = conifold::compute(&cfg(4), 10, &int(0)).unwrap();
    assert_eq!(con.nu, rat(1, 5));
    assert_eq!(con.t_c.valuation(), 1);
    assert_eq!(gap_leading(2, &con.nu), rat(-1, 48));
}

#[test]
fn constant_map_values() {
    assert_eq!(constant_map(2, -200), rat(-5, 144));
    assert_eq!(constant_map(3, -200), rat(5, 36288));
}

#[test]
fn genus_one_expansion() {
    let data = mum::compute(&cfg(7)).unwrap();
    let th = amplitudes::f1_theta_q(&data.tc, &LogAmplitude::normalized()).unwrap();
    // -c2.H / 24
    assert_eq!(th.coeff(0), &rat(-50, 24));
    let t = lower_table(&data, 6);
    assert_eq!(values(&t.row(1)), big(&[0, 0, 609250, 3721431625, 12129909700200, 31147299733286500]));
    // The printed exponents give a fifth of the constant term.
    let printed = amplitudes::f1_theta_q(&data.tc, &LogAmplitude::printed()).unwrap();
    assert_eq!(printed.coeff(0), &rat(-5, 12));
}

#[test]
fn genus_two_fixed_by_gap_and_constant_map() {
    let c = cfg(8);
    let data = mum::compute(&c).unwrap();
    let con = conifold::compute(&c, 16, &int(0)).unwrap();
    let sols = solve_chain(&LogAmplitude::normalized(), 2, &SolveOptions::default()).unwrap();
    let fix = amplitudes::fix_ambiguity(&sols[0].amplitude, &data, &con, c.chi).unwrap();
    assert_eq!((fix.free_before(), fix.free_after()), (3, 0));
    assert_eq!(fix.rows.len(), 3);
    assert!(fix.residuals.iter().all(|r| *r == int(0)));
    let f2 = amplitudes::fg_q(&fix.fixed, &data).unwrap();
    assert_eq!(f2.coeff(0), &rat(-5, 144));
    let row = gv::extract(&f2, 2, 0, 7, &lower_table(&data, 7)).unwrap();
    assert_eq!(
        values(&row),
        big(&[0, 0, 0, 534750, 75478987900, 871708139638250, 5185462556617269625])
    );
}

#[test]
fn genus_two_boundary_independent_of_regular_period() {
    let c = cfg(5);
    let data = mum::compute(&c).unwrap();
    let sols = solve_chain(&LogAmplitude::normalized(), 2, &SolveOptions::default()).unwrap();
    let base = conifold::compute(&c, 14, &int(0)).unwrap();
    let want = amplitudes::fix_ambiguity(&sols[0].amplitude, &data, &base, c.chi).unwrap().values;
    for (a, b) in [(int(1), int(0)), (rat(-3, 7), int(0)), (int(0), int(2)), (int(5), rat(1, 3))] {
        let con = conifold::compute_with(&c, 14, &a, &b).unwrap();
        assert_eq!(con.nu, base.nu);
        let got = amplitudes::fix_ambiguity(&sols[0].amplitude, &data, &con, c.chi).unwrap().values;
        assert_eq!(got, want, "X0 + {a} X_D + {b} X_2");
    }
}

#[test]
fn genus_two_needs_all_conditions() {
    let c = cfg(5);
    let data = mum::compute(&c).unwrap();
    let con = conifold::compute(&c, 14, &int(0)).unwrap();
    let sols = solve_chain(&LogAmplitude::normalized(), 2, &SolveOptions::default()).unwrap();
    let fix = amplitudes::fix_ambiguity(&sols[0].amplitude, &data, &con, c.chi).unwrap();
    let a = bcov_liealg::QMat::from_fn(3, 3, |i, j| fix.rows[i].coeffs[j].clone());
    assert_eq!(bcov_liealg::linsolve::rank(&a), 3);
    // A wrong Euler characteristic in the constant map moves the answer.
    let wrong = amplitudes::fix_ambiguity(&sols[0].amplitude, &data, &con, 200).unwrap();
    assert_ne!(wrong.values, fix.values);
}

#[test]
fn genus_three_fixed_and_integral() {
    let c = cfg(7);
    let data = mum::compute(&c).unwrap();
    let con = conifold::compute(&c, 22, &int(0)).unwrap();
    let f1 = LogAmplitude::normalized();
    let sols = solve_chain(&f1, 2, &SolveOptions::default()).unwrap();
    let fix2 = amplitudes::fix_ambiguity(&sols[0].amplitude, &data, &con, c.chi).unwrap();
    let amps = vec![Amplitude::Genus1(f1), Amplitude::Higher(fix2.fixed.clone())];
    let s3 = solve_genus(3, &rhs_genus(3, &amps).unwrap(), &SolveOptions::default()).unwrap();
    let fix3 = amplitudes::fix_ambiguity(&s3.amplitude, &data, &con, c.chi).unwrap();
    assert_eq!((fix3.free_before(), fix3.free_after()), (5, 0));
    assert!(fix3.residuals.iter().all(|r| *r == int(0)));
    let f3 = amplitudes::fg_q(&fix3.fixed, &data).unwrap();
    assert_eq!(f3.coeff(0), &rat(5, 36288));
    let mut t = lower_table(&data, 6);
    let f2 = amplitudes::fg_q(&fix2.fixed, &data).unwrap();
    let r2 = gv::extract(&f2, 2, 0, 6, &t).unwrap();
    gv::insert_row(&mut t, 2, &r2);
    let r3 = gv::extract(&f3, 3, 0, 6, &t).unwrap();
    // Degree 4: the residual plane quartics through each of the 2875 lines.
    assert_eq!(values(&r3), big(&[0, 0, 0, 8625, -15663750, 3156446162875]));
}
