//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criterion 5 is not attainable as stated (the B-matrix pairing leaves a
//! residual proportional to H1); it is printed as FAIL and the test pins that
//! exact failure, so any change in the residual is noticed.

use std::time::{Duration, Instant};

use bcov_anomaly::{f1_checks, solve_chain, verify_master, LogAmplitude, SolveOptions};
use bcov_cli::{arbitration, RunConfig};
use bcov_fields::{
    calibrate_sign, canonical_frame, check_pairing, flatness_report, gm_matrix, joint_kernel_test,
    verify_bracket_table, YukawaOT, YukawaVariant,
};
use bcov_liealg::{canonical_basis, closure_report, is_in_lie, BlockShape};
use bcov_mirror::amplitudes::{constant_map, f1_theta_q, fg_q, fix_ambiguity};
use bcov_mirror::{conifold, gv, mum, BpsTable, MirrorConfig};
use bcov_numeric::rational::factorial;
use bcov_numeric::{int, QSeries};
use bcov_special::{canonical_combos, check_pairing_b, compare, m_display, m_matrix, set_zero, G0Combo, Sym};

struct Outcome {
    passed: bool,
    note: String,
}

fn outcome(passed: bool, note: impl Into<String>) -> Outcome {
    Outcome { passed, note: note.into() }
}

fn mirror_cfg(order: usize) -> MirrorConfig {
    MirrorConfig { order, ..MirrorConfig::default() }
}

fn ints(s: &QSeries, n: usize) -> Vec<String> {
    (0..n).map(|k| s.coeff(k).to_string()).collect()
}

fn c1_lie() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for h in 1..=3 {
        let b = canonical_basis(h);
        let dim = (3 * h * h + 5 * h + 4) / 2;
        let member = b.iter().all(|e| is_in_lie(&e.mat, BlockShape::new(h)));
        let closed = closure_report(h).passed();
        ok &= b.len() == dim && member && closed;
        notes.push(format!("h={h}: {} elements", b.len()));
    }
    outcome(ok, notes.join(", "))
}

fn c2_brackets() -> Outcome {
    let f = canonical_frame();
    let count = |v| verify_bracket_table(&f, &YukawaOT::new(v)).iter().filter(|e| e.passed()).count();
    let (d, p) = (count(YukawaVariant::Disc), count(YukawaVariant::Printed));
    outcome(d == 49 && p != 49, format!("disc {d}/49, printed {p}/49"))
}

fn c3_flatness_pairing() -> Outcome {
    let f = canonical_frame();
    let y = YukawaOT::default();
    let s = calibrate_sign(&f, &y).unwrap();
    let flat = flatness_report(&f, &y, s).unwrap();
    let nflat = flat.iter().filter(|e| e.passed()).count();
    let npair = f.fields.iter().filter(|x| check_pairing(&gm_matrix(x, &y).unwrap()).is_zero()).count();
    outcome(flat.len() == 21 && nflat == 21 && npair == 7, format!("flatness {nflat}/21 (s = {s}), pairing {npair}/7"))
}

fn c4_kernel() -> Outcome {
    let r = joint_kernel_test(15);
    // Monomials t0^a t4^b have e0-degree a + 5b, so level d has floor(d/5)+1 of them.
    let oracle: usize = (0..=15).map(|d| d / 5 + 1).sum();
    outcome(
        r.passed() && r.kernel_dim() == oracle,
        format!("{} monomials, kernel dimension {} (t0/t4 span {oracle})", r.total_monomials, r.kernel_dim()),
    )
}

fn c5_special() -> Outcome {
    let combos = canonical_combos(G0Combo::Weighted);
    let combos_ok = combos.len() == 6 && combos.iter().all(|c| c.constant().is_some() && c.matches_basis());
    let mismatches: usize = [Sym::T11, Sym::T1, Sym::T, Sym::L1, Sym::G0, Sym::G]
        .into_iter()
        .map(|x| compare(&m_matrix(x), &m_display(x).unwrap()).len())
        .sum();
    let r = check_pairing_b();
    let nz: Vec<String> = r.nonzero().iter().map(|(i, j, v)| format!("({},{}) = {v}", i + 1, j + 1)).collect();
    let note = format!(
        "combos {}, display mismatches {mismatches}, B Phi B^T - Phi: {}",
        if combos_ok { "6/6" } else { "FAILED" },
        if nz.is_empty() { "0".to_string() } else { format!("{} (vanishes on H1 = 0: {})", nz.join(", "), set_zero(&r, Sym::H1).nonzero().is_empty()) }
    );
    outcome(combos_ok && mismatches == 0 && nz.is_empty(), note)
}

fn c6_genus2() -> Outcome {
    let f1 = LogAmplitude::normalized();
    let s = &solve_chain(&f1, 2, &SolveOptions::default()).unwrap()[0];
    let mut kernel: Vec<String> = s.kernel_monomials.iter().map(|m| m.to_string()).collect();
    kernel.sort();
    let want = ["t0^12*t5^3", "t0^2*t4^2*t5^3", "t0^7*t4*t5^3"];
    let cfg = mirror_cfg(4);
    let data = mum::compute(&cfg).unwrap();
    let con = conifold::compute(&cfg, 16, &int(0)).unwrap();
    let fix = fix_ambiguity(&s.amplitude, &data, &con, cfg.chi).unwrap();
    let ok = s.residual_zero && kernel == want && s.support_ok && s.amplitude.den_exps() == (3, 0, 2) && fix.free_after() == 0;
    outcome(ok, format!("kernel {kernel:?} over t5^3 disc^2, parameters {} -> {}", fix.free_before(), fix.free_after()))
}

fn lower(data: &mum::MumData, max_d: u32) -> (BpsTable, Vec<String>) {
    let mut t = BpsTable::default();
    let y = mum::yukawa_q(&data.tc, YukawaVariant::Disc).unwrap();
    let r = gv::extract(&y, 0, 3, max_d, &t).unwrap();
    gv::insert_row(&mut t, 0, &r);
    let th = f1_theta_q(&data.tc, &LogAmplitude::normalized()).unwrap();
    let th = th.sub(&QSeries::constant(th.coeff(0).clone(), th.order()));
    let r = gv::extract(&th, 1, 1, max_d, &t).unwrap();
    gv::insert_row(&mut t, 1, &r);
    let g1 = t.row(1).iter().map(|(_, n)| n.to_string()).collect();
    (t, g1)
}

fn c7_mirror() -> Outcome {
    let data = mum::compute(&mirror_cfg(12)).unwrap();
    let y0_oracle: Vec<String> = (0..4u64).map(|k| (factorial(5 * k) / factorial(k).pow(5)).to_string()).collect();
    let y = mum::yukawa_q(&data.tc, YukawaVariant::Disc).unwrap();
    let w = mum::wronskian_yukawa_q(&data, 5).unwrap();
    let row = gv::extract(&y, 0, 3, 5, &Default::default());
    let n: Vec<String> = row.as_ref().map(|r| r.iter().map(|(_, n)| n.to_string()).collect()).unwrap_or_default();
    let ok = ints(data.frame.y0(), 4) == y0_oracle
        && ints(&data.special.z_of_q, 3) == ["0", "1", "-770"]
        && ints(&y, 3) == ["5", "2875", "4876875"]
        && y == w
        && y.order() == 12
        && n.len() == 5
        && n[..3] == ["2875", "609250", "317206375"];
    outcome(ok, format!("Yukawa routes agree to q^{}, n_0 = {}", y.order(), n.join(", ")))
}

fn c8_genus1() -> Outcome {
    let data = mum::compute(&mirror_cfg(7)).unwrap();
    let (_, g1) = lower(&data, 6);
    let arb = arbitration::list(&RunConfig::default());
    let g1_arb = arb.iter().find(|a| a.name == "genus1_normalization").unwrap();
    let alt = g1_arb.alternative.clone().unwrap_or_default();
    let printed = f1_checks(&LogAmplitude::printed(), &int(200));
    let shows = alt.contains("-1/10") && alt.contains("-59/30") && g1_arb.chosen.contains("-59/6");
    let ok = g1.len() == 6 && g1[0] == "0" && g1[1] == "0" && g1[2] == "609250" && shows && printed.iter().any(|c| !c.passed());
    outcome(ok, format!("n_1 = {}; manifest: {alt}", g1.join(", ")))
}

fn c9_genus2_bps() -> Outcome {
    let cfg = mirror_cfg(7);
    let data = mum::compute(&cfg).unwrap();
    let con = conifold::compute(&cfg, 16, &int(0)).unwrap();
    let s = &solve_chain(&LogAmplitude::normalized(), 2, &SolveOptions::default()).unwrap()[0];
    let fix = fix_ambiguity(&s.amplitude, &data, &con, cfg.chi).unwrap();
    let gap = fix.residuals.iter().all(|r| *r == int(0));
    let f2 = fg_q(&fix.fixed, &data).unwrap();
    let (t, _) = lower(&data, 5);
    match gv::extract(&f2, 2, 0, 5, &t) {
        Ok(r) => {
            let n: Vec<String> = r.iter().map(|(_, n)| n.to_string()).collect();
            let ok = gap && f2.coeff(0) == &constant_map(2, cfg.chi) && n.len() == 5;
            outcome(ok, format!("n_2 = {} (integral), gap rows satisfied: {gap}", n.join(", ")))
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn c10_master() -> Outcome {
    let f1 = LogAmplitude::normalized();
    let chi_b = int(200);
    let s = &solve_chain(&f1, 2, &SolveOptions::default()).unwrap()[0];
    let entries = verify_master(&f1, std::slice::from_ref(&s.amplitude), &chi_b).unwrap();
    let bad: Vec<String> = entries
        .iter()
        .filter(|e| !e.passed())
        .map(|e| format!("g{} {}: {}", e.genus, e.equation.label().name(), e.residual.constant))
        .collect();
    // With the printed exponents only the genus-one equations are available; quantify their residuals.
    let printed = verify_master(&LogAmplitude::printed(), &[], &chi_b).unwrap();
    let pr: Vec<String> = printed
        .iter()
        .filter(|e| !e.passed())
        .map(|e| format!("{} residual {}", e.equation.label().name(), e.residual.constant))
        .collect();
    outcome(
        entries.len() == 12 && bad.is_empty(),
        format!("{}/12 hold with residual 0; printed F1 exponents: {}", entries.len() - bad.len(), pr.join(", ")),
    )
}

fn main() {
    type Criterion = (u32, &'static str, u64, fn() -> Outcome);
    let list: [Criterion; 10] = [
        (1, "Lie algebra dimension, membership and closure for h = 1, 2, 3", 5, c1_lie),
        (2, "bracket table, Yukawa arbitration", 30, c2_brackets),
        (3, "flatness and pairing", 30, c3_flatness_pairing),
        (4, "joint kernel on e0 <= 15", 60, c4_kernel),
        (5, "special-ring combinations, displays and B pairing", 30, c5_special),
        (6, "genus-2 system, kernel, support and boundary fixing", 300, c6_genus2),
        (7, "mirror map, Yukawa routes and genus-0 invariants", 60, c7_mirror),
        (8, "genus-1 invariants and normalization report", 60, c8_genus1),
        (9, "genus-2 BPS integrality", 300, c9_genus2_bps),
        (10, "master equations through genus 2", 60, c10_master),
    ];
    let mut failed = Vec::new();
    for (n, name, limit, f) in list {
        let t = Instant::now();
        let o = f();
        let dt = t.elapsed();
        let in_time = dt < Duration::from_secs(limit);
        let pass = o.passed && in_time;
        println!(
            "{} criterion {n}: {name} [{:.2} s, limit {limit} s] -- {}",
            if pass { "PASS" } else { "FAIL" },
            dt.as_secs_f64(),
            o.note
        );
        if !pass {
            failed.push((n, o.note));
        }
    }
    // Only the documented failure is tolerated.
    assert_eq!(failed.len(), 1, "unexpected failures: {failed:?}");
    let (n, note) = &failed[0];
    assert_eq!(*n, 5);
    assert!(note.contains("combos 6/6") && note.contains("display mismatches 0"), "{note}");
    assert!(note.contains("(3,4) = -g0*g*H1") && note.contains("(4,3) = g0*g*H1"), "{note}");
    assert!(note.contains("vanishes on H1 = 0: true"), "{note}");
}
