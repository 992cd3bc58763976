//! Verification suites, one function per module.

use bcov_anomaly::{f1_checks, verify_master, LogAmplitude, SolveOptions};
use bcov_fields::{
    calibrate_sign, canonical_frame, check_pairing, fields, flatness_report, gm_matrix, joint_kernel_test,
    verify_bracket_table, FieldVariant, Frame, YukawaOT, YukawaVariant,
};
use bcov_liealg::{canonical_basis, closure_report, is_in_lie, BlockShape};
use bcov_mirror::{gv, mum, MirrorConfig};
use bcov_numeric::{int, QSeries, Rational};
use bcov_special::{canonical_combos, check_pairing_b, compare, m_display, m_matrix, set_zero, G0Combo, Sym};

use crate::report::Check;
use crate::CliError;

pub fn liealg(hs: &[usize]) -> Vec<Check> {
    let mut out = Vec::new();
    for &h in hs {
        let basis = canonical_basis(h);
        let want = (3 * h * h + 5 * h + 4) / 2;
        out.push(Check::new(format!("liealg.h{h}.dim"), basis.len() == want).with_detail(format!("{} elements, expected {want}", basis.len())));
        let s = BlockShape::new(h);
        out.push(Check::new(format!("liealg.h{h}.membership"), basis.iter().all(|e| is_in_lie(&e.mat, s))));
        let r = closure_report(h);
        let bad = r.entries.iter().filter(|e| !e.residual_zero).count();
        let mut c = Check::new(format!("liealg.h{h}.closure"), r.passed()).with_detail(format!("{} brackets", r.entries.len()));
        if bad > 0 {
            c = c.with_residual(format!("{bad} brackets outside the span"));
        }
        out.push(c);
    }
    out
}

fn first_nonzero<T: std::fmt::Display>(it: impl IntoIterator<Item = (usize, usize, T)>) -> Option<String> {
    it.into_iter().next().map(|(i, j, v)| format!("({},{}) = {v}", i + 1, j + 1))
}

/// Number of passing bracket-table entries under a Yukawa variant.
pub fn bracket_passes(frame: &Frame, v: YukawaVariant) -> usize {
    verify_bracket_table(frame, &YukawaOT::new(v)).iter().filter(|e| e.passed()).count()
}

pub fn fields_suite(v: YukawaVariant) -> Result<Vec<Check>, CliError> {
    let frame = canonical_frame();
    let yuk = YukawaOT::new(v);
    let mut out = Vec::new();
    for e in verify_bracket_table(&frame, &yuk) {
        let mut c = Check::new(format!("fields.bracket[{},{}]", e.x.name(), e.y.name()), e.passed());
        if let Some((l, d)) = e.residual().into_iter().next() {
            c = c.with_residual(format!("{}: {d}", l.name()));
        }
        out.push(c);
    }
    let disc = bracket_passes(&frame, YukawaVariant::Disc);
    let printed = bracket_passes(&frame, YukawaVariant::Printed);
    out.push(
        Check::new("fields.bracket.arbitration", (disc == 49) != (printed == 49))
            .with_detail(format!("disc {disc}/49, printed {printed}/49")),
    );
    let signs = Frame::new(&fields(FieldVariant::Printed)).map_err(|e| CliError::Math(e.to_string()))?;
    let printed_signs = verify_bracket_table(&signs, &yuk).iter().filter(|e| e.passed()).count();
    out.push(
        Check::new("fields.bracket.sign_arbitration", printed_signs < 49)
            .with_detail(format!("printed signs of R_k1, R_t1: {printed_signs}/49")),
    );
    let s = calibrate_sign(&frame, &yuk);
    match s {
        Ok(s) => {
            out.push(Check::new("fields.flatness.sign", s == -1).with_detail(format!("s = {s}")));
            for e in flatness_report(&frame, &yuk, s).map_err(|e| CliError::Math(e.to_string()))? {
                let mut c = Check::new(format!("fields.flatness[{},{}]", e.x.name(), e.y.name()), e.passed());
                if let Some(r) = first_nonzero(e.residual.nonzero()) {
                    c = c.with_residual(r);
                }
                out.push(c);
            }
        }
        Err(e) => out.push(Check::new("fields.flatness.sign", false).with_residual(e.to_string())),
    }
    for f in frame.fields.iter() {
        let a = gm_matrix(f, &yuk).map_err(|e| CliError::Math(e.to_string()))?;
        let r = check_pairing(&a);
        let mut c = Check::new(format!("fields.pairing[{}]", f.label.unwrap().name()), r.is_zero());
        if let Some(x) = first_nonzero(r.nonzero()) {
            c = c.with_residual(x);
        }
        out.push(c);
    }
    Ok(out)
}

pub fn kernel(max_e0: i64) -> Vec<Check> {
    let rep = joint_kernel_test(max_e0);
    let mut out: Vec<Check> = rep
        .levels
        .iter()
        .map(|l| {
            Check::new(format!("kernel.e0={}", l.e0), l.passed())
                .with_detail(format!("{} monomials, kernel {}, t0/t4 monomials {}", l.monomials, l.kernel_dim, l.expected_dim))
        })
        .collect();
    out.push(
        Check::new("kernel.total", rep.passed())
            .with_detail(format!("{} monomials, kernel dimension {}", rep.total_monomials, rep.kernel_dim())),
    );
    out
}

pub fn special() -> Vec<Check> {
    let mut out = Vec::new();
    for x in [Sym::T11, Sym::T1, Sym::T, Sym::L1, Sym::G0, Sym::G] {
        let Some(d) = m_display(x) else { continue };
        let mm = compare(&m_matrix(x), &d);
        let mut c = Check::new(format!("special.m_display[{}]", x.name()), mm.is_empty());
        if let Some(e) = mm.first() {
            c = c.with_residual(format!("({},{}) computed {} displayed {}", e.row, e.col, e.computed, e.displayed));
        }
        out.push(c);
    }
    for c in canonical_combos(G0Combo::Weighted) {
        let mut ch = Check::new(format!("special.combo[{}]", c.kind.name()), c.matches_basis());
        if c.constant().is_none() {
            ch = ch.with_residual("not constant");
        }
        out.push(ch);
    }
    let r = check_pairing_b();
    let mut nz = r.nonzero();
    nz.sort_by_key(|x| (x.0, x.1));
    let mut c = Check::new("special.pairing_B", nz.is_empty());
    if !nz.is_empty() {
        let s: Vec<String> = nz.iter().map(|(i, j, v)| format!("({},{}) = {v}", i + 1, j + 1)).collect();
        c = c.with_residual(s.join(", ")).with_detail("B Phi B^T - Phi vanishes only on H1 = 0");
    }
    out.push(c);
    out.push(Check::new("special.pairing_B[H1=0]", set_zero(&r, Sym::H1).nonzero().is_empty()));
    out
}

/// The genus-one normalization in use.
pub fn f1_of(m: &MirrorConfig) -> LogAmplitude {
    LogAmplitude::printed().scaled(&int(m.genus1_normalization))
}

pub fn anomaly(m: &MirrorConfig) -> Result<Vec<Check>, CliError> {
    let f1 = f1_of(m);
    let chi_b = m.chi_b();
    let mut out = Vec::new();
    for c in f1_checks(&f1, &chi_b) {
        out.push(
            Check::new(format!("anomaly.f1[{}]", c.label.name()), c.passed())
                .with_detail(format!("value {}, required {}", c.value, c.claimed)),
        );
    }
    let print = f1_checks(&LogAmplitude::printed(), &chi_b);
    let bad: Vec<String> = print.iter().filter(|c| !c.passed()).map(|c| format!("{} = {} (required {})", c.label.name(), c.value, c.claimed)).collect();
    out.push(Check::new("anomaly.f1.printed_exponents_rejected", !bad.is_empty()).with_detail(bad.join("; ")));
    let sols = bcov_anomaly::solve_chain(&f1, 2, &SolveOptions { cross_check: true, ..Default::default() })?;
    let s = &sols[0];
    out.push(
        Check::new("anomaly.g2.kernel", s.kernel_matches_prediction && s.amplitude.ambiguity.len() == 3)
            .with_detail(format!("{} unknowns, kernel {}", s.unknowns, s.amplitude.ambiguity.len())),
    );
    out.push(Check::new("anomaly.g2.support", s.support_ok));
    out.push(Check::new("anomaly.g2.residual", s.residual_zero));
    out.push(Check::new("anomaly.g2.modular_cross_check", s.cross_check == Some(true)));
    for e in verify_master(&f1, std::slice::from_ref(&s.amplitude), &chi_b)? {
        let mut c = Check::new(format!("anomaly.master.g{}[{}]", e.genus, e.equation.label().name()), e.passed());
        if !e.passed() {
            c = c.with_residual(e.residual.constant.to_string());
        }
        out.push(c);
    }
    Ok(out)
}

fn coeffs_match(s: &QSeries, want: &[i64]) -> bool {
    want.iter().enumerate().all(|(i, w)| s.coeff(i) == &int(*w))
}

pub fn mirror(m: &MirrorConfig, v: YukawaVariant) -> Result<Vec<Check>, CliError> {
    let data = mum::compute(m)?;
    let mut out = vec![
        Check::new("mirror.y0", coeffs_match(data.frame.y0(), &[1, 120, 113400])),
        Check::new("mirror.z_of_q", coeffs_match(&data.special.z_of_q, &[0, 1, -770])),
    ];
    let y = mum::yukawa_q(&data.tc, v)?;
    let w = mum::wronskian_yukawa_q(&data, m.classical_yukawa)?;
    out.push(Check::new("mirror.yukawa_q", coeffs_match(&y, &[5, 2875, 4876875])).with_detail(format!("{}", y.truncate(3))));
    let mut c = Check::new("mirror.yukawa_wronskian", y == w);
    if y != w {
        c = c.with_residual(y.sub(&w).truncate(3).to_text());
    }
    out.push(c);
    let flow = mum::flow_tcoords(&data.tc.initial(), &data.norm.kappa, &Rational::from_integer(1.into()), data.order)?;
    out.push(Check::new("mirror.flow_route", flow == data.tc));
    let bres = mum::basis_change_residual(&data)?;
    out.push(Check::new("mirror.basis_change", bres.iter().all(|(_, _, r)| r.is_zero())));
    let sp = mum::special_periods(&data)?;
    for f in mum::special_format_checks(&sp)? {
        out.push(Check::new(format!("mirror.special[{}]", f.name), f.passed));
    }
    let d = (m.order as u32).min(5);
    match gv::extract(&y, 0, 3, d, &Default::default()) {
        Ok(row) => {
            let s: Vec<String> = row.iter().map(|(_, n)| n.to_string()).collect();
            out.push(Check::new("mirror.genus0_integral", true).with_detail(s.join(", ")));
        }
        Err(e) => out.push(Check::new("mirror.genus0_integral", false).with_residual(e.to_string())),
    }
    Ok(out)
}
