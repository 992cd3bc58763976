//! One function per subcommand, each building a [`Report`].

use std::collections::BTreeMap;
use std::time::Instant;

use bcov_anomaly::SolveOptions;
use bcov_fields::YukawaOT;
use bcov_mirror::{amplitudes, mum, BpsTable, MumData};
use bcov_numeric::QSeries;
use serde_json::json;

use crate::artifact::{ElementArtifact, Object, SeriesArtifact};
use crate::config::{Command, Format, Module, RunConfig};
use crate::report::{Check, Report};
use crate::{arbitration, checks, tower, CliError};

pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    let mut r = Report::new(cfg, arbitration::list(cfg));
    match cfg.command {
        Command::Verify => verify(cfg, &mut r)?,
        Command::SolveFg => solve_fg(cfg, &mut r)?,
        Command::QExpand => q_expand(cfg, &mut r)?,
        Command::Gw => gw(cfg, &mut r)?,
        Command::Export => export(cfg, &mut r)?,
    }
    Ok(r)
}

fn timed<T>(r: &mut Report, key: &str, f: impl FnOnce() -> T) -> T {
    let t = Instant::now();
    let out = f();
    r.time(key, t.elapsed().as_millis());
    out
}

fn verify(cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    let v = cfg.yukawa_variant.yukawa();
    let all = cfg.module == Module::All;
    let on = |m: Module| all || cfg.module == m;
    let mut out = Vec::new();
    if on(Module::Liealg) {
        let hs = cfg.h.map(|h| vec![h]).unwrap_or_else(|| vec![1, 2, 3]);
        out.extend(timed(r, "liealg", || checks::liealg(&hs)));
    }
    if on(Module::Fields) {
        out.extend(timed(r, "fields", || checks::fields_suite(v))?);
    }
    if on(Module::Kernel) {
        out.extend(timed(r, "kernel", || checks::kernel(cfg.kernel_max_e0)));
    }
    if on(Module::Special) {
        out.extend(timed(r, "special", checks::special));
    }
    if on(Module::Anomaly) {
        out.extend(timed(r, "anomaly", || checks::anomaly(&cfg.mirror))?);
    }
    if on(Module::Mirror) {
        out.extend(timed(r, "mirror", || checks::mirror(&cfg.mirror, v))?);
    }
    let failed = out.iter().filter(|c| !c.passed).count();
    r.result("summary", format!("{} checks, {} passed, {} failed", out.len(), out.len() - failed, failed));
    out.into_iter().for_each(|c| r.check(c));
    Ok(())
}

fn solve_options(cfg: &RunConfig) -> SolveOptions {
    SolveOptions { cross_check: cfg.cross_check, ..Default::default() }
}

fn put_series(r: &mut Report, fmt: Format, key: &str, s: &QSeries, var: char) {
    let a = SeriesArtifact::new(s, var);
    match fmt {
        Format::Text => r.result(key, a.text),
        Format::Json => r.result(key, a),
    }
}

fn put_table(r: &mut Report, fmt: Format, t: &BpsTable, max_g: u32) {
    for g in 0..=max_g {
        let row = t.row(g);
        let key = format!("gv.g{g}");
        match fmt {
            Format::Text => {
                let s: Vec<String> = row.iter().map(|(d, n)| format!("{d}:{n}")).collect();
                r.result(key, s.join(" "));
            }
            Format::Json => {
                let m: BTreeMap<u32, String> = row.iter().map(|(d, n)| (*d, n.to_string())).collect();
                r.result(key, m);
            }
        }
    }
}

/// BPS table as checks: a failed extraction becomes a FAIL line, not an error.
fn table_checks(
    cfg: &RunConfig,
    data: &MumData,
    tw: Option<&tower::Tower>,
    max_g: u32,
    r: &mut Report,
) -> Result<(), CliError> {
    let d = cfg.bps_degree();
    match tower::bps_table(&cfg.mirror, data, cfg.yukawa_variant.yukawa(), tw, max_g, d) {
        Ok(t) => {
            r.check(Check::new("gv.integral", true).with_detail(format!("genus 0..={max_g}, degree 1..={d}")));
            if max_g >= 1 {
                let low: Vec<_> = t.row(1).into_iter().filter(|(d, _)| *d <= 2).collect();
                let zero = low.iter().all(|(_, n)| n == &0.into());
                r.check(Check::new("gv.g1.low_degrees_vanish", zero));
            }
            put_table(r, cfg.format, &t, max_g);
        }
        Err(CliError::Math(e)) => r.check(Check::new("gv.integral", false).with_residual(e)),
        Err(e) => return Err(e),
    }
    Ok(())
}

fn solve_fg(cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    let f1 = checks::f1_of(&cfg.mirror);
    let fix = cfg.fix_ambiguity || cfg.bps;
    let data = if fix { Some(timed(r, "mum", || tower::mum_data(&cfg.mirror))?) } else { None };
    let tw = timed(r, "solve", || {
        tower::solve(&f1, cfg.genus, &solve_options(cfg), data.as_ref().map(|d| (&cfg.mirror, d)))
    })?;
    for (i, step) in tw.steps.iter().enumerate() {
        let g = i as u32 + 2;
        let s = &step.solution;
        let p = format!("F{g}");
        let predicted = bcov_anomaly::predicted_kernel(g).len();
        r.check(
            Check::new(format!("{p}.kernel"), s.kernel_matches_prediction)
                .with_detail(format!("dimension {}, predicted {predicted}", s.kernel_monomials.len())),
        );
        r.check(Check::new(format!("{p}.support"), s.support_ok));
        r.check(Check::new(format!("{p}.residual"), s.residual_zero));
        if let Some(c) = s.cross_check {
            r.check(Check::new(format!("{p}.modular_cross_check"), c));
        }
        let (d5, d4, dd) = s.amplitude.den_exps();
        r.result(format!("{p}.denominator"), format!("t5^{d5} t4^{d4} (t4 - t0^5)^{dd}"));
        r.result(format!("{p}.unknowns"), s.unknowns);
        r.result(
            format!("{p}.elimination"),
            format!("{} rows, {} columns, {} nonzeros, rank {}, max {} bits", s.stats.rows, s.stats.cols, s.stats.nnz, s.stats.rank, s.stats.max_bits),
        );
        let kernel: Vec<String> = s.kernel_monomials.iter().map(|m| m.to_string()).collect();
        r.result(format!("{p}.kernel_monomials"), kernel);
        r.result(format!("{p}.parameters"), s.amplitude.ambiguity.len());
        r.result(format!("{p}.Q"), s.amplitude.q().to_string());
        r.time(&format!("{p}.solve"), s.millis);
        if let Some(f) = &step.fix {
            r.check(
                Check::new(format!("{p}.boundary"), f.residuals.iter().all(|x| x == &bcov_numeric::int(0)) && f.free_after() == 0)
                    .with_detail(format!("{} parameters before, {} after", f.free_before(), f.free_after())),
            );
            let rows: Vec<String> = f.rows.iter().map(|b| format!("{} = {}", b.name, b.target)).collect();
            r.result(format!("{p}.boundary_conditions"), rows);
            let vals: Vec<String> = f.params.iter().zip(&f.values).map(|(k, v)| format!("{k} = {v}")).collect();
            r.result(format!("{p}.fixed_parameters"), vals);
            r.result(format!("{p}.Q_fixed"), f.fixed.q().to_string());
            if let Some(d) = &data {
                let fq = tower::fg_series(&tw, g, d)?;
                let want = amplitudes::constant_map(g, cfg.mirror.chi);
                r.check(Check::new(format!("{p}.constant_map"), fq.coeff(0) == &want).with_detail(format!("F_{g}(0) = {}", fq.coeff(0))));
                put_series(r, cfg.format, &format!("{p}(q)"), &fq, 'q');
            }
        }
    }
    if let Some(m) = tw.conifold_order {
        r.result("conifold_order", m);
    }
    if cfg.bps {
        let d = data.as_ref().expect("bps implies fixing");
        let t = Instant::now();
        table_checks(cfg, d, Some(&tw), cfg.genus, r)?;
        r.time("gv", t.elapsed().as_millis());
    }
    Ok(())
}

/// Series for one object; `Fg` solves and fixes the tower first.
fn object_series(cfg: &RunConfig, o: Object, data: &MumData) -> Result<Vec<(String, QSeries, char)>, CliError> {
    let v = cfg.yukawa_variant.yukawa();
    let one = |k: &str, s: QSeries, c: char| Ok(vec![(k.to_string(), s, c)]);
    match o {
        Object::Y0 => one("y0", data.frame.y0().truncate(data.order), 'z'),
        Object::Z => one("z", data.special.z_of_q.truncate(data.order), 'q'),
        Object::Q => one("q", data.special.q_of_z.truncate(data.order), 'z'),
        Object::T => Ok((0..7).map(|i| (format!("t{i}"), data.tc.t[i].clone(), 'q')).collect()),
        Object::Ti(i) => one(&format!("t{i}"), data.tc.t[i].clone(), 'q'),
        Object::Disc => one("disc", data.tc.disc(), 'q'),
        Object::Yukawa => one("yukawa", mum::yukawa_q(&data.tc, v)?, 'q'),
        Object::YukawaWronskian => one("yukawa-wronskian", mum::wronskian_yukawa_q(data, cfg.mirror.classical_yukawa)?, 'q'),
        Object::F1 => one("F1", tower::f1_series(&checks::f1_of(&cfg.mirror), data)?, 'q'),
        Object::Fg => {
            if cfg.genus < 2 {
                return Err(CliError::Usage("--object Fg needs --genus >= 2; use --object F1 for genus one".into()));
            }
            let tw = tower::solve(&checks::f1_of(&cfg.mirror), cfg.genus, &solve_options(cfg), Some((&cfg.mirror, data)))?;
            one(&format!("F{}", cfg.genus), tower::fg_series(&tw, cfg.genus, data)?, 'q')
        }
        Object::Y111 => Ok(vec![]),
    }
}

fn q_expand(cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    let o = Object::parse(cfg.object.as_deref().unwrap_or_default())?;
    if o == Object::Y111 {
        r.result("Y111", YukawaOT::new(cfg.yukawa_variant.yukawa()).value.to_string());
        return Ok(());
    }
    let data = timed(r, "mum", || tower::mum_data(&cfg.mirror))?;
    for (k, s, c) in timed(r, "series", || object_series(cfg, o, &data))? {
        put_series(r, cfg.format, &k, &s, c);
    }
    Ok(())
}

fn gw(cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    let data = timed(r, "mum", || tower::mum_data(&cfg.mirror))?;
    let tw = if cfg.genus >= 2 {
        let f1 = checks::f1_of(&cfg.mirror);
        Some(timed(r, "solve", || tower::solve(&f1, cfg.genus, &solve_options(cfg), Some((&cfg.mirror, &data))))?)
    } else {
        None
    };
    let t = Instant::now();
    table_checks(cfg, &data, tw.as_ref(), cfg.genus, r)?;
    r.time("gv", t.elapsed().as_millis());
    Ok(())
}

const EXPORT_DEFAULT: [Object; 9] = [
    Object::Y111,
    Object::Y0,
    Object::Z,
    Object::Q,
    Object::T,
    Object::Disc,
    Object::Yukawa,
    Object::YukawaWronskian,
    Object::F1,
];

fn export(cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    let objects: Vec<Object> = match &cfg.object {
        Some(o) => vec![Object::parse(o)?],
        None => EXPORT_DEFAULT.to_vec(),
    };
    let data = if objects.iter().any(|o| *o != Object::Y111) { Some(tower::mum_data(&cfg.mirror)?) } else { None };
    for o in objects {
        if o == Object::Y111 {
            let e = YukawaOT::new(cfg.yukawa_variant.yukawa()).value;
            let a = ElementArtifact::new(&e);
            let ok = a.to_element().map(|x| x == e).unwrap_or(false);
            r.check(Check::new("export.roundtrip[Y111]", ok));
            match cfg.format {
                Format::Text => r.result("Y111", a.text),
                Format::Json => r.result("Y111", json!({ "ot_element": a })),
            }
            continue;
        }
        for (k, s, c) in object_series(cfg, o, data.as_ref().expect("computed above"))? {
            let a = SeriesArtifact::new(&s, c);
            let ok = a.to_series().map(|x| x == s).unwrap_or(false);
            r.check(Check::new(format!("export.roundtrip[{k}]"), ok));
            put_series(r, cfg.format, &k, &s, c);
        }
    }
    Ok(())
}
