//! Sequential genus tower: solve, fix against the boundary data, extract BPS numbers.

use bcov_anomaly::{rhs_genus, solve_genus, Amplitude, GenusAmplitude, GenusSolution, LogAmplitude, SolveOptions};
use bcov_fields::YukawaVariant;
use bcov_mirror::amplitudes::{self, FixReport};
use bcov_mirror::{conifold, gv, mum, BpsTable, MirrorConfig, MirrorError, MumData};
use bcov_numeric::{int, QSeries};

use crate::CliError;

/// Largest conifold order tried before giving up.
const MAX_CONIFOLD_ORDER: usize = 60;

pub struct GenusStep {
    pub solution: GenusSolution,
    pub fix: Option<FixReport>,
}

pub struct Tower {
    pub f1: LogAmplitude,
    pub steps: Vec<GenusStep>,
    pub conifold_order: Option<usize>,
}

impl Tower {
    /// Amplitude of genus `g >= 2`, fixed when available.
    pub fn amplitude(&self, g: u32) -> &GenusAmplitude {
        let s = &self.steps[(g - 2) as usize];
        s.fix.as_ref().map(|f| &f.fixed).unwrap_or(&s.solution.amplitude)
    }
}

/// Solves genus 2 through `max_g`. With `fix`, each genus is fixed before the
/// next is solved; otherwise free parameters propagate.
pub fn solve(
    f1: &LogAmplitude,
    max_g: u32,
    opts: &SolveOptions,
    fix: Option<(&MirrorConfig, &MumData)>,
) -> Result<Tower, CliError> {
    let mut t = Tower { f1: f1.clone(), steps: Vec::new(), conifold_order: None };
    let mut amps = vec![Amplitude::Genus1(f1.clone())];
    let mut m = 6 * max_g as usize + 4;
    let mut con = None;
    for g in 2..=max_g {
        let solution = solve_genus(g, &rhs_genus(g, &amps)?, opts)?;
        let fixed = match fix {
            None => None,
            Some((cfg, data)) => Some(loop {
                let c = match &con {
                    Some(c) => c,
                    None => con.insert(conifold::compute(cfg, m, &int(0))?),
                };
                match amplitudes::fix_ambiguity(&solution.amplitude, data, c, cfg.chi) {
                    Err(MirrorError::Precision { .. }) if m + 6 <= MAX_CONIFOLD_ORDER => {
                        m += 6;
                        con = None;
                    }
                    r => break r?,
                }
            }),
        };
        amps.push(Amplitude::Higher(fixed.as_ref().map(|f| f.fixed.clone()).unwrap_or_else(|| solution.amplitude.clone())));
        t.steps.push(GenusStep { solution, fix: fixed });
    }
    if con.is_some() {
        t.conifold_order = Some(m);
    }
    Ok(t)
}

/// `F_g(q)` for g >= 2 in A-model normalization.
pub fn fg_series(t: &Tower, g: u32, data: &MumData) -> Result<QSeries, CliError> {
    Ok(amplitudes::fg_q(t.amplitude(g), data)?)
}

/// theta_q F_1 with the constant term.
pub fn f1_series(f1: &LogAmplitude, data: &MumData) -> Result<QSeries, CliError> {
    Ok(amplitudes::f1_theta_q(&data.tc, f1)?)
}

/// BPS table through genus `max_g`, degrees `1..=max_d`.
pub fn bps_table(
    cfg: &MirrorConfig,
    data: &MumData,
    variant: YukawaVariant,
    tower: Option<&Tower>,
    max_g: u32,
    max_d: u32,
) -> Result<BpsTable, CliError> {
    let mut table = BpsTable::default();
    let y = mum::yukawa_q(&data.tc, variant)?;
    let r = gv::extract(&y, 0, 3, max_d, &table)?;
    gv::insert_row(&mut table, 0, &r);
    if max_g >= 1 {
        let f1 = tower.map(|t| t.f1.clone()).unwrap_or_else(|| crate::checks::f1_of(cfg));
        let th = f1_series(&f1, data)?;
        let th = th.sub(&QSeries::constant(th.coeff(0).clone(), th.order()));
        let r = gv::extract(&th, 1, 1, max_d, &table)?;
        gv::insert_row(&mut table, 1, &r);
    }
    for g in 2..=max_g {
        let t = tower.ok_or_else(|| CliError::Usage("higher-genus table needs a solved tower".into()))?;
        let f = fg_series(t, g, data)?;
        let r = gv::extract(&f, g, 0, max_d, &table)?;
        gv::insert_row(&mut table, g, &r);
    }
    Ok(table)
}

/// MUM data at the configured order.
pub fn mum_data(cfg: &MirrorConfig) -> Result<MumData, CliError> {
    Ok(mum::compute(cfg)?)
}
