//! Amplitudes on the boundary frames: genus-one q-expansion, F_g on series,
//! and ambiguity fixing by the gap and constant-map conditions.

use std::collections::{BTreeMap, HashMap};

use bcov_anomaly::{GenusAmplitude, LogAmplitude, ParamId};
use bcov_liealg::{linsolve, QMat};
use bcov_numeric::rational::{bernoulli, factorial};
use bcov_numeric::{int, LaurentSeries as L, QSeries, Rational, SeriesRing};
use bcov_polyring::{OTElement, SeriesEvaluator};
use num_traits::{One, Signed, Zero};

use crate::conifold::ConifoldData;
use crate::mum::{MumData, TCoordinates};
use crate::MirrorError;

/// `theta_q log f` for a series with a q^k prefactor.
fn theta_log(f: &QSeries) -> Result<QSeries, MirrorError> {
    let l = L::from_qseries(f);
    let r = l.theta().div(&l).map_err(MirrorError::series("theta log"))?;
    r.to_qseries().map_err(MirrorError::series("theta log"))
}

/// `theta_q F_1(t(q))`.
pub fn f1_theta_q(tc: &TCoordinates, f1: &LogAmplitude) -> Result<QSeries, MirrorError> {
    let t4 = theta_log(&tc.t[4])?;
    let d = theta_log(&tc.disc())?;
    let t5 = theta_log(&tc.t[5])?;
    let n = t4.order().min(d.order()).min(t5.order());
    Ok(t4.scale(&f1.e4).add(&d.scale(&f1.edisc)).add(&t5.scale(&f1.e5)).neg().truncate(n))
}

/// The parts of `F_g` (parameter-free part under `None`) evaluated on seven
/// series.
pub fn evaluate_parts<S: SeriesRing>(amp: &GenusAmplitude, t: &[S; 7]) -> Result<BTreeMap<Option<ParamId>, S>, MirrorError> {
    let form = amp.form();
    let mut ev = SeriesEvaluator::new(t);
    let mut out = BTreeMap::new();
    let e = |x: bcov_polyring::RingError| MirrorError::Eval(x.to_string());
    out.insert(None, ev.eval(&form.constant).map_err(e)?);
    for (p, v) in &form.params {
        out.insert(Some(*p), ev.eval(v).map_err(e)?);
    }
    Ok(out)
}

/// A-model `F_g(q) = F_g^alg(t(q)) / kappa^(3g-3)`; the amplitude must be
/// free of parameters.
pub fn fg_q(amp: &GenusAmplitude, mum: &MumData) -> Result<QSeries, MirrorError> {
    if !amp.params().is_empty() {
        return Err(MirrorError::Unfixed(amp.params().len()));
    }
    let parts = evaluate_parts(amp, &mum.tc.t)?;
    let k3 = kappa_power(&mum.norm.kappa, amp.g);
    Ok(parts[&None].scale(&k3.recip()))
}

fn kappa_power(kappa: &Rational, g: u32) -> Rational {
    (0..3 * (g - 1)).fold(Rational::one(), |a, _| a * kappa)
}

/// `(-1)^g chi |B_2g B_2g-2| / (4g (2g-2) (2g-2)!)`.
pub fn constant_map(g: u32, chi: i64) -> Rational {
    let b = bernoulli(2 * g as usize);
    let num = int(chi) * (&b[2 * g as usize] * &b[2 * g as usize - 2]).abs();
    let den = int(4 * g as i64 * (2 * g as i64 - 2)) * Rational::from_integer(factorial(2 * g as u64 - 2));
    let s = if g.is_multiple_of(2) { int(1) } else { int(-1) };
    s * num / den
}

/// Leading conifold coefficient `nu^(1-g) B_2g / (2g (2g-2))`.
pub fn gap_leading(g: u32, nu: &Rational) -> Rational {
    let b = bernoulli(2 * g as usize);
    let mut x = b[2 * g as usize].clone() / int(2 * g as i64 * (2 * g as i64 - 2));
    for _ in 0..(g - 1) {
        x /= nu;
    }
    x
}

/// Coefficients of `g(t_c) = F t_c^(2g-2)` in powers of `t_c`, from
/// `e_lo` through `e_hi`.
fn in_flat_coordinate(f: &L, t_c: &L, g: u32, e_lo: i64, e_hi: i64) -> Result<Vec<Rational>, MirrorError> {
    let gser = f.mul(&t_c.pow(2 * g - 2));
    if gser.is_zero() {
        return Ok(vec![Rational::zero(); (e_hi - e_lo + 1) as usize]);
    }
    let v = gser.valuation();
    let h = gser.shift(-v).to_qseries().map_err(MirrorError::series("conifold part"))?;
    let tq = t_c.to_qseries().map_err(MirrorError::series("t_c"))?;
    let delta_of_t = tq.reverse().map_err(|_| MirrorError::Reversion)?;
    let h_t = h.compose(&delta_of_t).map_err(MirrorError::series("compose"))?;
    // delta^v = t^v w^v with delta = t w.
    let w = delta_of_t.shift_down(1).map_err(MirrorError::series("delta/t"))?;
    let wv = if v >= 0 { w.pow(v as u32) } else { w.inverse().map_err(MirrorError::series("w"))?.pow((-v) as u32) };
    let total = L::from_qseries(&h_t.mul(&wv)).shift(v);
    if total.precision() <= e_hi {
        return Err(MirrorError::Precision { wanted: e_hi as usize, got: total.precision().max(0) as usize });
    }
    Ok((e_lo..=e_hi).map(|e| total.coeff(e)).collect())
}

#[derive(Clone, Debug)]
pub struct BoundaryRow {
    pub name: String,
    /// Coefficients per parameter, in `params` order.
    pub coeffs: Vec<Rational>,
    pub target: Rational,
}

#[derive(Clone, Debug)]
pub struct FixReport {
    pub g: u32,
    pub params: Vec<ParamId>,
    pub rows: Vec<BoundaryRow>,
    pub values: Vec<Rational>,
    pub fixed: GenusAmplitude,
    /// Rows rechecked on the resolved amplitude.
    pub residuals: Vec<Rational>,
}

impl FixReport {
    pub fn free_before(&self) -> usize {
        self.params.len()
    }

    pub fn free_after(&self) -> usize {
        self.fixed.params().len()
    }
}

/// Solves the parameters of `amp` (lower genera already fixed) from the
/// conifold gap and the constant-map value at q = 0.
pub fn fix_ambiguity(amp: &GenusAmplitude, mum: &MumData, con: &ConifoldData, chi: i64) -> Result<FixReport, MirrorError> {
    let g = amp.g;
    let params = amp.params();
    let parts = evaluate_parts(amp, &con.t)?;
    let lo = parts.values().filter(|s| !s.is_zero()).map(|s| s.valuation()).min().unwrap_or(0) + 2 * g as i64 - 2;
    let lo = lo.min(0);
    let hi = 2 * g as i64 - 3;
    let mut per: BTreeMap<Option<ParamId>, Vec<Rational>> = BTreeMap::new();
    for (k, s) in &parts {
        per.insert(*k, in_flat_coordinate(s, &con.t_c, g, lo, hi)?);
    }
    let mut rows = Vec::new();
    for (i, e) in (lo..=hi).enumerate() {
        let target = if e == 0 { gap_leading(g, &con.nu) } else { Rational::zero() };
        rows.push(BoundaryRow {
            name: format!("conifold t_c^{}", e - (2 * g as i64 - 2)),
            coeffs: params.iter().map(|p| per[&Some(*p)][i].clone()).collect(),
            target: target - &per[&None][i],
        });
    }
    let t0 = mum.tc.initial();
    let form = amp.form();
    let at0 = |x: &OTElement| x.eval(&t0).ok_or_else(|| MirrorError::Eval("pole at q = 0".into()));
    let kc = kappa_power(&mum.norm.kappa, g) * constant_map(g, chi);
    rows.push(BoundaryRow {
        name: "MUM constant map".into(),
        coeffs: params.iter().map(|p| at0(&form.params[p])).collect::<Result<_, _>>()?,
        target: kc - at0(&form.constant)?,
    });
    let a = QMat::from_fn(rows.len(), params.len().max(1), |i, j| {
        if params.is_empty() { Rational::zero() } else { rows[i].coeffs[j].clone() }
    });
    let b: Vec<Rational> = rows.iter().map(|r| r.target.clone()).collect();
    let (x, free) = linsolve::solve(&a, &b).ok_or_else(|| MirrorError::Boundary {
        genus: g,
        detail: rows.iter().map(|r| format!("{}: target {}", r.name, r.target)).collect::<Vec<_>>().join("; "),
    })?;
    if free > 0 && !params.is_empty() {
        return Err(MirrorError::Underdetermined { genus: g, free });
    }
    let values: Vec<Rational> = if params.is_empty() { vec![] } else { x };
    let map: HashMap<ParamId, Rational> = params.iter().copied().zip(values.iter().cloned()).collect();
    let fixed = amp.substitute(&map);
    let residuals = rows
        .iter()
        .map(|r| {
            let lhs: Rational = r.coeffs.iter().zip(&values).map(|(c, v)| c * v).sum();
            lhs - &r.target
        })
        .collect();
    Ok(FixReport { g, params, rows, values, fixed, residuals })
}
