//! The frame at the point of maximal unipotent monodromy: mirror map,
//! q-expansions of t0..t6 by period matching and by the R_1 flow, and the
//! independent Wronskian Yukawa.

use bcov_fields::{field, FieldLabel, YukawaOT, YukawaVariant};
use bcov_liealg::{linsolve, QMat};
use bcov_numeric::{int, LaurentSeries as L, LogSeries, QSeries, Rational};
use bcov_polyring::OTElement;
use num_traits::{One, Zero};

use crate::config::MirrorConfig;
use crate::frobenius::{PeriodFrame, PicardFuchs};
use crate::pipeline::{self, BasisChange, LocalFrame, Normalization};
use crate::MirrorError;

/// Extra internal precision so the reported order is fully determined.
const PAD: usize = 4;

#[derive(Clone, Debug)]
pub struct SpecialCoordinates {
    /// `t = y1 / y0`, log-degree 1 in log z.
    pub t: LogSeries,
    /// `q(z) = z exp(A_1 / A_0)`.
    pub q_of_z: QSeries,
    pub z_of_q: QSeries,
}

pub fn mirror_map(frame: &PeriodFrame) -> Result<SpecialCoordinates, MirrorError> {
    let y0 = frame.y0();
    let y0_inv = y0.inverse().map_err(MirrorError::series("y0"))?;
    let t = LogSeries::new(frame.y[1].parts().iter().map(|p| p.mul(&y0_inv)).collect())
        .map_err(MirrorError::series("t"))?;
    let w = frame.a[1].mul(&y0_inv);
    let q_of_z = w.exp().map_err(MirrorError::series("exp"))?.shift_up(1).truncate(frame.order);
    let z_of_q = q_of_z.reverse().map_err(|_| MirrorError::Reversion)?;
    Ok(SpecialCoordinates { t, q_of_z, z_of_q })
}

/// Seven q-series `t_0(q)..t_6(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TCoordinates {
    pub t: [QSeries; 7],
}

impl TCoordinates {
    pub fn order(&self) -> usize {
        self.t.iter().map(QSeries::order).min().unwrap()
    }

    pub fn truncate(&self, n: usize) -> Self {
        TCoordinates { t: std::array::from_fn(|i| self.t[i].truncate(n)) }
    }

    pub fn disc(&self) -> QSeries {
        self.t[4].sub(&self.t[0].pow(5))
    }

    pub fn initial(&self) -> [Rational; 7] {
        std::array::from_fn(|i| self.t[i].coeff(0).clone())
    }

    pub fn eval(&self, e: &OTElement) -> Result<QSeries, MirrorError> {
        e.evaluate_series(&self.t).map_err(|x| MirrorError::Eval(x.to_string()))
    }
}

/// Everything computed on the MUM side for one configuration.
#[derive(Clone, Debug)]
pub struct MumData {
    pub order: usize,
    pub frame: PeriodFrame,
    pub special: SpecialCoordinates,
    pub norm: Normalization,
    pub basis: BasisChange,
    pub tc: TCoordinates,
    pub pf: PicardFuchs,
}

fn lq(s: &QSeries) -> L {
    L::from_qseries(s)
}

fn to_q(s: &L, ctx: &'static str) -> Result<QSeries, MirrorError> {
    s.to_qseries().map_err(MirrorError::series(ctx))
}

pub fn normalization(cfg: &MirrorConfig) -> Result<Normalization, MirrorError> {
    match &cfg.kappa {
        Some(k) => Ok(Normalization::new(cfg.c.clone(), k.clone())),
        None => Normalization::from_policy(cfg.c.clone()),
    }
}

/// Route (a): period matching.
pub fn compute(cfg: &MirrorConfig) -> Result<MumData, MirrorError> {
    let n = cfg.order;
    let work = n + PAD;
    let pf = cfg.operator.clone();
    if !pf.yukawa_is_closed_form() {
        return Err(MirrorError::Operator("Yukawa is not C0 / leading(z) for this operator".into()));
    }
    let frame = pf.frobenius(work)?;
    let special = mirror_map(&frame)?;
    let norm = normalization(cfg)?;
    let zq = &special.z_of_q;
    let y0q = frame.y0().compose(zq).map_err(MirrorError::series("y0(q)"))?;
    // v = theta_q z / z = 1 + theta(u) / u with z = q u.
    let u = zq.shift_down(1).map_err(MirrorError::series("z/q"))?;
    let v = QSeries::one(u.order()).add(&u.theta().div(&u).map_err(MirrorError::series("v"))?);
    let v_l = lq(&v);
    let v_inv = v_l.inverse().map_err(MirrorError::series("v"))?;
    let theta_z = move |f: &L| f.theta().mul(&v_inv);
    let c_z = closed_form_yukawa(&pf, cfg.classical_yukawa, &lq(zq))?;
    let local = LocalFrame { z: lq(zq), y0: lq(&y0q), v: v_l, theta_z: &theta_z, c_z };
    let basis = pipeline::run(&pf, &local, &norm, cfg.z_scale, cfg.t0_exponent)?;
    let mut t: Vec<QSeries> = Vec::new();
    for s in &basis.t {
        t.push(to_q(s, "t_i")?);
    }
    let ord = t.iter().map(QSeries::order).min().unwrap();
    if ord < n {
        return Err(MirrorError::Precision { wanted: n, got: ord });
    }
    let tc = TCoordinates { t: std::array::from_fn(|i| t[i].truncate(n)) };
    Ok(MumData { order: n, frame, special, norm, basis, tc, pf })
}

/// `C(z) = C0 / leading(z)` in a local coordinate.
pub fn closed_form_yukawa(pf: &PicardFuchs, c0: i64, z: &L) -> Result<L, MirrorError> {
    let lead = pf.leading();
    let mut acc = L::constant(lead[0].clone(), z.precision() + 64);
    let mut zp = z.clone();
    for c in &lead[1..] {
        acc = acc.add(&zp.scale(c));
        zp = zp.mul(z);
    }
    Ok(acc.inverse().map_err(MirrorError::series("leading(z)"))?.scale(&int(c0)))
}

/// Yukawa in z from the Wronskian relation `theta log C = p_3 / 2`,
/// integrated as a series.
pub fn wronskian_yukawa_z(pf: &PicardFuchs, c0: i64, order: usize) -> Result<QSeries, MirrorError> {
    let p = pf.reduction(&QSeries::var(order));
    let half_p3 = p[3].scale(&bcov_numeric::rat(1, 2));
    if !half_p3.coeff(0).is_zero() {
        return Err(MirrorError::Operator("p_3 does not vanish at z = 0".into()));
    }
    let mut c: Vec<Rational> = vec![Rational::zero(); order + 1];
    for (m, x) in c.iter_mut().enumerate().skip(1) {
        *x = half_p3.coeff(m) / int(m as i64);
    }
    let log_c = QSeries::new(c, order);
    Ok(log_c.exp().map_err(MirrorError::series("exp"))?.scale(&int(c0)))
}

/// The A-model Yukawa through the mirror map:
/// `C(z(q)) / y0(q)^2 * (theta_q log z)^3`.
pub fn wronskian_yukawa_q(data: &MumData, c0: i64) -> Result<QSeries, MirrorError> {
    let n = data.order + PAD;
    let cz = wronskian_yukawa_z(&data.pf, c0, n)?;
    let zq = &data.special.z_of_q;
    let czq = cz.compose(zq).map_err(MirrorError::series("C(z(q))"))?;
    let y0q = data.frame.y0().compose(zq).map_err(MirrorError::series("y0(q)"))?;
    let u = zq.shift_down(1).map_err(MirrorError::series("z/q"))?;
    let thlog = QSeries::one(u.order()).add(&u.theta().div(&u).map_err(MirrorError::series("v"))?);
    let y = czq.mul(&thlog.pow(3)).div(&y0q.mul(&y0q)).map_err(MirrorError::series("y0^2"))?;
    Ok(y.truncate(data.order))
}

/// `Y_111` of the algebraic ring evaluated on the t_i(q).
pub fn yukawa_q(tc: &TCoordinates, variant: YukawaVariant) -> Result<QSeries, MirrorError> {
    tc.eval(&YukawaOT::new(variant).value)
}

/// Route (b): integrate `kappa theta_q t_i = R_1(t_i)` from the q^0 data.
/// At the resonant order the normalization `t4 = lin4 q + ...` closes the
/// system.
pub fn flow_tcoords(t_init: &[Rational; 7], kappa: &Rational, lin4: &Rational, order: usize) -> Result<TCoordinates, MirrorError> {
    let r1 = field(FieldLabel::R1);
    let jac = QMat::from_fn(7, 7, |i, j| {
        r1.components[i].partial(j).eval(t_init).expect("t5 and disc are nonzero at q = 0")
    });
    let mut t: Vec<Vec<Rational>> = t_init.iter().map(|c| vec![c.clone()]).collect();
    for n in 1..=order {
        let cur: [QSeries; 7] = std::array::from_fn(|i| QSeries::new(t[i].clone(), n));
        let b: Vec<Rational> = (0..7)
            .map(|i| {
                r1.components[i]
                    .evaluate_series(&cur)
                    .map(|s| s.coeff(n).clone())
                    .map_err(|e| MirrorError::Eval(e.to_string()))
            })
            .collect::<Result<_, _>>()?;
        let kn = kappa * int(n as i64);
        let mut a = QMat::from_fn(7, 7, |i, j| if i == j { &kn - jac.get(i, j) } else { -jac.get(i, j).clone() });
        let mut rhs = b;
        if bcov_liealg::linsolve::rank(&a) < 7 {
            let mut rows: Vec<Vec<Rational>> = (0..7).map(|i| (0..7).map(|j| a.get(i, j).clone()).collect()).collect();
            rows.push((0..7).map(|j| if j == 4 { Rational::one() } else { Rational::zero() }).collect());
            rhs.push(lin4.clone());
            a = QMat::from_fn(8, 7, |i, j| rows[i][j].clone());
        }
        let (x, free) = linsolve::solve(&a, &rhs).ok_or(MirrorError::FlowSingular(n))?;
        if free > 0 {
            return Err(MirrorError::FlowSingular(n));
        }
        for i in 0..7 {
            t[i].push(x[i].clone());
        }
    }
    Ok(TCoordinates { t: std::array::from_fn(|i| QSeries::new(t[i].clone(), order)) })
}

/// `kappa theta_q t_i - R_1(t_i)` on the given coordinates.
pub fn flow_residual(tc: &TCoordinates, kappa: &Rational) -> Result<Vec<QSeries>, MirrorError> {
    let r1 = field(FieldLabel::R1);
    (0..7).map(|i| Ok(tc.t[i].theta().scale(kappa).sub(&tc.eval(&r1.components[i])?))).collect()
}

/// The basis change as printed, with the (3,1) entry resolved.
pub fn expected_basis_change(tc: &TCoordinates) -> Result<[[QSeries; 4]; 4], MirrorError> {
    let n = tc.order();
    let p = |s: &str| tc.eval(&OTElement::parse(s).expect("static expression"));
    let z = QSeries::zero(n);
    let one = QSeries::one(n);
    Ok([
        [one, z.clone(), z.clone(), z.clone()],
        [p("(-3125*t0^4 - t3) / (t5)")?, p("(-625*t4 + 625*t0^5) / (t5)")?, z.clone(), z.clone()],
        [p(S31)?.scale(&bcov_numeric::rat(1, S31_DEN)), tc.t[6].clone(), tc.t[5].clone(), z.clone()],
        [tc.t[1].clone(), tc.t[2].clone(), tc.t[3].clone(), p("625*t4 - 625*t0^5")?],
    ])
}

/// Resolved (3,1) entry of the basis change, `S31 / S31_DEN`.
pub const S31: &str = "(3125*t0^4*t6 + t3*t6 - 3125*t0^3*t5 - t2*t5) / (disc)";
pub const S31_DEN: i64 = 625;

/// Entry-wise `T - expected`; all zero when the reconstruction is of the
/// claimed form.
pub fn basis_change_residual(data: &MumData) -> Result<Vec<(usize, usize, QSeries)>, MirrorError> {
    let want = expected_basis_change(&data.tc)?;
    let mut out = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            let got = to_q(&data.basis.tmat[i][j], "T")?;
            let n = got.order().min(want[i][j].order());
            out.push((i, j, got.truncate(n).sub(&want[i][j].truncate(n))));
        }
    }
    Ok(out)
}

/// Period matrix of the special basis over the Frobenius periods, columns
/// rescaled so the diagonal reads (1, 1, 1, -1). Entries are log-series in q.
#[derive(Clone, Debug)]
pub struct SpecialPeriods {
    pub pi: Vec<Vec<LogSeries>>,
    pub column_scale: [Rational; 4],
}

pub fn special_periods(data: &MumData) -> Result<SpecialPeriods, MirrorError> {
    let zq = &data.special.z_of_q;
    let order = data.order;
    // theta_z^k y_j, then z -> z(q).
    let mut th: Vec<Vec<LogSeries>> = Vec::new();
    for y in &data.frame.y {
        let mut row = vec![y.clone()];
        for _ in 0..3 {
            row.push(row.last().unwrap().theta());
        }
        th.push(row.iter().map(|s| s.substitute(zq)).collect::<Result<_, _>>().map_err(MirrorError::series("substitute"))?);
    }
    let mut raw = vec![vec![LogSeries::from_series(QSeries::zero(order)); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = LogSeries::from_series(QSeries::zero(order));
            for k in 0..4 {
                let m = &data.basis.m[i][k];
                if m.is_zero() {
                    continue;
                }
                acc = acc.add(&th[j][k].mul_series(&to_q(m, "M")?));
            }
            raw[i][j] = trunc_log(&acc, order);
        }
    }
    let const_of = |s: &LogSeries| -> Result<Rational, MirrorError> {
        let c = s.part(0).coeff(0).clone();
        if s.log_degree() != 0 || c.is_zero() || !s.part(0).sub(&QSeries::constant(c.clone(), s.order())).is_zero() {
            return Err(MirrorError::SpecialFormat("diagonal entry is not constant".into()));
        }
        Ok(c)
    };
    let d2 = const_of(&raw[2][2])?.recip();
    let d3 = -const_of(&raw[3][3])?.recip();
    let column_scale = [Rational::one(), Rational::one(), d2, d3];
    let pi = raw
        .iter()
        .map(|row| row.iter().zip(&column_scale).map(|(x, c)| x.scale(c)).collect())
        .collect();
    Ok(SpecialPeriods { pi, column_scale })
}

fn trunc_log(s: &LogSeries, n: usize) -> LogSeries {
    LogSeries::new(s.parts().iter().map(|p| p.truncate(n)).collect()).expect("same degree")
}

#[derive(Clone, Debug)]
pub struct FormatCheck {
    pub name: &'static str,
    pub passed: bool,
}

/// Shape and integrability of the special period matrix, with `t = log q`
/// as the flat coordinate: upper unitriangular pattern, `t` and `-t` in
/// their slots, row 2 = d/dt row 1 and `d/dt Pi_14 = Pi_13 - t d/dt Pi_13`.
pub fn special_format_checks(sp: &SpecialPeriods) -> Result<Vec<FormatCheck>, MirrorError> {
    let pi = &sp.pi;
    let n = pi[0][0].order().saturating_sub(1);
    let tr = |s: &LogSeries| trunc_log(s, n);
    let c = |r: Rational| LogSeries::from_series(QSeries::constant(r, n));
    let t = LogSeries::log_var(n);
    let zero = c(Rational::zero());
    let eq = |a: &LogSeries, b: &LogSeries| tr(a).sub(&tr(b)).is_zero();
    let mut out = vec![
        FormatCheck { name: "Pi11 = 1", passed: eq(&pi[0][0], &c(Rational::one())) },
        FormatCheck { name: "Pi12 = t", passed: eq(&pi[0][1], &t) },
        FormatCheck { name: "Pi22 = 1", passed: eq(&pi[1][1], &c(Rational::one())) },
        FormatCheck { name: "Pi33 = 1", passed: eq(&pi[2][2], &c(Rational::one())) },
        FormatCheck { name: "Pi34 = -t", passed: eq(&pi[2][3], &t.scale(&int(-1))) },
        FormatCheck { name: "Pi44 = -1", passed: eq(&pi[3][3], &c(int(-1))) },
    ];
    let below = (0..4).flat_map(|i| (0..i).map(move |j| (i, j))).all(|(i, j)| eq(&pi[i][j], &zero));
    out.push(FormatCheck { name: "lower part vanishes", passed: below });
    out.push(FormatCheck { name: "Pi23 = d/dt Pi13", passed: eq(&pi[1][2], &pi[0][2].theta()) });
    out.push(FormatCheck { name: "Pi24 = d/dt Pi14", passed: eq(&pi[1][3], &pi[0][3].theta()) });
    let rhs = pi[0][2].sub(&t.mul(&pi[1][2]).map_err(MirrorError::series("log product"))?);
    out.push(FormatCheck { name: "Pi24 = Pi13 - t Pi23", passed: eq(&pi[1][3], &rhs) });
    Ok(out)
}
