//! The frame at the conifold `delta = 1 - z / z_c = 0`.

use bcov_numeric::sparse::{solve_fraction_free, SparseSystem};
use bcov_numeric::{int, LaurentSeries as L, QSeries, Rational};
use num_traits::{One, Zero};

use crate::config::MirrorConfig;
use crate::frobenius::PicardFuchs;
use crate::mum::{closed_form_yukawa, normalization};
use crate::pipeline::{self, BasisChange, LocalFrame, Normalization};
use crate::MirrorError;

/// `A log(delta) + B` with polynomial (Laurent) parts.
#[derive(Clone, Debug)]
struct LogPair {
    a: L,
    b: L,
}

struct DeltaOps {
    /// `z = z_c (1 - delta)`.
    zc: Rational,
    prec: i64,
}

impl DeltaOps {
    fn one_minus_delta(&self) -> L {
        L::new(0, vec![int(1), int(-1)], self.prec)
    }

    /// `theta_z = -(1 - delta) d/ddelta`.
    fn theta(&self, f: &L) -> L {
        if f.is_zero() {
            return f.clone();
        }
        self.one_minus_delta().mul(&f.derivative()).neg().truncate(self.prec)
    }

    fn theta_pair(&self, p: &LogPair) -> LogPair {
        // theta log(delta) = -(1 - delta) / delta.
        let extra = if p.a.is_zero() { p.a.clone() } else { self.one_minus_delta().mul(&p.a).shift(-1).neg() };
        LogPair { a: self.theta(&p.a), b: self.theta(&p.b).add(&extra).truncate(self.prec) }
    }

    fn z(&self) -> L {
        self.one_minus_delta().scale(&self.zc)
    }

    fn apply(&self, pf: &PicardFuchs, p: &LogPair) -> LogPair {
        let mut th = vec![p.clone()];
        for _ in 0..pf.degree() {
            th.push(self.theta_pair(th.last().unwrap()));
        }
        let z = self.z();
        let mut zi = L::constant(Rational::one(), self.prec);
        let mut acc = LogPair { a: L::zero_to(self.prec), b: L::zero_to(self.prec) };
        for poly in &pf.terms {
            for (k, c) in poly.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let f = zi.scale(c);
                acc.a = acc.a.add(&th[k].a.mul(&f)).truncate(self.prec);
                acc.b = acc.b.add(&th[k].b.mul(&f)).truncate(self.prec);
            }
            zi = zi.mul(&z);
        }
        acc
    }
}

/// Period data at the conifold.
#[derive(Clone, Debug)]
pub struct ConifoldPeriods {
    /// Vanishing period, normalized `delta + O(delta^2)`.
    pub x_d: QSeries,
    /// Regular period `1 + O(delta^3)`.
    pub x_0: QSeries,
    /// Regular period `delta^2 + O(delta^3)`.
    pub x_2: QSeries,
    /// Dimension of the space of power-series solutions found.
    pub regular_dim: usize,
}

/// Solves for the log solution `X_D log(delta) + B` and the regular
/// solutions to degree `m`.
pub fn conifold_periods(pf: &PicardFuchs, m_out: usize) -> Result<ConifoldPeriods, MirrorError> {
    let zc = pf.conifold_z()?;
    // Unknowns run past the reported degree; the top ones are not yet
    // constrained by the truncated equations.
    let m = m_out + 2 * pf.degree();
    let ops = DeltaOps { zc, prec: m as i64 + 12 };
    let hi = m as i64 - pf.degree() as i64;
    let lo = -(pf.degree() as i64) - 2;
    let mono = |e: usize| L::monomial(Rational::one(), e as i64, ops.prec);
    let zero = L::zero_to(ops.prec);

    // Log solution: unknowns a_1..a_m, b_0..b_m; a_1 = 1.
    let na = m;
    let nb = m + 1;
    let mut cols: Vec<LogPair> = Vec::new();
    for e in 1..=m {
        cols.push(ops.apply(pf, &LogPair { a: mono(e), b: zero.clone() }));
    }
    for e in 0..=m {
        cols.push(ops.apply(pf, &LogPair { a: zero.clone(), b: mono(e) }));
    }
    let mut sys = SparseSystem::new(na + nb, 1);
    for part in 0..2 {
        for e in lo..hi {
            let mut row = Vec::new();
            for (j, c) in cols.iter().enumerate() {
                let s = if part == 0 { &c.a } else { &c.b };
                if e < s.precision() {
                    let x = s.coeff(e);
                    if !x.is_zero() {
                        row.push((j, x));
                    }
                }
            }
            if !row.is_empty() {
                sys.push_row(row, vec![Rational::zero()]);
            }
        }
    }
    sys.push_row(vec![(0, Rational::one())], vec![Rational::one()]);
    let (sol, _) = solve_fraction_free(&sys);
    if !sol.is_consistent(0) {
        return Err(MirrorError::Conifold("no log solution".into()));
    }
    let canon = sol.canonical();
    if canon.kernel.iter().any(|v| v[..m_out].iter().any(|c| !c.is_zero())) {
        return Err(MirrorError::Conifold("log coefficient not unique".into()));
    }
    let mut xd = vec![Rational::zero(); m_out + 1];
    for e in 1..=m_out {
        xd[e] = canon.particular[0][e - 1].clone();
    }

    // Regular solutions: x_0 = 1, x_1 = x_2 = 0.
    let reg: Vec<L> = (0..=m).map(|e| ops.apply(pf, &LogPair { a: zero.clone(), b: mono(e) }).b).collect();
    let mut sys = SparseSystem::new(m + 1, 1);
    for e in lo..hi {
        let row: Vec<(usize, Rational)> = reg
            .iter()
            .enumerate()
            .filter_map(|(j, s)| {
                let x = s.coeff(e);
                (!x.is_zero()).then_some((j, x))
            })
            .collect();
        if !row.is_empty() {
            sys.push_row(row, vec![Rational::zero()]);
        }
    }
    let (hom, _) = solve_fraction_free(&sys);
    let low_rank = |k: &[Vec<Rational>]| {
        let a = bcov_liealg::QMat::from_fn(k.len(), m_out + 1, |i, j| k[i][j].clone());
        bcov_liealg::linsolve::rank(&a)
    };
    let regular_dim = low_rank(&hom.canonical().kernel);
    let normalized = |lead: usize| -> Result<QSeries, MirrorError> {
        let mut sys = sys.clone();
        for j in 0..3 {
            sys.push_row(vec![(j, Rational::one())], vec![int((j == lead) as i64)]);
        }
        let (sol, _) = solve_fraction_free(&sys);
        let canon = sol.canonical();
        if !sol.is_consistent(0) || canon.kernel.iter().any(|v| v[..=m_out].iter().any(|c| !c.is_zero())) {
            return Err(MirrorError::Conifold("regular period not determined".into()));
        }
        Ok(QSeries::new(canon.particular[0][..=m_out].to_vec(), m_out))
    };
    Ok(ConifoldPeriods { x_d: QSeries::new(xd, m_out), x_0: normalized(0)?, x_2: normalized(2)?, regular_dim })
}

#[derive(Clone, Debug)]
pub struct ConifoldData {
    pub periods: ConifoldPeriods,
    pub x_0: QSeries,
    pub basis: BasisChange,
    /// t0..t6 as Laurent series in delta.
    pub t: [L; 7],
    /// Flat coordinate `t_c = (X_D / X_0) / kappa`.
    pub t_c: L,
    pub yukawa: L,
    /// `lim t_c Y`.
    pub nu: Rational,
    pub norm: Normalization,
}

/// Runs the pipeline at the conifold; `shift` replaces X_0 by
/// `X_0 + shift X_D` (the boundary conditions must not depend on it).
pub fn compute(cfg: &MirrorConfig, m: usize, shift: &Rational) -> Result<ConifoldData, MirrorError> {
    compute_with(cfg, m, shift, &Rational::zero())
}

/// As [`compute`], with `X_0 + shift X_D + shift2 X_2`.
pub fn compute_with(cfg: &MirrorConfig, m: usize, shift: &Rational, shift2: &Rational) -> Result<ConifoldData, MirrorError> {
    let pf = &cfg.operator;
    let periods = conifold_periods(pf, m)?;
    let x0 = periods.x_0.add(&periods.x_d.scale(shift)).add(&periods.x_2.scale(shift2));
    let ops = DeltaOps { zc: pf.conifold_z()?, prec: m as i64 + 1 };
    let x0l = L::from_qseries(&x0);
    let xdl = L::from_qseries(&periods.x_d);
    let td = xdl.div(&x0l).map_err(MirrorError::series("X_D/X_0"))?;
    let v = ops.theta(&td).inverse().map_err(MirrorError::series("v"))?;
    let theta_z = |f: &L| ops.theta(f);
    let z = ops.z();
    let c_z = closed_form_yukawa(pf, cfg.classical_yukawa, &z)?;
    let norm = normalization(cfg)?;
    let local = LocalFrame { z, y0: x0l, v, theta_z: &theta_z, c_z };
    let basis = pipeline::run(pf, &local, &norm, cfg.z_scale, cfg.t0_exponent)?;
    let t_c = td.scale(&norm.kappa.recip());
    let yukawa = basis.yukawa.clone();
    let nu = t_c.mul(&yukawa).coeff(0);
    let t = basis.t.clone();
    Ok(ConifoldData { periods, x_0: x0, basis, t, t_c, yukawa, nu, norm })
}
