//! Picard-Fuchs operators `L = sum_i z^i P_i(theta)` and their Frobenius
//! solutions at a point of maximal unipotent monodromy.

use bcov_numeric::{int, LogSeries, QSeries, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::MirrorError;

/// Coefficients of `P_i` in ascending powers of theta.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicardFuchs {
    #[serde(with = "crate::config::rat_vecs")]
    pub terms: Vec<Vec<Rational>>,
}

impl PicardFuchs {
    /// `theta^4 - 5z(5theta+1)(5theta+2)(5theta+3)(5theta+4)`.
    pub fn quintic() -> Self {
        let p0 = [0, 0, 0, 0, 1].map(int).to_vec();
        let p1 = [-120, -1250, -4375, -6250, -3125].map(int).to_vec();
        PicardFuchs { terms: vec![p0, p1] }
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(|p| p.len().saturating_sub(1)).max().unwrap_or(0)
    }

    fn coeff(&self, i: usize, k: usize) -> Rational {
        self.terms.get(i).and_then(|p| p.get(k)).cloned().unwrap_or_else(Rational::zero)
    }

    /// `P_i(x)` at an epsilon-series `x`.
    fn eval_at(&self, i: usize, x: &QSeries) -> QSeries {
        let p = &self.terms[i];
        let mut acc = QSeries::zero(x.order());
        for c in p.iter().rev() {
            acc = acc.mul(x).add(&QSeries::constant(c.clone(), x.order()));
        }
        acc
    }

    /// Checks the MUM shape `P_0 = c theta^4`.
    pub fn check_mum(&self) -> Result<(), MirrorError> {
        let d = self.degree();
        let p0 = &self.terms[0];
        if d != 4 || p0.len() != 5 || p0[..4].iter().any(|c| !c.is_zero()) || p0[4].is_zero() {
            return Err(MirrorError::Operator("P_0 must be a nonzero multiple of theta^4".into()));
        }
        Ok(())
    }

    /// Leading coefficient `sum_i P_i[4] z^i` as a polynomial in z.
    pub fn leading(&self) -> Vec<Rational> {
        (0..self.terms.len()).map(|i| self.coeff(i, 4)).collect()
    }

    /// `z` with `leading(z) = 0`; only operators with linear leading part.
    pub fn conifold_z(&self) -> Result<Rational, MirrorError> {
        let l = self.leading();
        if l.len() != 2 || l[1].is_zero() {
            return Err(MirrorError::Operator("conifold requires a linear leading coefficient".into()));
        }
        Ok(-&l[0] / &l[1])
    }

    /// Whether the Yukawa in z is `C0 / leading(z)`, i.e. the theta^3
    /// coefficient equals `2 theta(leading)`.
    pub fn yukawa_is_closed_form(&self) -> bool {
        (0..self.terms.len()).all(|i| self.coeff(i, 3) == int(2 * i as i64) * self.coeff(i, 4))
    }

    /// `theta^4 = sum_k p_k theta^k` modulo L, for k = 0..3, as functions of z.
    pub fn reduction<S: ZSeries>(&self, z: &S) -> [S; 4] {
        let poly = |k: usize| {
            let mut acc = z.constant_like(&Rational::zero());
            let mut zp = z.constant_like(&Rational::one());
            for i in 0..self.terms.len() {
                acc = acc.add_s(&zp.scale_s(&self.coeff(i, k)));
                zp = zp.mul_s(z);
            }
            acc
        };
        let lead_inv = poly(4).inv_s();
        std::array::from_fn(|k| poly(k).mul_s(&lead_inv).scale_s(&int(-1)))
    }

    /// Applies L to a log-series in z (logs of z).
    pub fn apply(&self, y: &LogSeries) -> LogSeries {
        let mut th = vec![y.clone()];
        for _ in 0..self.degree() {
            th.push(th.last().unwrap().theta());
        }
        let mut acc: Option<LogSeries> = None;
        for (i, p) in self.terms.iter().enumerate() {
            for (k, c) in p.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let parts: Vec<QSeries> = th[k].parts().iter().map(|s| s.shift_up(i).scale(c)).collect();
                let term = LogSeries::new(parts).expect("shift keeps the log degree");
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.add(&term),
                });
            }
        }
        acc.unwrap_or_else(|| LogSeries::from_series(QSeries::zero(y.order())))
    }

    /// Frobenius basis `y_k = sum_j log(z)^j / j! A_{k-j}` to order N.
    pub fn frobenius(&self, order: usize) -> Result<PeriodFrame, MirrorError> {
        self.check_mum()?;
        let mut a: Vec<QSeries> = vec![QSeries::one(3)];
        for n in 1..=order {
            let x = QSeries::new(vec![int(n as i64), int(1)], 3);
            let den = self.eval_at(0, &x);
            if den.coeff(0).is_zero() {
                return Err(MirrorError::Recurrence(n));
            }
            let mut num = QSeries::zero(3);
            for i in 1..self.terms.len().min(n + 1) {
                let xi = QSeries::new(vec![int((n - i) as i64), int(1)], 3);
                num = num.add(&self.eval_at(i, &xi).mul(&a[n - i]));
            }
            a.push(num.neg().div(&den).map_err(|_| MirrorError::Recurrence(n))?);
        }
        let big_a: Vec<QSeries> =
            (0..4).map(|k| QSeries::new(a.iter().map(|s| s.coeff(k).clone()).collect(), order)).collect();
        let mut y = Vec::new();
        for k in 0..4 {
            let mut parts = Vec::new();
            let mut fact = Rational::one();
            for j in 0..=k {
                if j > 0 {
                    fact *= int(j as i64);
                }
                parts.push(big_a[k - j].scale(&fact.recip()));
            }
            y.push(LogSeries::new(parts).expect("log degree <= 3"));
        }
        Ok(PeriodFrame { a: big_a, y, order })
    }
}

/// The operations the reduction needs, for q- and Laurent series alike.
pub trait ZSeries: Clone {
    fn constant_like(&self, c: &Rational) -> Self;
    fn add_s(&self, o: &Self) -> Self;
    fn mul_s(&self, o: &Self) -> Self;
    fn scale_s(&self, c: &Rational) -> Self;
    fn inv_s(&self) -> Self;
}

impl<S: bcov_numeric::SeriesRing> ZSeries for S {
    fn constant_like(&self, c: &Rational) -> Self {
        bcov_numeric::SeriesRing::constant_like(self, c)
    }
    fn add_s(&self, o: &Self) -> Self {
        bcov_numeric::SeriesRing::add(self, o)
    }
    fn mul_s(&self, o: &Self) -> Self {
        bcov_numeric::SeriesRing::mul(self, o)
    }
    fn scale_s(&self, c: &Rational) -> Self {
        bcov_numeric::SeriesRing::scale(self, c)
    }
    fn inv_s(&self) -> Self {
        self.try_inverse().expect("leading coefficient of the operator is a unit here")
    }
}

/// Frobenius basis at z = 0: `a[k]` is the epsilon^k coefficient series,
/// `y[k]` has log-degree k.
#[derive(Clone, Debug)]
pub struct PeriodFrame {
    pub a: Vec<QSeries>,
    pub y: Vec<LogSeries>,
    pub order: usize,
}

impl PeriodFrame {
    pub fn y0(&self) -> &QSeries {
        &self.a[0]
    }
}
