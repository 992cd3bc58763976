use num_traits::{One, Zero};

use crate::rational::{int, Rational};
use crate::{QSeries, SeriesError};

/// Highest power of `log q` a value may carry.
pub const MAX_LOG_DEGREE: usize = 3;

/// `sum_k parts[k] * (log q)^k` with k <= 3.
///
/// `log q` is a formal symbol with `theta(log q) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogSeries {
    parts: Vec<QSeries>,
}

impl LogSeries {
    pub fn new(parts: Vec<QSeries>) -> Result<Self, SeriesError> {
        if parts.is_empty() {
            return Err(SeriesError::Parse("log series needs at least one part".into()));
        }
        let order = parts.iter().map(QSeries::order).min().unwrap_or(0);
        let mut parts: Vec<QSeries> = parts.iter().map(|p| p.truncate(order)).collect();
        while parts.len() > 1 && parts.last().is_some_and(QSeries::is_zero) {
            parts.pop();
        }
        if parts.len() > MAX_LOG_DEGREE + 1 {
            return Err(SeriesError::LogDegreeOverflow(parts.len() - 1));
        }
        Ok(LogSeries { parts })
    }

    pub fn from_series(s: QSeries) -> Self {
        LogSeries { parts: vec![s] }
    }

    /// The series `log q` itself.
    pub fn log_var(order: usize) -> Self {
        LogSeries { parts: vec![QSeries::zero(order), QSeries::one(order)] }
    }

    pub fn order(&self) -> usize {
        self.parts[0].order()
    }

    pub fn log_degree(&self) -> usize {
        self.parts.len() - 1
    }

    /// Coefficient of `(log q)^k`; zero beyond the degree.
    pub fn part(&self, k: usize) -> QSeries {
        self.parts.get(k).cloned().unwrap_or_else(|| QSeries::zero(self.order()))
    }

    pub fn parts(&self) -> &[QSeries] {
        &self.parts
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.parts.len().max(o.parts.len());
        let parts = (0..n).map(|k| self.part(k).add(&o.part(k))).collect();
        LogSeries::new(parts).expect("degree bounded by operands")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let parts = self.parts.iter().map(|p| p.scale(c)).collect();
        LogSeries::new(parts).expect("scaling keeps degree")
    }

    pub fn mul_series(&self, s: &QSeries) -> Self {
        let parts = self.parts.iter().map(|p| p.mul(s)).collect();
        LogSeries::new(parts).expect("series factor keeps degree")
    }

    pub fn div_series(&self, s: &QSeries) -> Result<Self, SeriesError> {
        let inv = s.inverse()?;
        Ok(self.mul_series(&inv))
    }

    pub fn mul(&self, o: &Self) -> Result<Self, SeriesError> {
        let order = self.order().min(o.order());
        let deg = self.log_degree() + o.log_degree();
        let mut parts = vec![QSeries::zero(order); deg + 1];
        for (i, a) in self.parts.iter().enumerate() {
            for (j, b) in o.parts.iter().enumerate() {
                parts[i + j] = parts[i + j].add(&a.mul(b));
            }
        }
        while parts.len() > 1 && parts.last().is_some_and(QSeries::is_zero) {
            parts.pop();
        }
        if parts.len() > MAX_LOG_DEGREE + 1 {
            return Err(SeriesError::LogDegreeOverflow(parts.len() - 1));
        }
        Ok(LogSeries { parts })
    }

    /// `theta (f L^k) = theta(f) L^k + k f L^(k-1)` with `L = log q`.
    pub fn theta(&self) -> Self {
        let n = self.parts.len();
        let mut parts: Vec<QSeries> = self.parts.iter().map(QSeries::theta).collect();
        for k in 1..n {
            let extra = self.parts[k].scale(&int(k as i64));
            parts[k - 1] = parts[k - 1].add(&extra);
        }
        LogSeries::new(parts).expect("theta does not raise degree")
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(QSeries::is_zero)
    }

    /// Substitutes `q -> b(q)` where `b = q * u(q)`, u(0) != 0, so that
    /// `log b = log q + log u`. The constant of `log u` must be zero.
    pub fn substitute(&self, b: &QSeries) -> Result<Self, SeriesError> {
        let u = b.shift_down(1)?;
        let u0 = u.coeff(0).clone();
        if u0.is_zero() {
            return Err(SeriesError::ReverseDegenerate);
        }
        if !u0.is_one() {
            return Err(SeriesError::LogConstantTerm);
        }
        let order = b.order().min(self.order());
        let log_u = u.truncate(order).log()?;
        let l = LogSeries::new(vec![log_u, QSeries::one(order)])?;
        let mut acc = LogSeries::from_series(QSeries::zero(order));
        let mut lp = LogSeries::from_series(QSeries::one(order));
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                lp = lp.mul(&l)?;
            }
            let c = p.compose(&b.truncate(order))?;
            acc = acc.add(&lp.mul_series(&c));
        }
        Ok(acc)
    }
}

impl std::ops::Add for LogSeries {
    type Output = LogSeries;
    fn add(self, o: Self) -> Self {
        LogSeries::add(&self, &o)
    }
}
