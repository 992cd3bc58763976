use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{int, Rational};
use crate::SeriesError;

/// Truncated power series `c_0 + c_1 q + ... + c_N q^N + O(q^(N+1))`.
///
/// `order()` is N, the largest exponent whose coefficient is known.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    /// Builds a series known through `q^order`; missing coefficients are zero,
    /// extra ones are dropped.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        QSeries { coeffs }
    }

    pub fn from_ints(cs: &[i64], order: usize) -> Self {
        Self::new(cs.iter().map(|&c| int(c)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// `c q^k`, truncated.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The series `q`.
    pub fn var(order: usize) -> Self {
        Self::monomial(Rational::one(), 1, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `q^n`. Panics if `n` exceeds the truncation order.
    pub fn coeff(&self, n: usize) -> &Rational {
        assert!(n <= self.order(), "coefficient q^{n} beyond truncation order {}", self.order());
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        QSeries { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    fn zip_with(&self, o: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let n = self.order().min(o.order());
        QSeries { coeffs: (0..=n).map(|i| f(&self.coeffs[i], &o.coeffs[i])).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut r = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    r[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs: r }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let inv0 = a0.recip();
        let n = self.order();
        let mut r = vec![Rational::zero(); n + 1];
        r[0] = inv0.clone();
        for m in 1..=n {
            let mut s = Rational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    s += &self.coeffs[k] * &r[m - k];
                }
            }
            r[m] = -s * &inv0;
        }
        Ok(QSeries { coeffs: r })
    }

    pub fn div(&self, o: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&o.inverse()?))
    }

    /// `q d/dq`.
    pub fn theta(&self) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().enumerate().map(|(n, c)| c * int(n as i64)).collect(),
        }
    }

    /// `d/dq`; the order drops by one.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        QSeries {
            coeffs: self.coeffs.iter().enumerate().skip(1).map(|(n, c)| c * int(n as i64)).collect(),
        }
    }

    /// Multiplies by `q^k`; the known range grows by k.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut c = vec![Rational::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        QSeries { coeffs: c }
    }

    /// Divides by `q^k`; requires the first k coefficients to vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self, SeriesError> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(SeriesError::NotDivisible(k));
        }
        Ok(QSeries { coeffs: self.coeffs[k..].to_vec() })
    }

    /// `self(b(q))`; requires `b(0) = 0`.
    pub fn compose(&self, b: &Self) -> Result<Self, SeriesError> {
        if !b.coeffs[0].is_zero() {
            return Err(SeriesError::ComposeConstantTerm);
        }
        let n = self.order().min(b.order());
        let b = b.truncate(n);
        let mut acc = QSeries::constant(self.coeffs[n].clone(), n);
        for i in (0..n).rev() {
            acc = acc.mul(&b);
            acc.coeffs[0] += &self.coeffs[i];
        }
        Ok(acc)
    }

    /// Compositional inverse r with `self(r(q)) = q`.
    pub fn reverse(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() || self.order() < 1 || self.coeffs[1].is_zero() {
            return Err(SeriesError::ReverseDegenerate);
        }
        let n = self.order();
        let a1inv = self.coeffs[1].recip();
        let mut r = QSeries::monomial(a1inv.clone(), 1, n);
        // Each pass fixes one more coefficient: the error of self(r) at q^m is
        // linear in r_m with slope a_1.
        for m in 2..=n {
            let c = self.compose(&r)?;
            let err = c.coeffs[m].clone();
            r.coeffs[m] -= err * &a1inv;
        }
        Ok(r)
    }

    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::ExpConstantTerm);
        }
        let n = self.order();
        let da = self.theta();
        let mut r = vec![Rational::zero(); n + 1];
        r[0] = Rational::one();
        for m in 1..=n {
            let mut s = Rational::zero();
            for k in 1..=m {
                if !da.coeffs[k].is_zero() {
                    s += &da.coeffs[k] * &r[m - k];
                }
            }
            r[m] = s / int(m as i64);
        }
        Ok(QSeries { coeffs: r })
    }

    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::LogConstantTerm);
        }
        let t = self.theta().div(self)?;
        let mut c = t.coeffs;
        c[0] = Rational::zero();
        for (m, x) in c.iter_mut().enumerate().skip(1) {
            *x /= int(m as i64);
        }
        Ok(QSeries { coeffs: c })
    }

    pub fn to_text(&self) -> String {
        crate::text::format_series(&self.coeffs, 0, 'q', self.order() as i64 + 1)
    }

    pub fn to_text_var(&self, var: char) -> String {
        crate::text::format_series(&self.coeffs, 0, var, self.order() as i64 + 1)
    }

    pub fn parse(s: &str) -> Result<Self, SeriesError> {
        Self::parse_var(s, 'q')
    }

    pub fn parse_var(s: &str, var: char) -> Result<Self, SeriesError> {
        let (terms, big_o) = crate::text::parse_series(s, var)?;
        let big_o = big_o.ok_or_else(|| SeriesError::Parse("missing O(...) term".into()))?;
        if big_o < 1 {
            return Err(SeriesError::Parse("series order must be at least O(q)".into()));
        }
        let order = (big_o - 1) as usize;
        let mut c = vec![Rational::zero(); order + 1];
        for (e, v) in terms {
            if e < 0 || e as usize > order {
                return Err(SeriesError::Parse(format!("exponent {e} outside known range")));
            }
            c[e as usize] += v;
        }
        Ok(QSeries { coeffs: c })
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&QSeries> for &QSeries {
            type Output = QSeries;
            fn $m(self, o: &QSeries) -> QSeries {
                QSeries::$m(self, o)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::neg(self)
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::neg(&self)
    }
}
