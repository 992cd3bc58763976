use std::fmt;

use num_traits::Zero;

use crate::rational::{int, Rational};
use crate::{QSeries, SeriesError, SeriesRing};

/// Truncated Laurent series `sum_{e >= val} c_e x^e + O(x^prec)`.
///
/// Precision is tracked in absolute exponents, so every operation reports
/// only coefficients it actually determines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    val: i64,
    coeffs: Vec<Rational>,
    prec: i64,
}

impl LaurentSeries {
    /// `coeffs[i]` multiplies `x^(start + i)`; known up to `O(x^prec)`.
    pub fn new(start: i64, coeffs: Vec<Rational>, prec: i64) -> Self {
        let mut c = coeffs;
        let want = (prec - start).max(0) as usize;
        c.resize(want, Rational::zero());
        let mut s = LaurentSeries { val: start, coeffs: c, prec };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let k = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len());
        if k > 0 {
            self.coeffs.drain(..k);
            self.val += k as i64;
        }
        if self.coeffs.is_empty() {
            self.val = self.prec;
        }
    }

    pub fn zero_to(prec: i64) -> Self {
        LaurentSeries { val: prec, coeffs: Vec::new(), prec }
    }

    pub fn constant(c: Rational, prec: i64) -> Self {
        LaurentSeries::new(0, vec![c], prec)
    }

    /// `x^e` known up to `O(x^prec)`.
    pub fn monomial(c: Rational, e: i64, prec: i64) -> Self {
        LaurentSeries::new(e, vec![c], prec)
    }

    pub fn from_qseries(s: &QSeries) -> Self {
        LaurentSeries::new(0, s.coeffs().to_vec(), s.order() as i64 + 1)
    }

    /// Requires valuation >= 0.
    pub fn to_qseries(&self) -> Result<QSeries, SeriesError> {
        if self.prec < 1 {
            return Err(SeriesError::Precision);
        }
        if !self.is_zero() && self.val < 0 {
            return Err(SeriesError::NegativeValuation(self.val));
        }
        let order = (self.prec - 1) as usize;
        let c = (0..=order as i64).map(|e| self.coeff(e)).collect();
        Ok(QSeries::new(c, order))
    }

    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^e`; panics if `e` is not below the precision.
    pub fn coeff(&self, e: i64) -> Rational {
        assert!(e < self.prec, "coefficient x^{e} beyond precision O(x^{})", self.prec);
        if e < self.val {
            return Rational::zero();
        }
        self.coeffs[(e - self.val) as usize].clone()
    }

    pub fn truncate(&self, prec: i64) -> Self {
        let p = prec.min(self.prec);
        let n = (p - self.val).max(0) as usize;
        LaurentSeries::new(self.val, self.coeffs[..n.min(self.coeffs.len())].to_vec(), p)
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        let start = self.val.min(o.val).min(prec);
        let mut c = vec![Rational::zero(); (prec - start) as usize];
        for s in [self, o] {
            for (i, x) in s.coeffs.iter().enumerate() {
                let e = s.val + i as i64;
                if e < prec {
                    c[(e - start) as usize] += x;
                }
            }
        }
        LaurentSeries::new(start, c, prec)
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            // Zero times a coefficient known to relative precision r is known.
            return LaurentSeries::zero_to(self.prec);
        }
        LaurentSeries {
            val: self.val,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = (self.val + o.prec).min(o.val + self.prec);
        if self.is_zero() || o.is_zero() {
            return LaurentSeries::zero_to(prec);
        }
        let start = self.val + o.val;
        let n = (prec - start).max(0) as usize;
        let mut c = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        LaurentSeries::new(start, c, prec)
    }

    pub fn inverse(&self) -> Result<Self, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let rel = self.coeffs.len();
        let a0inv = self.coeffs[0].recip();
        let mut r = vec![Rational::zero(); rel];
        r[0] = a0inv.clone();
        for m in 1..rel {
            let mut s = Rational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    s += &self.coeffs[k] * &r[m - k];
                }
            }
            r[m] = -s * &a0inv;
        }
        Ok(LaurentSeries::new(-self.val, r, -self.val + rel as i64))
    }

    pub fn div(&self, o: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&o.inverse()?))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = LaurentSeries::constant(Rational::from_integer(1.into()), self.prec - self.val.min(0) + 1);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `d/dx`.
    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, x)| x * int(self.val + i as i64))
            .collect();
        LaurentSeries::new(self.val - 1, c, self.prec - 1)
    }

    /// `x d/dx`.
    pub fn theta(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, x)| x * int(self.val + i as i64))
            .collect();
        LaurentSeries::new(self.val, c, self.prec)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries { val: self.val + k, coeffs: self.coeffs.clone(), prec: self.prec + k }
    }

    pub fn to_text(&self, var: char) -> String {
        crate::text::format_series(&self.coeffs, self.val, var, self.prec)
    }

    pub fn parse(s: &str, var: char) -> Result<Self, SeriesError> {
        let (terms, big_o) = crate::text::parse_series(s, var)?;
        let prec = big_o.ok_or_else(|| SeriesError::Parse("missing O(...) term".into()))?;
        let start = terms.iter().map(|t| t.0).min().unwrap_or(prec).min(prec);
        let mut c = vec![Rational::zero(); (prec - start) as usize];
        for (e, v) in terms {
            if e >= prec {
                return Err(SeriesError::Parse(format!("exponent {e} beyond O(..)")));
            }
            c[(e - start) as usize] += v;
        }
        Ok(LaurentSeries::new(start, c, prec))
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text('x'))
    }
}

impl SeriesRing for LaurentSeries {
    fn constant_like(&self, c: &Rational) -> Self {
        // Exact constants must not limit the precision of products.
        LaurentSeries::constant(c.clone(), self.prec - self.val.min(0) + 1)
    }
    fn add(&self, o: &Self) -> Self {
        LaurentSeries::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        LaurentSeries::mul(self, o)
    }
    fn scale(&self, c: &Rational) -> Self {
        LaurentSeries::scale(self, c)
    }
    fn try_inverse(&self) -> Result<Self, SeriesError> {
        self.inverse()
    }
    fn is_zero(&self) -> bool {
        LaurentSeries::is_zero(self)
    }
}

impl SeriesRing for QSeries {
    fn constant_like(&self, c: &Rational) -> Self {
        QSeries::constant(c.clone(), self.order())
    }
    fn add(&self, o: &Self) -> Self {
        QSeries::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        QSeries::mul(self, o)
    }
    fn scale(&self, c: &Rational) -> Self {
        QSeries::scale(self, c)
    }
    fn try_inverse(&self) -> Result<Self, SeriesError> {
        self.inverse()
    }
    fn is_zero(&self) -> bool {
        QSeries::is_zero(self)
    }
}
