use std::fmt;

use bcov_numeric::{int, Rational, SeriesRing};
use num_traits::{One, Zero};

use crate::monomial::{Grading, Monomial, NVARS};
use crate::poly::WeightedPoly;
use crate::{Degree, RingError};

/// `numerator / (t5^a * t4^b * disc^c)` with `disc = t4 - t0^5`, kept with
/// no removable factor between numerator and denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OTElement {
    num: WeightedPoly,
    pow_t5: u32,
    pow_t4: u32,
    pow_disc: u32,
}

/// Grading of the three denominator factors.
fn den_degree(g: Grading, a5: u32, a4: u32, ad: u32) -> i64 {
    let w = g.weights();
    // disc is homogeneous with the degree of t4.
    a5 as i64 * w[5] + (a4 + ad) as i64 * w[4]
}

impl OTElement {
    pub fn new(num: WeightedPoly, pow_t5: u32, pow_t4: u32, pow_disc: u32) -> Self {
        let mut e = OTElement { num, pow_t5, pow_t4, pow_disc };
        e.normalize();
        e
    }

    pub fn from_poly(p: WeightedPoly) -> Self {
        OTElement { num: p, pow_t5: 0, pow_t4: 0, pow_disc: 0 }
    }

    pub fn zero() -> Self {
        Self::from_poly(WeightedPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(WeightedPoly::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(WeightedPoly::constant(c))
    }

    pub fn var(i: usize) -> Self {
        Self::from_poly(WeightedPoly::var(i))
    }

    /// `t4 - t0^5`.
    pub fn disc() -> Self {
        Self::from_poly(WeightedPoly::disc())
    }

    pub fn numerator(&self) -> &WeightedPoly {
        &self.num
    }

    /// Denominator exponents (t5, t4, disc).
    pub fn den_exps(&self) -> (u32, u32, u32) {
        (self.pow_t5, self.pow_t4, self.pow_disc)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.pow_t5 == 0 && self.pow_t4 == 0 && self.pow_disc == 0
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.as_constant()
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.pow_t5 = 0;
            self.pow_t4 = 0;
            self.pow_disc = 0;
            return;
        }
        while self.pow_t5 > 0 {
            match self.num.div_var(5) {
                Some(q) => {
                    self.num = q;
                    self.pow_t5 -= 1;
                }
                None => break,
            }
        }
        while self.pow_t4 > 0 {
            match self.num.div_var(4) {
                Some(q) => {
                    self.num = q;
                    self.pow_t4 -= 1;
                }
                None => break,
            }
        }
        while self.pow_disc > 0 {
            match self.num.div_disc() {
                Some(q) => {
                    self.num = q;
                    self.pow_disc -= 1;
                }
                None => break,
            }
        }
    }

    /// Numerator rewritten over `t5^a t4^b disc^c`, which must dominate the
    /// element's own denominator.
    pub fn numerator_over(&self, a: u32, b: u32, c: u32) -> WeightedPoly {
        assert!(a >= self.pow_t5 && b >= self.pow_t4 && c >= self.pow_disc);
        let mut m = Monomial::one();
        m.0[5] = (a - self.pow_t5) as u16;
        m.0[4] = (b - self.pow_t4) as u16;
        let mut p = self.num.mul_monomial(&m, &Rational::one());
        for _ in 0..(c - self.pow_disc) {
            p = p.mul(&WeightedPoly::disc());
        }
        p
    }

    pub fn add(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let a = self.pow_t5.max(o.pow_t5);
        let b = self.pow_t4.max(o.pow_t4);
        let c = self.pow_disc.max(o.pow_disc);
        let n = self.numerator_over(a, b, c).add(&o.numerator_over(a, b, c));
        OTElement::new(n, a, b, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        OTElement { num: self.num.neg(), ..*self }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        OTElement { num: self.num.scale(s), ..*self }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        OTElement::new(
            self.num.mul(&o.num),
            self.pow_t5 + o.pow_t5,
            self.pow_t4 + o.pow_t4,
            self.pow_disc + o.pow_disc,
        )
    }

    pub fn mul_poly(&self, p: &WeightedPoly) -> Self {
        OTElement::new(self.num.mul(p), self.pow_t5, self.pow_t4, self.pow_disc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides by `t5^a t4^b disc^c`.
    pub fn div_unit(&self, a: u32, b: u32, c: u32) -> Self {
        OTElement::new(self.num.clone(), self.pow_t5 + a, self.pow_t4 + b, self.pow_disc + c)
    }

    /// Inverse in O_T. Exists exactly when the numerator is a nonzero constant
    /// times a product of t5, t4 and disc.
    pub fn inverse(&self) -> Result<Self, RingError> {
        if self.is_zero() {
            return Err(RingError::NotAUnit(self.to_string()));
        }
        let mut p = self.num.clone();
        let (mut a, mut b, mut c) = (0u32, 0u32, 0u32);
        while let Some(q) = p.div_var(5) {
            p = q;
            a += 1;
        }
        while let Some(q) = p.div_var(4) {
            p = q;
            b += 1;
        }
        while p.len() > 1 {
            match p.div_disc() {
                Some(q) => {
                    p = q;
                    c += 1;
                }
                None => break,
            }
        }
        let k = p.as_constant().filter(|k| !k.is_zero()).ok_or_else(|| RingError::NotAUnit(self.to_string()))?;
        let mut m = Monomial::one();
        m.0[5] = self.pow_t5 as u16;
        m.0[4] = self.pow_t4 as u16;
        let mut num = WeightedPoly::term(k.recip(), m);
        for _ in 0..self.pow_disc {
            num = num.mul(&WeightedPoly::disc());
        }
        Ok(OTElement::new(num, a, b, c))
    }

    pub fn div(&self, o: &Self) -> Result<Self, RingError> {
        Ok(self.mul(&o.inverse()?))
    }

    /// Quotient-rule derivative `d/dt_i`.
    pub fn partial(&self, i: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (a, b, c) = (self.pow_t5, self.pow_t4, self.pow_disc);
        let r5 = i == 5 && a > 0;
        let r4 = i == 4 && b > 0;
        let dd = WeightedPoly::disc().partial(i);
        let rd = c > 0 && !dd.is_zero();
        // Only the factors that actually depend on t_i enter the new denominator.
        let mut extra = Monomial::one();
        extra.0[5] = r5 as u16;
        extra.0[4] = r4 as u16;
        let lift = |p: &WeightedPoly, skip5: bool, skip4: bool, skipd: bool| {
            let mut m = extra;
            if skip5 {
                m.0[5] = 0;
            }
            if skip4 {
                m.0[4] = 0;
            }
            let q = p.mul_monomial(&m, &Rational::one());
            if rd && !skipd {
                q.mul(&WeightedPoly::disc())
            } else {
                q
            }
        };
        let mut num = lift(&self.num.partial(i), false, false, false);
        if r5 {
            num = num.sub(&lift(&self.num, true, false, false).scale(&int(a as i64)));
        }
        if r4 {
            num = num.sub(&lift(&self.num, false, true, false).scale(&int(b as i64)));
        }
        if rd {
            num = num.sub(&lift(&self.num.mul(&dd), false, false, true).scale(&int(c as i64)));
        }
        OTElement::new(num, a + r5 as u32, b + r4 as u32, c + rd as u32)
    }

    pub fn grading(&self, g: Grading) -> Degree {
        match self.num.degree(g) {
            Degree::Homogeneous(k) => {
                Degree::Homogeneous(k - den_degree(g, self.pow_t5, self.pow_t4, self.pow_disc))
            }
            other => other,
        }
    }

    /// Value at a rational point; `None` on a vanishing denominator.
    pub fn eval(&self, x: &[Rational; NVARS]) -> Option<Rational> {
        let d = WeightedPoly::disc().eval(x);
        let mut den = Rational::one();
        for _ in 0..self.pow_t5 {
            den *= &x[5];
        }
        for _ in 0..self.pow_t4 {
            den *= &x[4];
        }
        for _ in 0..self.pow_disc {
            den *= &d;
        }
        if den.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / den)
    }

    /// Evaluates on seven series for t0..t6.
    pub fn evaluate_series<S: SeriesRing>(&self, vals: &[S; NVARS]) -> Result<S, RingError> {
        let mut ev = SeriesEvaluator::new(vals);
        ev.eval(self)
    }

    pub fn parse(s: &str) -> Result<Self, RingError> {
        let s = s.trim();
        let Some((n, d)) = split_top_level_slash(s) else {
            return Ok(Self::from_poly(WeightedPoly::parse(strip_parens(s))?));
        };
        let num = WeightedPoly::parse(strip_parens(n.trim()))?;
        let (mut a, mut b, mut c) = (0, 0, 0);
        for f in strip_parens(d.trim()).split('*') {
            let f = f.trim();
            let (base, e) = match f.split_once('^') {
                Some((x, k)) => (x, k.parse::<u32>().map_err(|_| RingError::Parse(format!("bad exponent in `{f}`")))?),
                None => (f, 1),
            };
            match base {
                "t5" => a += e,
                "t4" => b += e,
                "disc" => c += e,
                _ => return Err(RingError::Parse(format!("denominator factor `{f}` is not t5, t4 or disc"))),
            }
        }
        Ok(OTElement::new(num, a, b, c))
    }
}

fn strip_parens(s: &str) -> &str {
    s.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(s)
}

fn split_top_level_slash(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 && s[i + 1..].trim_start().starts_with(['(', 't', 'd']) => {
                return Some((&s[..i], &s[i + 1..]));
            }
            _ => {}
        }
    }
    None
}

impl fmt::Display for OTElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        let mut den = Vec::new();
        for (name, e) in [("t5", self.pow_t5), ("t4", self.pow_t4), ("disc", self.pow_disc)] {
            match e {
                0 => {}
                1 => den.push(name.to_string()),
                k => den.push(format!("{name}^{k}")),
            }
        }
        write!(f, "({}) / ({})", self.num, den.join(" * "))
    }
}

impl fmt::Debug for OTElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Caches powers of the seven input series across many evaluations.
pub struct SeriesEvaluator<'a, S: SeriesRing> {
    vals: &'a [S; NVARS],
    powers: Vec<Vec<S>>,
    disc_inv: Option<S>,
    t5_inv: Option<S>,
    t4_inv: Option<S>,
}

impl<'a, S: SeriesRing> SeriesEvaluator<'a, S> {
    pub fn new(vals: &'a [S; NVARS]) -> Self {
        let powers = vals.iter().map(|v| vec![v.constant_like(&Rational::one())]).collect();
        SeriesEvaluator { vals, powers, disc_inv: None, t5_inv: None, t4_inv: None }
    }

    fn power(&mut self, i: usize, k: usize) -> S {
        while self.powers[i].len() <= k {
            let next = self.powers[i].last().unwrap().mul(&self.vals[i]);
            self.powers[i].push(next);
        }
        self.powers[i][k].clone()
    }

    pub fn poly(&mut self, p: &WeightedPoly) -> S {
        let mut acc = self.vals[0].constant_like(&Rational::zero());
        for (m, c) in p.terms() {
            let mut t: Option<S> = None;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let pw = self.power(i, e as usize);
                    t = Some(match t {
                        None => pw,
                        Some(x) => x.mul(&pw),
                    });
                }
            }
            let t = match t {
                None => self.vals[0].constant_like(c),
                Some(x) => x.scale(c),
            };
            acc = acc.add(&t);
        }
        acc
    }

    fn inv_of(&mut self, which: usize) -> Result<S, RingError> {
        let slot = match which {
            5 => &self.t5_inv,
            4 => &self.t4_inv,
            _ => &self.disc_inv,
        };
        if let Some(s) = slot {
            return Ok(s.clone());
        }
        let base = match which {
            5 => self.vals[5].clone(),
            4 => self.vals[4].clone(),
            _ => {
                let t05 = self.power(0, 5);
                self.vals[4].add(&t05.scale(&int(-1)))
            }
        };
        let inv = base.try_inverse().map_err(|e| RingError::Series(e.to_string()))?;
        match which {
            5 => self.t5_inv = Some(inv.clone()),
            4 => self.t4_inv = Some(inv.clone()),
            _ => self.disc_inv = Some(inv.clone()),
        }
        Ok(inv)
    }

    pub fn eval(&mut self, e: &OTElement) -> Result<S, RingError> {
        let mut r = self.poly(&e.num);
        for (which, k) in [(5, e.pow_t5), (4, e.pow_t4), (7, e.pow_disc)] {
            if k > 0 {
                let inv = self.inv_of(which)?;
                for _ in 0..k {
                    r = r.mul(&inv);
                }
            }
        }
        Ok(r)
    }
}

impl bcov_numeric::Ring for OTElement {
    fn zero() -> Self {
        OTElement::zero()
    }
    fn one() -> Self {
        OTElement::one()
    }
    fn from_rational(r: &Rational) -> Self {
        OTElement::constant(r.clone())
    }
    fn add(&self, o: &Self) -> Self {
        OTElement::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        OTElement::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        OTElement::mul(self, o)
    }
    fn neg(&self) -> Self {
        OTElement::neg(self)
    }
    fn is_zero(&self) -> bool {
        OTElement::is_zero(self)
    }
}
