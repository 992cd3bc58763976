use std::collections::BTreeMap;
use std::fmt;

use bcov_numeric::{int, parse_rational, Rational};
use num_traits::{One, Signed, Zero};

use crate::monomial::{Grading, Monomial, NVARS};
use crate::{Degree, RingError};

/// Polynomial in t0..t6 with rational coefficients; zero terms never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct WeightedPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl WeightedPoly {
    pub fn zero() -> Self {
        WeightedPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        WeightedPoly { terms }
    }

    pub fn var(i: usize) -> Self {
        Self::term(Rational::one(), Monomial::var(i))
    }

    /// `t4 - t0^5`.
    pub fn disc() -> Self {
        let mut p = Self::var(4);
        p.add_term(Monomial::one().with(0, 5), int(-1));
        p
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant value if the polynomial has no nonconstant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let (big, small) = if self.len() >= o.len() { (self, o) } else { (o, self) };
        let mut r = big.clone();
        for (m, c) in &small.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c);
        }
        r
    }

    pub fn neg(&self) -> Self {
        WeightedPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        WeightedPoly { terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        WeightedPoly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c * s)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                *out.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        WeightedPoly { terms: out }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                out.insert(m.with(i, e - 1), c * int(e as i64));
            }
        }
        WeightedPoly { terms: out }
    }

    /// Exact division by `t_i`; `None` if some term lacks the factor.
    pub fn div_var(&self, i: usize) -> Option<Self> {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                return None;
            }
            out.insert(m.with(i, e - 1), c.clone());
        }
        Some(WeightedPoly { terms: out })
    }

    /// Exact division by `t4 - t0^5`, by synthetic division in t4.
    pub fn div_disc(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Coefficients of t4^k, each a polynomial free of t4.
        let mut by_deg: BTreeMap<u16, WeightedPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_deg.entry(m.0[4]).or_default().add_term(m.with(4, 0), c.clone());
        }
        let top = *by_deg.keys().next_back().unwrap();
        let t05 = Monomial::one().with(0, 5);
        // P = sum c_k t4^k = (t4 - t0^5) Q, Q = sum q_k t4^k:
        // q_{k-1} = c_k + t0^5 q_k, remainder c_0 + t0^5 q_0.
        let mut q: Vec<WeightedPoly> = vec![WeightedPoly::zero(); top as usize];
        let mut carry = WeightedPoly::zero();
        for k in (1..=top).rev() {
            let ck = by_deg.get(&k).cloned().unwrap_or_default();
            let qk1 = ck.add(&carry);
            carry = qk1.mul_monomial(&t05, &Rational::one());
            q[(k - 1) as usize] = qk1;
        }
        let c0 = by_deg.get(&0).cloned().unwrap_or_default();
        if !c0.add(&carry).is_zero() {
            return None;
        }
        let mut out = WeightedPoly::zero();
        for (k, qk) in q.into_iter().enumerate() {
            for (m, c) in qk.terms {
                out.add_term(m.with(4, k as u16), c);
            }
        }
        Some(out)
    }

    pub fn eval(&self, x: &[Rational; NVARS]) -> Rational {
        let mut s = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    v *= &x[i];
                }
            }
            s += v;
        }
        s
    }

    pub fn degree(&self, g: Grading) -> Degree {
        let mut d = Degree::Zero;
        for m in self.terms.keys() {
            let k = m.degree(g);
            match d {
                Degree::Zero => d = Degree::Homogeneous(k),
                Degree::Homogeneous(v) if v != k => return Degree::Mixed,
                _ => {}
            }
        }
        d
    }

    pub fn min_support_index(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::support_index).min()
    }

    pub fn parse(s: &str) -> Result<Self, RingError> {
        parse_poly(s)
    }
}

impl fmt::Display for WeightedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WeightedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_factor(tok: &str) -> Result<(usize, u16), RingError> {
    let bad = || RingError::Parse(format!("invalid factor `{tok}`"));
    let rest = tok.strip_prefix('t').ok_or_else(bad)?;
    let (idx, exp) = match rest.split_once('^') {
        Some((i, e)) => (i, e.parse::<u16>().map_err(|_| bad())?),
        None => (rest, 1),
    };
    let i: usize = idx.parse().map_err(|_| bad())?;
    if i >= NVARS || idx.len() != 1 {
        return Err(bad());
    }
    Ok((i, exp))
}

fn parse_poly(s: &str) -> Result<WeightedPoly, RingError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(RingError::Parse("empty polynomial".into()));
    }
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (k, ch) in compact.chars().enumerate() {
        if ch == '+' || ch == '-' {
            if k > 0 {
                pieces.push((neg, std::mem::take(&mut cur)));
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    pieces.push((neg, cur));
    let mut p = WeightedPoly::zero();
    for (neg, body) in pieces {
        if body.is_empty() {
            return Err(RingError::Parse(format!("empty term in `{s}`")));
        }
        let mut coef = Rational::one();
        let mut mono = Monomial::one();
        for (k, tok) in body.split('*').enumerate() {
            if tok.starts_with('t') {
                let (i, e) = parse_factor(tok)?;
                mono.0[i] += e;
            } else if k == 0 {
                coef = parse_rational(tok).map_err(|e| RingError::Parse(e.to_string()))?;
            } else {
                return Err(RingError::Parse(format!("misplaced coefficient `{tok}`")));
            }
        }
        p.add_term(mono, if neg { -coef } else { coef });
    }
    Ok(p)
}
