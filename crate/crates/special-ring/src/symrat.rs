use std::collections::BTreeMap;
use std::fmt;

use bcov_numeric::rational::format_rational;
use bcov_numeric::Rational;
use num_traits::{One, Signed, Zero};

/// Symbols, in print order: the six generators, the holomorphic constants of
/// the B-matrix, then the extended alphabet of the differential ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    G0,
    G,
    T11,
    T1,
    T,
    L1,
    H,
    H1,
    C111,
    S,
    H11,
    Hh1,
    Hh,
    K11,
}

pub const NSYM: usize = 14;

impl Sym {
    pub const ALL: [Sym; NSYM] = [
        Sym::G0,
        Sym::G,
        Sym::T11,
        Sym::T1,
        Sym::T,
        Sym::L1,
        Sym::H,
        Sym::H1,
        Sym::C111,
        Sym::S,
        Sym::H11,
        Sym::Hh1,
        Sym::Hh,
        Sym::K11,
    ];

    /// The six algebraically independent generators.
    pub const GENERATORS: [Sym; 6] = [Sym::G0, Sym::G, Sym::T11, Sym::T1, Sym::T, Sym::L1];

    pub fn name(self) -> &'static str {
        match self {
            Sym::G0 => "g0",
            Sym::G => "g",
            Sym::T11 => "T11",
            Sym::T1 => "T1",
            Sym::T => "T",
            Sym::L1 => "L1",
            Sym::H => "H",
            Sym::H1 => "H1",
            Sym::C111 => "C111",
            Sym::S => "s",
            Sym::H11 => "h11",
            Sym::Hh1 => "h1",
            Sym::Hh => "h",
            Sym::K11 => "k11",
        }
    }
}

type Exps = [i32; NSYM];

/// A Laurent polynomial in the symbols: a reduced fraction whose denominator
/// is a monomial.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SymRat {
    terms: BTreeMap<Exps, Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0} is not a monomial and cannot be inverted")]
pub struct NotInvertible(pub String);

impl SymRat {
    pub fn zero() -> Self {
        SymRat::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut s = SymRat::zero();
        if !c.is_zero() {
            s.terms.insert([0; NSYM], c);
        }
        s
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn sym(x: Sym) -> Self {
        Self::monomial(Rational::one(), &[(x, 1)])
    }

    pub fn monomial(c: Rational, powers: &[(Sym, i32)]) -> Self {
        let mut e = [0; NSYM];
        for (s, k) in powers {
            e[*s as usize] += k;
        }
        let mut out = SymRat::zero();
        if !c.is_zero() {
            out.terms.insert(e, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&[0; NSYM]).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        for (e, c) in &o.terms {
            let v = t.entry(*e).or_insert_with(Rational::zero);
            *v += c;
            if v.is_zero() {
                t.remove(e);
            }
        }
        SymRat { terms: t }
    }

    pub fn neg(&self) -> Self {
        SymRat { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        SymRat { terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut t: BTreeMap<Exps, Rational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exps = std::array::from_fn(|i| e1[i] + e2[i]);
                let v = t.entry(e).or_insert_with(Rational::zero);
                *v += c1 * c2;
            }
        }
        t.retain(|_, v| !v.is_zero());
        SymRat { terms: t }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Inverse of a single nonzero term.
    pub fn inverse(&self) -> Result<Self, NotInvertible> {
        if self.terms.len() != 1 {
            return Err(NotInvertible(self.to_string()));
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let mut t = BTreeMap::new();
        t.insert(std::array::from_fn(|i| -e[i]), c.recip());
        Ok(SymRat { terms: t })
    }

    pub fn partial(&self, x: Sym) -> Self {
        let i = x as usize;
        let mut t = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] != 0 {
                let mut e2 = *e;
                e2[i] -= 1;
                t.insert(e2, c * Rational::from_integer(e[i].into()));
            }
        }
        SymRat { terms: t }
    }

    /// Substitutes `x = 0`; `x` must not occur with a negative power.
    pub fn set_zero(&self, x: Sym) -> Self {
        let i = x as usize;
        assert!(self.terms.keys().all(|e| e[i] >= 0), "{} occurs in a denominator", x.name());
        SymRat { terms: self.terms.iter().filter(|(e, _)| e[i] == 0).map(|(e, c)| (*e, c.clone())).collect() }
    }

    /// Symbols that occur.
    pub fn symbols(&self) -> Vec<Sym> {
        Sym::ALL.into_iter().filter(|s| self.terms.keys().any(|e| e[*s as usize] != 0)).collect()
    }

    /// Substitutes rational values for every symbol that occurs.
    pub fn eval(&self, vals: &[Rational; NSYM]) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k != 0 {
                    if vals[i].is_zero() && k < 0 {
                        return None;
                    }
                    let b = if k < 0 { vals[i].recip() } else { vals[i].clone() };
                    for _ in 0..k.unsigned_abs() {
                        v *= &b;
                    }
                }
            }
            acc += v;
        }
        Some(acc)
    }
}

impl fmt::Display for SymRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // Highest total degree first, reading order otherwise.
        let mut terms: Vec<(&Exps, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: i32 = a.0.iter().sum();
            let db: i32 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mag = c.abs();
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let factors: Vec<String> = Sym::ALL
                .iter()
                .filter(|s| e[**s as usize] != 0)
                .map(|s| match e[*s as usize] {
                    1 => s.name().to_string(),
                    p => format!("{}^{}", s.name(), p),
                })
                .collect();
            if factors.is_empty() {
                f.write_str(&format_rational(&mag))?;
            } else if mag.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&mag), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl bcov_numeric::Ring for SymRat {
    fn zero() -> Self {
        SymRat::zero()
    }
    fn one() -> Self {
        SymRat::one()
    }
    fn from_rational(r: &Rational) -> Self {
        SymRat::constant(r.clone())
    }
    fn add(&self, o: &Self) -> Self {
        SymRat::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        SymRat::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        SymRat::mul(self, o)
    }
    fn neg(&self) -> Self {
        SymRat::neg(self)
    }
    fn is_zero(&self) -> bool {
        SymRat::is_zero(self)
    }
}
