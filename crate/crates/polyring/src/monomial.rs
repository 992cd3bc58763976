use std::cmp::Ordering;
use std::fmt;

pub const NVARS: usize = 7;

/// Weighted degree `w` of each coordinate, `3(i+1)` for t0..t4.
pub const W_WEIGHTS: [i64; NVARS] = [3, 6, 9, 12, 15, 11, 8];
/// Eigenvalue weights of the Euler field.
pub const E0_WEIGHTS: [i64; NVARS] = [1, 2, 3, 4, 5, 3, 2];
/// Eigenvalue weights of the scaling field `t5 d5 + t6 d6`.
pub const E1_WEIGHTS: [i64; NVARS] = [0, 0, 0, 0, 0, 1, 1];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grading {
    W,
    E0,
    E1,
}

impl Grading {
    pub fn weights(self) -> &'static [i64; NVARS] {
        match self {
            Grading::W => &W_WEIGHTS,
            Grading::E0 => &E0_WEIGHTS,
            Grading::E1 => &E1_WEIGHTS,
        }
    }
}

/// Exponent vector `t0^i0 ... t6^i6`, ordered by weighted degree then
/// lexicographically on the exponents.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exps(e: [u16; NVARS]) -> Self {
        Monomial(e)
    }

    pub fn exps(&self) -> &[u16; NVARS] {
        &self.0
    }

    pub fn degree(&self, g: Grading) -> i64 {
        self.0.iter().zip(g.weights()).map(|(&e, &w)| e as i64 * w).sum()
    }

    pub fn w(&self) -> i64 {
        self.degree(Grading::W)
    }

    pub fn e0(&self) -> i64 {
        self.degree(Grading::E0)
    }

    pub fn e1(&self) -> i64 {
        self.degree(Grading::E1)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0.iter()) {
            *a += *b;
        }
        Monomial(e)
    }

    /// `self / o` if every exponent allows it.
    pub fn div(&self, o: &Self) -> Option<Self> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Monomial(e))
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn with(&self, i: usize, e: u16) -> Self {
        let mut x = self.0;
        x[i] = e;
        Monomial(x)
    }

    /// Sum of the exponents of t2..t6.
    pub fn support_index(&self) -> u32 {
        self.0[2..].iter().map(|&e| e as u32).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.w().cmp(&o.w()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "t{i}")?;
            } else {
                write!(f, "t{i}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All monomials with prescribed Euler degree `e0` and scaling degree `e1`,
/// in canonical order.
pub fn enumerate_monomials(e0: i64, e1: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if e0 < 0 || e1 < 0 {
        return out;
    }
    for i5 in 0..=e1 {
        let i6 = e1 - i5;
        let rest = e0 - 3 * i5 - 2 * i6;
        if rest < 0 {
            continue;
        }
        let mut e = [0u16; NVARS];
        e[5] = i5 as u16;
        e[6] = i6 as u16;
        fill(&mut e, 4, rest, &mut out);
    }
    out.sort();
    out
}

// Distributes `rest` over t0..t_k with weights i+1.
fn fill(e: &mut [u16; NVARS], k: usize, rest: i64, out: &mut Vec<Monomial>) {
    if k == 0 {
        e[0] = rest as u16;
        out.push(Monomial(*e));
        return;
    }
    let w = k as i64 + 1;
    for c in 0..=rest / w {
        e[k] = c as u16;
        fill(e, k - 1, rest - c * w, out);
    }
    e[k] = 0;
}
