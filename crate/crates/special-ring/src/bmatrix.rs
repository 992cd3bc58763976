use bcov_liealg::{basis_display, build_phi, BasisKind, Mat};
use bcov_numeric::{int, rat, Rational};

use crate::symrat::{NotInvertible, Sym, SymRat};

pub type SymMat = Mat<SymRat>;

fn s(x: Sym) -> SymRat {
    SymRat::sym(x)
}

fn c(n: i64) -> SymRat {
    SymRat::constant(int(n))
}

fn inv(x: Sym) -> SymRat {
    SymRat::monomial(Rational::from_integer(1.into()), &[(x, -1)])
}

/// The h = 1 basis-change matrix with all holomorphic shifts set to zero.
pub fn build_b() -> SymMat {
    use Sym::*;
    let (g0i, gi) = (inv(G0), inv(G));
    let mut b = SymMat::zeros(4, 4);
    b.set(0, 0, g0i.clone());
    b.set(1, 0, s(L1).mul(&g0i));
    b.set(1, 1, gi.clone());
    b.set(2, 0, s(T1).mul(&g0i).neg());
    b.set(2, 1, s(T11).mul(&gi));
    b.set(2, 2, s(G));
    let two_t = c(2).mul(&s(T)).add(&s(T1).mul(&s(L1)));
    b.set(3, 0, two_t.mul(&g0i).neg().add(&s(G0).mul(&s(H))));
    b.set(3, 1, s(T1).add(&s(T11).mul(&s(L1))).mul(&gi).add(&s(G0).mul(&s(H1))));
    b.set(3, 2, s(G).mul(&s(L1)));
    b.set(3, 3, s(G0));
    b
}

fn det(m: &SymMat) -> SymRat {
    let n = m.rows();
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = SymRat::zero();
    for j in 0..n {
        let e = m.get(0, j);
        if e.is_zero() {
            continue;
        }
        let t = e.mul(&det(&minor(m, 0, j)));
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

fn minor(m: &SymMat, r: usize, c: usize) -> SymMat {
    let n = m.rows();
    SymMat::from_fn(n - 1, n - 1, |i, j| m.get(i + (i >= r) as usize, j + (j >= c) as usize).clone())
}

pub fn determinant(m: &SymMat) -> SymRat {
    det(m)
}

/// Inverse by the adjugate; the determinant must be a single term.
pub fn inverse(m: &SymMat) -> Result<SymMat, NotInvertible> {
    let n = m.rows();
    let di = det(m).inverse()?;
    Ok(SymMat::from_fn(n, n, |i, j| {
        let mi = det(&minor(m, j, i)).mul(&di);
        if (i + j) % 2 == 0 {
            mi
        } else {
            mi.neg()
        }
    }))
}

/// `(dB/dx) B^{-1}`.
pub fn m_matrix(x: Sym) -> SymMat {
    let b = build_b();
    let bi = inverse(&b).expect("det B is a unit");
    b.map(|e| e.partial(x)).mul(&bi)
}

/// The printed M-matrix displays, h = 1. Entries follow the display with
/// `T_0` read as `T`; `None` for symbols without a display.
pub fn m_display(x: Sym) -> Option<SymMat> {
    use Sym::*;
    let g0i = inv(G0);
    let mut m = SymMat::zeros(4, 4);
    match x {
        T11 => {
            m.set(2, 0, s(L1).neg());
            m.set(2, 1, c(1));
            m.set(3, 0, s(L1).pow(2).neg());
            m.set(3, 1, s(L1));
        }
        T1 => {
            m.set(2, 0, c(-1));
            m.set(3, 0, s(L1).scale(&int(-2)));
            m.set(3, 1, c(1));
        }
        T => m.set(3, 0, c(-2)),
        L1 => {
            m.set(1, 0, c(1));
            m.set(3, 2, c(1));
        }
        G0 => {
            m.set(0, 0, g0i.neg());
            m.set(1, 0, g0i.mul(&s(L1)).neg());
            m.set(2, 0, g0i.mul(&s(T1)));
            m.set(3, 0, g0i.mul(&c(4).mul(&s(T)).add(&c(2).mul(&s(T1)).mul(&s(L1)))));
            m.set(3, 1, g0i.mul(&s(T1)).neg());
            m.set(3, 2, g0i.mul(&s(L1)).neg());
            m.set(3, 3, g0i);
        }
        G => {
            // Upper-index g^m_i read as the inverse 1/g.
            let gi = inv(G);
            let b = s(T1).add(&s(T11).mul(&s(L1)));
            m.set(1, 0, gi.mul(&s(L1)));
            m.set(1, 1, gi.neg());
            m.set(2, 0, gi.mul(&s(T11).mul(&s(L1))).add(&gi.mul(&b)));
            m.set(2, 1, gi.mul(&s(T11)).scale(&int(-2)));
            m.set(2, 2, gi.clone());
            m.set(3, 0, gi.mul(&s(L1)).mul(&b).scale(&int(2)));
            m.set(3, 1, gi.mul(&b).neg().sub(&gi.mul(&s(T11)).mul(&s(L1))));
            m.set(3, 2, gi.mul(&s(L1)));
        }
        _ => return None,
    }
    Some(m)
}

/// One entry where a computed matrix and its display disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryMismatch {
    pub row: usize,
    pub col: usize,
    pub computed: SymRat,
    pub displayed: SymRat,
}

pub fn compare(computed: &SymMat, displayed: &SymMat) -> Vec<EntryMismatch> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            let (a, b) = (computed.get(i, j), displayed.get(i, j));
            if a != b {
                out.push(EntryMismatch { row: i + 1, col: j + 1, computed: a.clone(), displayed: b.clone() });
            }
        }
    }
    out
}

/// Coefficient of M_T in the g_0 combination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum G0Combo {
    /// `+ 2 M_T` as displayed.
    Printed,
    /// `+ 2 T M_T`.
    Weighted,
}

#[derive(Clone, Debug)]
pub struct Combo {
    pub kind: BasisKind,
    pub value: SymMat,
}

impl Combo {
    pub fn constant(&self) -> Option<Mat<Rational>> {
        let mut out = Mat::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                out.set(i, j, self.value.get(i, j).as_constant()?);
            }
        }
        Some(out)
    }

    /// The combination equals the display of its Lie(G) element.
    pub fn matches_basis(&self) -> bool {
        self.constant().is_some_and(|m| m == basis_display(self.kind, 1))
    }
}

fn sc(m: &SymMat, f: &SymRat) -> SymMat {
    m.map(|e| e.mul(f))
}

/// The six combinations of M-matrices that should be constant.
pub fn canonical_combos(g0_variant: G0Combo) -> Vec<Combo> {
    use Sym::*;
    let m = |x| m_matrix(x);
    let (mt11, mt1, mt, ml1, mg, mg0) = (m(T11), m(T1), m(T), m(L1), m(G), m(G0));
    let l = s(L1);
    let half = SymRat::constant(rat(1, 2));
    let t11 = mt11.sub(&sc(&mt1, &l)).add(&sc(&mt, &l.mul(&l).mul(&half)));
    let t1 = mt1.sub(&sc(&mt, &l));
    let t = sc(&mt, &half);
    let k = ml1.clone();
    let g11 = sc(&mg, &s(G)).sub(&sc(&ml1, &l)).add(&sc(&mt11, &c(2).mul(&s(T11)))).add(&sc(&mt1, &s(T1)));
    let coef = match g0_variant {
        G0Combo::Printed => c(2),
        G0Combo::Weighted => c(2).mul(&s(T)),
    };
    let g0 = sc(&mg0, &s(G0)).add(&sc(&ml1, &l)).add(&sc(&mt1, &s(T1))).add(&sc(&mt, &coef));
    vec![
        Combo { kind: BasisKind::Tab(1, 1), value: t11 },
        Combo { kind: BasisKind::Ta(1), value: t1 },
        Combo { kind: BasisKind::T, value: t },
        Combo { kind: BasisKind::Ka(1), value: k },
        Combo { kind: BasisKind::Gab(1, 1), value: g11 },
        Combo { kind: BasisKind::G0, value: g0 },
    ]
}

fn phi() -> SymMat {
    build_phi(1).map(|x| SymRat::constant(x.clone()))
}

/// Substitutes zero for one symbol.
pub fn set_zero(m: &SymMat, x: Sym) -> SymMat {
    m.map(|e| e.set_zero(x))
}

/// `B Phi B^T - Phi`.
pub fn pairing_residual(b: &SymMat) -> SymMat {
    let p = phi();
    b.mul(&p).mul(&b.transpose()).sub(&p)
}

pub fn check_pairing_b() -> SymMat {
    pairing_residual(&build_b())
}

/// B has zeros above its block diagonal.
pub fn is_block_lower(b: &SymMat) -> bool {
    (0..4).all(|i| (i + 1..4).all(|j| b.get(i, j).is_zero()))
}
