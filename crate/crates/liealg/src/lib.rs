//! The constant linear algebra behind the enhanced moduli space: the
//! intersection matrix Phi, the Lie algebra Lie(G), its canonical basis and
//! matrix brackets, for any h >= 1.
//!
//! Matrices are `(2h+2) x (2h+2)` and block-indexed by `2h+2 = 1 + h + h + 1`.
//! Lie(G) is block upper triangular with `g^T Phi + Phi g = 0`. The canonical
//! basis elements are the transposes of the lower-triangular block displays
//! (see [`basis_display`]); `gm_matrix` of the corresponding vector field
//! equals the display.

pub mod linsolve;
mod matrix;

use bcov_numeric::{int, rat, Rational};
use num_traits::Zero;
use serde::Serialize;

pub use matrix::Mat;

pub type QMat = Mat<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("matrix of size {0} does not match block shape of size {1}")]
    Shape(usize, usize),
    #[error("{0} is not in Lie(G)")]
    NotInLie(String),
    #[error("{0} is not a combination of the canonical basis")]
    NotInSpan(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockShape {
    pub h: usize,
}

impl BlockShape {
    pub fn new(h: usize) -> Self {
        assert!(h >= 1, "h must be positive");
        BlockShape { h }
    }

    pub fn size(&self) -> usize {
        2 * self.h + 2
    }

    /// Block (1..=4) of a 0-based row or column index.
    pub fn block(&self, i: usize) -> usize {
        let h = self.h;
        if i == 0 {
            1
        } else if i <= h {
            2
        } else if i <= 2 * h {
            3
        } else {
            4
        }
    }

    /// First 0-based index of a block.
    pub fn offset(&self, block: usize) -> usize {
        match block {
            1 => 0,
            2 => 1,
            3 => 1 + self.h,
            _ => 1 + 2 * self.h,
        }
    }

    pub fn dim_g(&self) -> usize {
        let h = self.h;
        (3 * h * h + 5 * h + 4) / 2
    }
}

pub fn build_phi(h: usize) -> QMat {
    let s = BlockShape::new(h);
    let n = s.size();
    let mut m = QMat::zeros(n, n);
    m.set(0, n - 1, int(-1));
    m.set(n - 1, 0, int(1));
    for i in 0..h {
        m.set(1 + i, 1 + h + i, int(1));
        m.set(1 + h + i, 1 + i, int(-1));
    }
    m
}

pub fn is_block_upper(m: &QMat, shape: BlockShape) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| shape.block(i) <= shape.block(j) || m.get(i, j).is_zero()))
}

pub fn is_in_lie(m: &QMat, shape: BlockShape) -> bool {
    if m.rows() != shape.size() || m.cols() != shape.size() {
        return false;
    }
    let phi = build_phi(shape.h);
    is_block_upper(m, shape) && m.transpose().mul(&phi).add(&phi.mul(m)).is_zero()
}

pub fn mat_bracket(a: &QMat, b: &QMat) -> QMat {
    a.bracket(b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    pub name: String,
    pub mat: QMat,
    pub shape: BlockShape,
}

impl LieElement {
    /// Checked construction: fails unless the matrix lies in Lie(G).
    pub fn new(name: impl Into<String>, mat: QMat, shape: BlockShape) -> Result<Self, LieError> {
        let name = name.into();
        if mat.rows() != shape.size() {
            return Err(LieError::Shape(mat.rows(), shape.size()));
        }
        if !is_in_lie(&mat, shape) {
            return Err(LieError::NotInLie(name));
        }
        Ok(LieElement { name, mat, shape })
    }

    pub fn export(&self) -> MatrixExport {
        MatrixExport { h: self.shape.h, name: self.name.clone(), entries: self.mat.to_strings() }
    }
}

/// JSON shape of an exported matrix.
#[derive(Serialize, Debug, Clone)]
pub struct MatrixExport {
    pub h: usize,
    pub name: String,
    pub entries: Vec<Vec<String>>,
}

/// Kind of canonical basis element, with 1-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisKind {
    /// `t_ab`, a <= b.
    Tab(usize, usize),
    Ta(usize),
    T,
    Ka(usize),
    /// `g^a_b`.
    Gab(usize, usize),
    G0,
}

impl BasisKind {
    pub fn name(&self) -> String {
        match *self {
            BasisKind::Tab(a, b) => format!("t_ab[{a}][{b}]"),
            BasisKind::Ta(a) => format!("t_a[{a}]"),
            BasisKind::T => "t".into(),
            BasisKind::Ka(a) => format!("k_a[{a}]"),
            BasisKind::Gab(a, b) => format!("g[{a}][{b}]"),
            BasisKind::G0 => "g0".into(),
        }
    }
}

/// Basis kinds in canonical order.
pub fn basis_kinds(h: usize) -> Vec<BasisKind> {
    let mut v = Vec::new();
    for a in 1..=h {
        for b in a..=h {
            v.push(BasisKind::Tab(a, b));
        }
    }
    v.extend((1..=h).map(BasisKind::Ta));
    v.push(BasisKind::T);
    v.extend((1..=h).map(BasisKind::Ka));
    for a in 1..=h {
        for b in 1..=h {
            v.push(BasisKind::Gab(a, b));
        }
    }
    v.push(BasisKind::G0);
    v
}

/// The block display of a basis element, entered block by block with the
/// index placement as displayed (lower triangular).
pub fn basis_display(kind: BasisKind, h: usize) -> QMat {
    let s = BlockShape::new(h);
    let n = s.size();
    let mut m = QMat::zeros(n, n);
    let (b2, b3, b4) = (s.offset(2), s.offset(3), s.offset(4));
    let half = rat(1, 2);
    match kind {
        BasisKind::Tab(a, b) => {
            // block (3,2): (d^i_a d^j_b + d^i_b d^j_a) / 2
            let (a, b) = (a - 1, b - 1);
            for i in 0..h {
                for j in 0..h {
                    let v = half.clone() * int(((i == a && j == b) as i64) + ((i == b && j == a) as i64));
                    if !v.is_zero() {
                        m.set(b3 + i, b2 + j, v);
                    }
                }
            }
        }
        BasisKind::Ta(a) => {
            m.set(b3 + a - 1, 0, int(-1));
            m.set(b4, b2 + a - 1, int(1));
        }
        BasisKind::T => m.set(b4, 0, int(-1)),
        BasisKind::Ka(a) => {
            m.set(b2 + a - 1, 0, int(1));
            m.set(b4, b3 + a - 1, int(1));
        }
        BasisKind::Gab(a, b) => {
            // block (2,2): -d^a_i d^j_b ; block (3,3): d^i_b d^a_j
            m.set(b2 + a - 1, b2 + b - 1, int(-1));
            m.set(b3 + b - 1, b3 + a - 1, int(1));
        }
        BasisKind::G0 => {
            m.set(0, 0, int(-1));
            m.set(b4, b4, int(1));
        }
    }
    m
}

pub fn canonical_basis(h: usize) -> Vec<LieElement> {
    let s = BlockShape::new(h);
    basis_kinds(h)
        .into_iter()
        .map(|k| {
            let m = basis_display(k, h).transpose();
            LieElement::new(k.name(), m, s).expect("canonical basis element outside Lie(G)")
        })
        .collect()
}

/// Coordinates of `m` in the canonical basis; `None` if outside the span.
pub fn decompose(m: &QMat, basis: &[LieElement]) -> Option<Vec<Rational>> {
    let n = m.rows();
    let a = QMat::from_fn(n * n, basis.len(), |r, c| basis[c].mat.get(r / n, r % n).clone());
    let b: Vec<Rational> = m.entries().to_vec();
    let (x, free) = linsolve::solve(&a, &b)?;
    (free == 0).then_some(x)
}

/// Linear combination of basis elements.
pub fn combine(coeffs: &[Rational], basis: &[LieElement]) -> QMat {
    let n = basis[0].mat.rows();
    let mut acc = QMat::zeros(n, n);
    for (c, e) in coeffs.iter().zip(basis) {
        if !c.is_zero() {
            acc = acc.add(&e.mat.scale(c));
        }
    }
    acc
}

#[derive(Debug, Clone)]
pub struct ClosureEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Option<Vec<Rational>>,
    pub residual_zero: bool,
}

#[derive(Debug, Clone)]
pub struct ClosureReport {
    pub h: usize,
    pub dim: usize,
    pub all_in_lie: bool,
    pub entries: Vec<ClosureEntry>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.all_in_lie && self.dim == BlockShape::new(self.h).dim_g() && self.entries.iter().all(|e| e.residual_zero)
    }
}

/// Brackets every ordered pair of basis elements and decomposes the result.
pub fn closure_report(h: usize) -> ClosureReport {
    let basis = canonical_basis(h);
    let shape = BlockShape::new(h);
    let all_in_lie = basis.iter().all(|e| is_in_lie(&e.mat, shape));
    let mut entries = Vec::new();
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            let br = basis[i].mat.bracket(&basis[j].mat);
            let coeffs = decompose(&br, &basis);
            let residual_zero = coeffs.as_ref().is_some_and(|c| combine(c, &basis).sub(&br).is_zero());
            entries.push(ClosureEntry { i, j, coeffs, residual_zero });
        }
    }
    ClosureReport { h, dim: basis.len(), all_in_lie, entries }
}

/// Finds a named element of the canonical basis.
pub fn basis_element(h: usize, kind: BasisKind) -> QMat {
    basis_display(kind, h).transpose()
}
