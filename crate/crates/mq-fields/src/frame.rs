use std::collections::HashMap;

use bcov_polyring::{OTElement, NVARS};

use crate::fields::VectorFieldOT;
use crate::FieldError;

/// The 7x7 matrix of field components with its determinant and adjugate.
#[derive(Clone, Debug)]
pub struct Frame {
    pub fields: Vec<VectorFieldOT>,
    pub det: OTElement,
    det_inv: OTElement,
    /// Cofactors `C_ij` of field i, component j; `(F^{-1})_{ji} = C_ij / det`.
    cof: Vec<Vec<OTElement>>,
}

struct Minors<'a> {
    m: &'a [[OTElement; NVARS]],
    memo: HashMap<(u8, u8), OTElement>,
}

impl Minors<'_> {
    /// Determinant of the submatrix on the given row and column masks
    /// (equal popcounts), by expansion along the first row.
    fn det(&mut self, rows: u8, cols: u8) -> OTElement {
        if rows == 0 {
            return OTElement::one();
        }
        if let Some(v) = self.memo.get(&(rows, cols)) {
            return v.clone();
        }
        let r = rows.trailing_zeros() as usize;
        let rest = rows & !(1 << r);
        let mut acc = OTElement::zero();
        let mut sign_pos = 0;
        for c in 0..NVARS {
            if cols & (1 << c) == 0 {
                continue;
            }
            let e = &self.m[r][c];
            if !e.is_zero() {
                let sub = self.det(rest, cols & !(1 << c));
                if !sub.is_zero() {
                    let t = e.mul(&sub);
                    acc = if sign_pos % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
                }
            }
            sign_pos += 1;
        }
        self.memo.insert((rows, cols), acc.clone());
        acc
    }
}

impl Frame {
    pub fn new(fields: &[VectorFieldOT]) -> Result<Self, FieldError> {
        assert_eq!(fields.len(), NVARS);
        let m: Vec<[OTElement; NVARS]> = fields.iter().map(|f| f.components.clone()).collect();
        let mut mn = Minors { m: &m, memo: HashMap::new() };
        let full = (1u8 << NVARS) - 1;
        let det = mn.det(full, full);
        if det.is_zero() {
            return Err(FieldError::SingularFrame);
        }
        let det_inv = det.inverse().map_err(|_| FieldError::NonUnitDeterminant(det.to_string()))?;
        let mut cof = vec![vec![OTElement::zero(); NVARS]; NVARS];
        for i in 0..NVARS {
            for j in 0..NVARS {
                let minor = mn.det(full & !(1 << i), full & !(1 << j));
                cof[i][j] = if (i + j) % 2 == 0 { minor } else { minor.neg() };
            }
        }
        Ok(Frame { fields: fields.to_vec(), det, det_inv, cof })
    }

    /// Coefficients `c` with `z = sum_i c_i F_i`.
    pub fn decompose(&self, z: &VectorFieldOT) -> [OTElement; NVARS] {
        std::array::from_fn(|i| {
            let mut acc = OTElement::zero();
            for j in 0..NVARS {
                let zj = &z.components[j];
                if !zj.is_zero() && !self.cof[i][j].is_zero() {
                    acc = acc.add(&zj.mul(&self.cof[i][j]));
                }
            }
            acc.mul(&self.det_inv)
        })
    }

    /// Decomposes and checks that recombining gives `z` back exactly.
    pub fn decompose_checked(&self, z: &VectorFieldOT) -> Result<[OTElement; NVARS], FieldError> {
        let c = self.decompose(z);
        if crate::fields::combine(&c, &self.fields).sub(z).is_zero() {
            Ok(c)
        } else {
            Err(FieldError::DecompositionResidual)
        }
    }
}
