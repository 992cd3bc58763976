use bcov_liealg::{basis_display, build_phi, BasisKind, Mat};
use bcov_polyring::OTElement;

use crate::fields::{apply, vf_bracket, FieldLabel, VectorFieldOT};
use crate::frame::Frame;
use crate::yukawa::YukawaOT;
use crate::FieldError;

pub type GMMatrix = Mat<OTElement>;

/// Basis element of Lie(G) attached to an R_g field.
pub fn basis_kind(label: FieldLabel) -> Option<BasisKind> {
    match label {
        FieldLabel::R1 => None,
        FieldLabel::Rg0 => Some(BasisKind::G0),
        FieldLabel::Rg11 => Some(BasisKind::Gab(1, 1)),
        FieldLabel::Rk1 => Some(BasisKind::Ka(1)),
        FieldLabel::Rt11 => Some(BasisKind::Tab(1, 1)),
        FieldLabel::Rt1 => Some(BasisKind::Ta(1)),
        FieldLabel::Rt => Some(BasisKind::T),
    }
}

fn lift(m: &Mat<bcov_numeric::Rational>) -> GMMatrix {
    m.map(|x| OTElement::constant(x.clone()))
}

pub fn gm_matrix_for(label: FieldLabel, y: &YukawaOT) -> GMMatrix {
    match basis_kind(label) {
        None => {
            let mut a = GMMatrix::zeros(4, 4);
            a.set(0, 1, OTElement::one());
            a.set(1, 2, y.value.clone());
            a.set(2, 3, OTElement::one());
            a
        }
        // g^T of the Lie(G) element, i.e. its lower-triangular display.
        Some(k) => lift(&basis_display(k, 1)),
    }
}

pub fn gm_matrix(x: &VectorFieldOT, y: &YukawaOT) -> Result<GMMatrix, FieldError> {
    let label = x.label.ok_or(FieldError::NonCanonical)?;
    Ok(gm_matrix_for(label, y))
}

pub fn apply_matrix(x: &VectorFieldOT, a: &GMMatrix) -> GMMatrix {
    a.map(|e| apply(x, e))
}

pub fn phi() -> GMMatrix {
    lift(&build_phi(1))
}

/// `A Phi + Phi A^T`.
pub fn check_pairing(a: &GMMatrix) -> GMMatrix {
    let p = phi();
    a.mul(&p).add(&p.mul(&a.transpose()))
}

/// `X(A_Y) - Y(A_X) + s [A_X, A_Y] - A_[X,Y]`.
pub fn check_flatness(
    frame: &Frame,
    x: &VectorFieldOT,
    y: &VectorFieldOT,
    yuk: &YukawaOT,
    s: i64,
) -> Result<GMMatrix, FieldError> {
    let ax = gm_matrix(x, yuk)?;
    let ay = gm_matrix(y, yuk)?;
    let br = vf_bracket(x, y);
    let c = frame.decompose_checked(&br)?;
    let mut a_br = GMMatrix::zeros(4, 4);
    for (ci, f) in c.iter().zip(&frame.fields) {
        if !ci.is_zero() {
            a_br = a_br.add(&gm_matrix(f, yuk)?.scale(ci));
        }
    }
    let comm = ax.bracket(&ay);
    let comm = if s >= 0 { comm } else { comm.neg() };
    Ok(apply_matrix(x, &ay).sub(&apply_matrix(y, &ax)).add(&comm).sub(&a_br))
}

/// Fixes the commutator sign on the pair (R_g0, R_t).
pub fn calibrate_sign(frame: &Frame, yuk: &YukawaOT) -> Result<i64, FieldError> {
    let f = |l: FieldLabel| frame.fields.iter().find(|x| x.label == Some(l)).cloned().ok_or(FieldError::NonCanonical);
    let (g0, t) = (f(FieldLabel::Rg0)?, f(FieldLabel::Rt)?);
    let plus = check_flatness(frame, &g0, &t, yuk, 1)?.is_zero();
    let minus = check_flatness(frame, &g0, &t, yuk, -1)?.is_zero();
    match (plus, minus) {
        (true, false) => Ok(1),
        (false, true) => Ok(-1),
        _ => Err(FieldError::Calibration),
    }
}

#[derive(Clone, Debug)]
pub struct FlatnessEntry {
    pub x: FieldLabel,
    pub y: FieldLabel,
    pub residual: GMMatrix,
}

impl FlatnessEntry {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

/// All 21 unordered pairs of distinct fields.
pub fn flatness_report(frame: &Frame, yuk: &YukawaOT, s: i64) -> Result<Vec<FlatnessEntry>, FieldError> {
    let mut out = Vec::new();
    for i in 0..frame.fields.len() {
        for j in i + 1..frame.fields.len() {
            let (x, y) = (&frame.fields[i], &frame.fields[j]);
            let residual = check_flatness(frame, x, y, yuk, s)?;
            out.push(FlatnessEntry { x: x.label.unwrap(), y: y.label.unwrap(), residual });
        }
    }
    Ok(out)
}
