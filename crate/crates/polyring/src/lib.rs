//! The graded ring O_T: polynomials in t0..t6 over the rationals, localized
//! at t5, t4 and `disc = t4 - t0^5`.

pub mod monomial;
pub mod ot;
pub mod poly;

pub use monomial::{enumerate_monomials, Grading, Monomial, NVARS};
pub use ot::{OTElement, SeriesEvaluator};
pub use poly::WeightedPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    /// The zero element carries every degree.
    Zero,
    Homogeneous(i64),
    Mixed,
}

impl Degree {
    pub fn value(self) -> Option<i64> {
        match self {
            Degree::Homogeneous(k) => Some(k),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("{0} is not a unit of O_T")]
    NotAUnit(String),
    #[error("series evaluation failed: {0}")]
    Series(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Shorthand for the coordinate `t_i` as an element of O_T.
pub fn t(i: usize) -> OTElement {
    OTElement::var(i)
}
