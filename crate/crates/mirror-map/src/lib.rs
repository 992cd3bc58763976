//! The transcendental side: Frobenius periods of the Picard-Fuchs operator,
//! the mirror map, q-expansions of the moduli coordinates t0..t6, conifold
//! data, boundary conditions for the ambiguities and BPS extraction.

pub mod amplitudes;
pub mod config;
pub mod conifold;
pub mod frobenius;
pub mod gv;
pub mod mum;
pub mod pipeline;

pub use config::{BoundaryData, MirrorConfig};
pub use frobenius::{PeriodFrame, PicardFuchs};
pub use gv::BpsTable;
pub use mum::{MumData, SpecialCoordinates, TCoordinates};
pub use pipeline::Normalization;

use bcov_numeric::SeriesError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MirrorError {
    #[error("operator: {0}")]
    Operator(String),
    #[error("Frobenius recurrence degenerate at order {0}")]
    Recurrence(usize),
    #[error("series reversion failed: degenerate linear term")]
    Reversion,
    #[error("{ctx}: {err}")]
    Series { ctx: &'static str, err: SeriesError },
    #[error("normalization: {0}")]
    Normalization(String),
    #[error("evaluation: {0}")]
    Eval(String),
    #[error("precision: wanted order {wanted}, reached {got}")]
    Precision { wanted: usize, got: usize },
    #[error("R_1 flow singular at order {0}")]
    FlowSingular(usize),
    #[error("special format: {0}")]
    SpecialFormat(String),
    #[error("conifold: {0}")]
    Conifold(String),
    #[error("genus {genus} boundary conditions inconsistent: {detail}")]
    Boundary { genus: u32, detail: String },
    #[error("genus {genus} boundary conditions leave {free} parameters free")]
    Underdetermined { genus: u32, free: usize },
    #[error("amplitude still has {0} free parameters")]
    Unfixed(usize),
    #[error("non-integral genus-{genus} invariant at degree {degree}: {value}")]
    NonIntegral { genus: u32, degree: u32, value: String },
    #[error(transparent)]
    Anomaly(#[from] bcov_anomaly::AnomalyError),
}

impl MirrorError {
    pub(crate) fn series(ctx: &'static str) -> impl Fn(SeriesError) -> MirrorError {
        move |err| MirrorError::Series { ctx, err }
    }
}
