//! The mirror-quintic vector fields on T as derivations of O_T, their Lie
//! brackets, Gauss-Manin matrices and the integrability and pairing
//! identities those matrices satisfy.

pub mod fields;
pub mod frame;
pub mod gm;
pub mod kernel;
pub mod table;
pub mod yukawa;

pub use fields::{apply, canonical_fields, field, fields, vf_bracket, FieldLabel, FieldVariant, VectorFieldOT};
pub use frame::Frame;
pub use gm::{calibrate_sign, check_flatness, check_pairing, flatness_report, gm_matrix, gm_matrix_for, GMMatrix};
pub use kernel::{joint_kernel, joint_kernel_test, KernelReport};
pub use table::{table_entry, verify_bracket_table, TableEntry};
pub use yukawa::{YukawaOT, YukawaVariant};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("field has no canonical label; decompose it in the frame first")]
    NonCanonical,
    #[error("frame matrix is singular")]
    SingularFrame,
    #[error("frame determinant {0} is not a unit of O_T")]
    NonUnitDeterminant(String),
    #[error("decomposition does not reproduce the field")]
    DecompositionResidual,
    #[error("sign calibration on (R_g0, R_t) is not decisive")]
    Calibration,
}

/// Frame of the canonical fields.
pub fn canonical_frame() -> Frame {
    Frame::new(&canonical_fields()).expect("canonical frame is invertible")
}
