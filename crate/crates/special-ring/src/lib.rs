//! Symbolic h = 1 special geometry: the basis-change matrix B between the
//! algebraic and flat frames, the matrices `(dB/dx) B^{-1}`, the constant
//! combinations they produce and the differential ring of the generators.

pub mod bmatrix;
pub mod dring;
pub mod symrat;

pub use bmatrix::{
    build_b, canonical_combos, check_pairing_b, compare, m_display, m_matrix, pairing_residual, set_zero, Combo, EntryMismatch, G0Combo,
    SymMat,
};
pub use dring::{derivative_of, dring_derivation};
pub use symrat::{Sym, SymRat, NSYM};
