//! Holomorphic anomaly equations on O_T: the genus-one amplitude, the
//! recursive linear systems for F_g, g >= 2, and the master equations.

pub mod form;
pub mod genus1;
pub mod master;
pub mod solver;

pub use form::{LinearForm, ParamId};
pub use genus1::{f1_checks, r1_f1_is_regular, F1Check, LogAmplitude, F1_NORMALIZATION};
pub use master::{verify_master, MasterEntry, MasterEquation};
pub use solver::{
    constraint_residual, predicted_kernel, rhs_genus, solve_chain, solve_genus, Amplitude, DenominatorBase,
    GenusAmplitude, GenusSolution, SolveOptions,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnomalyError {
    #[error("genus {genus} system is inconsistent ({obstructions} obstruction rows; right-hand sides involved: {columns:?})")]
    Inconsistent { genus: u32, columns: Vec<String>, obstructions: usize },
    #[error("product of two parameter-dependent amplitudes")]
    NonlinearAmbiguity,
    #[error("no value for parameter {0}")]
    MissingParameter(ParamId),
}

/// The Euler characteristic entering the equations, from the configured
/// (A-model) value: `chi_b = -chi`.
pub fn chi_b(chi: i64) -> bcov_numeric::Rational {
    bcov_numeric::int(-chi)
}
