//! Exact scalars and truncated formal power series.
//!
//! Every series carries its own truncation; binary operations keep only the
//! coefficients both operands determine.

pub mod laurent;
pub mod logseries;
pub mod qseries;
pub mod rational;
pub mod sparse;
mod text;

pub use laurent::LaurentSeries;
pub use logseries::LogSeries;
pub use qseries::QSeries;
pub use rational::{int, parse_rational, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("division by a series with zero constant term")]
    ZeroConstantTerm,
    #[error("log requires constant term 1")]
    LogConstantTerm,
    #[error("exp requires constant term 0")]
    ExpConstantTerm,
    #[error("composition requires the inner series to vanish at 0")]
    ComposeConstantTerm,
    #[error("reversion requires a(0) = 0 and a nonzero linear term")]
    ReverseDegenerate,
    #[error("log-degree {0} exceeds the cap of 3")]
    LogDegreeOverflow(usize),
    #[error("series is not divisible by q^{0}")]
    NotDivisible(usize),
    #[error("series has negative valuation {0}")]
    NegativeValuation(i64),
    #[error("no coefficients are known at the requested precision")]
    Precision,
    #[error("parse error: {0}")]
    Parse(String),
}

/// The operations needed to evaluate rational functions on series.
pub trait SeriesRing: Clone {
    /// An exact constant compatible with `self`'s precision.
    fn constant_like(&self, c: &Rational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn try_inverse(&self) -> Result<Self, SeriesError>;
    fn is_zero(&self) -> bool;
}

/// Commutative ring elements usable as matrix entries.
pub trait Ring: Clone + PartialEq + std::fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Ring for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}
