//! Exact polynomial algebra: big rationals, sparse multivariate polynomials
//! in the reduced couplings, dense univariate and Laurent polynomials whose
//! coefficients are either rationals or rational functions, and Sturm-chain
//! real-root isolation.

pub mod coef;
pub mod laurent;
pub mod multipoly;
pub mod poly;
pub mod rational;
pub mod roots;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero polynomial")]
    DivisionByZeroPoly,
    #[error("polynomial is not a perfect square: {0}")]
    NotAPerfectSquare(String),
    #[error("variable mismatch: {0} vs {1}")]
    VariableMismatch(char, char),
    #[error("expected numeric coefficients, found symbolic")]
    SymbolicCoefficient,
}
