//! Exact arithmetic: rationals, sparse multivariate polynomials over Q,
//! dense integer polynomials in one variable, binomial field extensions and
//! truncated Puiseux series.

mod field;
mod multipoly;
mod rational;
mod resultant;
mod series;
mod unipoly;

pub use field::{BinomialExtension, CoefficientField, FieldElem};
pub use multipoly::{Monomial, MultiPoly};
pub use rational::{int, is_perfect_power, nth_root_exact, rat, Rational};
pub use resultant::resultant;
pub use series::{series_order, substitute, PuiseuxSeries, SeriesOrder};
pub use unipoly::UniPoly;

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomials are defined over different variable lists")]
    VariableMismatch,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial has degree 0 in `{0}`")]
    Degenerate(String),
    #[error("not divisible")]
    NotDivisible,
    #[error("order cannot be certified below truncation t^{0}")]
    IndeterminateOrder(Rational),
    #[error("series use different parameters")]
    MixedParameters,
    #[error("coefficient fields are incompatible")]
    IncompatibleFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable `{0}` has no assigned series")]
    Unassigned(String),
}
