//! Fans, their class groups and polynomial Cox rings.
//!
//! Only maximal cones are stored. Smoothness and completeness are never
//! checked; a fan that lacks them still yields a ring, and the shared
//! verifiers report what fails.

mod fan;

pub use fan::{
    class_group, cox_presentation, hilbert_toric, parse_fan, product_fan, toric_cox_data, verify_exactness, Fan,
    FanJson, ToricCoxData,
};

use thiserror::Error;

use crate::coxalg::CoxError;
use crate::exactmath::MonomialError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToricError {
    #[error("malformed fan: {0}")]
    MalformedFan(String),
    #[error("invalid fan JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error(transparent)]
    Cox(#[from] CoxError),
    #[error("divisor sequence is not exact: {0}")]
    NotExact(String),
}
