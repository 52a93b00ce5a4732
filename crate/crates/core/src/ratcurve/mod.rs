//! Glued rational curves: the projective line with some points replaced by
//! several copies, their divisors, Picard groups and section spaces.

mod curve;
mod json;
mod picard;
mod sections;

pub use curve::{line_divisor_degree, CurvePoint, Divisor, GluedCurve, LineDivisor, P1Point};
pub use json::{
    curve_to_json, divisor_to_json, parse_curve, parse_divisor, CurveJson, DivisorTermJson, SpecialPointJson,
};
pub use picard::{is_principal, picard_group, point_ratio, Picard, Principality};
pub use sections::{
    min_divisor, order_at, principal_divisor, pull_back, satisfies_order_conditions, section_space, SectionSpace,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("the zero function has no divisor")]
    ZeroFunction,
    #[error("{0} has zeros or poles outside the rational points")]
    NonRationalSupport(String),
    #[error("a glued curve needs at least one special point")]
    NoSpecialPoints,
    #[error("special point {0} has multiplicity 0")]
    ZeroMultiplicity(P1Point),
    #[error("special point {0} listed twice")]
    DuplicatePoint(P1Point),
    #[error("anchor {0} is not a special point")]
    AnchorNotSpecial(P1Point),
    #[error("point copy {0} does not exist on this curve")]
    InvalidCopy(CurvePoint),
    #[error("cannot parse point {0:?}")]
    BadPoint(String),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("Picard certificate failed: {0}")]
    PicardCertificate(&'static str),
    #[error("coefficient overflow")]
    Overflow,
}
