//! Graded section algebras over glued curves and the machinery that turns
//! them into Picard-graded rings with explicit presentations.
//!
//! A group of line bundles `Λ` is a free group of divisors mapping onto the
//! Picard group. Its kernel `Λ₀` is handled by a shifting family: for each
//! `E` in `Λ₀` a function `g_E` with `div(g_E) = -E`, so that multiplication
//! by `g_E` identifies the sections of `L` with those of `L + E`. The
//! quotient by the associated ideal is never built as cosets; each Picard
//! class is computed through a fixed representative in `Λ`.

mod checks;
mod cover;
mod crosscheck;
mod graded;
mod lattice;
mod pic;
mod presentation;
mod sections;
mod shifting;

pub use checks::{
    freely_graded_check, graded_homs_equivalent, is_pointed, separatedness_check, weight_monoid_check, ChartUnits,
    FreelyGraded, HomEquivalence, PointedReport, Proportional, Separatedness, UnitsVerdict, WeightMonoid,
};
pub use cover::{express_in_generators, irrelevant_cover, Chart};
pub use crosscheck::{
    build_algebra, curve_presentation, uniqueness_crosscheck, CrosscheckReport, CurvePipeline, HilbertRow, LambdaMode,
};
pub use graded::{add_degrees, degree_box, degree_order, neg_degree, scale_degree, GradedAlgebra};
pub use lattice::{canonical_lambda, full_lambda, LambdaKind, LineBundleLattice};
pub use pic::{CyclicSectionAlgebra, PicGradedAlgebra};
pub use presentation::{
    find_generators, find_relations, tensor_presentation, CertificateRow, Generator, GeneratorJson, Presentation,
    PresentationAlgebra, PresentationJson,
};
pub use sections::GradedSectionAlgebra;
pub use shifting::{ideal_membership, Membership, ShiftingFamily};

use thiserror::Error;

use crate::exactmath::MonomialError;
use crate::grading::{CharacterError, GradingError};
use crate::ratcurve::CurveError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error("{0:?} is not in the kernel of the map to the Picard group")]
    NotInKernel(Vec<i64>),
    #[error("function is not a section in degree {0:?}")]
    NotASection(Vec<i64>),
    #[error("degree {0:?} lies outside the box")]
    BoxTooSmall(Vec<i64>),
    #[error("weight monoid is not pointed: degree {0:?} has a nonzero component but no positive weight")]
    NonPointedMonoid(Vec<i64>),
    #[error("generators do not span the component of degree {0:?}")]
    GeneratorsIncomplete(Vec<i64>),
    #[error("degree data do not match: {0}")]
    DegreeMismatch(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}
