//! Finitely generated abelian groups presented by integer relation matrices.
//!
//! Picard groups, groups of line bundles and toric class groups all live
//! here. Every group carries its Smith normal form, and isomorphism is tested
//! by comparing rank and invariant factors.

mod character;
mod group;
mod snf;

pub use character::{extend_character, pow_rational, rational_root, Character, CharacterError};
pub use group::{cokernel, lift_onto_free, FGAbelianGroup, GradingError, GroupHom, GroupSummary};
pub use snf::{integer_kernel, row_hermite, smith_normal_form, solve_integer, IntMatrix, Snf};
