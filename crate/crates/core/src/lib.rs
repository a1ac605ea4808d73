//! Constacyclic codes of length p^s over R = F_{p^m} + uF_{p^m}, u² = 0.
//!
//! Field and ring arithmetic, the quotient rings R[x]/(x^{p^s} − α), ideal
//! construction from the four-type classification, closed-form distances,
//! brute-force oracles and the isometry between cyclic and α-constacyclic
//! codes.

pub mod code;
pub mod distance;
pub mod error;
pub mod field;
pub mod isometry;
pub mod limits;
pub mod linalg;
pub mod quotient;
pub mod ring;

pub use code::{Code, CodeKind, CodeSpec, RawCodeSpec, SpecError};
pub use distance::{
    distance_table, spec_distance_formula, torsion_distance_formula, torsion_exponent, torsion_exponent_distance,
    verify_sweep, DistanceCase, SweepReport,
};
pub use error::{Error, Result};
pub use field::{ElementInput, FieldElement, FieldParams};
pub use isometry::{CheckMode, IsometryContext, IsometryReport};
pub use limits::Limits;
pub use quotient::{AdicCoords, QuotientParams, QuotientPoly};
pub use ring::{ChainRing, RuElement};
