//! Truncated polynomial rings and the inverse-limit approach to inverting
//! polynomial endomorphisms.
//!
//! The pieces, bottom up: exact coefficient fields ([`field`]), sparse
//! polynomials and endomorphisms ([`poly`]), truncated rings ([`trunc`]) and
//! their endomorphisms ([`endo`]), projection and lifting across truncation
//! levels ([`limit`]), brute-force point maps over finite fields
//! ([`points`]), and the command layer ([`cli`]).

pub mod cli;
pub mod endo;
pub mod error;
pub mod field;
pub mod limit;
pub mod matrix;
pub mod parse;
pub mod points;
pub mod poly;
pub mod trunc;

pub use endo::{AutomorphismVerdict, TruncatedEndo};
pub use error::{Error, Result};
pub use field::{CoefficientField, FieldKind, Scalar};
pub use limit::{
    build_family, check_coherence, lift_invert, project_endo, translate_normalize, CoherentFamily,
    InversionOutcome, Ladder, LiftOptions, Normalization,
};
pub use parse::{parse_map, parse_polynomial, MapDocument};
pub use points::{enumerate_report, maximal_ideal_image, point_map_eval, PointMapReport};
pub use poly::{JacobianCheck, Monomial, PolyEndo, Polynomial, ShiftDirection};
pub use trunc::{TruncatedElement, TruncationKind, TruncationSpec};
