//! Exact evaluation on rational matrices, positroid cell sampling and
//! identity verification.

mod cell;
mod identities;
mod matrix;

pub use cell::{
    boundary_measurement, check_profile, random_weights, sample_cell_point, vanishing_set,
    CellPoint,
};
pub use identities::{
    evaluate, generic_points, inject_fault, known_identities, pluecker_relation_check,
    verify_identities, Factor, Failure, Identity, IdentityResult, PointKind, Scope, Term,
    VerificationReport, CLOSURE, EXCHANGE_CELL, EXCHANGE_GENERIC, LABELS, PROFILE, THREE_TERM,
};
pub use matrix::{determinant, format_rational, parse_rational, rank, Rational, RationalMatrix};
