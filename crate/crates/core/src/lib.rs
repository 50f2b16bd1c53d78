//! Exact computer algebra for the perturbation dg bialgebra and its
//! applications to homotopy transfer.
//!
//! * [`algebra`]: normal forms, differential, coproduct and truncated series
//!   in the localized perturbation algebra, plus a catalog of identities that
//!   is verified symbolically.
//! * [`linear`]: Hodge decompositions of finite-dimensional complexes,
//!   Maurer-Cartan perturbations, the perturbation lemma and gauge
//!   conjugation, and evaluation of symbolic elements as operators.
//! * [`ainf`]: arity-truncated A-infinity algebras and modules, minimal
//!   models, splitting into minimal and contractible parts, and admissible-tree
//!   transfer.
//! * [`io`]: JSON problem/report files and the command-line driver.

pub mod ainf;
pub mod algebra;
pub mod gen;
pub mod io;
pub mod linear;
pub mod report;
pub mod scalar;

pub use report::{IdentityReport, Status, Witness};
pub use scalar::{Scalar, Q};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown series constant {0:?}")]
    UnknownConstant(String),
    #[error("constant term is not invertible in H: {0}")]
    NotInvertible(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a chain complex: d^2 != 0 in degree {degree}")]
    NotComplex { degree: i32 },
    #[error("Maurer-Cartan equation fails in degree {degree}: (d+x)^2 has entry {entry} at ({row}, {col})")]
    MaurerCartan {
        degree: i32,
        row: usize,
        col: usize,
        entry: String,
    },
    #[error("1+{which} is singular in degree {degree} (determinant 0)")]
    Singular { which: &'static str, degree: i32 },
    #[error("series cannot be evaluated exactly: {0}")]
    Nilpotency(String),
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("arity error: {0}")]
    Arity(String),
    #[error("tree and series transfer disagree at arity {arity}: {detail}")]
    TransferMismatch { arity: usize, detail: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("semantic error: {0}")]
    Semantic(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
