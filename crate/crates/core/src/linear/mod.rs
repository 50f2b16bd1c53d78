//! Exact linear algebra realizing modules over the perturbation algebra.

pub mod evaluate;
pub mod graded;
pub mod hodge;
pub mod matrix;
pub mod perturb;

pub use evaluate::{evaluate_element, evaluate_series, Representation};
pub use graded::{cohomology_dims, GradedMap, GradedSpace};
pub use hodge::{build_hodge, verify_hodge, verify_hodge_against, ChainComplex, HodgeData};
pub use matrix::Matrix;
pub use perturb::{
    conjugation_perturbation, gauge_conjugation, make_perturbation, retract, transferred_structure,
    Perturbation, Retract, Transferred,
};
