//! Arity-truncated A∞ algebras and modules over exact rationals.

pub mod decomposition;
pub mod hodge;
pub mod module;
pub mod morphism;
pub mod structure;
pub mod tensor;
pub mod transfer;
pub mod trees;

pub use decomposition::{decomposition, Decomposition};
pub use hodge::{coextend_hodge_check, TensorHodge};
pub use module::{
    module_check, transfer_module, tree_apply, AInfModule, ModuleMorphism, ModuleTransfer,
};
pub use morphism::{morphism_check, AInfMorphism};
pub use structure::{codifferential_check, AInfStructure};
pub use tensor::{Basis, Idx, MultiMap, SVec, TVec, TWord};
pub use transfer::{perturbed_hodge_reports, transfer_minimal, Minimal};
pub use trees::{enumerate_admissible_trees, AdmissibleTree};
