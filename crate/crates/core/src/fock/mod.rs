//! Truncated Fock spaces and the braided Green ansatz.

mod copy;
mod green;
mod reference;
mod submodule;
mod truncated;

pub use copy::{CopyAlgebra, CopySpace};
pub use green::{
    build_green_rep, copy_algebra_for, default_degrees, default_theta, green_embed, BasisState, GreenAnsatzRep,
};
pub(crate) use green::op_degree;
pub use reference::{pochhammer, raising_element, single_mode_reference, SingleModeReference};
pub use submodule::{fock_submodule, FockSubmodule};
pub use truncated::{boson_ops, fermion_ops, TruncatedFock};
