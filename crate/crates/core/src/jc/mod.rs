//! Generalized Jaynes-Cummings Hamiltonians on the paraboson-parafermion ladder.

mod dynamics;
mod hamiltonian;

pub use dynamics::{evolve, spectrum, QuenchResult};
pub use hamiltonian::{
    build_green_hamiltonian, build_hamiltonian, excitation_keys, interaction, selection_rule_check, Coupling, HamiltonianKind, JCParams, SelectionReport,
};
