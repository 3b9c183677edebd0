//! Computational parastatistics workbench.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: dense and sparse complex matrices, Kronecker products,
//!   brackets, Hermitian eigendecomposition and cyclic invariant subspaces.
//! - [`group`]: finite abelian groups, bicharacters, commutation factors and
//!   the universal R-matrix of the group algebra, in exact cyclotomic arithmetic.
//! - [`algebra`]: generators-and-relations presentations of the ten particle
//!   and paraparticle algebras, a numeric relation verifier and a grading checker.
//! - [`fock`]: truncated boson/fermion Fock spaces and the braided Green ansatz.
//! - [`pbf`]: the Fock-like module of the relative parabose set with one
//!   paraboson and one parafermion, its `V(m,n)` ladder and commutation-factor search.
//! - [`jc`]: generalized Jaynes-Cummings Hamiltonians, spectra and quench dynamics.

pub mod algebra;
pub mod error;
pub mod fock;
pub mod group;
pub mod jc;
pub mod limits;
pub mod linalg;
pub mod pbf;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
