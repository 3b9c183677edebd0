//! Complex linear algebra kernel shared by every other module.

mod dense;
mod eig;
mod krylov;
mod sparse;

pub use dense::{bracket, inner, kron, norm, BracketKind, ComplexMatrix};
pub use eig::{hermitian_eig, hermitian_eig_blocked, hermitian_eigenvalues, EigenDecomposition, HERMITIAN_TOL};
pub use krylov::{
    cyclic_subspace, cyclic_subspace_dense, cyclic_subspace_masked, LinearOperator, OrthoBasis,
    DEFAULT_CYCLIC_TOL,
};
pub use sparse::{sparse_bracket, sparse_kron, sparse_kron_all, SparseMatrix, SparseVec};
