//! Finite abelian groups, bicharacters and the universal R-matrix of `CG`.

mod abelian;
mod bicharacter;
mod cyclotomic;
mod rmatrix;

pub use abelian::{gcd, Character, FiniteAbelianGroup, GroupElement};
pub use bicharacter::{
    bicharacter_count, braid, commutation_factors, enumerate_bicharacters, enumerate_bicharacters_bounded,
    format_matrix, parse_matrix, Bicharacter, GradedVector,
};
pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic};
pub use rmatrix::{
    bicharacter_to_rmatrix, braiding_on_lines, check_quasitriangular, QuasitriangularReport, RCoefficient, RMatrix,
};
