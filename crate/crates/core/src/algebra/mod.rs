//! Generators-and-relations presentations of the particle and paraparticle
//! algebras, with a numeric relation verifier and a grading checker.

mod grading;
mod presentation;
mod verify;

pub use grading::{check_grading, DegreeAssignment, GradingReport, GradingViolation};
pub use presentation::{
    relations, AlgebraKind, Expr, GeneratorLabel, RelationInstance, RelationRow, Sign, Species, Term,
};
pub use verify::{generator_map_from_dense, verify_relations, GeneratorMap, RelationReport, RelationResidual};
