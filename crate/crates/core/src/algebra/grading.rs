use serde::Serialize;

use crate::algebra::presentation::{relations, AlgebraKind, Species, Term};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::{Error, Result};

/// Degrees of the boson-like and fermion-like generators; the degree depends
/// only on the species.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeAssignment {
    pub group: FiniteAbelianGroup,
    pub boson: GroupElement,
    pub fermion: GroupElement,
}

impl DegreeAssignment {
    pub fn new(group: FiniteAbelianGroup, boson: GroupElement, fermion: GroupElement) -> Result<Self> {
        for g in [&boson, &fermion] {
            if !group.contains(g) {
                return Err(Error::arg(format!("degree {g} is not an element of {group}")));
            }
        }
        Ok(DegreeAssignment { group, boson, fermion })
    }

    pub fn of(&self, species: Species) -> &GroupElement {
        match species {
            Species::Boson => &self.boson,
            Species::Fermion => &self.fermion,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GradingViolation {
    pub relation: String,
    pub lhs_degree: GroupElement,
    pub term: String,
    pub term_degree: GroupElement,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradingReport {
    pub homogeneous: bool,
    pub relations_checked: usize,
    pub violations: Vec<GradingViolation>,
}

/// Checks that every relation is homogeneous: each nonzero right-hand term
/// has the degree of the left-hand word (the identity has degree `e`).
pub fn check_grading(kind: AlgebraKind, m_b: usize, m_f: usize, deg: &DegreeAssignment) -> Result<GradingReport> {
    let rels = relations(kind, m_b, m_f)?;
    let g = &deg.group;
    let mut violations = Vec::new();
    for r in &rels {
        let lhs_degree = r
            .lhs
            .generators()
            .iter()
            .fold(g.identity(), |acc, l| g.op(&acc, deg.of(l.species)));
        for &(_, term) in &r.rhs {
            let term_degree = match term {
                Term::Identity => g.identity(),
                Term::Gen(l) => deg.of(l.species).clone(),
            };
            if term_degree != lhs_degree {
                violations.push(GradingViolation {
                    relation: r.render(),
                    lhs_degree: lhs_degree.clone(),
                    term: term.to_string(),
                    term_degree,
                });
            }
        }
    }
    Ok(GradingReport {
        homogeneous: violations.is_empty(),
        relations_checked: rels.len(),
        violations,
    })
}
