use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::presentation::{relations, AlgebraKind, Expr, RelationInstance, RelationRow, Species, Term};
use crate::algebra::GeneratorLabel;
use crate::linalg::{ComplexMatrix, SparseMatrix};
use crate::{Error, Result, C64};

/// Concrete matrices for the generators of a presentation.
pub type GeneratorMap = BTreeMap<GeneratorLabel, SparseMatrix>;

pub fn generator_map_from_dense(ops: impl IntoIterator<Item = (GeneratorLabel, ComplexMatrix)>) -> GeneratorMap {
    ops.into_iter().map(|(l, m)| (l, SparseMatrix::from_dense(&m))).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationResidual {
    pub relation: String,
    pub row: RelationRow,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub kind: AlgebraKind,
    pub boson_modes: usize,
    pub fermion_modes: usize,
    pub dimension: usize,
    pub interior_states: usize,
    pub tolerance: f64,
    pub max_residual: f64,
    pub worst_relation: Option<String>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
    /// Sorted by residual, largest first; ties keep table order.
    pub relations: Vec<RelationResidual>,
}

fn mode_count(rep: &GeneratorMap, species: Species) -> usize {
    rep.keys().filter(|l| l.species == species).map(|l| l.mode).max().unwrap_or(0)
}

/// Residual of every relation instance of `kind` on `rep`.
///
/// Mode counts are read off `rep` for the species `kind` uses. With an
/// interior mask `P`, the residual of a relation is `‖P (LHS − RHS) P‖_max`,
/// evaluated on the flagged columns only.
pub fn verify_relations(
    rep: &GeneratorMap,
    kind: AlgebraKind,
    interior: Option<&[bool]>,
    tol: f64,
) -> Result<RelationReport> {
    let m_b = if kind.uses_bosons() { mode_count(rep, Species::Boson) } else { 0 };
    let m_f = if kind.uses_fermions() { mode_count(rep, Species::Fermion) } else { 0 };
    let instances = relations(kind, m_b, m_f)?;

    let dim = rep
        .values()
        .next()
        .map(SparseMatrix::rows)
        .ok_or_else(|| Error::arg("empty representation"))?;
    if let Some(bad) = rep.values().find(|m| m.rows() != dim || m.cols() != dim) {
        return Err(Error::shape(format!(
            "generator of shape {}x{} in a representation of dimension {dim}",
            bad.rows(),
            bad.cols()
        )));
    }
    for inst in &instances {
        for g in inst.lhs.generators() {
            if !rep.contains_key(&g) {
                return Err(Error::arg(format!("representation has no matrix for generator {g}")));
            }
        }
    }

    let all = vec![true; dim];
    let mask = match interior {
        Some(m) if m.len() != dim => {
            return Err(Error::shape(format!("interior mask of length {} for dimension {dim}", m.len())))
        }
        Some(m) => m,
        None => &all[..],
    };
    let cols: Vec<usize> = (0..dim).filter(|&i| mask[i]).collect();
    if cols.is_empty() {
        return Err(Error::arg("interior projector selects no states"));
    }
    let block = SparseMatrix::identity(dim).select_columns(&cols);

    let mut results = Vec::with_capacity(instances.len());
    for inst in &instances {
        let residual = residual_on(rep, inst, &block, mask)?;
        results.push(RelationResidual {
            relation: inst.render(),
            row: inst.row,
            residual,
        });
    }
    results.sort_by(|a, b| b.residual.total_cmp(&a.residual));
    let max_residual = results.first().map_or(0.0, |r| r.residual);
    Ok(RelationReport {
        kind,
        boson_modes: m_b,
        fermion_modes: m_f,
        dimension: dim,
        interior_states: cols.len(),
        tolerance: tol,
        max_residual,
        worst_relation: results.first().map(|r| r.relation.clone()),
        passed: max_residual <= tol,
        note: kind.cross_relations_note(),
        relations: results,
    })
}

/// `expr · block`, evaluated right to left so only products with the block
/// of columns are ever formed.
fn apply(rep: &GeneratorMap, expr: &Expr, block: &SparseMatrix) -> Result<SparseMatrix> {
    match expr {
        Expr::Gen(g) => rep[g].try_matmul(block),
        Expr::Bracket(kind, a, b) => {
            let ab = apply(rep, a, &apply(rep, b, block)?)?;
            let ba = apply(rep, b, &apply(rep, a, block)?)?;
            ab.axpy(C64::new(kind.sign(), 0.0), &ba)
        }
    }
}

fn residual_on(rep: &GeneratorMap, inst: &RelationInstance, block: &SparseMatrix, mask: &[bool]) -> Result<f64> {
    let mut diff = apply(rep, &inst.lhs, block)?;
    for &(c, term) in &inst.rhs {
        let t = match term {
            Term::Identity => block.clone(),
            Term::Gen(g) => rep
                .get(&g)
                .ok_or_else(|| Error::arg(format!("representation has no matrix for generator {g}")))?
                .try_matmul(block)?,
        };
        diff = diff.axpy(C64::new(-f64::from(c), 0.0), &t)?;
    }
    Ok(diff.max_abs_in_rows(mask))
}
