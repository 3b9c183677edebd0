use std::collections::BTreeMap;

use crate::algebra::GeneratorLabel;
use crate::fock::green::GreenAnsatzRep;
use crate::linalg::{cyclic_subspace_masked, ComplexMatrix, OrthoBasis, SparseMatrix};
use crate::{Error, Result};

/// The cyclic module generated from the vacuum, with every generator
/// compressed onto it.
#[derive(Clone, Debug)]
pub struct FockSubmodule {
    pub basis: OrthoBasis,
    /// Total quanta (bosons plus fermions) of each basis vector.
    pub levels: Vec<u32>,
    pub generators: BTreeMap<GeneratorLabel, ComplexMatrix>,
    pub full_dim: usize,
    /// Highest total boson quanta admitted during the closure.
    pub boson_quanta_limit: usize,
}

impl FockSubmodule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `dim(full space) − dim(submodule)`; the complement is not decomposed.
    pub fn complement_dim(&self) -> usize {
        self.full_dim - self.basis.len()
    }

    pub fn generator(&self, label: GeneratorLabel) -> Result<&ComplexMatrix> {
        self.generators
            .get(&label)
            .ok_or_else(|| Error::arg(format!("submodule has no generator {label}")))
    }

    /// Basis positions at each level, in order.
    pub fn level_indices(&self, level: u32) -> Vec<usize> {
        (0..self.levels.len()).filter(|&i| self.levels[i] == level).collect()
    }
}

/// Vacuum-seeded cyclic subspace under all generators of `rep`.
///
/// The closure runs under `P O P`, with `P` keeping states of at most
/// `cutoff` boson quanta in total, so states that would need more quanta
/// than any single truncated mode holds never enter the basis. Vectors are
/// ordered by total quantum number, then construction order.
pub fn fock_submodule(rep: &GreenAnsatzRep, tol: f64) -> Result<FockSubmodule> {
    let limit = rep.copy.cutoff;
    let mask = if rep.boson_modes() > 0 {
        Some(rep.boson_quanta_mask(limit))
    } else {
        None
    };
    let ops: Vec<SparseMatrix> = rep.generators.values().cloned().collect();
    let mut basis = cyclic_subspace_masked(&ops, &rep.vacuum(), tol, mask.as_deref())?;

    let level_of = |v: &crate::linalg::SparseVec| -> Result<u32> {
        let mut levels = v
            .entries()
            .iter()
            .filter(|(_, z)| z.norm() > tol)
            .map(|&(i, _)| rep.boson_quanta(i) + rep.fermion_quanta(i));
        let first = levels.next().ok_or_else(|| Error::Structure("empty basis vector".into()))?;
        if levels.any(|l| l != first) {
            return Err(Error::Structure("basis vector mixes quantum numbers".into()));
        }
        Ok(first)
    };
    for v in basis.vectors() {
        level_of(v)?;
    }
    basis.sort_by_key(|v| level_of(v).expect("checked above"));
    let levels = basis.vectors().iter().map(level_of).collect::<Result<Vec<u32>>>()?;

    let b = basis.to_sparse();
    let mut generators = BTreeMap::new();
    for (label, op) in &rep.generators {
        generators.insert(*label, op.compress(&b)?);
    }
    Ok(FockSubmodule {
        basis,
        levels,
        generators,
        full_dim: rep.dim(),
        boson_quanta_limit: limit,
    })
}
