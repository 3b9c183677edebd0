use std::fmt;

use serde::Serialize;

use crate::algebra::{DegreeAssignment, GeneratorLabel, Sign, Species};
use crate::fock::truncated::TruncatedFock;
use crate::group::GroupElement;
use crate::linalg::{sparse_kron_all, SparseMatrix};
use crate::{Error, Result};

/// The ordinary particle algebra realized inside one Green copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CopyAlgebra {
    /// Bosons only, all modes commuting.
    Ccr,
    /// Fermions only, distinct modes anticommuting.
    Car,
    /// Bosons and fermions, cross-species commuting.
    Ws,
    /// Bosons and fermions, cross-species anticommuting.
    Was,
}

impl CopyAlgebra {
    /// `+1` if a generator of species `a` commutes with one of species `b` on
    /// a different mode, `-1` if they anticommute.
    pub fn exchange_sign(self, a: Species, b: Species) -> i32 {
        use Species::*;
        match (a, b) {
            (Boson, Boson) => 1,
            (Fermion, Fermion) => -1,
            _ => match self {
                CopyAlgebra::Was => -1,
                _ => 1,
            },
        }
    }
}

impl fmt::Display for CopyAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CopyAlgebra::Ccr => "CCR",
            CopyAlgebra::Car => "CAR",
            CopyAlgebra::Ws => "Ws",
            CopyAlgebra::Was => "Was",
        })
    }
}

/// One copy of the Green ansatz: boson modes `1..=m_b` followed by fermion
/// modes `1..=m_f`, tensored in that order. Mode operators carry a
/// Jordan-Wigner style parity string over earlier factors so that the
/// exchange signs of [`CopyAlgebra::exchange_sign`] hold exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CopySpace {
    pub algebra: CopyAlgebra,
    pub boson_modes: usize,
    pub fermion_modes: usize,
    pub cutoff: usize,
    factors: Vec<TruncatedFock>,
}

impl CopySpace {
    pub fn new(algebra: CopyAlgebra, boson_modes: usize, fermion_modes: usize, cutoff: usize) -> Result<Self> {
        let (needs_b, needs_f) = match algebra {
            CopyAlgebra::Ccr => (true, false),
            CopyAlgebra::Car => (false, true),
            CopyAlgebra::Ws | CopyAlgebra::Was => (true, true),
        };
        if needs_b != (boson_modes > 0) || needs_f != (fermion_modes > 0) {
            return Err(Error::arg(format!(
                "{algebra} copies cannot carry {boson_modes} boson and {fermion_modes} fermion modes"
            )));
        }
        let mut factors = Vec::with_capacity(boson_modes + fermion_modes);
        for _ in 0..boson_modes {
            factors.push(TruncatedFock::boson(cutoff)?);
        }
        factors.extend(std::iter::repeat_n(TruncatedFock::fermion(), fermion_modes));
        Ok(CopySpace {
            algebra,
            boson_modes,
            fermion_modes,
            cutoff,
            factors,
        })
    }

    pub fn factors(&self) -> &[TruncatedFock] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(TruncatedFock::dim).product()
    }

    fn factor_index(&self, species: Species, mode: usize) -> Result<usize> {
        let (count, offset) = match species {
            Species::Boson => (self.boson_modes, 0),
            Species::Fermion => (self.fermion_modes, self.boson_modes),
        };
        if mode == 0 || mode > count {
            return Err(Error::arg(format!(
                "mode {mode} out of range 1..={count} for {}",
                species.symbol()
            )));
        }
        Ok(offset + mode - 1)
    }

    /// Occupation numbers of a copy basis state, one per factor.
    pub fn occupation(&self, mut index: usize) -> Vec<u32> {
        let mut occ = vec![0u32; self.factors.len()];
        for (o, f) in occ.iter_mut().zip(&self.factors).rev() {
            *o = (index % f.dim()) as u32;
            index /= f.dim();
        }
        occ
    }

    pub fn boson_quanta(&self, index: usize) -> u32 {
        self.occupation(index)[..self.boson_modes].iter().sum()
    }

    pub fn fermion_quanta(&self, index: usize) -> u32 {
        self.occupation(index)[self.boson_modes..].iter().sum()
    }

    /// The ladder operator `b_i^±` or `f_j^±` acting on this copy.
    pub fn mode_op(&self, label: GeneratorLabel) -> Result<SparseMatrix> {
        let at = self.factor_index(label.species, label.mode)?;
        let parts: Vec<SparseMatrix> = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, f)| {
                if i < at {
                    f.parity(self.algebra.exchange_sign(label.species, f.species))
                } else if i == at {
                    match label.sign {
                        Sign::Plus => f.raising(),
                        Sign::Minus => f.lowering(),
                    }
                } else {
                    SparseMatrix::identity(f.dim())
                }
            })
            .collect();
        sparse_kron_all(&parts)
    }

    /// Occupation number of one mode.
    pub fn number_op(&self, species: Species, mode: usize) -> Result<SparseMatrix> {
        let at = self.factor_index(species, mode)?;
        let parts: Vec<SparseMatrix> = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, f)| if i == at { f.number() } else { SparseMatrix::identity(f.dim()) })
            .collect();
        sparse_kron_all(&parts)
    }

    /// Degree of each copy basis vector: `n_b · deg(b) + n_f · deg(f)`.
    pub fn basis_degrees(&self, deg: &DegreeAssignment) -> Vec<GroupElement> {
        let g = &deg.group;
        (0..self.dim())
            .map(|idx| {
                let b = g.power(&deg.boson, self.boson_quanta(idx));
                let f = g.power(&deg.fermion, self.fermion_quanta(idx));
                g.op(&b, &f)
            })
            .collect()
    }
}
