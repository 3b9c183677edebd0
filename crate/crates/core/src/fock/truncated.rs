use serde::Serialize;

use crate::algebra::Species;
use crate::linalg::{ComplexMatrix, SparseMatrix};
use crate::{Error, Result, C64};

/// A single mode: a boson truncated at `cutoff` quanta or a two-level fermion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedFock {
    pub species: Species,
    /// Highest occupation; always 1 for fermions.
    pub cutoff: usize,
}

impl TruncatedFock {
    pub fn boson(cutoff: usize) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::arg("boson cutoff must be at least 1"));
        }
        Ok(TruncatedFock {
            species: Species::Boson,
            cutoff,
        })
    }

    pub fn fermion() -> Self {
        TruncatedFock {
            species: Species::Fermion,
            cutoff: 1,
        }
    }

    pub fn dim(&self) -> usize {
        self.cutoff + 1
    }

    /// `|n⟩ ↦ √(n+1) |n+1⟩`, zero on the top state.
    pub fn raising(&self) -> SparseMatrix {
        let d = self.dim();
        SparseMatrix::from_triplets(d, d, (0..d - 1).map(|n| (n + 1, n, C64::new(((n + 1) as f64).sqrt(), 0.0))))
            .expect("indices in range")
    }

    pub fn lowering(&self) -> SparseMatrix {
        self.raising().adjoint()
    }

    pub fn number(&self) -> SparseMatrix {
        let diag: Vec<C64> = (0..self.dim()).map(|n| C64::new(n as f64, 0.0)).collect();
        SparseMatrix::from_diagonal(&diag)
    }

    /// `diag(s^n)` for a sign `s = ±1`.
    pub fn parity(&self, sign: i32) -> SparseMatrix {
        let diag: Vec<C64> = (0..self.dim())
            .map(|n| C64::new(if sign < 0 && n % 2 == 1 { -1.0 } else { 1.0 }, 0.0))
            .collect();
        SparseMatrix::from_diagonal(&diag)
    }
}

/// `(b⁺, b⁻, N)` on `span{|0⟩, …, |cutoff⟩}`.
pub fn boson_ops(cutoff: usize) -> Result<(ComplexMatrix, ComplexMatrix, ComplexMatrix)> {
    let m = TruncatedFock::boson(cutoff)?;
    Ok((m.raising().to_dense()?, m.lowering().to_dense()?, m.number().to_dense()?))
}

/// `(f⁺, f⁻, N)` with `f⁺ = [[0,0],[1,0]]` and `N = f⁺f⁻ = diag(0,1)`.
pub fn fermion_ops() -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let m = TruncatedFock::fermion();
    (
        m.raising().to_dense().expect("2x2"),
        m.lowering().to_dense().expect("2x2"),
        m.number().to_dense().expect("2x2"),
    )
}
