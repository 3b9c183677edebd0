use std::collections::VecDeque;

use crate::linalg::dense::ComplexMatrix;
use crate::linalg::sparse::{SparseMatrix, SparseVec};
use crate::{Error, Result, C64};

pub const DEFAULT_CYCLIC_TOL: f64 = 1e-9;

/// Anything that can act on a sparse vector.
pub trait LinearOperator {
    fn dim(&self) -> usize;
    fn apply_sparse(&self, v: &SparseVec) -> Result<SparseVec>;
}

impl LinearOperator for SparseMatrix {
    fn dim(&self) -> usize {
        self.rows()
    }

    fn apply_sparse(&self, v: &SparseVec) -> Result<SparseVec> {
        self.apply(v)
    }
}

impl LinearOperator for ComplexMatrix {
    fn dim(&self) -> usize {
        self.rows()
    }

    fn apply_sparse(&self, v: &SparseVec) -> Result<SparseVec> {
        if v.dim() != self.cols() {
            return Err(Error::shape("operator/vector length mismatch"));
        }
        let mut out = vec![C64::new(0.0, 0.0); self.rows()];
        for &(j, b) in v.entries() {
            for (i, o) in out.iter_mut().enumerate() {
                *o += self[(i, j)] * b;
            }
        }
        Ok(SparseVec::from_dense(&out))
    }
}

/// Orthonormal basis of an invariant subspace, one sparse column per vector,
/// in construction order.
#[derive(Clone, Debug)]
pub struct OrthoBasis {
    dim: usize,
    vectors: Vec<SparseVec>,
}

impl OrthoBasis {
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        SparseMatrix::from_sparse_columns(self.dim, &self.vectors)
            .expect("basis vectors share the ambient dimension")
    }

    pub fn to_dense(&self) -> Result<ComplexMatrix> {
        self.to_sparse().to_dense()
    }

    /// Reorders the vectors by a stable sort on `key`.
    pub fn sort_by_key<K: Ord>(&mut self, mut key: impl FnMut(&SparseVec) -> K) {
        let mut keyed: Vec<(K, usize, SparseVec)> = std::mem::take(&mut self.vectors)
            .into_iter()
            .enumerate()
            .map(|(i, v)| (key(&v), i, v))
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        self.vectors = keyed.into_iter().map(|(_, _, v)| v).collect();
    }
}

/// Smallest subspace containing `seed` and closed under every operator in `ops`.
///
/// Built breadth-first: each accepted vector is queued, every operator is
/// applied to it in input order, and the image is orthogonalized against the
/// basis so far (modified Gram-Schmidt, two passes). Images whose residual
/// norm is at most `tol` are discarded.
pub fn cyclic_subspace<O: LinearOperator>(ops: &[O], seed: &SparseVec, tol: f64) -> Result<OrthoBasis> {
    cyclic_subspace_masked(ops, seed, tol, None)
}

/// As [`cyclic_subspace`], but every image is first restricted to the
/// coordinates flagged in `admissible`, i.e. closure under `P O P` for the
/// coordinate projector `P`.
pub fn cyclic_subspace_masked<O: LinearOperator>(
    ops: &[O],
    seed: &SparseVec,
    tol: f64,
    admissible: Option<&[bool]>,
) -> Result<OrthoBasis> {
    let dim = seed.dim();
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::arg("tolerance must be positive"));
    }
    if let Some(op) = ops.iter().find(|o| o.dim() != dim) {
        return Err(Error::shape(format!(
            "operator of dimension {} for a seed of length {dim}",
            op.dim()
        )));
    }
    if let Some(mask) = admissible {
        if mask.len() != dim {
            return Err(Error::shape("admissible mask length differs from seed length"));
        }
    }
    let restrict = |v: SparseVec| match admissible {
        Some(mask) => v.mask(mask),
        None => v,
    };
    let seed = restrict(seed.clone());
    let seed_norm = seed.norm();
    if seed_norm <= tol {
        return Err(Error::arg("seed vector is zero"));
    }

    let mut basis = OrthoBasis {
        dim,
        vectors: vec![seed.scale(C64::new(1.0 / seed_norm, 0.0))],
    };
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(idx) = queue.pop_front() {
        for op in ops {
            let image = restrict(op.apply_sparse(&basis.vectors[idx])?);
            if let Some(v) = orthogonalize(&basis.vectors, image, tol) {
                basis.vectors.push(v);
                queue.push_back(basis.vectors.len() - 1);
            }
        }
    }
    Ok(basis)
}

fn orthogonalize(basis: &[SparseVec], mut w: SparseVec, tol: f64) -> Option<SparseVec> {
    if w.norm() <= tol {
        return None;
    }
    for _pass in 0..2 {
        for q in basis {
            let c = q.dot(&w);
            if c.norm() > 0.0 {
                w = w.axpy(-c, q);
            }
        }
    }
    let n = w.norm();
    (n > tol).then(|| w.scale(C64::new(1.0 / n, 0.0)))
}

/// Dense-matrix convenience wrapper returning the basis as columns.
pub fn cyclic_subspace_dense(ops: &[ComplexMatrix], seed: &[C64], tol: f64) -> Result<ComplexMatrix> {
    cyclic_subspace(ops, &SparseVec::from_dense(seed), tol)?.to_dense()
}
