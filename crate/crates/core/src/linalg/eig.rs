use faer::{Mat, Side};

use crate::linalg::dense::ComplexMatrix;
use crate::{Error, Result, C64};

/// Relative tolerance for accepting a matrix as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues in ascending order with the matching unit eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// `‖H - V Λ V†‖_max`.
    pub fn reconstruction_residual(&self, h: &ComplexMatrix) -> f64 {
        let lam: Vec<C64> = self.values.iter().map(|&x| C64::new(x, 0.0)).collect();
        let v = &self.vectors;
        let vl = v * &ComplexMatrix::from_diagonal(&lam);
        (h - &(&vl * &v.adjoint())).max_abs()
    }

    /// `‖V†V - I‖_max`.
    pub fn orthonormality_defect(&self) -> f64 {
        let v = &self.vectors;
        (&(&v.adjoint() * v) - &ComplexMatrix::identity(v.cols())).max_abs()
    }
}

/// Hermitian eigendecomposition.
///
/// Accepts `h` when `‖h - h†‖_max ≤ 1e-10 · max(1, ‖h‖_max)`. Each eigenvector
/// is rescaled so that its first component of modulus above `1e-12` is real
/// and positive.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<EigenDecomposition> {
    let n = check_hermitian(h)?;
    if n == 0 {
        return Ok(EigenDecomposition {
            values: Vec::new(),
            vectors: ComplexMatrix::zeros(0, 0),
        });
    }
    let (s, u) = if is_real(h) { real_eigen(h, n)? } else { complex_eigen(h, n)? };

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| s[i].total_cmp(&s[j]));
    let values: Vec<f64> = order.iter().map(|&k| s[k]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let phase = (0..n)
            .map(|i| u[(i, k)])
            .find(|z| z.norm() > 1e-12)
            .map(|z| z.conj() / z.norm())
            .unwrap_or(C64::new(1.0, 0.0));
        for i in 0..n {
            vectors[(i, col)] = u[(i, k)] * phase;
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = check_hermitian(h)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut values = if is_real(h) {
        real_part(h, n).self_adjoint_eigenvalues(Side::Lower).map_err(no_convergence)?
    } else {
        hermitian_part(h, n).self_adjoint_eigenvalues(Side::Lower).map_err(no_convergence)?
    };
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Full eigendecomposition of a matrix that is block diagonal with respect to
/// the coordinate labels `keys`: every block of equal keys is solved on its
/// own and the eigenpairs are merged in ascending order. Entries coupling
/// different keys must be exactly zero.
pub fn hermitian_eig_blocked<K: Ord + Copy>(h: &ComplexMatrix, keys: &[K]) -> Result<EigenDecomposition> {
    let n = check_hermitian(h)?;
    if keys.len() != n {
        return Err(Error::shape(format!("{} block keys for a {n}x{n} matrix", keys.len())));
    }
    for j in 0..n {
        for i in 0..n {
            if keys[i] != keys[j] && h[(i, j)] != C64::new(0.0, 0.0) {
                return Err(Error::Structure(format!(
                    "entry ({i},{j}) couples different blocks"
                )));
            }
        }
    }
    let mut blocks: std::collections::BTreeMap<K, Vec<usize>> = std::collections::BTreeMap::new();
    for (i, &k) in keys.iter().enumerate() {
        blocks.entry(k).or_default().push(i);
    }
    let mut pairs: Vec<(f64, usize, Vec<C64>)> = Vec::with_capacity(n);
    for idx in blocks.values() {
        let e = hermitian_eig(&h.select(idx, idx))?;
        for (c, &val) in e.values.iter().enumerate() {
            pairs.push((val, idx[0], e.vectors.col(c)));
        }
    }
    // Ties keep block order, so the result is deterministic.
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut vectors = ComplexMatrix::zeros(n, n);
    let mut values = Vec::with_capacity(n);
    for (col, (val, first, local)) in pairs.into_iter().enumerate() {
        values.push(val);
        let idx = &blocks[&keys[first]];
        for (r, &i) in idx.iter().enumerate() {
            vectors[(i, col)] = local[r];
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

fn is_real(h: &ComplexMatrix) -> bool {
    h.as_slice().iter().all(|z| z.im == 0.0)
}

fn no_convergence(e: impl std::fmt::Debug) -> Error {
    Error::Structure(format!("eigensolver did not converge: {e:?}"))
}

// Symmetrized inputs, so sub-tolerance asymmetry cannot leak in.
fn hermitian_part(h: &ComplexMatrix, n: usize) -> Mat<C64> {
    Mat::<C64>::from_fn(n, n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5)
}

fn real_part(h: &ComplexMatrix, n: usize) -> Mat<f64> {
    Mat::<f64>::from_fn(n, n, |i, j| (h[(i, j)].re + h[(j, i)].re) * 0.5)
}

/// Real symmetric input runs through the real solver, roughly four times
/// cheaper than the complex one.
fn real_eigen(h: &ComplexMatrix, n: usize) -> Result<(Vec<f64>, ComplexMatrix)> {
    let evd = real_part(h, n).self_adjoint_eigen(Side::Lower).map_err(no_convergence)?;
    let s = evd.S().column_vector();
    let u = evd.U();
    Ok(((0..n).map(|k| s[k]).collect(), ComplexMatrix::from_fn(n, n, |i, j| C64::new(u[(i, j)], 0.0))))
}

fn complex_eigen(h: &ComplexMatrix, n: usize) -> Result<(Vec<f64>, ComplexMatrix)> {
    let evd = hermitian_part(h, n).self_adjoint_eigen(Side::Lower).map_err(no_convergence)?;
    let s = evd.S().column_vector();
    let u = evd.U();
    Ok(((0..n).map(|k| s[k].re).collect(), ComplexMatrix::from_fn(n, n, |i, j| u[(i, j)])))
}

fn check_hermitian(h: &ComplexMatrix) -> Result<usize> {
    let violation = h
        .hermiticity_violation()
        .ok_or_else(|| Error::shape(format!("{}x{} matrix is not square", h.rows(), h.cols())))?;
    if !h.is_finite() {
        return Err(Error::arg("matrix has non-finite entries"));
    }
    if violation > HERMITIAN_TOL * h.max_abs().max(1.0) {
        return Err(Error::NotHermitian { violation });
    }
    Ok(h.rows())
}
