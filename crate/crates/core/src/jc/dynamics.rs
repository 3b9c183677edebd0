use serde::Serialize;

use crate::linalg::{hermitian_eig, hermitian_eigenvalues, ComplexMatrix};
use crate::pbf::PbfFockRep;
use crate::{Error, Result, C64};

/// Eigenvalues of `h`, ascending.
pub fn spectrum(h: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eigenvalues(h)
}

#[derive(Clone, Debug, Serialize)]
pub struct QuenchResult {
    pub times: Vec<f64>,
    /// Every `(m, n)` present in the ladder, in ladder order.
    pub sectors: Vec<(u32, u32)>,
    /// `populations[t][k]` is the weight of `sectors[k]` at `times[t]`.
    pub populations: Vec<Vec<f64>>,
    /// `max_t |‖ψ(t)‖ − 1|`.
    pub norm_drift: f64,
}

impl QuenchResult {
    pub fn population(&self, time_index: usize, m: u32, n: u32) -> Option<f64> {
        let k = self.sectors.iter().position(|&s| s == (m, n))?;
        self.populations.get(time_index).map(|row| row[k])
    }
}

/// `ψ(t) = V e^{−iΛt} V† ψ0` from the eigendecomposition of `h`, with the
/// weight of each sector `V(m,n)` at every time.
pub fn evolve(h: &ComplexMatrix, psi0: &[C64], times: &[f64], rep: &PbfFockRep) -> Result<QuenchResult> {
    let n = rep.dim();
    if h.rows() != n || h.cols() != n || psi0.len() != n {
        return Err(Error::shape(format!(
            "Hamiltonian {}x{} and state of length {} on a ladder of dimension {n}",
            h.rows(),
            h.cols(),
            psi0.len()
        )));
    }
    let norm0 = crate::linalg::norm(psi0);
    if (norm0 - 1.0).abs() > 1e-10 {
        return Err(Error::arg(format!("initial state must have unit norm, got {norm0}")));
    }
    if let Some(t) = times.iter().find(|t| !t.is_finite()) {
        return Err(Error::arg(format!("time {t} is not finite")));
    }
    let eig = hermitian_eig(h)?;
    let v = &eig.vectors;
    let c = v.adjoint().mul_vec(psi0)?;

    let mut sectors: Vec<(u32, u32)> = Vec::new();
    let mut sector_of = Vec::with_capacity(n);
    for l in &rep.labels {
        let key = (l.m, l.n);
        let k = match sectors.iter().position(|&s| s == key) {
            Some(k) => k,
            None => {
                sectors.push(key);
                sectors.len() - 1
            }
        };
        sector_of.push(k);
    }

    let mut populations = Vec::with_capacity(times.len());
    let mut norm_drift: f64 = 0.0;
    for &t in times {
        let phased: Vec<C64> = c
            .iter()
            .zip(&eig.values)
            .map(|(&ck, &e)| ck * C64::from_polar(1.0, -e * t))
            .collect();
        let psi = v.mul_vec(&phased)?;
        let mut row = vec![0.0; sectors.len()];
        for (i, z) in psi.iter().enumerate() {
            row[sector_of[i]] += z.norm_sqr();
        }
        norm_drift = norm_drift.max((crate::linalg::norm(&psi) - 1.0).abs());
        populations.push(row);
    }
    Ok(QuenchResult {
        times: times.to_vec(),
        sectors,
        populations,
        norm_drift,
    })
}
