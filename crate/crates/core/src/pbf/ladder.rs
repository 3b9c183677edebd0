use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{AlgebraKind, DegreeAssignment, GeneratorLabel, Sign};
use crate::fock::{build_green_rep, fock_submodule, GreenAnsatzRep};
use crate::group::Bicharacter;
use crate::linalg::{sparse_bracket, BracketKind, ComplexMatrix, SparseMatrix, SparseVec, DEFAULT_CYCLIC_TOL};
use crate::{Error, Result, C64};

/// Eigenvalue tolerance for the number operators.
const NUMBER_TOL: f64 = 1e-8;

/// Position in the ladder: `m` boson-like quanta, `n` fermion-like quanta and
/// the index inside `V(m,n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LadderLabel {
    pub m: u32,
    pub n: u32,
    pub branch: u32,
}

/// The Fock-like module of one paraboson and one parafermion on the ladder
/// basis, truncated at `m ≤ boson_cutoff`.
#[derive(Clone, Debug)]
pub struct PbfFockRep {
    pub p: usize,
    pub boson_cutoff: usize,
    /// Sorted by `(m, n, branch)`.
    pub labels: Vec<LadderLabel>,
    /// Ladder vectors in the Green tensor space, aligned with `labels`.
    pub basis: Vec<SparseVec>,
    pub generators: BTreeMap<GeneratorLabel, ComplexMatrix>,
    pub boson_number: ComplexMatrix,
    pub fermion_number: ComplexMatrix,
    pub theta: Bicharacter,
    pub degrees: DegreeAssignment,
    /// Generators on the ladder extended to `m = boson_cutoff + 1`; the
    /// leading block is `generators`.
    extended: BTreeMap<GeneratorLabel, ComplexMatrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SectorDim {
    pub m: u32,
    pub n: u32,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LadderManifest {
    pub p: usize,
    pub cutoff: usize,
    pub sectors: Vec<SectorDim>,
}

impl PbfFockRep {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn generator(&self, label: GeneratorLabel) -> Result<&ComplexMatrix> {
        self.generators
            .get(&label)
            .ok_or_else(|| Error::arg(format!("ladder has no generator {label}")))
    }

    /// `x y` on the ladder, exact up to `m = boson_cutoff` because the
    /// intermediate states may reach one level higher.
    pub fn product(&self, x: GeneratorLabel, y: GeneratorLabel) -> Result<ComplexMatrix> {
        let get = |l: GeneratorLabel| {
            self.extended
                .get(&l)
                .ok_or_else(|| Error::arg(format!("ladder has no generator {l}")))
        };
        let xy = get(x)?.try_matmul(get(y)?)?;
        let keep: Vec<usize> = (0..self.dim()).collect();
        Ok(xy.select(&keep, &keep))
    }

    /// Basis positions of `V(m,n)`.
    pub fn sector(&self, m: u32, n: u32) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|&i| self.labels[i].m == m && self.labels[i].n == n)
            .collect()
    }

    pub fn position(&self, label: LadderLabel) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn manifest(&self) -> LadderManifest {
        LadderManifest {
            p: self.p,
            cutoff: self.boson_cutoff,
            sectors: subspace_dims(self)
                .into_iter()
                .map(|((m, n), dim)| SectorDim { m, n, dim })
                .collect(),
        }
    }
}

fn sector_of(rep: &GreenAnsatzRep, v: &SparseVec) -> Result<(u32, u32)> {
    let mut it = v
        .entries()
        .iter()
        .filter(|(_, z)| z.norm() > DEFAULT_CYCLIC_TOL)
        .map(|&(i, _)| (rep.boson_quanta(i), rep.fermion_quanta(i)));
    let first = it.next().ok_or_else(|| Error::Structure("empty ladder vector".into()))?;
    if it.any(|s| s != first) {
        return Err(Error::Structure("ladder vector mixes boson and fermion quanta".into()));
    }
    Ok(first)
}

/// Integer diagonal of `m`, or a structure error naming `what`.
fn integer_diagonal(m: &ComplexMatrix, what: &str) -> Result<Vec<u32>> {
    let n = m.rows();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..n {
            if i != j && m[(i, j)].norm() > NUMBER_TOL {
                return Err(Error::Structure(format!(
                    "{what} is not diagonal in the ladder basis: entry ({i},{j}) = {}",
                    m[(i, j)]
                )));
            }
        }
        let d = m[(i, i)];
        let r = d.re.round();
        if (d - C64::new(r, 0.0)).norm() > NUMBER_TOL || r < 0.0 {
            return Err(Error::Structure(format!("{what} has non-integer eigenvalue {d} at position {i}")));
        }
        out.push(r as u32);
    }
    Ok(out)
}

/// Builds `p` copies of `W_s` with one boson and one fermion, takes the cyclic
/// module of the vacuum and sorts it into the sectors `V(m,n)` by the
/// eigenvalues of `N_b = ({B⁺,B⁻} − p)/2` and `N_f = ([F⁺,F⁻] + p)/2`.
///
/// The copies are truncated one level above `boson_cutoff` so both number
/// operators are exact on every kept state.
pub fn build_pbf_rep(p: usize, boson_cutoff: usize, theta: &Bicharacter, degrees: &DegreeAssignment) -> Result<PbfFockRep> {
    if boson_cutoff < 4 {
        return Err(Error::arg(format!("boson cutoff must be at least 4, got {boson_cutoff}")));
    }
    let rep = build_green_rep(AlgebraKind::Pbf, p, 1, 1, boson_cutoff + 1, theta, degrees)?;
    let sub = fock_submodule(&rep, DEFAULT_CYCLIC_TOL)?;

    let mut sorted = Vec::new();
    for (order, v) in sub.basis.vectors().iter().enumerate() {
        let (m, n) = sector_of(&rep, v)?;
        sorted.push(((m, n, order), v.clone()));
    }
    sorted.sort_by_key(|(k, _)| *k);
    let kept = sorted.iter().filter(|((m, _, _), _)| *m as usize <= boson_cutoff).count();
    let all: Vec<SparseVec> = sorted.into_iter().map(|(_, v)| v).collect();
    let vectors = all[..kept].to_vec();
    let b = SparseMatrix::from_sparse_columns(rep.dim(), &vectors)?;
    let b_ext = SparseMatrix::from_sparse_columns(rep.dim(), &all)?;

    let g = |s, sign| rep.generator(GeneratorLabel::new(s, 1, sign));
    use crate::algebra::Species::{Boson, Fermion};
    let pf = C64::new(p as f64, 0.0);
    let id = SparseMatrix::identity(rep.dim());
    let nb = sparse_bracket(g(Boson, Sign::Plus)?, g(Boson, Sign::Minus)?, BracketKind::Anticommutator)?
        .axpy(-pf, &id)?
        .scale_real(0.5);
    let nf = sparse_bracket(g(Fermion, Sign::Plus)?, g(Fermion, Sign::Minus)?, BracketKind::Commutator)?
        .axpy(pf, &id)?
        .scale_real(0.5);
    let boson_number = nb.compress(&b)?;
    let fermion_number = nf.compress(&b)?;
    let ms = integer_diagonal(&boson_number, "N_b")?;
    let ns = integer_diagonal(&fermion_number, "N_f")?;

    let mut labels = Vec::with_capacity(vectors.len());
    for (i, (&m, &n)) in ms.iter().zip(&ns).enumerate() {
        let branch = labels[..i].iter().filter(|l: &&LadderLabel| l.m == m && l.n == n).count() as u32;
        labels.push(LadderLabel { m, n, branch });
    }
    if labels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Structure("number-operator eigenvalues disagree with the quanta sectors".into()));
    }

    let keep: Vec<usize> = (0..kept).collect();
    let mut extended = BTreeMap::new();
    let mut generators = BTreeMap::new();
    for (label, op) in &rep.generators {
        let e = op.compress(&b_ext)?;
        generators.insert(*label, e.select(&keep, &keep));
        extended.insert(*label, e);
    }
    Ok(PbfFockRep {
        p,
        boson_cutoff,
        labels,
        basis: vectors,
        generators,
        boson_number,
        fermion_number,
        theta: theta.clone(),
        degrees: degrees.clone(),
        extended,
    })
}

/// `dim V(m,n)` for `m ≤ boson_cutoff − 3` and `n ≤ p`.
pub fn subspace_dims(rep: &PbfFockRep) -> BTreeMap<(u32, u32), usize> {
    let top = rep.boson_cutoff.saturating_sub(3) as u32;
    let mut out = BTreeMap::new();
    for m in 0..=top {
        for n in 0..=rep.p as u32 {
            out.insert((m, n), rep.sector(m, n).len());
        }
    }
    out
}
