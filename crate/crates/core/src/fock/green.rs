use serde::Serialize;

use crate::algebra::{AlgebraKind, DegreeAssignment, GeneratorLabel, GeneratorMap, Sign, Species};
use crate::fock::copy::{CopyAlgebra, CopySpace};
use crate::group::{Bicharacter, FiniteAbelianGroup, GroupElement};
use crate::limits;
use crate::linalg::{sparse_kron_all, SparseMatrix, SparseVec};
use crate::{Error, Result, C64};

/// Green-ansatz representation: `p` copies of [`CopySpace`] whose operators
/// exchange across copies with the commutation factor `theta`.
#[derive(Clone, Debug)]
pub struct GreenAnsatzRep {
    pub kind: AlgebraKind,
    pub p: usize,
    pub copy: CopySpace,
    pub theta: Bicharacter,
    pub degrees: DegreeAssignment,
    pub generators: GeneratorMap,
    dim: usize,
    /// Element index of each copy basis vector's degree.
    copy_degree_index: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisState {
    pub index: usize,
    /// Occupations per copy, boson modes then fermion modes.
    pub occupations: Vec<Vec<u32>>,
    pub boson_quanta: u32,
    pub fermion_quanta: u32,
}

/// The copy algebra each paraparticle kind is built from.
pub fn copy_algebra_for(kind: AlgebraKind) -> Result<CopyAlgebra> {
    match kind {
        AlgebraKind::Pb => Ok(CopyAlgebra::Ccr),
        AlgebraKind::Pf => Ok(CopyAlgebra::Car),
        AlgebraKind::Pbf => Ok(CopyAlgebra::Ws),
        AlgebraKind::Pfb => Ok(CopyAlgebra::Was),
        other => Err(Error::arg(format!(
            "the Green ansatz is built for PB, PF, PBF and PFB, not {other}"
        ))),
    }
}

/// Species degrees used by default: `Z2` with odd bosons for PB, `Z2` with
/// odd fermions for PF, and `Z2 × Z2` with `b ↦ (1,0)`, `f ↦ (0,1)` for the
/// mixed kinds.
pub fn default_degrees(kind: AlgebraKind) -> Result<DegreeAssignment> {
    let z2 = FiniteAbelianGroup::cyclic(2).expect("Z2");
    let one = z2.element(vec![1]).expect("Z2 generator");
    match kind {
        AlgebraKind::Pb => DegreeAssignment::new(z2.clone(), one, z2.identity()),
        AlgebraKind::Pf => DegreeAssignment::new(z2.clone(), z2.identity(), one),
        AlgebraKind::Pbf | AlgebraKind::Pfb => {
            let k = FiniteAbelianGroup::klein();
            let b = k.element(vec![1, 0])?;
            let f = k.element(vec![0, 1])?;
            DegreeAssignment::new(k, b, f)
        }
        other => Err(Error::arg(format!("no default grading for {other}"))),
    }
}

/// Default cross-copy factor for the single-species kinds: the `Z2` sign
/// factor for PB (copies anticommute) and the trivial factor for PF.
pub fn default_theta(kind: AlgebraKind) -> Result<Bicharacter> {
    let z2 = FiniteAbelianGroup::cyclic(2).expect("Z2");
    match kind {
        AlgebraKind::Pb => Bicharacter::from_matrix(&z2, vec![vec![1]]),
        AlgebraKind::Pf => Ok(Bicharacter::trivial(&z2)),
        other => Err(Error::arg(format!(
            "{other} has no fixed default factor; run the factor search"
        ))),
    }
}

pub(crate) fn op_degree(deg: &DegreeAssignment, label: GeneratorLabel) -> GroupElement {
    let d = deg.of(label.species);
    match label.sign {
        Sign::Plus => d.clone(),
        Sign::Minus => deg.group.inverse(d),
    }
}

impl GreenAnsatzRep {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn boson_modes(&self) -> usize {
        self.copy.boson_modes
    }

    pub fn fermion_modes(&self) -> usize {
        self.copy.fermion_modes
    }

    pub fn generator(&self, label: GeneratorLabel) -> Result<&SparseMatrix> {
        self.generators
            .get(&label)
            .ok_or_else(|| Error::arg(format!("representation has no generator {label}")))
    }

    pub fn vacuum(&self) -> SparseVec {
        SparseVec::basis(self.dim, 0)
    }

    /// Copy-space indices of a full basis state, slot 1 first.
    pub fn copy_indices(&self, mut index: usize) -> Vec<usize> {
        let c = self.copy.dim();
        let mut out = vec![0; self.p];
        for slot in out.iter_mut().rev() {
            *slot = index % c;
            index /= c;
        }
        out
    }

    pub fn basis_state(&self, index: usize) -> BasisState {
        let copies = self.copy_indices(index);
        BasisState {
            index,
            occupations: copies.iter().map(|&c| self.copy.occupation(c)).collect(),
            boson_quanta: copies.iter().map(|&c| self.copy.boson_quanta(c)).sum(),
            fermion_quanta: copies.iter().map(|&c| self.copy.fermion_quanta(c)).sum(),
        }
    }

    pub fn boson_quanta(&self, index: usize) -> u32 {
        self.copy_indices(index).iter().map(|&c| self.copy.boson_quanta(c)).sum()
    }

    pub fn fermion_quanta(&self, index: usize) -> u32 {
        self.copy_indices(index).iter().map(|&c| self.copy.fermion_quanta(c)).sum()
    }

    /// Group degree of a full basis state: the sum of its copy degrees.
    pub fn basis_degree(&self, index: usize) -> GroupElement {
        let g = &self.degrees.group;
        self.copy_indices(index)
            .iter()
            .fold(g.identity(), |acc, &c| g.op(&acc, &g.element_at(self.copy_degree_index[c])))
    }

    /// States with at most `max_boson_quanta` boson quanta in total.
    pub fn boson_quanta_mask(&self, max_boson_quanta: usize) -> Vec<bool> {
        (0..self.dim)
            .map(|i| self.boson_quanta(i) as usize <= max_boson_quanta)
            .collect()
    }

    /// Interior projector for relation checks: total boson quanta at most
    /// `cutoff - 3`, so no trilinear word can reach the cutoff. Without boson
    /// modes every state is interior.
    pub fn interior_mask(&self) -> Vec<bool> {
        if self.copy.boson_modes == 0 {
            return vec![true; self.dim];
        }
        self.boson_quanta_mask(self.copy.cutoff.saturating_sub(3))
    }

    /// `D_1 ⊗ … ⊗ D_{slot-1} ⊗ op ⊗ I ⊗ … ⊗ I`, where `D` scales a copy basis
    /// vector of degree `h` by `θ(op_degree, h)`.
    pub fn embed(&self, op: &SparseMatrix, op_degree: &GroupElement, slot: usize) -> Result<SparseMatrix> {
        embed_in(&self.copy, &self.theta, &self.copy_degree_index, self.p, op, op_degree, slot)
    }

    /// Total occupation of one mode, summed over copies.
    pub fn mode_number(&self, species: Species, mode: usize) -> Result<SparseMatrix> {
        let n = self.copy.number_op(species, mode)?;
        let e = self.degrees.group.identity();
        let mut total = SparseMatrix::zeros(self.dim, self.dim);
        for slot in 1..=self.p {
            total = total.try_add(&self.embed(&n, &e, slot)?)?;
        }
        Ok(total)
    }
}

fn embed_in(
    copy: &CopySpace,
    theta: &Bicharacter,
    degree_index: &[usize],
    p: usize,
    op: &SparseMatrix,
    op_degree: &GroupElement,
    slot: usize,
) -> Result<SparseMatrix> {
    if slot == 0 || slot > p {
        return Err(Error::arg(format!("slot {slot} out of range 1..={p}")));
    }
    let c = copy.dim();
    if op.rows() != c || op.cols() != c {
        return Err(Error::shape(format!(
            "copy operator is {}x{}, copy dimension is {c}",
            op.rows(),
            op.cols()
        )));
    }
    let g = theta.group();
    let gi = g.index_of(op_degree)?;
    let dressing = SparseMatrix::from_diagonal(&degree_index.iter().map(|&h| theta.value_at(gi, h)).collect::<Vec<C64>>());
    let parts: Vec<SparseMatrix> = (1..=p)
        .map(|k| match k.cmp(&slot) {
            std::cmp::Ordering::Less => dressing.clone(),
            std::cmp::Ordering::Equal => op.clone(),
            std::cmp::Ordering::Greater => SparseMatrix::identity(c),
        })
        .collect();
    sparse_kron_all(&parts)
}

/// Free-function form of [`GreenAnsatzRep::embed`].
pub fn green_embed(op: &SparseMatrix, op_degree: &GroupElement, slot: usize, rep: &GreenAnsatzRep) -> Result<SparseMatrix> {
    rep.embed(op, op_degree, slot)
}

/// `B_i^± = Σ_k` (copy `b_i^±` embedded at slot `k`), and likewise `F_j^±`.
///
/// `theta` must be a commutation factor on the group of `degrees`.
pub fn build_green_rep(
    kind: AlgebraKind,
    p: usize,
    boson_modes: usize,
    fermion_modes: usize,
    cutoff: usize,
    theta: &Bicharacter,
    degrees: &DegreeAssignment,
) -> Result<GreenAnsatzRep> {
    let algebra = copy_algebra_for(kind)?;
    kind.check_counts(boson_modes, fermion_modes)?;
    if p == 0 {
        return Err(Error::arg("order p must be at least 1"));
    }
    if theta.group() != &degrees.group {
        return Err(Error::arg(format!(
            "factor lives on {} but degrees on {}",
            theta.group(),
            degrees.group
        )));
    }
    if !theta.is_commutation_factor() {
        return Err(Error::arg(format!(
            "factor {theta} on {} is not skew-symmetric",
            theta.group()
        )));
    }
    let copy = CopySpace::new(algebra, boson_modes, fermion_modes, cutoff)?;
    let dims = vec![copy.dim(); p];
    let dim = limits::checked_product("Green tensor space", &dims, limits::max_sparse_dim())?;
    let g = &degrees.group;
    let copy_degree_index: Vec<usize> = copy
        .basis_degrees(degrees)
        .iter()
        .map(|h| g.index_of(h).expect("degree in group"))
        .collect();

    let mut labels = Vec::new();
    for (species, count) in [(Species::Boson, boson_modes), (Species::Fermion, fermion_modes)] {
        for mode in 1..=count {
            for sign in Sign::BOTH {
                labels.push(GeneratorLabel::new(species, mode, sign));
            }
        }
    }
    let mut generators = GeneratorMap::new();
    for label in labels {
        let local = copy.mode_op(label)?;
        let d = op_degree(degrees, label);
        let mut total = SparseMatrix::zeros(dim, dim);
        for slot in 1..=p {
            total = total.try_add(&embed_in(&copy, theta, &copy_degree_index, p, &local, &d, slot)?)?;
        }
        generators.insert(label, total);
    }
    Ok(GreenAnsatzRep {
        kind,
        p,
        copy,
        theta: theta.clone(),
        degrees: degrees.clone(),
        generators,
        dim,
        copy_degree_index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{sparse_bracket, BracketKind};

    #[test]
    fn p1_is_the_bare_boson() {
        let k = AlgebraKind::Pb;
        let rep = build_green_rep(k, 1, 1, 0, 4, &default_theta(k).unwrap(), &default_degrees(k).unwrap()).unwrap();
        let bp = rep.generator(GeneratorLabel::b(1, Sign::Plus)).unwrap();
        let bare = crate::fock::truncated::TruncatedFock::boson(4).unwrap().raising();
        assert_eq!(bp.try_sub(&bare).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn sign_factor_makes_copies_anticommute() {
        let k = AlgebraKind::Pb;
        let rep = build_green_rep(k, 2, 1, 0, 3, &default_theta(k).unwrap(), &default_degrees(k).unwrap()).unwrap();
        let local = rep.copy.mode_op(GeneratorLabel::b(1, Sign::Plus)).unwrap();
        let d = rep.degrees.boson.clone();
        let x = rep.embed(&local, &d, 1).unwrap();
        let y = rep.embed(&local, &d, 2).unwrap();
        assert_eq!(sparse_bracket(&x, &y, BracketKind::Anticommutator).unwrap().max_abs(), 0.0);
        assert!(rep.embed(&local, &d, 3).is_err());
        assert!(rep.embed(&local, &d, 0).is_err());
    }

    #[test]
    fn rejects_non_skew_factor_and_wrong_kind() {
        let z3 = FiniteAbelianGroup::cyclic(3).unwrap();
        let theta = Bicharacter::from_matrix(&z3, vec![vec![1]]).unwrap();
        let deg = DegreeAssignment::new(z3.clone(), z3.element(vec![1]).unwrap(), z3.identity()).unwrap();
        assert!(matches!(
            build_green_rep(AlgebraKind::Pb, 2, 1, 0, 3, &theta, &deg),
            Err(Error::Argument(_))
        ));
        let k = AlgebraKind::Pb;
        assert!(build_green_rep(AlgebraKind::Ccr, 2, 1, 0, 3, &default_theta(k).unwrap(), &default_degrees(k).unwrap()).is_err());
    }

    #[test]
    fn sizing_limit_is_reported() {
        let k = AlgebraKind::Pb;
        let err = build_green_rep(k, 6, 2, 0, 10, &default_theta(k).unwrap(), &default_degrees(k).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Sizing { .. }));
    }
}
