use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{AlgebraKind, GeneratorLabel, Sign, Species};
use crate::fock::GreenAnsatzRep;
use crate::limits;
use crate::linalg::{BracketKind, ComplexMatrix, SparseMatrix};
use crate::pbf::PbfFockRep;
use crate::{Error, Result, C64};

/// Largest tolerated `‖H − H†‖_max` before a coupling is rejected.
const HERMITICITY_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HamiltonianKind {
    Dyn,
    DynStar,
    Free,
}

impl HamiltonianKind {
    pub const ALL: [HamiltonianKind; 3] = [HamiltonianKind::Dyn, HamiltonianKind::DynStar, HamiltonianKind::Free];

    pub fn name(self) -> &'static str {
        match self {
            HamiltonianKind::Dyn => "dyn",
            HamiltonianKind::DynStar => "dynstar",
            HamiltonianKind::Free => "free",
        }
    }
}

impl fmt::Display for HamiltonianKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HamiltonianKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| !matches!(c, '_' | '-' | '*')).collect::<String>().to_lowercase();
        match key.as_str() {
            "dyn" => Ok(HamiltonianKind::Dyn),
            "dynstar" => Ok(HamiltonianKind::DynStar),
            "free" => Ok(HamiltonianKind::Free),
            _ => Err(Error::arg(format!("unknown Hamiltonian kind `{s}` (expected dyn, dynstar or free)"))),
        }
    }
}

/// Interaction strength: one coupling `λ`, or the pair `(λ1, λ2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Coupling {
    Single(C64),
    Pair { lambda1: C64, lambda2: C64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JCParams {
    pub omega_b: f64,
    pub omega_f: f64,
    pub coupling: Coupling,
    pub p: usize,
    pub boson_cutoff: usize,
}

impl JCParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("omega_b", self.omega_b), ("omega_f", self.omega_f)] {
            if !v.is_finite() {
                return Err(Error::Parameter {
                    name: name.into(),
                    detail: format!("must be finite, got {v}"),
                });
            }
        }
        let finite = |z: C64| z.re.is_finite() && z.im.is_finite();
        let couplings: Vec<(&str, C64)> = match self.coupling {
            Coupling::Single(l) => vec![("lambda", l)],
            Coupling::Pair { lambda1, lambda2 } => vec![("lambda1", lambda1), ("lambda2", lambda2)],
        };
        for (name, z) in couplings {
            if !finite(z) {
                return Err(Error::Parameter {
                    name: name.into(),
                    detail: format!("must be finite, got {z}"),
                });
            }
        }
        if self.p == 0 {
            return Err(Error::Parameter {
                name: "p".into(),
                detail: "order must be at least 1".into(),
            });
        }
        Ok(())
    }
}

const BP: GeneratorLabel = GeneratorLabel::new(Species::Boson, 1, Sign::Plus);
const BM: GeneratorLabel = GeneratorLabel::new(Species::Boson, 1, Sign::Minus);
const FP: GeneratorLabel = GeneratorLabel::new(Species::Fermion, 1, Sign::Plus);
const FM: GeneratorLabel = GeneratorLabel::new(Species::Fermion, 1, Sign::Minus);

/// Source of the operator products `x y` the Hamiltonian is assembled from.
type Products<'a> = dyn Fn(GeneratorLabel, GeneratorLabel) -> Result<SparseMatrix> + 'a;

fn bracket(prod: &Products, x: GeneratorLabel, y: GeneratorLabel, kind: BracketKind) -> Result<SparseMatrix> {
    prod(x, y)?.axpy(C64::new(kind.sign(), 0.0), &prod(y, x)?)
}

/// `(ω_b/2){b⁺,b⁻} + (ω_f/2)[f⁺,f⁻] + (ω_f − ω_b)p/2`.
fn free_part(params: &JCParams, dim: usize, prod: &Products) -> Result<SparseMatrix> {
    let hb = bracket(prod, BP, BM, BracketKind::Anticommutator)?.scale_real(params.omega_b / 2.0);
    let hf = bracket(prod, FP, FM, BracketKind::Commutator)?.scale_real(params.omega_f / 2.0);
    let shift = (params.omega_f - params.omega_b) * params.p as f64 / 2.0;
    let id = SparseMatrix::identity(dim).scale_real(shift);
    hb.try_add(&hf)?.try_add(&id)
}

fn literal_interaction(kind: HamiltonianKind, params: &JCParams, dim: usize, prod: &Products) -> Result<SparseMatrix> {
    match (kind, params.coupling) {
        (HamiltonianKind::Free, _) => Ok(SparseMatrix::zeros(dim, dim)),
        (HamiltonianKind::Dyn, Coupling::Single(l)) => {
            let x = bracket(prod, BM, FP, BracketKind::Anticommutator)?
                .try_add(&bracket(prod, BP, FM, BracketKind::Anticommutator)?)?;
            Ok(x.scale(l / 2.0))
        }
        (HamiltonianKind::Dyn, Coupling::Pair { .. }) => Err(Error::Parameter {
            name: "coupling".into(),
            detail: "dyn takes a single coupling lambda".into(),
        }),
        (HamiltonianKind::DynStar, c) => {
            let (l1, l2) = match c {
                Coupling::Pair { lambda1, lambda2 } => (lambda1, lambda2),
                Coupling::Single(l) => (l / 2.0, l / 2.0),
            };
            let terms = [
                prod(BM, FP)?.scale(l1),
                prod(FP, BM)?.scale(l2),
                prod(BP, FM)?.scale(l2.conj()),
                prod(FM, BP)?.scale(l1.conj()),
            ];
            terms.iter().skip(1).try_fold(terms[0].clone(), |acc, t| acc.try_add(t))
        }
    }
}

fn assemble(kind: HamiltonianKind, params: &JCParams, dim: usize, prod: &Products) -> Result<ComplexMatrix> {
    let h = free_part(params, dim, prod)?
        .try_add(&literal_interaction(kind, params, dim, prod)?)?
        .to_dense()?;
    let violation = h.hermiticity_violation().unwrap_or(f64::INFINITY);
    if violation > HERMITICITY_TOL {
        let name = match params.coupling {
            Coupling::Single(_) => "lambda",
            Coupling::Pair { .. } => "coupling",
        };
        return Err(Error::Parameter {
            name: name.into(),
            detail: format!("Hamiltonian {kind} is not Hermitian (max |H - H^dagger| = {violation:e}); use a real coupling"),
        });
    }
    Ok(hermitian_part(&h))
}

/// Hamiltonian of `kind` on the ladder of `rep`.
///
/// `DynStar` with a single coupling uses `λ1 = λ2 = λ/2`, which reproduces
/// `Dyn` for real `λ`. The result is the Hermitian part of the literal sum,
/// so `‖H − H†‖_max = 0` exactly; a literal sum further than `1e-10` from
/// Hermitian is rejected.
pub fn build_hamiltonian(kind: HamiltonianKind, params: &JCParams, rep: &PbfFockRep) -> Result<ComplexMatrix> {
    params.validate()?;
    if params.p != rep.p || params.boson_cutoff != rep.boson_cutoff {
        return Err(Error::arg(format!(
            "parameters are for p={}, M={} but the ladder has p={}, M={}",
            params.p, params.boson_cutoff, rep.p, rep.boson_cutoff
        )));
    }
    assemble(kind, params, rep.dim(), &|x, y| Ok(SparseMatrix::from_dense(&rep.product(x, y)?)))
}

/// The same Hamiltonian on the whole Green tensor space of a PBF
/// representation with one boson and one fermion mode, complement included.
/// Products are those of the truncated copies.
pub fn build_green_hamiltonian(kind: HamiltonianKind, params: &JCParams, rep: &GreenAnsatzRep) -> Result<ComplexMatrix> {
    params.validate()?;
    if rep.kind != AlgebraKind::Pbf || rep.boson_modes() != 1 || rep.fermion_modes() != 1 || rep.p != params.p {
        return Err(Error::arg(format!(
            "expected a PBF representation with one mode of each species and p={}",
            params.p
        )));
    }
    limits::check("Green-space Hamiltonian", rep.dim(), limits::max_dense_dim())?;
    assemble(kind, params, rep.dim(), &|x, y| rep.generator(x)?.try_matmul(rep.generator(y)?))
}

/// Total quanta (bosons plus fermions) of each Green basis state; every
/// Hamiltonian above is block diagonal in it.
pub fn excitation_keys(rep: &GreenAnsatzRep) -> Vec<u32> {
    (0..rep.dim()).map(|i| rep.boson_quanta(i) + rep.fermion_quanta(i)).collect()
}

fn hermitian_part(h: &ComplexMatrix) -> ComplexMatrix {
    let n = h.rows();
    ComplexMatrix::from_fn(n, n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5)
}

/// `H(kind) − H(Free)`.
pub fn interaction(kind: HamiltonianKind, params: &JCParams, rep: &PbfFockRep) -> Result<ComplexMatrix> {
    let h = build_hamiltonian(kind, params, rep)?;
    let free = build_hamiltonian(HamiltonianKind::Free, params, rep)?;
    Ok(&h - &free)
}

#[derive(Clone, Debug, Serialize)]
pub struct SelectionReport {
    pub max_offblock: f64,
    /// `((m,n), (m′,n′))` of the largest forbidden element, if nonzero.
    pub worst: Option<((u32, u32), (u32, u32))>,
    pub interior_max_m: u32,
}

/// Largest `|⟨V(m′,n′)| H |V(m,n)⟩|` with `(m′,n′)` outside
/// `{(m−1,n+1), (m+1,n−1)}`, over sectors with `m, m′ ≤ M − 3`.
pub fn selection_rule_check(h_interact: &ComplexMatrix, rep: &PbfFockRep) -> Result<SelectionReport> {
    let n = rep.dim();
    if h_interact.rows() != n || h_interact.cols() != n {
        return Err(Error::shape(format!(
            "interaction is {}x{}, ladder dimension is {n}",
            h_interact.rows(),
            h_interact.cols()
        )));
    }
    let top = rep.boson_cutoff.saturating_sub(3) as u32;
    let mut report = SelectionReport {
        max_offblock: 0.0,
        worst: None,
        interior_max_m: top,
    };
    for (j, a) in rep.labels.iter().enumerate() {
        for (i, b) in rep.labels.iter().enumerate() {
            if a.m > top || b.m > top {
                continue;
            }
            let allowed = (b.m + 1 == a.m && b.n == a.n + 1) || (b.m == a.m + 1 && b.n + 1 == a.n);
            let z = h_interact[(i, j)].norm();
            if !allowed && z > report.max_offblock {
                report.max_offblock = z;
                report.worst = Some(((a.m, a.n), (b.m, b.n)));
            }
        }
    }
    Ok(report)
}
