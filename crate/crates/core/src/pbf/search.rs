use serde::Serialize;

use crate::algebra::{verify_relations, AlgebraKind, DegreeAssignment};
use crate::fock::{build_green_rep, default_degrees};
use crate::group::{commutation_factors, Bicharacter};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct FactorCandidate {
    pub theta: Bicharacter,
    pub degrees: DegreeAssignment,
    /// Interior residual of the PBF relations with `W_s` copies.
    pub pbf_residual: f64,
    pub pbf_passed: bool,
    pub pbf_worst_relation: Option<String>,
    /// Same check for PFB with `W_as` copies.
    pub pfb_residual: f64,
    pub pfb_passed: bool,
    pub pfb_worst_relation: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorSearch {
    pub p: usize,
    pub boson_cutoff: usize,
    pub tolerance: f64,
    /// Every commutation factor, in exponent-matrix order.
    pub candidates: Vec<FactorCandidate>,
}

impl FactorSearch {
    /// Candidates passing PBF, smallest residual first.
    pub fn passing(&self) -> Vec<&FactorCandidate> {
        let mut out: Vec<&FactorCandidate> = self.candidates.iter().filter(|c| c.pbf_passed).collect();
        out.sort_by(|a, b| a.pbf_residual.total_cmp(&b.pbf_residual));
        out
    }
}

/// Factor search with the default degrees `b ↦ (1,0)`, `f ↦ (0,1)`.
pub fn factor_search(p: usize, boson_cutoff: usize, tol: f64) -> Result<FactorSearch> {
    factor_search_with(p, boson_cutoff, tol, &default_degrees(AlgebraKind::Pbf)?)
}

/// Builds the Green ansatz for every commutation factor on the degree group
/// and checks the PBF and PFB relations on the interior states.
pub fn factor_search_with(
    p: usize,
    boson_cutoff: usize,
    tol: f64,
    degrees: &DegreeAssignment,
) -> Result<FactorSearch> {
    if boson_cutoff < 4 {
        return Err(Error::arg(format!("boson cutoff must be at least 4, got {boson_cutoff}")));
    }
    let factors = commutation_factors(&degrees.group)?;
    let results: Vec<Result<FactorCandidate>> = std::thread::scope(|s| {
        let handles: Vec<_> = factors
            .iter()
            .map(|theta| s.spawn(move || evaluate(p, boson_cutoff, tol, theta, degrees)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(Error::Structure("factor search worker panicked".into()))))
            .collect()
    });
    Ok(FactorSearch {
        p,
        boson_cutoff,
        tolerance: tol,
        candidates: results.into_iter().collect::<Result<_>>()?,
    })
}

fn evaluate(
    p: usize,
    cutoff: usize,
    tol: f64,
    theta: &Bicharacter,
    degrees: &DegreeAssignment,
) -> Result<FactorCandidate> {
    let check = |kind: AlgebraKind| -> Result<(f64, bool, Option<String>)> {
        let rep = build_green_rep(kind, p, 1, 1, cutoff, theta, degrees)?;
        let r = verify_relations(&rep.generators, kind, Some(&rep.interior_mask()), tol)?;
        Ok((r.max_residual, r.passed, r.worst_relation))
    };
    let (pbf_residual, pbf_passed, pbf_worst_relation) = check(AlgebraKind::Pbf)?;
    let (pfb_residual, pfb_passed, pfb_worst_relation) = check(AlgebraKind::Pfb)?;
    Ok(FactorCandidate {
        theta: theta.clone(),
        degrees: degrees.clone(),
        pbf_residual,
        pbf_passed,
        pbf_worst_relation,
        pfb_residual,
        pfb_passed,
        pfb_worst_relation,
    })
}
