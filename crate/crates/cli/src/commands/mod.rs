pub mod classify;
pub mod fock;
pub mod jc;
pub mod verify;

use std::path::PathBuf;

use parastat_core::algebra::{verify_relations, AlgebraKind, DegreeAssignment, GeneratorMap};
use parastat_core::fock::{build_green_rep, default_degrees, default_theta, GreenAnsatzRep};
use parastat_core::group::{commutation_factors, parse_matrix, Bicharacter, FiniteAbelianGroup};
use parastat_core::pbf::{factor_search, FactorSearch};
use parastat_core::C64;
use serde::Serialize;

use crate::config::Config;
use crate::error::{CliError, CliResult};
use crate::CommonArgs;

pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, Serialize)]
pub struct Common {
    #[serde(skip)]
    pub out: PathBuf,
    pub format: Format,
    pub tol: f64,
}

pub fn resolve_common(c: &CommonArgs, cfg: &Config) -> CliResult<Common> {
    let out: PathBuf = cfg.resolve(c.out.clone(), "out", PathBuf::from("parastat-out"))?;
    let format = match cfg.resolve(c.format.clone(), "format", "json".to_string())?.to_ascii_lowercase().as_str() {
        "json" => Format::Json,
        "csv" => Format::Csv,
        other => return Err(CliError::usage(format!("unknown format `{other}` (expected json or csv)"))),
    };
    let tol = cfg.resolve(c.tol, "tol", DEFAULT_TOL)?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::usage(format!("tolerance must be positive, got {tol}")));
    }
    Ok(Common { out, format, tol })
}

/// Which commutation factor to use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaChoice {
    Default,
    Search,
    Matrix(Vec<Vec<u32>>),
}

impl ThetaChoice {
    pub fn parse(s: &str) -> CliResult<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "default" => Ok(ThetaChoice::Default),
            "search" => Ok(ThetaChoice::Search),
            _ => Ok(ThetaChoice::Matrix(parse_matrix(s)?)),
        }
    }
}

/// Parses `re`, `imj` or `re±imj`.
pub fn parse_complex(s: &str) -> CliResult<C64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::usage(format!("cannot parse complex number `{s}` (expected re+imj)"));
    let num = |x: &str| x.parse::<f64>().map_err(|_| bad());
    let Some(body) = t.strip_suffix(['j', 'i']) else {
        return Ok(C64::new(num(&t)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(i) => {
            let im = &body[i..];
            let im = if im == "+" || im == "-" { format!("{im}1") } else { im.to_string() };
            Ok(C64::new(num(&body[..i])?, num(&im)?))
        }
        None if body.is_empty() || body == "+" || body == "-" => Ok(C64::new(0.0, num(&format!("{body}1"))?)),
        None => Ok(C64::new(0.0, num(body)?)),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchRow {
    pub theta: String,
    pub max_residual: f64,
    pub passed: bool,
    pub worst_relation: Option<String>,
}

/// A representation ready for relation checks.
pub struct BuiltRep {
    pub generators: GeneratorMap,
    pub interior: Option<Vec<bool>>,
    pub theta: Option<Bicharacter>,
    pub degrees: Option<DegreeAssignment>,
    pub search: Vec<SearchRow>,
    pub green: Option<GreenAnsatzRep>,
}

pub struct RepSetup {
    pub kind: AlgebraKind,
    pub p: usize,
    pub modes_b: usize,
    pub modes_f: usize,
    pub cutoff: usize,
    pub theta: ThetaChoice,
    pub tol: f64,
}

fn is_green(kind: AlgebraKind) -> bool {
    matches!(kind, AlgebraKind::Pb | AlgebraKind::Pf | AlgebraKind::Pbf | AlgebraKind::Pfb)
}

fn z2() -> FiniteAbelianGroup {
    FiniteAbelianGroup::cyclic(2).expect("Z2")
}

/// Picks the passing candidate with the smallest residual, or the smallest
/// residual overall when none passes. Ties keep enumeration order.
fn pick(rows: &[SearchRow]) -> usize {
    let key = |r: &SearchRow| (!r.passed, r.max_residual);
    (0..rows.len())
        .min_by(|&a, &b| {
            let (ka, kb) = (key(&rows[a]), key(&rows[b]));
            ka.0.cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
        })
        .expect("nonempty candidate list")
}

/// Checks every candidate, keeping only the report rows.
fn search(
    candidates: &[Bicharacter],
    kind: AlgebraKind,
    tol: f64,
    build: impl Fn(&Bicharacter) -> CliResult<(GeneratorMap, Option<Vec<bool>>)>,
) -> CliResult<(usize, Vec<SearchRow>)> {
    let mut rows = Vec::new();
    for theta in candidates {
        let (gens, interior) = build(theta)?;
        let r = verify_relations(&gens, kind, interior.as_deref(), tol)?;
        rows.push(SearchRow {
            theta: theta.to_string(),
            max_residual: r.max_residual,
            passed: r.passed,
            worst_relation: r.worst_relation,
        });
    }
    Ok((pick(&rows), rows))
}

/// Uses `fixed` if given, else searches all commutation factors of `group`.
fn choose_theta(
    fixed: Option<Bicharacter>,
    group: &FiniteAbelianGroup,
    kind: AlgebraKind,
    tol: f64,
    build: impl Fn(&Bicharacter) -> CliResult<(GeneratorMap, Option<Vec<bool>>)>,
) -> CliResult<(Bicharacter, Vec<SearchRow>)> {
    match fixed {
        Some(t) => Ok((t, Vec::new())),
        None => {
            let factors = commutation_factors(group)?;
            let (best, rows) = search(&factors, kind, tol, build)?;
            Ok((factors[best].clone(), rows))
        }
    }
}

fn resolve_theta(choice: &ThetaChoice, group: &FiniteAbelianGroup, default: Option<Bicharacter>) -> CliResult<Option<Bicharacter>> {
    match choice {
        ThetaChoice::Matrix(m) => Ok(Some(Bicharacter::from_matrix(group, m.clone())?)),
        ThetaChoice::Default => Ok(default),
        ThetaChoice::Search => Ok(None),
    }
}

pub fn build_rep(setup: &RepSetup) -> CliResult<BuiltRep> {
    let kind = setup.kind;
    kind.check_counts(setup.modes_b, setup.modes_f)?;
    if setup.p == 0 {
        return Err(CliError::usage("p must be at least 1"));
    }
    if is_green(kind) {
        let deg = default_degrees(kind)?;
        let make = |theta: &Bicharacter| build_green_rep(kind, setup.p, setup.modes_b, setup.modes_f, setup.cutoff, theta, &deg);
        let fixed = resolve_theta(&setup.theta, &deg.group, default_theta(kind).ok())?;
        let (theta, search_rows) = choose_theta(fixed, &deg.group, kind, setup.tol, |t| {
            let rep = make(t)?;
            let interior = rep.interior_mask();
            Ok((rep.generators, Some(interior)))
        })?;
        let rep = make(&theta)?;
        let interior = Some(rep.interior_mask());
        let generators = rep.generators.clone();
        return Ok(BuiltRep {
            generators,
            interior,
            theta: Some(theta),
            degrees: Some(deg),
            search: search_rows,
            green: Some(rep),
        });
    }
    if matches!(kind, AlgebraKind::Scr | AlgebraKind::Sar) {
        let g = z2();
        let one = g.element(vec![1])?;
        let deg_b = DegreeAssignment::new(g.clone(), one.clone(), g.identity())?;
        let deg_f = DegreeAssignment::new(g.clone(), g.identity(), one)?;
        let a = build_green_rep(AlgebraKind::Pb, setup.p, setup.modes_b, 0, setup.cutoff, &default_theta(AlgebraKind::Pb)?, &deg_b)?;
        let b = build_green_rep(AlgebraKind::Pf, setup.p, 0, setup.modes_f, setup.cutoff, &default_theta(AlgebraKind::Pf)?, &deg_f)?;
        let default = if kind == AlgebraKind::Scr {
            Bicharacter::trivial(&g)
        } else {
            Bicharacter::from_matrix(&g, vec![vec![1]])?
        };
        let make = |theta: &Bicharacter| -> CliResult<(GeneratorMap, Option<Vec<bool>>)> {
            let prod = parastat_core::pbf::braided_product_rep(&a, &b, theta)?;
            Ok((prod.generators, Some(prod.interior)))
        };
        let fixed = resolve_theta(&setup.theta, &g, Some(default))?;
        let (theta, rows) = choose_theta(fixed, &g, kind, setup.tol, make)?;
        let (generators, interior) = make(&theta)?;
        let degrees = DegreeAssignment::new(g.clone(), deg_b.boson, deg_f.fermion)?;
        return Ok(BuiltRep {
            generators,
            interior,
            theta: Some(theta),
            degrees: Some(degrees),
            search: rows,
            green: None,
        });
    }
    // Plain particle algebras: one copy, no grading needed.
    if setup.theta != ThetaChoice::Default {
        return Err(CliError::usage(format!("{kind} takes no commutation factor")));
    }
    let algebra = match kind {
        AlgebraKind::Ccr => parastat_core::fock::CopyAlgebra::Ccr,
        AlgebraKind::Car => parastat_core::fock::CopyAlgebra::Car,
        AlgebraKind::Ws => parastat_core::fock::CopyAlgebra::Ws,
        _ => parastat_core::fock::CopyAlgebra::Was,
    };
    let space = parastat_core::fock::CopySpace::new(algebra, setup.modes_b, setup.modes_f, setup.cutoff)?;
    let mut generators = GeneratorMap::new();
    for (species, count) in [
        (parastat_core::algebra::Species::Boson, setup.modes_b),
        (parastat_core::algebra::Species::Fermion, setup.modes_f),
    ] {
        for mode in 1..=count {
            for sign in parastat_core::algebra::Sign::BOTH {
                let label = parastat_core::algebra::GeneratorLabel::new(species, mode, sign);
                generators.insert(label, space.mode_op(label)?);
            }
        }
    }
    let interior = (setup.modes_b > 0).then(|| {
        (0..space.dim())
            .map(|i| space.boson_quanta(i) as usize + 3 <= setup.cutoff)
            .collect()
    });
    Ok(BuiltRep {
        generators,
        interior,
        theta: None,
        degrees: None,
        search: Vec::new(),
        green: None,
    })
}

/// Shared resolution of `kind`, `p`, modes, `cutoff` and `theta`.
pub fn resolve_rep(a: &crate::RepArgs, cfg: &Config, tol: f64) -> CliResult<RepSetup> {
    let kind_s: String = cfg
        .get(a.kind.clone(), "kind")?
        .ok_or_else(|| CliError::usage("--kind is required"))?;
    let kind: AlgebraKind = kind_s.parse()?;
    let modes_b = cfg.resolve(a.modes_b, "modes-b", usize::from(kind.uses_bosons()))?;
    let modes_f = cfg.resolve(a.modes_f, "modes-f", usize::from(kind.uses_fermions()))?;
    Ok(RepSetup {
        kind,
        p: cfg.resolve(a.p, "p", 2)?,
        modes_b,
        modes_f,
        cutoff: cfg.resolve(a.cutoff, "cutoff", 6)?,
        theta: ThetaChoice::parse(&cfg.resolve(a.theta.clone(), "theta", "default".to_string())?)?,
        tol,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RepConfig {
    pub kind: AlgebraKind,
    pub p: usize,
    pub modes_b: usize,
    pub modes_f: usize,
    pub cutoff: usize,
    pub theta: String,
    pub format: Format,
    pub tol: f64,
}

impl RepConfig {
    pub fn new(setup: &RepSetup, common: &Common, theta_text: &str) -> Self {
        RepConfig {
            kind: setup.kind,
            p: setup.p,
            modes_b: setup.modes_b,
            modes_f: setup.modes_f,
            cutoff: setup.cutoff,
            theta: theta_text.to_string(),
            format: common.format,
            tol: common.tol,
        }
    }
}

pub fn theta_text(choice: &ThetaChoice) -> String {
    match choice {
        ThetaChoice::Default => "default".into(),
        ThetaChoice::Search => "search".into(),
        ThetaChoice::Matrix(m) => parastat_core::group::format_matrix(m),
    }
}

/// Commutation factor for the PBF ladder: a fixed matrix, or the search
/// winner (smallest passing residual, else smallest residual).
pub fn pbf_theta(
    choice: &ThetaChoice,
    p: usize,
    cutoff: usize,
    tol: f64,
) -> CliResult<(Bicharacter, DegreeAssignment, Option<FactorSearch>)> {
    let deg = default_degrees(AlgebraKind::Pbf)?;
    match choice {
        ThetaChoice::Matrix(m) => Ok((Bicharacter::from_matrix(&deg.group, m.clone())?, deg, None)),
        ThetaChoice::Default | ThetaChoice::Search => {
            let s = factor_search(p, cutoff, tol)?;
            let best = s
                .passing()
                .first()
                .map(|c| c.theta.clone())
                .or_else(|| {
                    s.candidates
                        .iter()
                        .min_by(|a, b| a.pbf_residual.total_cmp(&b.pbf_residual))
                        .map(|c| c.theta.clone())
                })
                .ok_or_else(|| CliError::usage("no commutation factor candidates"))?;
            Ok((best, deg, Some(s)))
        }
    }
}
