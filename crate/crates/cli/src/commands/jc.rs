use std::path::PathBuf;

use parastat_core::algebra::DegreeAssignment;
use parastat_core::group::Bicharacter;
use parastat_core::jc::{
    build_hamiltonian, evolve, interaction, selection_rule_check, spectrum, Coupling, HamiltonianKind, JCParams,
    SelectionReport,
};
use parastat_core::limits;
use parastat_core::pbf::{build_pbf_rep, LadderLabel, SectorDim};
use parastat_core::C64;
use serde::Serialize;

use super::{parse_complex, pbf_theta, resolve_common, theta_text, Common, ThetaChoice};
use crate::config::Config;
use crate::error::{CliError, CliResult};
use crate::output::{ensure_dir, fmt_f64, write_csv, write_json};
use crate::JcArgs;

const NORM_TOL: f64 = 1e-10;
const POPULATION_TOL: f64 = 1e-10;
const SELECTION_TOL: f64 = 1e-12;

#[derive(Serialize)]
struct JcConfig<'a> {
    hamiltonian: &'static str,
    p: usize,
    cutoff: usize,
    theta: String,
    omega_b: f64,
    omega_f: f64,
    coupling: Coupling,
    t_max: f64,
    t_steps: usize,
    init: String,
    #[serde(flatten)]
    common: &'a Common,
}

#[derive(Serialize)]
struct Diagnostics {
    hermiticity_violation: f64,
    selection_rule: SelectionReport,
    norm_drift: f64,
    max_population_error: f64,
    passed: bool,
}

#[derive(Serialize)]
struct Manifest<'a> {
    config: JcConfig<'a>,
    theta_used: &'a Bicharacter,
    degrees: &'a DegreeAssignment,
    dimension: usize,
    sectors: Vec<SectorDim>,
    diagnostics: Diagnostics,
}

fn coupling(args: &JcArgs, cfg: &Config) -> CliResult<Coupling> {
    let lambda: Option<String> = cfg.get(args.lambda.clone(), "lambda")?;
    let l1: Option<String> = cfg.get(args.lambda1.clone(), "lambda1")?;
    let l2: Option<String> = cfg.get(args.lambda2.clone(), "lambda2")?;
    match (lambda, l1, l2) {
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
            Err(CliError::usage("give either --lambda or --lambda1/--lambda2, not both"))
        }
        (None, None, None) => Ok(Coupling::Single(C64::new(0.1, 0.0))),
        (Some(l), None, None) => Ok(Coupling::Single(parse_complex(&l)?)),
        (None, Some(a), Some(b)) => Ok(Coupling::Pair {
            lambda1: parse_complex(&a)?,
            lambda2: parse_complex(&b)?,
        }),
        (None, _, _) => Err(CliError::usage("--lambda1 and --lambda2 must be given together")),
    }
}

fn parse_init(s: &str) -> CliResult<LadderLabel> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || CliError::usage(format!("cannot parse initial state `{s}` (expected m,n,branch)"));
    let [m, n, b] = parts.as_slice() else {
        return Err(bad());
    };
    let num = |x: &str| x.parse::<u32>().map_err(|_| bad());
    Ok(LadderLabel {
        m: num(m)?,
        n: num(n)?,
        branch: num(b)?,
    })
}

fn read_state(path: &PathBuf) -> CliResult<Vec<C64>> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .enumerate()
        .map(|(i, l)| {
            let bad = || CliError::usage(format!("{}: line {}: expected re,im", path.display(), i + 1));
            let (re, im) = l.split_once(',').ok_or_else(bad)?;
            Ok(C64::new(
                re.trim().parse().map_err(|_| bad())?,
                im.trim().parse().map_err(|_| bad())?,
            ))
        })
        .collect()
}

pub fn run(args: &JcArgs, cfg: &Config) -> CliResult<bool> {
    let common = resolve_common(&args.common, cfg)?;
    let kind: HamiltonianKind = cfg.resolve(args.hamiltonian.clone(), "hamiltonian", "dyn".to_string())?.parse()?;
    let p: usize = cfg.resolve(args.p, "p", 2)?;
    let cutoff: usize = cfg.resolve(args.cutoff, "cutoff", 6)?;
    let theta_choice = ThetaChoice::parse(&cfg.resolve(args.theta.clone(), "theta", "search".to_string())?)?;
    let params = JCParams {
        omega_b: cfg.resolve(args.omega_b, "omega-b", 1.0)?,
        omega_f: cfg.resolve(args.omega_f, "omega-f", 1.0)?,
        coupling: coupling(args, cfg)?,
        p,
        boson_cutoff: cutoff,
    };
    params.validate()?;
    let t_max: f64 = cfg.resolve(args.t_max, "t-max", 20.0)?;
    let t_steps: usize = cfg.resolve(args.t_steps, "t-steps", 400)?;
    if !(t_max.is_finite() && t_max >= 0.0) {
        return Err(CliError::usage(format!("t-max must be finite and non-negative, got {t_max}")));
    }
    if t_steps == 0 {
        return Err(CliError::usage("t-steps must be at least 1"));
    }
    let init_file: Option<PathBuf> = cfg.get(args.init_file.clone(), "init-file")?;
    let init_text: Option<String> = cfg.get(args.init.clone(), "init")?;
    if init_file.is_some() && init_text.is_some() {
        return Err(CliError::usage("give either --init or --init-file, not both"));
    }

    let (theta, deg, _) = pbf_theta(&theta_choice, p, cutoff, common.tol)?;
    let rep = build_pbf_rep(p, cutoff, &theta, &deg)?;
    limits::check("PBF ladder", rep.dim(), limits::max_dense_dim())?;
    let h = build_hamiltonian(kind, &params, &rep)?;

    let (psi0, init_desc) = match &init_file {
        Some(path) => {
            let v = read_state(path)?;
            if v.len() != rep.dim() {
                return Err(CliError::usage(format!(
                    "{}: {} components for a ladder of dimension {}",
                    path.display(),
                    v.len(),
                    rep.dim()
                )));
            }
            (v, format!("file:{}", path.display()))
        }
        None => {
            let text = init_text.unwrap_or_else(|| "1,0,0".to_string());
            let label = parse_init(&text)?;
            let idx = rep
                .position(label)
                .ok_or_else(|| CliError::usage(format!("initial state ({text}) is not in the ladder")))?;
            let mut v = vec![C64::new(0.0, 0.0); rep.dim()];
            v[idx] = C64::new(1.0, 0.0);
            (v, format!("{},{},{}", label.m, label.n, label.branch))
        }
    };

    let energies = spectrum(&h)?;
    let times: Vec<f64> = (0..=t_steps).map(|k| t_max * k as f64 / t_steps as f64).collect();
    let quench = evolve(&h, &psi0, &times, &rep)?;
    let selection = selection_rule_check(&interaction(kind, &params, &rep)?, &rep)?;
    let hermiticity_violation = (&h - &h.adjoint()).max_abs();
    let max_population_error = quench
        .populations
        .iter()
        .map(|row| (row.iter().sum::<f64>() - 1.0).abs())
        .fold(0.0, f64::max);
    let passed = hermiticity_violation == 0.0
        && quench.norm_drift <= NORM_TOL
        && max_population_error <= POPULATION_TOL
        && selection.max_offblock <= SELECTION_TOL;

    ensure_dir(&common.out)?;
    let spec_rows: Vec<Vec<String>> = energies
        .iter()
        .enumerate()
        .map(|(i, e)| vec![i.to_string(), fmt_f64(*e)])
        .collect();
    let spec_path = write_csv(&common.out, "spectrum.csv", &["index", "eigenvalue"].map(String::from), &spec_rows)?;
    let mut header = vec!["t".to_string()];
    header.extend(quench.sectors.iter().map(|(m, n)| format!("P_{m}_{n}")));
    let dyn_rows: Vec<Vec<String>> = quench
        .times
        .iter()
        .zip(&quench.populations)
        .map(|(t, row)| std::iter::once(fmt_f64(*t)).chain(row.iter().map(|x| fmt_f64(*x))).collect())
        .collect();
    let dyn_path = write_csv(&common.out, "dynamics.csv", &header, &dyn_rows)?;

    let manifest = Manifest {
        config: JcConfig {
            hamiltonian: kind.name(),
            p,
            cutoff,
            theta: theta_text(&theta_choice),
            omega_b: params.omega_b,
            omega_f: params.omega_f,
            coupling: params.coupling,
            t_max,
            t_steps,
            init: init_desc,
            common: &common,
        },
        theta_used: &theta,
        degrees: &deg,
        dimension: rep.dim(),
        sectors: rep.manifest().sectors,
        diagnostics: Diagnostics {
            hermiticity_violation,
            selection_rule: selection,
            norm_drift: quench.norm_drift,
            max_population_error,
            passed,
        },
    };
    let man_path = write_json(&common.out, "manifest.json", &manifest)?;

    println!(
        "{kind} p={p} cutoff={cutoff} theta={theta}: dimension {}, ground energy {}",
        rep.dim(),
        fmt_f64(energies.first().copied().unwrap_or(f64::NAN))
    );
    println!(
        "norm drift {}, selection-rule off-block {}: {}",
        fmt_f64(quench.norm_drift),
        fmt_f64(manifest.diagnostics.selection_rule.max_offblock),
        if passed { "PASS" } else { "FAIL" }
    );
    for path in [spec_path, dyn_path, man_path] {
        println!("wrote {}", path.display());
    }
    Ok(passed)
}
