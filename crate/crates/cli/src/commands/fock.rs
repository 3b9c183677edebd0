use parastat_core::algebra::{AlgebraKind, DegreeAssignment, GeneratorLabel, Sign, Species};
use parastat_core::fock::{fock_submodule, raising_element};
use parastat_core::group::Bicharacter;
use parastat_core::linalg::ComplexMatrix;
use parastat_core::pbf::{build_pbf_rep, FactorSearch, LadderLabel, SectorDim};
use serde::Serialize;

use super::{build_rep, pbf_theta, resolve_common, resolve_rep, theta_text, RepConfig, ThetaChoice};
use crate::config::Config;
use crate::error::{CliError, CliResult};
use crate::output::{ensure_dir, fmt_f64, write_csv, write_json};
use crate::RepArgs;

const ENTRY_CUTOFF: f64 = 1e-14;

#[derive(Serialize)]
struct LadderState {
    index: usize,
    #[serde(flatten)]
    label: LadderLabel,
}

#[derive(Serialize)]
struct LadderBasis<'a> {
    config: RepConfig,
    theta_used: &'a Bicharacter,
    degrees: &'a DegreeAssignment,
    search: Option<&'a FactorSearch>,
    dimension: usize,
    states: Vec<LadderState>,
    sectors: Vec<SectorDim>,
}

#[derive(Serialize)]
struct LevelState {
    index: usize,
    level: u32,
}

#[derive(Serialize)]
struct ModuleBasis<'a> {
    config: RepConfig,
    theta_used: Option<&'a Bicharacter>,
    degrees: Option<&'a DegreeAssignment>,
    dimension: usize,
    full_dim: usize,
    complement_dim: usize,
    states: Vec<LevelState>,
}

/// Nonzero entries, ordered by generator, then ket, then bra.
fn entries<'a>(
    gens: impl IntoIterator<Item = (&'a GeneratorLabel, &'a ComplexMatrix)>,
) -> Vec<(GeneratorLabel, usize, usize, f64, f64)> {
    let mut out = Vec::new();
    for (label, m) in gens {
        for ket in 0..m.cols() {
            for bra in 0..m.rows() {
                let z = m[(bra, ket)];
                if z.norm() > ENTRY_CUTOFF {
                    out.push((*label, bra, ket, z.re, z.im));
                }
            }
        }
    }
    out
}

fn base_row(e: &(GeneratorLabel, usize, usize, f64, f64)) -> Vec<String> {
    vec![e.0.to_string(), e.1.to_string(), e.2.to_string(), fmt_f64(e.3), fmt_f64(e.4)]
}

pub fn run(args: &RepArgs, cfg: &Config) -> CliResult<bool> {
    let common = resolve_common(&args.common, cfg)?;
    let mut setup = resolve_rep(args, cfg, common.tol)?;
    let header5: Vec<String> = ["generator", "bra", "ket", "re", "im"].map(String::from).to_vec();

    match setup.kind {
        AlgebraKind::Pbf => {
            if args.theta.is_none() && cfg.raw("theta").is_none() {
                setup.theta = ThetaChoice::Search;
            }
            let (theta, deg, search) = pbf_theta(&setup.theta, setup.p, setup.cutoff, common.tol)?;
            let rep = build_pbf_rep(setup.p, setup.cutoff, &theta, &deg)?;
            let manifest = rep.manifest();
            let rows: Vec<Vec<String>> = entries(&rep.generators).iter().map(base_row).collect();
            ensure_dir(&common.out)?;
            let csv = write_csv(&common.out, "matrix_elements.csv", &header5, &rows)?;
            let basis = LadderBasis {
                config: RepConfig::new(&setup, &common, &theta_text(&setup.theta)),
                theta_used: &theta,
                degrees: &deg,
                search: search.as_ref(),
                dimension: rep.dim(),
                states: rep
                    .labels
                    .iter()
                    .enumerate()
                    .map(|(index, &label)| LadderState { index, label })
                    .collect(),
                sectors: manifest.sectors,
            };
            let json = write_json(&common.out, "basis.json", &basis)?;
            println!("PBF p={} cutoff={} theta={}: ladder dimension {}", setup.p, setup.cutoff, theta, rep.dim());
            println!("wrote {}", csv.display());
            println!("wrote {}", json.display());
            Ok(true)
        }
        AlgebraKind::Pb | AlgebraKind::Pf | AlgebraKind::Pfb => {
            let built = build_rep(&setup)?;
            let rep = built.green.as_ref().expect("Green kinds carry their representation");
            let module = fock_submodule(rep, common.tol)?;
            let items = entries(&module.generators);
            let single_pb = setup.kind == AlgebraKind::Pb && setup.modes_b == 1;
            let mut header = header5.clone();
            let rows: Vec<Vec<String>> = if single_pb {
                header.extend(["reference", "deviation"].map(String::from));
                let up = GeneratorLabel::new(Species::Boson, 1, Sign::Plus);
                items
                    .iter()
                    .map(|e| {
                        // ⟨m+1|B⁺|m⟩ and its adjoint ⟨m|B⁻|m+1⟩
                        let (lo, hi) = if e.0 == up { (e.2, e.1) } else { (e.1, e.2) };
                        let (l_lo, l_hi) = (module.levels[lo], module.levels[hi]);
                        let mut row = base_row(e);
                        if l_hi == l_lo + 1 {
                            let r = raising_element(setup.p, l_lo as usize)?;
                            row.push(fmt_f64(r));
                            row.push(fmt_f64((e.3 - r).abs().max(e.4.abs())));
                        } else {
                            row.extend([String::new(), String::new()]);
                        }
                        Ok(row)
                    })
                    .collect::<CliResult<_>>()?
            } else {
                items.iter().map(base_row).collect()
            };
            ensure_dir(&common.out)?;
            let csv = write_csv(&common.out, "matrix_elements.csv", &header, &rows)?;
            let basis = ModuleBasis {
                config: RepConfig::new(&setup, &common, &theta_text(&setup.theta)),
                theta_used: built.theta.as_ref(),
                degrees: built.degrees.as_ref(),
                dimension: module.dim(),
                full_dim: module.full_dim,
                complement_dim: module.complement_dim(),
                states: module
                    .levels
                    .iter()
                    .enumerate()
                    .map(|(index, &level)| LevelState { index, level })
                    .collect(),
            };
            let json = write_json(&common.out, "basis.json", &basis)?;
            println!(
                "{} p={} modes=({},{}) cutoff={}: vacuum module dimension {} of {}",
                setup.kind,
                setup.p,
                setup.modes_b,
                setup.modes_f,
                setup.cutoff,
                module.dim(),
                module.full_dim
            );
            println!("wrote {}", csv.display());
            println!("wrote {}", json.display());
            Ok(true)
        }
        other => Err(CliError::usage(format!(
            "fock supports PB, PF, PBF and PFB, not {other}"
        ))),
    }
}
